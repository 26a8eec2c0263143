#pragma once

#include <wvlt/aux_alloc.hpp>
#include <wvlt/bit_perm.hpp>
#include <wvlt/level_stats.hpp>
#include <wvlt/rank_select.hpp>
#include <wvlt/structures.hpp>

#include <cassert>
#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

namespace wvlt {

/// U = 1^{h(0)} 0 1^{h(1)} 0 ... 0 1^{h(sigma-1)}: n ones and sigma-1
/// separating zeros. rank0(U, select1(U, k)) is the k-th smallest symbol
/// occurrence of the text.
inline rank_select build_unary_histogram(std::span<const position_t> counts, std::uint64_t sigma) {
    assert(counts.size() >= sigma);
    std::size_t n = 0;
    for(std::uint64_t c = 0; c < sigma; ++c) n += counts[c];
    bit_vector u(n + (sigma == 0 ? 0 : sigma - 1));
    std::size_t pos = 0;
    for(std::uint64_t c = 0; c < sigma; ++c) {
        for(position_t k = 0; k < counts[c]; ++k) u.set(pos++, true);
        ++pos; // separator
    }
    return rank_select(std::move(u));
}

/// Wavelet-matrix start positions of every interval on levels
/// 1..width-1, flattened: level l occupies [2^l - 2, 2^{l+1} - 2) and is
/// indexed by the l-bit prefix.
class interval_start_table {
public:
    interval_start_table() = default;

    explicit interval_start_table(std::span<const position_t> full_hist, unsigned width) : width_(width) {
        if(width < 2) return;
        assert(full_hist.size() >= (std::size_t{1} << width));
        starts_.assign((std::size_t{1} << width) - 2, 0);
        position_array scratch(full_hist.begin(), full_hist.begin() + (std::ptrdiff_t{1} << width));
        bit_reversal_permutation rho(width - 1);
        for(unsigned l = width - 1; l >= 1; --l) {
            fold_in_place(scratch, l);
            while(rho.order() > l) rho.contract();
            compute_borders(std::span<const position_t>(scratch), l, rho, block(l));
        }
    }

    unsigned width() const { return width_; }

    position_t start(unsigned level, std::uint64_t prefix) const {
        assert(level >= 1 && level < width_ && prefix < (std::uint64_t{1} << level));
        return starts_[(std::size_t{1} << level) - 2 + prefix];
    }

    std::span<const position_t> block(unsigned level) const {
        return std::span<const position_t>(starts_).subspan((std::size_t{1} << level) - 2, std::size_t{1} << level);
    }

    std::span<const position_t> raw() const { return starts_; }

private:
    std::span<position_t> block(unsigned level) {
        return std::span<position_t>(starts_).subspan((std::size_t{1} << level) - 2, std::size_t{1} << level);
    }

    unsigned width_ = 0;
    position_array starts_;
};

/// Constant-time map from a wavelet-tree position to the wavelet-matrix
/// position holding the same bit on the same level.
class wt_to_wm_map {
public:
    wt_to_wm_map(std::span<const position_t> full_hist, std::uint64_t sigma)
        : width_(code_width(sigma)), unary_(build_unary_histogram(full_hist, sigma)),
          starts_(full_hist, width_) {}

    unsigned width() const { return width_; }
    const rank_select& unary() const { return unary_; }
    const interval_start_table& starts() const { return starts_; }

    std::size_t operator()(unsigned level, std::size_t i) const {
        assert(level < width_ && i < unary_.ones());
        if(level <= 1) return i;
        const auto sym = unary_.rank0(*unary_.select1(i + 1));
        const auto bp = prefix_of(level, sym, width_);
        // bp == 0: the interval starts at tree position 0
        const auto off = bp == 0 ? i : i - unary_.rank1(*unary_.select0(bp << (width_ - level)));
        return starts_.start(level, bp) + off;
    }

private:
    unsigned width_;
    rank_select unary_;
    interval_start_table starts_;
};

/// Symbol histogram recovered from a wavelet tree by counting each leaf.
inline position_array histogram_of(const level_wavelet_tree& wt) {
    position_array counts(std::size_t{1} << wt.width(), 0);
    for(std::uint64_t c = 0; c < wt.sigma(); ++c) counts[c] = wt.rank(c, wt.size());
    return counts;
}

/// Transports every level of the tree into matrix order.
inline wavelet_matrix convert_wt_to_wm(const level_wavelet_tree& wt, std::span<const position_t> full_hist) {
    const auto width = wt.width();
    const auto n = wt.size();
    const wt_to_wm_map map(full_hist, wt.sigma());

    std::vector<bit_vector> levels;
    levels.reserve(width);
    for(unsigned l = 0; l < width; ++l) {
        const auto& src = wt.level(l);
        bit_vector dst(n);
        for(std::size_t i = 0; i < n; ++i) {
            if(src[i]) dst.set(map(l, i), true);
        }
        levels.push_back(std::move(dst));
    }

    std::vector<std::uint64_t> zeros(width);
    if(width > 0) {
        position_array hist(full_hist.begin(), full_hist.begin() + (std::ptrdiff_t{1} << width));
        for(unsigned l = width; l-- > 0;) {
            zeros[l] = zeros_from_histogram(hist, l + 1);
            if(l > 0) fold_in_place(hist, l);
        }
    }
    return wavelet_matrix(n, wt.sigma(), std::move(levels), std::move(zeros));
}

inline wavelet_matrix convert_wt_to_wm(const level_wavelet_tree& wt) {
    const auto hist = histogram_of(wt);
    return convert_wt_to_wm(wt, hist);
}

} // namespace wvlt
