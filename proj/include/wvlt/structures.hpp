#pragma once

#include <wvlt/bit_perm.hpp>
#include <wvlt/level_stats.hpp>
#include <wvlt/rank_select.hpp>

#include <cassert>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

namespace wvlt {

enum class structure_kind : std::uint8_t { tree = 0, matrix = 1 };

/// Raw construction output: one bit vector per level, plus the zeros
/// array for wavelet matrices (empty for trees).
struct level_bits {
    std::vector<bit_vector> levels;
    std::vector<std::uint64_t> zeros;

    friend bool operator==(const level_bits&, const level_bits&) = default;
};

/// Number of zeros on level l of the wavelet matrix, read off the
/// histogram of (l+1)-bit prefixes: prefixes whose last bit is zero are
/// the even ones.
inline std::uint64_t zeros_from_histogram(std::span<const position_t> counts, unsigned next_level) {
    assert(next_level >= 1);
    const std::size_t m = std::size_t{1} << next_level;
    std::uint64_t z = 0;
    for(std::size_t q = 0; q < m; q += 2) z += counts[q];
    return z;
}

namespace detail {

inline std::vector<rank_select> with_support(std::vector<bit_vector> levels, std::size_t n) {
    std::vector<rank_select> out;
    out.reserve(levels.size());
    for(auto& bv : levels) {
        if(bv.size() != n) throw std::invalid_argument("level length differs from text length");
        out.emplace_back(std::move(bv));
    }
    return out;
}

} // namespace detail

/// Level-wise wavelet tree. Queries track the current node as an interval
/// [s, e) of the concatenated level, so no per-node offsets are stored.
class level_wavelet_tree {
public:
    level_wavelet_tree() = default;

    level_wavelet_tree(std::uint64_t n, std::uint64_t sigma, std::vector<bit_vector> levels)
        : n_(n), sigma_(sigma), levels_(detail::with_support(std::move(levels), n)) {
        if(levels_.size() != code_width(sigma_)) throw std::invalid_argument("wrong number of levels");
    }

    std::uint64_t size() const { return n_; }
    std::uint64_t sigma() const { return sigma_; }
    unsigned width() const { return static_cast<unsigned>(levels_.size()); }
    const rank_select& level(unsigned l) const { return levels_[l]; }
    std::span<const rank_select> levels() const { return levels_; }

    std::uint64_t access(std::size_t i) const {
        assert(i < n_);
        std::size_t s = 0, e = n_;
        std::uint64_t sym = 0;
        for(const auto& bv : levels_) {
            const bool b = bv[i];
            const auto z0s = bv.rank0(s);
            const auto z = bv.rank0(e) - z0s;
            if(!b) {
                i = s + (bv.rank0(i) - z0s);
                e = s + z;
            } else {
                i = s + z + (bv.rank1(i) - (s - z0s));
                s += z;
            }
            sym = (sym << 1) | b;
        }
        return sym;
    }

    std::size_t rank(std::uint64_t c, std::size_t i) const {
        assert(c < sigma_ && i <= n_);
        const auto w = width();
        std::size_t s = 0, e = n_;
        for(unsigned l = 0; l < w; ++l) {
            const auto& bv = levels_[l];
            const auto z0s = bv.rank0(s);
            const auto z = bv.rank0(e) - z0s;
            if(!bit_of(l, c, w)) {
                i = s + (bv.rank0(i) - z0s);
                e = s + z;
            } else {
                i = s + z + (bv.rank1(i) - (s - z0s));
                s += z;
            }
        }
        return i - s;
    }

    /// Position of the j-th (1-based) occurrence of c, or nullopt if c
    /// occurs fewer than j times.
    std::optional<std::size_t> select(std::uint64_t c, std::size_t j) const {
        assert(c < sigma_);
        if(j == 0) return std::nullopt;
        const auto w = width();
        // interval start of c's node on every level, plus the leaf
        std::vector<std::size_t> starts(w + 1);
        std::size_t s = 0, e = n_;
        for(unsigned l = 0; l < w; ++l) {
            const auto& bv = levels_[l];
            starts[l] = s;
            const auto z = bv.rank0(e) - bv.rank0(s);
            if(!bit_of(l, c, w)) e = s + z;
            else s += z;
        }
        starts[w] = s;
        if(e - s < j) return std::nullopt;

        std::size_t pos = s + j - 1;
        for(unsigned l = w; l-- > 0;) {
            const auto& bv = levels_[l];
            const bool b = bit_of(l, c, w);
            const auto k = pos - starts[l + 1] + 1;
            pos = *bv.select(b, bv.rank(b, starts[l]) + k);
        }
        return pos;
    }

private:
    std::uint64_t n_ = 0;
    std::uint64_t sigma_ = 1;
    std::vector<rank_select> levels_;
};

/// Wavelet matrix: level l+1 holds the bits of level l's zero-symbols
/// first, followed by its one-symbols, with zeros_[l] marking the split.
class wavelet_matrix {
public:
    wavelet_matrix() = default;

    wavelet_matrix(std::uint64_t n, std::uint64_t sigma, std::vector<bit_vector> levels,
                   std::vector<std::uint64_t> zeros)
        : n_(n), sigma_(sigma), levels_(detail::with_support(std::move(levels), n)), zeros_(std::move(zeros)) {
        if(levels_.size() != code_width(sigma_) || zeros_.size() != levels_.size())
            throw std::invalid_argument("wrong number of levels or zeros entries");
    }

    std::uint64_t size() const { return n_; }
    std::uint64_t sigma() const { return sigma_; }
    unsigned width() const { return static_cast<unsigned>(levels_.size()); }
    const rank_select& level(unsigned l) const { return levels_[l]; }
    std::span<const rank_select> levels() const { return levels_; }
    std::span<const std::uint64_t> zeros() const { return zeros_; }

    std::uint64_t access(std::size_t i) const {
        assert(i < n_);
        std::uint64_t sym = 0;
        for(unsigned l = 0; l < width(); ++l) {
            const auto& bv = levels_[l];
            const bool b = bv[i];
            i = b ? zeros_[l] + bv.rank1(i) : bv.rank0(i);
            sym = (sym << 1) | b;
        }
        return sym;
    }

    std::size_t rank(std::uint64_t c, std::size_t i) const {
        assert(c < sigma_ && i <= n_);
        const auto w = width();
        std::size_t s = 0;
        for(unsigned l = 0; l < w; ++l) {
            const auto& bv = levels_[l];
            if(!bit_of(l, c, w)) {
                s = bv.rank0(s);
                i = bv.rank0(i);
            } else {
                s = zeros_[l] + bv.rank1(s);
                i = zeros_[l] + bv.rank1(i);
            }
        }
        return i - s;
    }

    std::optional<std::size_t> select(std::uint64_t c, std::size_t j) const {
        assert(c < sigma_);
        if(j == 0) return std::nullopt;
        const auto w = width();
        std::size_t s = 0, e = n_;
        for(unsigned l = 0; l < w; ++l) {
            const auto& bv = levels_[l];
            if(!bit_of(l, c, w)) {
                s = bv.rank0(s);
                e = bv.rank0(e);
            } else {
                s = zeros_[l] + bv.rank1(s);
                e = zeros_[l] + bv.rank1(e);
            }
        }
        if(e - s < j) return std::nullopt;

        std::size_t pos = s + j - 1;
        for(unsigned l = w; l-- > 0;) {
            const auto& bv = levels_[l];
            pos = bit_of(l, c, w) ? *bv.select1(pos - zeros_[l] + 1) : *bv.select0(pos + 1);
        }
        return pos;
    }

private:
    std::uint64_t n_ = 0;
    std::uint64_t sigma_ = 1;
    std::vector<rank_select> levels_;
    std::vector<std::uint64_t> zeros_;
};

inline level_bits raw_levels(const level_wavelet_tree& wt) {
    level_bits out;
    for(const auto& l : wt.levels()) out.levels.push_back(l.bits());
    return out;
}

inline level_bits raw_levels(const wavelet_matrix& wm) {
    level_bits out;
    for(const auto& l : wm.levels()) out.levels.push_back(l.bits());
    out.zeros.assign(wm.zeros().begin(), wm.zeros().end());
    return out;
}

} // namespace wvlt
