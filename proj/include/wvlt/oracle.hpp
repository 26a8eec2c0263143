#pragma once

// Slow reference implementations. Nothing here reuses the production
// counting/prefix-sum code paths.

#include <wvlt/bit_vector.hpp>
#include <wvlt/structures.hpp>

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <numeric>
#include <optional>
#include <span>
#include <utility>
#include <stdexcept>
#include <vector>

namespace wvlt::oracle {

struct oracle_config {
    std::uint64_t max_n = 1'000'000;
    std::uint64_t max_sigma = std::uint64_t{1} << 20;
};

namespace detail {

inline unsigned width_of(std::uint64_t sigma) {
    unsigned w = 0;
    while((std::uint64_t{1} << w) < sigma) ++w;
    return w;
}

inline std::vector<int> bits_msb_first(std::uint64_t a, unsigned width) {
    std::vector<int> bits(width);
    for(unsigned k = 0; k < width; ++k) bits[width - 1 - k] = static_cast<int>((a >> k) & 1u);
    return bits;
}

inline std::uint64_t key_of(std::uint64_t a, unsigned width, unsigned level, bool reversed) {
    const auto bits = bits_msb_first(a, width);
    std::uint64_t key = 0;
    if(!reversed) {
        for(unsigned k = 0; k < level; ++k) key = key * 2 + static_cast<std::uint64_t>(bits[k]);
    } else {
        for(unsigned k = level; k-- > 0;) key = key * 2 + static_cast<std::uint64_t>(bits[k]);
    }
    return key;
}

template<typename Sym>
void check_guards(std::span<const Sym> text, std::uint64_t sigma, const oracle_config& cfg) {
    if(text.size() > cfg.max_n || sigma > cfg.max_sigma) throw std::length_error("input exceeds oracle guards");
    if(sigma == 0) throw std::invalid_argument("sigma must be positive");
    for(auto c : text)
        if(static_cast<std::uint64_t>(c) >= sigma) throw std::invalid_argument("symbol not below sigma");
}

template<typename Sym>
level_bits naive_levels(std::span<const Sym> text, std::uint64_t sigma, bool reversed, const oracle_config& cfg) {
    check_guards(text, sigma, cfg);
    const auto width = width_of(sigma);
    level_bits out;
    for(unsigned l = 0; l < width; ++l) {
        std::vector<std::pair<std::uint64_t, std::uint64_t>> keyed;
        keyed.reserve(text.size());
        for(auto c : text) keyed.emplace_back(key_of(c, width, l, reversed), c);
        std::stable_sort(keyed.begin(), keyed.end(),
                         [](const auto& a, const auto& b) { return a.first < b.first; });
        bit_vector bv(keyed.size());
        std::uint64_t zeros = 0;
        for(std::size_t i = 0; i < keyed.size(); ++i) {
            const int b = bits_msb_first(keyed[i].second, width)[l];
            if(b) bv.set(i, true);
            else ++zeros;
        }
        out.levels.push_back(std::move(bv));
        if(reversed) out.zeros.push_back(zeros);
    }
    return out;
}

} // namespace detail

/// Level l = l-th MSBs of the text stably sorted by l-bit prefix.
template<typename Sym>
level_bits naive_wt(std::span<const Sym> text, std::uint64_t sigma, const oracle_config& cfg = {}) {
    return detail::naive_levels(text, sigma, false, cfg);
}

/// Level l = l-th MSBs of the text stably sorted by reversed l-bit prefix;
/// zeros counted directly.
template<typename Sym>
level_bits naive_wm(std::span<const Sym> text, std::uint64_t sigma, const oracle_config& cfg = {}) {
    return detail::naive_levels(text, sigma, true, cfg);
}

template<typename Sym>
std::uint64_t naive_access(std::span<const Sym> text, std::size_t i) {
    if(i >= text.size()) throw std::out_of_range("access position out of range");
    return text[i];
}

template<typename Sym>
std::size_t naive_rank(std::span<const Sym> text, std::uint64_t c, std::size_t i) {
    if(i > text.size()) throw std::out_of_range("rank position out of range");
    std::size_t r = 0;
    for(std::size_t k = 0; k < i; ++k) r += static_cast<std::uint64_t>(text[k]) == c;
    return r;
}

template<typename Sym>
std::optional<std::size_t> naive_select(std::span<const Sym> text, std::uint64_t c, std::size_t j) {
    if(j == 0) return std::nullopt;
    for(std::size_t k = 0; k < text.size(); ++k) {
        if(static_cast<std::uint64_t>(text[k]) == c && --j == 0) return k;
    }
    return std::nullopt;
}

} // namespace wvlt::oracle
