#pragma once

#include <wvlt/aux_alloc.hpp>

#include <bit>
#include <cassert>
#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <vector>

namespace wvlt {

/// Number of bits per symbol code for an alphabet of size sigma,
/// i.e. ceil(lg sigma); zero for sigma <= 1.
constexpr unsigned code_width(std::uint64_t sigma) {
    return sigma <= 1 ? 0u : static_cast<unsigned>(std::bit_width(sigma - 1));
}

/// k-th most significant bit of the width-bit code of a.
constexpr bool bit_of(unsigned k, std::uint64_t a, unsigned width) {
    assert(k < width);
    return (a >> (width - 1 - k)) & 1u;
}

/// The k most significant bits of the width-bit code of a.
constexpr std::uint64_t prefix_of(unsigned k, std::uint64_t a, unsigned width) {
    assert(k <= width);
    return k == 0 ? 0 : a >> (width - k);
}

constexpr std::uint64_t reverse_bits(std::uint64_t v, unsigned width) {
    assert(width == 64 || v < (std::uint64_t{1} << width));
    std::uint64_t r = 0;
    for(unsigned i = 0; i < width; ++i) {
        r = (r << 1) | (v & 1u);
        v >>= 1;
    }
    return r;
}

/// Table of the bit-reversal permutation of order k: entry i is the
/// reversal of i's k-bit code. Supports shrinking to order k-1 in place
/// (rho_{k-1}(i) = rho_k(i) >> 1 for i < 2^{k-1}).
class bit_reversal_permutation {
public:
    using table_type = aux_vector<std::uint32_t, aux_tag::permutation>;

    static constexpr unsigned max_order = 32;

    explicit bit_reversal_permutation(unsigned k) : order_(k) {
        if(k > max_order) throw std::length_error("bit-reversal order too large");
        table_.resize(std::size_t{1} << k);
        table_[0] = 0;
        // expansion: rho_{j+1} = (2 rho_j, 2 rho_j + 1)
        for(unsigned j = 0; j < k; ++j) {
            const std::size_t half = std::size_t{1} << j;
            for(std::size_t i = 0; i < half; ++i) {
                table_[i] <<= 1;
                table_[half + i] = table_[i] | 1u;
            }
        }
    }

    unsigned order() const { return order_; }
    std::size_t size() const { return std::size_t{1} << order_; }

    std::uint32_t operator()(std::size_t i) const {
        assert(i < size());
        return table_[i];
    }

    void contract() {
        assert(order_ > 0);
        --order_;
        const auto n = size();
        for(std::size_t i = 0; i < n; ++i) table_[i] >>= 1;
    }

private:
    unsigned order_;
    table_type table_;
};

/// Ordering of 2^level intervals: identity (wavelet tree) or bit reversal
/// (wavelet matrix). Maps ordinal r to the prefix placed r-th.
struct identity_order {
    static constexpr bool reversed = false;
    std::uint64_t operator()(std::uint64_t r) const { return r; }
};

struct reversed_order {
    static constexpr bool reversed = true;
    unsigned level;
    std::uint64_t operator()(std::uint64_t r) const { return reverse_bits(r, level); }
};

} // namespace wvlt
