#pragma once

#include <wvlt/bit_vector.hpp>

#include <bit>
#include <cassert>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

namespace wvlt {

namespace detail {

// position of the (r+1)-th set bit of w; requires popcount(w) > r
inline unsigned select_in_word(std::uint64_t w, unsigned r) {
    unsigned base = 0;
    for(;;) {
        const auto byte = static_cast<unsigned>(w & 0xff);
        const auto c = static_cast<unsigned>(std::popcount(byte));
        if(r < c) break;
        r -= c;
        w >>= 8;
        base += 8;
    }
    for(; r > 0; --r) w &= w - 1;
    return base + static_cast<unsigned>(std::countr_zero(w));
}

} // namespace detail

/// Immutable bit vector with constant-time rank and select.
///
/// Rank uses cumulative one-counts per 2048-bit superblock plus 16-bit
/// relative counts per 256-bit block, finishing with popcounts over at
/// most four words. Select samples the superblock holding every 8192nd
/// occurrence (separately for zeros and ones) and binary searches the
/// superblocks between two samples.
class rank_select {
public:
    static constexpr std::size_t superblock_bits = 2048;
    static constexpr std::size_t block_bits = 256;
    static constexpr std::size_t select_sample = 8192;

    rank_select() : rank_select(bit_vector{}) {}

    explicit rank_select(bit_vector bits) : bits_(std::move(bits)) { build(); }

    const bit_vector& bits() const { return bits_; }
    std::size_t size() const { return bits_.size(); }
    bool operator[](std::size_t i) const { return bits_.get(i); }

    std::size_t ones() const { return sb_ones_.back(); }
    std::size_t zeros() const { return size() - ones(); }

    /// Number of 1s in [0, i).
    std::size_t rank1(std::size_t i) const {
        assert(i <= size());
        const auto blk = i / block_bits;
        std::size_t r = sb_ones_[i / superblock_bits] + blk_ones_[blk];
        const auto words = bits_.words();
        const auto last = i / word_bits;
        for(auto w = blk * (block_bits / word_bits); w < last; ++w)
            r += static_cast<std::size_t>(std::popcount(words[w]));
        if(i % word_bits != 0)
            r += static_cast<std::size_t>(std::popcount(words[last] & low_mask(i % word_bits)));
        return r;
    }

    std::size_t rank0(std::size_t i) const { return i - rank1(i); }

    std::size_t rank(bool bit, std::size_t i) const { return bit ? rank1(i) : rank0(i); }

    /// Position of the j-th (1-based) occurrence of `bit`, or nullopt if
    /// j is zero or exceeds the number of occurrences.
    std::optional<std::size_t> select(bool bit, std::size_t j) const {
        const auto total = bit ? ones() : zeros();
        if(j == 0 || j > total) return std::nullopt;
        return bit ? select_impl<true>(j) : select_impl<false>(j);
    }

    std::optional<std::size_t> select1(std::size_t j) const { return select(true, j); }
    std::optional<std::size_t> select0(std::size_t j) const { return select(false, j); }

    std::size_t support_bytes() const {
        return sb_ones_.size() * sizeof(std::uint64_t) + blk_ones_.size() * sizeof(std::uint16_t) +
               (samples_[0].size() + samples_[1].size()) * sizeof(std::uint64_t);
    }

private:
    void build() {
        const auto n = bits_.size();
        const auto words = bits_.words();
        const auto num_sb = n / superblock_bits + 1;
        const auto num_blk = n / block_bits + 1;
        sb_ones_.assign(num_sb + 1, 0);
        blk_ones_.assign(num_blk, 0);

        std::size_t total = 0, in_sb = 0;
        constexpr auto words_per_blk = block_bits / word_bits;
        for(std::size_t b = 0; b < num_blk; ++b) {
            if((b * block_bits) % superblock_bits == 0) {
                sb_ones_[b * block_bits / superblock_bits] = total;
                in_sb = 0;
            }
            blk_ones_[b] = static_cast<std::uint16_t>(in_sb);
            for(std::size_t w = b * words_per_blk; w < std::min(words.size(), (b + 1) * words_per_blk); ++w) {
                const auto c = static_cast<std::size_t>(std::popcount(words[w]));
                total += c;
                in_sb += c;
            }
        }
        // sentinel after the last superblock holds the total
        for(auto s = (num_blk - 1) * block_bits / superblock_bits + 1; s <= num_sb; ++s) sb_ones_[s] = total;

        for(int x = 0; x < 2; ++x) {
            auto& samples = samples_[x];
            samples.clear();
            const auto occ = x ? total : n - total;
            for(std::size_t j = 1; j <= occ; j += select_sample) {
                // last superblock whose preceding count is < j
                std::size_t lo = samples.empty() ? 0 : samples.back(), hi = num_sb;
                while(hi - lo > 1) {
                    const auto mid = lo + (hi - lo) / 2;
                    if(count_before_sb(x != 0, mid) < j) lo = mid;
                    else hi = mid;
                }
                samples.push_back(lo);
            }
        }
    }

    std::size_t count_before_sb(bool bit, std::size_t sb) const {
        return bit ? sb_ones_[sb] : sb * superblock_bits - sb_ones_[sb];
    }

    template<bool Bit>
    std::size_t select_impl(std::size_t j) const {
        const auto& samples = samples_[Bit ? 1 : 0];
        const auto s = (j - 1) / select_sample;
        std::size_t lo = samples[s];
        std::size_t hi = s + 1 < samples.size() ? samples[s + 1] + 1 : sb_ones_.size() - 1;
        while(hi - lo > 1) {
            const auto mid = lo + (hi - lo) / 2;
            if(count_before_sb(Bit, mid) < j) lo = mid;
            else hi = mid;
        }
        const auto sb = lo;
        auto rem = j - count_before_sb(Bit, sb);

        constexpr auto blocks_per_sb = superblock_bits / block_bits;
        auto blk = sb * blocks_per_sb;
        const auto blk_end = std::min(blk_ones_.size(), blk + blocks_per_sb);
        auto in_blk = [&](std::size_t b) {
            const std::size_t o = blk_ones_[b];
            return Bit ? o : (b - sb * blocks_per_sb) * block_bits - o;
        };
        while(blk + 1 < blk_end && in_blk(blk + 1) < rem) ++blk;
        rem -= in_blk(blk);

        const auto words = bits_.words();
        for(auto w = blk * (block_bits / word_bits);; ++w) {
            assert(w < words.size());
            const auto word = Bit ? words[w] : ~words[w];
            const auto c = static_cast<std::size_t>(std::popcount(word));
            if(rem <= c) return w * word_bits + detail::select_in_word(word, static_cast<unsigned>(rem - 1));
            rem -= c;
        }
    }

    bit_vector bits_;
    std::vector<std::uint64_t> sb_ones_;
    std::vector<std::uint16_t> blk_ones_;
    std::vector<std::uint64_t> samples_[2];
};

} // namespace wvlt
