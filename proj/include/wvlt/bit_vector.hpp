#pragma once

#include <algorithm>
#include <bit>
#include <cassert>
#include <cstddef>
#include <cstdint>
#include <istream>
#include <ostream>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace wvlt {

inline constexpr std::size_t word_bits = 64;

constexpr std::size_t words_for(std::size_t bits) {
    return (bits + word_bits - 1) / word_bits;
}

constexpr std::uint64_t low_mask(std::size_t len) {
    return len >= word_bits ? ~std::uint64_t{0} : ((std::uint64_t{1} << len) - 1);
}

/// Plain packed bit vector. Bit j lives in word j/64 at in-word position
/// j%64 (LSB first). Bits past size() in the last word are always zero.
class bit_vector {
public:
    bit_vector() = default;
    explicit bit_vector(std::size_t n) : size_(n), words_(words_for(n), 0) {}

    std::size_t size() const { return size_; }
    bool empty() const { return size_ == 0; }
    std::size_t num_words() const { return words_.size(); }

    bool operator[](std::size_t i) const { return get(i); }

    bool get(std::size_t i) const {
        assert(i < size_);
        return (words_[i / word_bits] >> (i % word_bits)) & 1u;
    }

    void set(std::size_t i, bool b) {
        assert(i < size_);
        const auto mask = std::uint64_t{1} << (i % word_bits);
        auto& w = words_[i / word_bits];
        w = b ? (w | mask) : (w & ~mask);
    }

    // Reads len <= 64 bits starting at pos; bit pos ends up in bit 0.
    std::uint64_t get_bits(std::size_t pos, std::size_t len) const {
        assert(len <= word_bits && pos + len <= size_);
        if(len == 0) return 0;
        const auto w = pos / word_bits;
        const auto off = pos % word_bits;
        std::uint64_t v = words_[w] >> off;
        if(off + len > word_bits) v |= words_[w + 1] << (word_bits - off);
        return v & low_mask(len);
    }

    // Raw word access. Concurrent writers must touch disjoint words; the
    // caller keeps the padding bits of the final word zero.
    std::span<std::uint64_t> words() { return words_; }
    std::span<const std::uint64_t> words() const { return words_; }

    std::size_t count_ones() const {
        std::size_t c = 0;
        for(auto w : words_) c += static_cast<std::size_t>(std::popcount(w));
        return c;
    }

    void clear_padding() {
        if(size_ % word_bits != 0) words_.back() &= low_mask(size_ % word_bits);
    }

    std::string to_string() const {
        std::string s(size_, '0');
        for(std::size_t i = 0; i < size_; ++i) if(get(i)) s[i] = '1';
        return s;
    }

    static bit_vector from_string(std::string_view s) {
        bit_vector bv(s.size());
        for(std::size_t i = 0; i < s.size(); ++i) {
            if(s[i] == '1') bv.set(i, true);
            else if(s[i] != '0') throw std::invalid_argument("bit string must contain only 0 and 1");
        }
        return bv;
    }

    std::size_t size_in_bytes() const { return words_.size() * sizeof(std::uint64_t); }

    friend bool operator==(const bit_vector&, const bit_vector&) = default;

private:
    std::size_t size_ = 0;
    std::vector<std::uint64_t> words_;
};

// ORs len bits of src starting at src_pos into dst starting at dst_pos.
// The destination range must be zero beforehand; only words overlapping
// [dst_pos, dst_pos + len) are written.
inline void or_bits(const bit_vector& src, std::size_t src_pos,
                    std::span<std::uint64_t> dst, std::size_t dst_pos, std::size_t len) {
    while(len > 0) {
        const auto off = dst_pos % word_bits;
        const auto chunk = std::min(len, word_bits - off);
        dst[dst_pos / word_bits] |= src.get_bits(src_pos, chunk) << off;
        src_pos += chunk;
        dst_pos += chunk;
        len -= chunk;
    }
}

namespace io {

inline void write_u64(std::ostream& os, std::uint64_t v) {
    char buf[8];
    for(int i = 0; i < 8; ++i) buf[i] = static_cast<char>((v >> (8 * i)) & 0xff);
    os.write(buf, 8);
}

inline void write_u16(std::ostream& os, std::uint16_t v) {
    const char buf[2] = {static_cast<char>(v & 0xff), static_cast<char>(v >> 8)};
    os.write(buf, 2);
}

inline void write_u8(std::ostream& os, std::uint8_t v) {
    os.put(static_cast<char>(v));
}

struct format_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

inline void read_exact(std::istream& is, char* buf, std::size_t n) {
    is.read(buf, static_cast<std::streamsize>(n));
    if(static_cast<std::size_t>(is.gcount()) != n) throw format_error("unexpected end of input");
}

inline std::uint64_t read_u64(std::istream& is) {
    unsigned char buf[8];
    read_exact(is, reinterpret_cast<char*>(buf), 8);
    std::uint64_t v = 0;
    for(int i = 7; i >= 0; --i) v = (v << 8) | buf[i];
    return v;
}

inline std::uint16_t read_u16(std::istream& is) {
    unsigned char buf[2];
    read_exact(is, reinterpret_cast<char*>(buf), 2);
    return static_cast<std::uint16_t>(buf[0] | (buf[1] << 8));
}

inline std::uint8_t read_u8(std::istream& is) {
    char c;
    read_exact(is, &c, 1);
    return static_cast<std::uint8_t>(c);
}

} // namespace io

// Wire format: u64 LE bit length, then ceil(length/64) u64 LE words.
inline void serialize(std::ostream& os, const bit_vector& bv) {
    io::write_u64(os, bv.size());
    for(auto w : bv.words()) io::write_u64(os, w);
}

inline bit_vector deserialize_bit_vector(std::istream& is) {
    const auto n = io::read_u64(is);
    // refuse absurd lengths before allocating
    if(n > (std::uint64_t{1} << 56)) throw io::format_error("bit vector length out of range");
    bit_vector bv(static_cast<std::size_t>(n));
    for(auto& w : bv.words()) w = io::read_u64(is);
    if(n % word_bits != 0 && (bv.words().back() & ~low_mask(n % word_bits)) != 0)
        throw io::format_error("non-zero padding bits in bit vector");
    return bv;
}

} // namespace wvlt
