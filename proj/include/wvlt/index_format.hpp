#pragma once

#include <wvlt/bit_vector.hpp>
#include <wvlt/structures.hpp>

#include <cstdint>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <variant>

namespace wvlt {

// Index file layout (all integers little-endian):
//   "WVLT" | version u8 = 1 | kind u8 (0 = tree, 1 = matrix)
//   n u64 | sigma u64 | level count u16
//   matrix only: level count x u64 zeros
//   each level as a serialized bit_vector
inline constexpr char index_magic[4] = {'W', 'V', 'L', 'T'};
inline constexpr std::uint8_t index_version = 1;

struct index_file {
    structure_kind kind = structure_kind::tree;
    std::uint64_t n = 0;
    std::uint64_t sigma = 1;
    level_bits bits;

    friend bool operator==(const index_file&, const index_file&) = default;
};

inline void write_index(std::ostream& os, const index_file& f) {
    os.write(index_magic, 4);
    io::write_u8(os, index_version);
    io::write_u8(os, static_cast<std::uint8_t>(f.kind));
    io::write_u64(os, f.n);
    io::write_u64(os, f.sigma);
    io::write_u16(os, static_cast<std::uint16_t>(f.bits.levels.size()));
    if(f.kind == structure_kind::matrix) {
        for(auto z : f.bits.zeros) io::write_u64(os, z);
    }
    for(const auto& bv : f.bits.levels) serialize(os, bv);
}

inline index_file read_index(std::istream& is) {
    char magic[4];
    io::read_exact(is, magic, 4);
    if(std::string_view(magic, 4) != std::string_view(index_magic, 4)) throw io::format_error("bad magic");
    if(io::read_u8(is) != index_version) throw io::format_error("unsupported index version");
    index_file f;
    const auto kind = io::read_u8(is);
    if(kind > 1) throw io::format_error("unknown structure kind");
    f.kind = static_cast<structure_kind>(kind);
    f.n = io::read_u64(is);
    f.sigma = io::read_u64(is);
    const auto num_levels = io::read_u16(is);
    if(f.sigma == 0 || num_levels != code_width(f.sigma)) throw io::format_error("level count does not match sigma");
    if(f.kind == structure_kind::matrix) {
        f.bits.zeros.resize(num_levels);
        for(auto& z : f.bits.zeros) z = io::read_u64(is);
    }
    f.bits.levels.reserve(num_levels);
    for(unsigned l = 0; l < num_levels; ++l) {
        f.bits.levels.push_back(deserialize_bit_vector(is));
        if(f.bits.levels.back().size() != f.n) throw io::format_error("level length does not match n");
    }
    return f;
}

inline index_file to_index(const level_wavelet_tree& wt) {
    return {structure_kind::tree, wt.size(), wt.sigma(), raw_levels(wt)};
}

inline index_file to_index(const wavelet_matrix& wm) {
    return {structure_kind::matrix, wm.size(), wm.sigma(), raw_levels(wm)};
}

using any_structure = std::variant<level_wavelet_tree, wavelet_matrix>;

/// Builds the queryable structure (rank/select supports are rebuilt here,
/// they are never stored).
inline any_structure load_structure(index_file f) {
    if(f.kind == structure_kind::tree)
        return level_wavelet_tree(f.n, f.sigma, std::move(f.bits.levels));
    return wavelet_matrix(f.n, f.sigma, std::move(f.bits.levels), std::move(f.bits.zeros));
}

inline std::string to_bytes(const index_file& f) {
    std::ostringstream os(std::ios::binary);
    write_index(os, f);
    return std::move(os).str();
}

} // namespace wvlt
