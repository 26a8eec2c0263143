#pragma once

#include <wvlt/bit_vector.hpp>

#include <cstdint>
#include <random>
#include <string>
#include <vector>

namespace wvlt::fixtures {

// T = 0167154263 over sigma = 8
inline const std::vector<std::uint32_t> running_example = {0, 1, 6, 7, 1, 5, 4, 2, 6, 3};

inline std::vector<std::uint32_t> random_text(std::mt19937_64& rng, std::size_t n, std::uint64_t sigma) {
    std::vector<std::uint32_t> t(n);
    // mix uniform and skewed draws so some symbols stay absent
    std::uniform_int_distribution<std::uint64_t> uni(0, sigma - 1);
    const bool skewed = sigma > 2 && (rng() & 1);
    std::geometric_distribution<std::uint64_t> geo(0.2);
    for(auto& c : t) c = static_cast<std::uint32_t>(skewed ? std::min(geo(rng), sigma - 1) : uni(rng));
    return t;
}

inline bit_vector random_bits(std::mt19937_64& rng, std::size_t n, double density) {
    bit_vector bv(n);
    std::bernoulli_distribution d(density);
    for(std::size_t i = 0; i < n; ++i) if(d(rng)) bv.set(i, true);
    return bv;
}

inline std::vector<std::string> level_strings(const std::vector<bit_vector>& levels) {
    std::vector<std::string> out;
    for(const auto& l : levels) out.push_back(l.to_string());
    return out;
}

} // namespace wvlt::fixtures
