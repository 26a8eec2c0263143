#pragma once

#include <wvlt/aux_alloc.hpp>
#include <wvlt/bit_perm.hpp>
#include <wvlt/parallel.hpp>

#include <cassert>
#include <concepts>
#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace wvlt {

template<typename T>
concept symbol_type = std::unsigned_integral<T>;

/// Callable mapping an ordinal r in [0, 2^level) to the prefix whose
/// interval is placed r-th on the level.
template<typename F>
concept interval_order = requires(const F& f, std::size_t r) {
    { f(r) } -> std::convertible_to<std::uint64_t>;
};

template<symbol_type Sym>
void validate_text(std::span<const Sym> text, std::uint64_t sigma) {
    for(std::size_t i = 0; i < text.size(); ++i) {
        if(static_cast<std::uint64_t>(text[i]) >= sigma)
            throw std::invalid_argument("symbol " + std::to_string(text[i]) + " at position " +
                                        std::to_string(i) + " is not below sigma=" + std::to_string(sigma));
    }
}

/// Occurrence counts of the level-bit prefixes of the text.
struct histogram {
    unsigned level = 0;
    position_array counts;

    std::size_t size() const { return counts.size(); }
    position_t total() const {
        position_t s = 0;
        for(auto c : counts) s += c;
        return s;
    }
};

/// Full-width histogram of the text, sized 2^code_width(sigma).
template<symbol_type Sym>
histogram make_histogram(std::span<const Sym> text, std::uint64_t sigma) {
    validate_text(text, sigma);
    histogram h;
    h.level = code_width(sigma);
    h.counts.assign(std::size_t{1} << h.level, 0);
    for(auto c : text) ++h.counts[c];
    return h;
}

/// counts[i] = counts[2i] + counts[2i+1] for i < 2^to_level, increasing i,
/// reusing the storage of the finer histogram.
inline void fold_in_place(std::span<position_t> counts, unsigned to_level) {
    const std::size_t m = std::size_t{1} << to_level;
    assert(counts.size() >= 2 * m);
    for(std::size_t i = 0; i < m; ++i) counts[i] = counts[2 * i] + counts[2 * i + 1];
}

inline histogram fold(const histogram& h) {
    assert(h.level >= 1);
    histogram out{h.level - 1, h.counts};
    fold_in_place(out.counts, out.level);
    out.counts.resize(std::size_t{1} << out.level);
    return out;
}

/// Zero-based prefix sum of counts[0, 2^level) taken in the order given by
/// `order`: starts[order(0)] = 0, starts[order(r)] = starts[order(r-1)] +
/// counts[order(r-1)].
template<interval_order Order>
void compute_borders(std::span<const position_t> counts, unsigned level, const Order& order,
                     std::span<position_t> starts) {
    const std::size_t m = std::size_t{1} << level;
    assert(counts.size() >= m && starts.size() >= m);
    position_t run = 0;
    for(std::size_t r = 0; r < m; ++r) {
        const auto q = static_cast<std::size_t>(order(r));
        starts[q] = run;
        run += counts[q];
    }
}

struct borders {
    unsigned level = 0;
    position_array starts;
};

template<interval_order Order>
borders make_borders(const histogram& h, const Order& order) {
    borders b{h.level, position_array(std::size_t{1} << h.level, 0)};
    compute_borders(std::span<const position_t>(h.counts), h.level, order, std::span<position_t>(b.starts));
    return b;
}

/// Below this many entries the interleaved prefix sum runs sequentially.
inline constexpr std::size_t parallel_scan_threshold = std::size_t{1} << 16;

/// Zero-based prefix sum over the virtual sequence
///   locals[0][order(0)], ..., locals[p-1][order(0)], locals[0][order(1)], ...
/// scattered back into outs[c][q]. With a pool and enough entries the scan
/// is done in two blocked passes across the pool's workers.
template<interval_order Order>
void interleaved_prefix_sum(std::span<const std::span<const position_t>> locals, unsigned level,
                            const Order& order, std::span<const std::span<position_t>> outs,
                            worker_pool* pool = nullptr) {
    const std::size_t p = locals.size();
    assert(p >= 1 && outs.size() == p);
    const std::size_t m = std::size_t{1} << level;
    for(std::size_t c = 0; c < p; ++c) {
        if(locals[c].size() < m || outs[c].size() < m)
            throw std::logic_error("interleaved_prefix_sum: histogram level mismatch");
    }
    const std::size_t total = p * m;

    if(pool == nullptr || pool->size() == 1 || total < parallel_scan_threshold) {
        position_t run = 0;
        for(std::size_t r = 0; r < m; ++r) {
            const auto q = static_cast<std::size_t>(order(r));
            for(std::size_t c = 0; c < p; ++c) {
                outs[c][q] = run;
                run += locals[c][q];
            }
        }
        return;
    }

    const std::size_t workers = pool->size();
    const std::size_t chunk = (total + workers - 1) / workers;
    aux_vector<position_t, aux_tag::misc> block_sums(workers, 0);
    auto at = [&](std::size_t v) -> std::pair<std::size_t, std::size_t> {
        return {v % p, static_cast<std::size_t>(order(v / p))};
    };
    pool->run([&](std::size_t w) {
        const auto b = std::min(total, w * chunk), e = std::min(total, b + chunk);
        position_t s = 0;
        for(auto v = b; v < e; ++v) {
            const auto [c, q] = at(v);
            s += locals[c][q];
        }
        block_sums[w] = s;
    });
    position_t run = 0;
    for(auto& s : block_sums) {
        const auto v = s;
        s = run;
        run += v;
    }
    pool->run([&](std::size_t w) {
        const auto b = std::min(total, w * chunk), e = std::min(total, b + chunk);
        position_t s = block_sums[w];
        for(auto v = b; v < e; ++v) {
            const auto [c, q] = at(v);
            outs[c][q] = s;
            s += locals[c][q];
        }
    });
}

/// Stable counting sort of the text by level-bit prefix. Worker c scans
/// slices[c] and places each symbol at borders[c][prefix]++, so the
/// destination layout (and hence the group order) is whatever the borders
/// encode. Borders are consumed.
template<symbol_type Sym>
void counting_sort_by_prefix(std::span<const Sym> text, unsigned level, unsigned width,
                             std::span<const std::span<position_t>> borders,
                             std::span<const index_range> slices, std::span<Sym> out,
                             worker_pool* pool = nullptr) {
    assert(borders.size() == slices.size() && out.size() == text.size());
    const unsigned shift = width - level;
    auto sort_slice = [&](std::size_t c) {
        auto& b = borders[c];
        for(auto i = slices[c].begin; i < slices[c].end; ++i) {
            const auto sym = text[i];
            const auto q = level == 0 ? std::size_t{0} : static_cast<std::size_t>(sym >> shift);
            out[b[q]++] = sym;
        }
    };
    if(pool != nullptr && pool->size() == slices.size()) {
        pool->run(sort_slice);
    } else {
        for(std::size_t c = 0; c < slices.size(); ++c) sort_slice(c);
    }
}

} // namespace wvlt
