#pragma once

#include <wvlt/aux_alloc.hpp>
#include <wvlt/bit_perm.hpp>
#include <wvlt/bit_vector.hpp>
#include <wvlt/level_stats.hpp>
#include <wvlt/parallel.hpp>
#include <wvlt/structures.hpp>

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <numeric>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace wvlt {

enum class algorithm { pc, ps, levelpar, ddpc, ddps };

inline constexpr algorithm all_algorithms[] = {algorithm::pc, algorithm::ps, algorithm::levelpar,
                                               algorithm::ddpc, algorithm::ddps};

inline std::string_view to_string(algorithm a) {
    switch(a) {
    case algorithm::pc: return "pc";
    case algorithm::ps: return "ps";
    case algorithm::levelpar: return "levelpar";
    case algorithm::ddpc: return "ddpc";
    case algorithm::ddps: return "ddps";
    }
    return "?";
}

inline std::optional<algorithm> parse_algorithm(std::string_view s) {
    for(auto a : all_algorithms) if(to_string(a) == s) return a;
    return std::nullopt;
}

struct construction_plan {
    // lcm of the 64-bit word and a 64-byte cache line, in bits
    static constexpr std::size_t slice_granule = 512;

    structure_kind kind = structure_kind::tree;
    algorithm algo = algorithm::pc;
    std::size_t threads = 1;
};

/// Test-build instrumentation: records which worker wrote each output
/// word and flags a violation if two different workers touch one word.
class write_audit {
public:
    void reset(std::size_t levels, std::size_t words_per_level) {
        words_ = words_per_level;
        owners_ = std::make_unique<std::atomic<std::uint32_t>[]>(levels * words_per_level);
        for(std::size_t i = 0; i < levels * words_per_level; ++i) owners_[i] = 0;
        violations_ = 0;
    }

    void claim(unsigned level, std::size_t word, std::size_t worker) {
        const auto tag = static_cast<std::uint32_t>(worker + 1);
        std::uint32_t expected = 0;
        auto& slot = owners_[level * words_ + word];
        if(!slot.compare_exchange_strong(expected, tag) && expected != tag) ++violations_;
    }

    std::size_t violations() const { return violations_.load(); }

private:
    std::size_t words_ = 0;
    std::unique_ptr<std::atomic<std::uint32_t>[]> owners_;
    std::atomic<std::size_t> violations_{0};
};

namespace detail {

// Fold chain of one text slice: the level-l prefix histogram is stored at
// offset 2^l - 1, for l in [0, width).
using fold_chain = position_array;

inline std::span<const position_t> chain_level(const fold_chain& chain, unsigned level) {
    return std::span<const position_t>(chain).subspan((std::size_t{1} << level) - 1, std::size_t{1} << level);
}

inline void record_chain(fold_chain* chain, std::span<const position_t> counts, unsigned level) {
    if(chain == nullptr) return;
    const auto m = std::size_t{1} << level;
    std::copy_n(counts.begin(), m, chain->begin() + static_cast<std::ptrdiff_t>(m - 1));
}

// Writes words [begin/64, ceil(end/64)) of bv from bit_at(i); begin must be
// word aligned and end either word aligned or the vector's end.
template<typename BitAt>
void write_word_range(bit_vector& bv, std::size_t begin, std::size_t end, BitAt&& bit_at, unsigned level,
                      std::size_t worker, write_audit* audit) {
    auto words = bv.words();
    for(auto b = begin; b < end; b += word_bits) {
        const auto e = std::min(end, b + word_bits);
        std::uint64_t word = 0;
        for(auto i = b; i < e; ++i) word |= std::uint64_t{bit_at(i)} << (i - b);
        words[b / word_bits] = word;
        if(audit) audit->claim(level, b / word_bits, worker);
    }
}

template<typename Fn>
void with_order(structure_kind kind, std::optional<bit_reversal_permutation>& rho, unsigned level, Fn&& fn) {
    if(kind == structure_kind::tree) {
        fn(identity_order{});
    } else {
        while(rho->order() > level) rho->contract();
        fn(*rho);
    }
}

inline level_bits empty_levels(std::size_t n, unsigned width, structure_kind kind) {
    level_bits out;
    out.levels.reserve(width);
    for(unsigned l = 0; l < width; ++l) out.levels.emplace_back(n);
    if(kind == structure_kind::matrix) out.zeros.assign(width, 0);
    return out;
}

// Sequential prefix-counting construction. Auxiliary space: one histogram
// and one borders array of 2^width positions each.
template<symbol_type Sym>
level_bits pc_core(std::span<const Sym> text, unsigned width, structure_kind kind, fold_chain* chain,
                   write_audit* audit) {
    const auto n = text.size();
    auto out = empty_levels(n, width, kind);
    if(chain) chain->assign(width == 0 ? 0 : (std::size_t{1} << width) - 1, 0);
    if(width == 0) return out;

    const std::size_t sigma2 = std::size_t{1} << width;
    position_array hist(sigma2, 0);
    position_array starts(sigma2, 0);

    const unsigned msb = width - 1;
    for(auto c : text) ++hist[c];
    write_word_range(out.levels[0], 0, n, [&](std::size_t i) { return (text[i] >> msb) & 1u; }, 0, 0, audit);
    if(chain) (*chain)[0] = n;

    std::optional<bit_reversal_permutation> rho;
    if(kind == structure_kind::matrix && width >= 2) rho.emplace(width - 1);

    for(unsigned l = width - 1; l >= 1; --l) {
        if(kind == structure_kind::matrix) out.zeros[l] = zeros_from_histogram(hist, l + 1);
        fold_in_place(hist, l);
        record_chain(chain, hist, l);
        with_order(kind, rho, l, [&](const auto& order) { compute_borders<>(hist, l, order, starts); });

        auto& bv = out.levels[l];
        const unsigned shift = width - l;
        const unsigned bit_shift = width - 1 - l;
        for(auto c : text) {
            const auto pos = starts[c >> shift]++;
            if((c >> bit_shift) & 1u) bv.set(pos, true);
        }
        if(audit) for(std::size_t w = 0; w < bv.num_words(); ++w) audit->claim(l, w, 0);
    }
    if(kind == structure_kind::matrix) out.zeros[0] = hist[0];
    return out;
}

// Sort-based construction over a worker pool. Slices of the text are
// granule aligned so every worker writes whole words of each level.
template<symbol_type Sym>
level_bits ps_core(std::span<const Sym> text, unsigned width, structure_kind kind, worker_pool& pool,
                   std::span<Sym> scratch, fold_chain* chain, write_audit* audit) {
    const auto n = text.size();
    auto out = empty_levels(n, width, kind);
    if(chain) chain->assign(width == 0 ? 0 : (std::size_t{1} << width) - 1, 0);
    if(width == 0) return out;

    const auto p = pool.size();
    const std::size_t sigma2 = std::size_t{1} << width;
    const auto slices = granule_slices(n, p, construction_plan::slice_granule);

    position_array hist(p * sigma2, 0);
    position_array starts(p * sigma2, 0);
    std::vector<std::span<const position_t>> hist_views(p);
    std::vector<std::span<position_t>> hist_spans(p), start_spans(p);
    for(std::size_t c = 0; c < p; ++c) {
        hist_spans[c] = std::span<position_t>(hist).subspan(c * sigma2, sigma2);
        hist_views[c] = hist_spans[c];
        start_spans[c] = std::span<position_t>(starts).subspan(c * sigma2, sigma2);
    }

    const unsigned msb = width - 1;
    pool.run([&](std::size_t c) {
        auto h = hist_spans[c];
        for(auto i = slices[c].begin; i < slices[c].end; ++i) ++h[text[i]];
        write_word_range(out.levels[0], slices[c].begin, slices[c].end,
                         [&](std::size_t i) { return (text[i] >> msb) & 1u; }, 0, c, audit);
    });
    if(chain) (*chain)[0] = n;

    std::optional<bit_reversal_permutation> rho;
    if(kind == structure_kind::matrix && width >= 2) rho.emplace(width - 1);

    for(unsigned l = width - 1; l >= 1; --l) {
        if(kind == structure_kind::matrix) {
            std::uint64_t z = 0;
            for(std::size_t c = 0; c < p; ++c) z += zeros_from_histogram(hist_views[c], l + 1);
            out.zeros[l] = z;
        }
        pool.run([&](std::size_t c) { fold_in_place(hist_spans[c], l); });
        if(chain) {
            // a chain is only kept for single-worker runs
            record_chain(chain, hist_views[0], l);
        }
        with_order(kind, rho, l, [&](const auto& order) {
            interleaved_prefix_sum(std::span<const std::span<const position_t>>(hist_views), l, order,
                                   std::span<const std::span<position_t>>(start_spans), &pool);
        });
        counting_sort_by_prefix(text, l, width, std::span<const std::span<position_t>>(start_spans),
                                std::span<const index_range>(slices), scratch, &pool);
        const unsigned bit_shift = width - 1 - l;
        pool.run([&](std::size_t c) {
            write_word_range(out.levels[l], slices[c].begin, slices[c].end,
                             [&](std::size_t i) { return (scratch[i] >> bit_shift) & 1u; }, l, c, audit);
        });
    }
    if(kind == structure_kind::matrix) {
        std::uint64_t z = 0;
        for(std::size_t c = 0; c < p; ++c) z += hist_views[c][0];
        out.zeros[0] = z;
    }
    return out;
}

} // namespace detail

/// Sequential bottom-up construction by prefix counting (pcWT / pcWM).
template<symbol_type Sym>
level_bits pc_construct(std::span<const Sym> text, std::uint64_t sigma, structure_kind kind,
                        write_audit* audit = nullptr) {
    validate_text(text, sigma);
    return detail::pc_core(text, code_width(sigma), kind, nullptr, audit);
}

/// Parallel bottom-up construction via per-level stable counting sort
/// (psWT / psWM). Output is identical for every thread count.
template<symbol_type Sym>
level_bits ps_construct(std::span<const Sym> text, std::uint64_t sigma, structure_kind kind, std::size_t threads,
                        write_audit* audit = nullptr) {
    validate_text(text, sigma);
    worker_pool pool(threads);
    aux_vector<Sym, aux_tag::symbols> scratch(code_width(sigma) >= 2 ? text.size() : 0);
    return detail::ps_core(text, code_width(sigma), kind, pool, std::span<Sym>(scratch), nullptr, audit);
}

/// One worker per level, each with its own histogram and borders. Uses at
/// most width workers.
template<symbol_type Sym>
level_bits level_parallel_construct(std::span<const Sym> text, std::uint64_t sigma, structure_kind kind,
                                    std::size_t threads, write_audit* audit = nullptr) {
    validate_text(text, sigma);
    const unsigned width = code_width(sigma);
    const auto n = text.size();
    auto out = detail::empty_levels(n, width, kind);
    if(width == 0) return out;

    const std::size_t workers = std::max<std::size_t>(1, std::min<std::size_t>(threads, width));
    const std::size_t sigma2 = std::size_t{1} << width;
    worker_pool pool(workers);
    pool.run([&](std::size_t w) {
        position_array hist(sigma2, 0);
        position_array starts(sigma2, 0);
        for(unsigned l = static_cast<unsigned>(w); l < width; l += static_cast<unsigned>(workers)) {
            auto& bv = out.levels[l];
            if(l == 0) {
                const unsigned msb = width - 1;
                detail::write_word_range(bv, 0, n, [&](std::size_t i) { return (text[i] >> msb) & 1u; }, 0, w,
                                         audit);
                if(kind == structure_kind::matrix) out.zeros[0] = n - bv.count_ones();
                continue;
            }
            std::fill(hist.begin(), hist.end(), 0);
            for(auto c : text) ++hist[c];
            for(unsigned f = width - 1; f >= l; --f) {
                if(f == l && kind == structure_kind::matrix) out.zeros[l] = zeros_from_histogram(hist, l + 1);
                fold_in_place(hist, f);
            }
            if(kind == structure_kind::tree) {
                compute_borders<>(hist, l, identity_order{}, starts);
            } else {
                compute_borders<>(hist, l, bit_reversal_permutation(l), starts);
            }
            const unsigned shift = width - l;
            const unsigned bit_shift = width - 1 - l;
            for(auto c : text) {
                const auto pos = starts[c >> shift]++;
                if((c >> bit_shift) & 1u) bv.set(pos, true);
            }
            if(audit) for(std::size_t i = 0; i < bv.num_words(); ++i) audit->claim(l, i, w);
        }
    });
    return out;
}

/// Bits and fold chain of one text slice built independently.
struct partial_structure {
    index_range slice;
    level_bits bits;
    detail::fold_chain chain;
};

/// Concatenates, per level, the same-prefix intervals of all partials in
/// slice order, placing the groups in tree or matrix order. Destination
/// words are split into contiguous per-worker ranges; the worker owning a
/// word writes every bit of it, reading from however many sources
/// overlap it.
inline level_bits merge_partials(std::span<const partial_structure> partials, unsigned width, structure_kind kind,
                                 worker_pool& pool, write_audit* audit = nullptr) {
    std::size_t n = 0;
    for(const auto& part : partials) n += part.slice.size();
    auto out = detail::empty_levels(n, width, kind);
    if(width == 0) return out;

    const auto p = partials.size();
    for(const auto& part : partials) {
        if(part.bits.levels.size() != width || part.chain.size() != (std::size_t{1} << width) - 1)
            throw std::logic_error("merge_partials: partial structure does not match width");
        if(part.chain[0] != part.slice.size()) throw std::logic_error("merge_partials: histogram/slice mismatch");
    }
    if(kind == structure_kind::matrix) {
        for(const auto& part : partials)
            for(unsigned l = 0; l < width; ++l) out.zeros[l] += part.bits.zeros[l];
    }

    struct segment {
        std::size_t dst, src, len, part;
    };

    std::optional<bit_reversal_permutation> rho;
    if(kind == structure_kind::matrix) rho.emplace(width - 1);

    for(unsigned l = width; l-- > 0;) {
        const std::size_t m = std::size_t{1} << l;
        std::vector<std::span<const position_t>> locals(p);
        for(std::size_t c = 0; c < p; ++c) {
            locals[c] = detail::chain_level(partials[c].chain, l);
            if(std::accumulate(locals[c].begin(), locals[c].end(), position_t{0}) != partials[c].slice.size())
                throw std::logic_error("merge_partials: histogram/slice mismatch");
        }
        aux_vector<position_t, aux_tag::misc> dst(p * m), src(p * m);
        std::vector<std::span<position_t>> dst_spans(p), src_spans(p);
        for(std::size_t c = 0; c < p; ++c) {
            dst_spans[c] = std::span<position_t>(dst).subspan(c * m, m);
            src_spans[c] = std::span<position_t>(src).subspan(c * m, m);
        }

        aux_vector<segment, aux_tag::misc> segments;
        segments.reserve(p * m);
        detail::with_order(kind, rho, l, [&](const auto& order) {
            interleaved_prefix_sum(std::span<const std::span<const position_t>>(locals), l, order,
                                   std::span<const std::span<position_t>>(dst_spans), &pool);
            for(std::size_t c = 0; c < p; ++c) compute_borders<>(locals[c], l, order, src_spans[c]);
            for(std::size_t r = 0; r < m; ++r) {
                const auto q = static_cast<std::size_t>(order(r));
                for(std::size_t c = 0; c < p; ++c) {
                    if(locals[c][q] != 0) segments.push_back({dst_spans[c][q], src_spans[c][q], locals[c][q], c});
                }
            }
        });

        auto& level = out.levels[l];
        auto words = level.words();
        const auto num_words = words.size();
        const auto workers = pool.size();
        pool.run([&](std::size_t w) {
            const auto wb = num_words * w / workers, we = num_words * (w + 1) / workers;
            if(wb == we) return;
            const auto bit_begin = wb * word_bits, bit_end = std::min(n, we * word_bits);
            auto it = std::upper_bound(segments.begin(), segments.end(), bit_begin,
                                       [](std::size_t pos, const segment& s) { return pos < s.dst + s.len; });
            for(; it != segments.end() && it->dst < bit_end; ++it) {
                const auto b = std::max(it->dst, bit_begin);
                const auto e = std::min(it->dst + it->len, bit_end);
                or_bits(partials[it->part].bits.levels[l], it->src + (b - it->dst), words, b, e - b);
            }
            if(audit) for(auto i = wb; i < we; ++i) audit->claim(l, i, w);
        });
    }
    return out;
}

/// Domain decomposition: each worker builds a partial structure for its
/// granule-aligned slice with the sequential inner algorithm (pc or ps),
/// then the partials are merged.
template<symbol_type Sym>
level_bits dd_construct(std::span<const Sym> text, std::uint64_t sigma, structure_kind kind, std::size_t threads,
                        algorithm inner, write_audit* audit = nullptr) {
    validate_text(text, sigma);
    if(inner != algorithm::pc && inner != algorithm::ps)
        throw std::invalid_argument("domain decomposition inner algorithm must be pc or ps");
    const unsigned width = code_width(sigma);
    worker_pool pool(threads);
    const auto slices = granule_slices(text.size(), pool.size(), construction_plan::slice_granule);

    aux_vector<Sym, aux_tag::symbols> scratch(inner == algorithm::ps && width >= 2 ? text.size() : 0);
    std::vector<partial_structure> partials(pool.size());
    std::vector<scoped_aux_charge> charges(pool.size());
    pool.run([&](std::size_t c) {
        auto& part = partials[c];
        part.slice = slices[c];
        const auto local = text.subspan(slices[c].begin, slices[c].size());
        if(inner == algorithm::pc) {
            part.bits = detail::pc_core(local, width, kind, &part.chain, nullptr);
        } else {
            worker_pool single(1);
            std::span<Sym> local_scratch;
            if(!scratch.empty()) local_scratch = std::span<Sym>(scratch).subspan(slices[c].begin, slices[c].size());
            part.bits = detail::ps_core(local, width, kind, single, local_scratch, &part.chain, nullptr);
        }
        std::uint64_t bytes = 0;
        for(const auto& bv : part.bits.levels) bytes += bv.size_in_bytes();
        charges[c] = scoped_aux_charge(aux_tag::misc, bytes);
    });
    return merge_partials(partials, width, kind, pool, audit);
}

/// Runs the algorithm named in the plan.
template<symbol_type Sym>
level_bits construct(std::span<const Sym> text, std::uint64_t sigma, const construction_plan& plan,
                     write_audit* audit = nullptr) {
    switch(plan.algo) {
    case algorithm::pc: return pc_construct(text, sigma, plan.kind, audit);
    case algorithm::ps: return ps_construct(text, sigma, plan.kind, plan.threads, audit);
    case algorithm::levelpar: return level_parallel_construct(text, sigma, plan.kind, plan.threads, audit);
    case algorithm::ddpc: return dd_construct(text, sigma, plan.kind, plan.threads, algorithm::pc, audit);
    case algorithm::ddps: return dd_construct(text, sigma, plan.kind, plan.threads, algorithm::ps, audit);
    }
    throw std::invalid_argument("unknown algorithm");
}

template<symbol_type Sym>
level_wavelet_tree build_wavelet_tree(std::span<const Sym> text, std::uint64_t sigma,
                                      algorithm algo = algorithm::pc, std::size_t threads = 1) {
    auto bits = construct(text, sigma, {structure_kind::tree, algo, threads});
    return level_wavelet_tree(text.size(), sigma, std::move(bits.levels));
}

template<symbol_type Sym>
wavelet_matrix build_wavelet_matrix(std::span<const Sym> text, std::uint64_t sigma,
                                    algorithm algo = algorithm::pc, std::size_t threads = 1) {
    auto bits = construct(text, sigma, {structure_kind::matrix, algo, threads});
    return wavelet_matrix(text.size(), sigma, std::move(bits.levels), std::move(bits.zeros));
}

} // namespace wvlt
