#include <wvlt/construct.hpp>
#include <wvlt/oracle.hpp>
#include <wvlt/wt2wm.hpp>

#include "test_util.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>
#include <random>

using namespace wvlt;
using fixtures::running_example;

namespace {

// tree position -> matrix position by following each text position
// through both stable sorts
std::vector<std::size_t> brute_force_map(const std::vector<std::uint32_t>& t, unsigned width, unsigned level) {
    std::vector<std::size_t> by_tree(t.size()), by_matrix(t.size());
    std::iota(by_tree.begin(), by_tree.end(), 0);
    std::iota(by_matrix.begin(), by_matrix.end(), 0);
    auto pre = [&](std::size_t i) { return prefix_of(level, t[i], width); };
    std::stable_sort(by_tree.begin(), by_tree.end(), [&](auto a, auto b) { return pre(a) < pre(b); });
    std::stable_sort(by_matrix.begin(), by_matrix.end(), [&](auto a, auto b) {
        return reverse_bits(pre(a), level) < reverse_bits(pre(b), level);
    });
    std::vector<std::size_t> where(t.size()), out(t.size());
    for(std::size_t j = 0; j < t.size(); ++j) where[by_matrix[j]] = j;
    for(std::size_t i = 0; i < t.size(); ++i) out[i] = where[by_tree[i]];
    return out;
}

} // namespace

TEST(Wt2Wm, UnaryHistogramExamples) {
    const auto h = make_histogram<std::uint32_t>(running_example, 8);
    EXPECT_EQ(build_unary_histogram(h.counts, 8).bits().to_string(), "10110101010101101");

    std::vector<position_t> none{0, 0, 0, 0};
    EXPECT_EQ(build_unary_histogram(none, 3).bits().to_string(), "00");

    std::vector<position_t> zeros_only{4, 0};
    EXPECT_EQ(build_unary_histogram(zeros_only, 2).bits().to_string(), "11110");
}

TEST(Wt2Wm, UnaryHistogramRecoversSortedText) {
    std::mt19937_64 rng(3);
    for(int round = 0; round < 100; ++round) {
        const std::uint64_t sigma = 1 + rng() % 500;
        auto t = fixtures::random_text(rng, rng() % 800, sigma);
        const auto u = build_unary_histogram(make_histogram<std::uint32_t>(t, sigma).counts, sigma);
        EXPECT_EQ(u.ones(), t.size());
        EXPECT_EQ(u.zeros(), sigma - 1);
        std::sort(t.begin(), t.end());
        for(std::size_t k = 0; k < t.size(); ++k) ASSERT_EQ(u.rank0(*u.select1(k + 1)), t[k]);
    }
}

TEST(Wt2Wm, IntervalStartsOfRunningExample) {
    const auto h = make_histogram<std::uint32_t>(running_example, 8);
    interval_start_table x(h.counts, 3);
    EXPECT_EQ(x.raw().size(), 6u);
    EXPECT_EQ(x.start(2, 0b00), 0u);
    EXPECT_EQ(x.start(2, 0b10), 3u);
    EXPECT_EQ(x.start(2, 0b01), 5u);
    EXPECT_EQ(x.start(2, 0b11), 7u);
    EXPECT_EQ(x.start(1, 0), 0u);
    EXPECT_EQ(x.start(1, 1), 5u);

    std::vector<position_t> empty(16, 0);
    interval_start_table z(empty, 4);
    for(auto v : z.raw()) EXPECT_EQ(v, 0u);
}

TEST(Wt2Wm, MapPositionExamples) {
    const auto h = make_histogram<std::uint32_t>(running_example, 8);
    wt_to_wm_map map(h.counts, 8);
    for(std::size_t i = 0; i < 10; ++i) {
        EXPECT_EQ(map(0, i), i);
        EXPECT_EQ(map(1, i), i);
    }
    EXPECT_EQ(map(2, 3), 5u);
    EXPECT_EQ(map(2, 0), 0u);
    EXPECT_EQ(brute_force_map(running_example, 3, 2), (std::vector<std::size_t>{0, 1, 2, 5, 6, 3, 4, 7, 8, 9}));
    for(std::size_t i = 0; i < 10; ++i) EXPECT_EQ(map(2, i), brute_force_map(running_example, 3, 2)[i]);
}

TEST(Wt2Wm, MapMatchesBruteForce) {
    std::mt19937_64 rng(21);
    const std::uint64_t sigmas[] = {2, 3, 5, 16, 37, 200, 1000};
    for(int round = 0; round < 100; ++round) {
        const auto sigma = sigmas[round % 7];
        const auto width = code_width(sigma);
        const auto t = fixtures::random_text(rng, rng() % 600, sigma);
        const auto h = make_histogram<std::uint32_t>(t, sigma);
        wt_to_wm_map map(h.counts, sigma);
        for(unsigned l = 0; l < width; ++l) {
            const auto expected = brute_force_map(t, width, l);
            for(std::size_t i = 0; i < t.size(); ++i) ASSERT_EQ(map(l, i), expected[i]) << "l=" << l << " i=" << i;
        }
    }
}

TEST(Wt2Wm, ConvertRunningExample) {
    const auto wt = build_wavelet_tree<std::uint32_t>(running_example, 8);
    const auto wm = convert_wt_to_wm(wt);
    EXPECT_EQ(raw_levels(wm), oracle::naive_wm<std::uint32_t>(running_example, 8));
    EXPECT_EQ(std::vector<std::uint64_t>(wm.zeros().begin(), wm.zeros().end()),
              (std::vector<std::uint64_t>{5, 5, 5}));
}

TEST(Wt2Wm, SmallAlphabetsCopyVerbatim) {
    std::vector<std::uint32_t> t{1, 0, 1, 1, 0};
    const auto wt = build_wavelet_tree<std::uint32_t>(t, 2);
    const auto wm = convert_wt_to_wm(wt);
    EXPECT_EQ(wm.level(0).bits(), wt.level(0).bits());
    EXPECT_EQ(wm.zeros()[0], 2u);

    std::vector<std::uint32_t> ones(4, 0);
    const auto wm1 = convert_wt_to_wm(build_wavelet_tree<std::uint32_t>(ones, 1));
    EXPECT_EQ(wm1.width(), 0u);
    EXPECT_EQ(wm1.rank(0, 4), 4u);
}

TEST(Wt2Wm, ConvertMatchesDirectConstruction) {
    std::mt19937_64 rng(33);
    for(int round = 0; round < 100; ++round) {
        const std::uint64_t sigma = 1 + rng() % 3000;
        const auto t = fixtures::random_text(rng, rng() % 1500, sigma);
        const auto wt = build_wavelet_tree<std::uint32_t>(t, sigma);
        const auto direct = pc_construct<std::uint32_t>(t, sigma, structure_kind::matrix);
        ASSERT_EQ(raw_levels(convert_wt_to_wm(wt)), direct);
        const auto h = make_histogram<std::uint32_t>(t, sigma);
        ASSERT_EQ(raw_levels(convert_wt_to_wm(wt, h.counts)), direct);
    }
}
