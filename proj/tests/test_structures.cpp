#include <wvlt/construct.hpp>
#include <wvlt/index_format.hpp>
#include <wvlt/oracle.hpp>
#include <wvlt/structures.hpp>

#include "test_util.hpp"

#include <gtest/gtest.h>

#include <random>
#include <sstream>

using namespace wvlt;
using fixtures::running_example;

namespace {

struct example_structures : ::testing::Test {
    level_wavelet_tree wt = build_wavelet_tree<std::uint32_t>(running_example, 8);
    wavelet_matrix wm = build_wavelet_matrix<std::uint32_t>(running_example, 8);
};

template<typename S>
void check_queries(const S& s, const std::vector<std::uint32_t>& t, std::uint64_t sigma) {
    for(std::size_t i = 0; i < t.size(); ++i) ASSERT_EQ(s.access(i), t[i]);
    for(std::uint64_t c = 0; c < sigma; ++c) {
        std::size_t count = 0;
        for(std::size_t i = 0; i <= t.size(); ++i) {
            ASSERT_EQ(s.rank(c, i), count) << "c=" << c << " i=" << i;
            if(i < t.size() && t[i] == c) {
                ++count;
                ASSERT_EQ(s.select(c, count), i);
            }
        }
        ASSERT_FALSE(s.select(c, count + 1).has_value());
        ASSERT_FALSE(s.select(c, 0).has_value());
    }
}

} // namespace

TEST_F(example_structures, TreeQueries) {
    EXPECT_EQ(wt.access(2), 6u);
    EXPECT_EQ(wt.access(0), 0u);
    EXPECT_EQ(wt.access(9), 3u);
    EXPECT_EQ(wt.rank(6, 10), 2u);
    EXPECT_EQ(wt.rank(3, 0), 0u);
    EXPECT_EQ(wt.rank(5, 6), 1u);
    EXPECT_EQ(wt.select(6, 2), 8u);
    EXPECT_EQ(wt.select(0, 1), 0u);
    EXPECT_FALSE(wt.select(4, 2).has_value());
}

TEST_F(example_structures, MatrixQueries) {
    EXPECT_EQ(wm.access(2), 6u);
    EXPECT_EQ(wm.rank(6, 10), 2u);
    EXPECT_EQ(wm.select(1, 2), 4u);
    EXPECT_FALSE(wm.select(4, 2).has_value());
}

TEST_F(example_structures, ZerosMatchLevelCounts) {
    for(unsigned l = 0; l < wm.width(); ++l) EXPECT_EQ(wm.zeros()[l], wm.level(l).rank0(wm.size()));
}

TEST_F(example_structures, FirstTwoLevelsCoincide) {
    EXPECT_EQ(wt.level(0).bits(), wm.level(0).bits());
    EXPECT_EQ(wt.level(1).bits(), wm.level(1).bits());
}

TEST(Structures, ZerosFromHistogram) {
    std::vector<position_t> h3{1, 2, 1, 1, 1, 1, 2, 1}, h2{3, 2, 2, 3}, same{7, 0};
    EXPECT_EQ(zeros_from_histogram(h3, 3), 5u);
    EXPECT_EQ(zeros_from_histogram(h2, 2), 5u);
    EXPECT_EQ(zeros_from_histogram(same, 1), 7u);
}

TEST(Structures, ExhaustiveQueriesOnRandomTexts) {
    std::mt19937_64 rng(13);
    const std::uint64_t sigmas[] = {1, 2, 3, 5, 16, 41, 200};
    for(int round = 0; round < 70; ++round) {
        const auto sigma = sigmas[round % 7];
        const auto t = fixtures::random_text(rng, rng() % 400, sigma);
        check_queries(build_wavelet_tree<std::uint32_t>(t, sigma), t, sigma);
        check_queries(build_wavelet_matrix<std::uint32_t>(t, sigma), t, sigma);
    }
}

TEST(Structures, SingleSymbolAlphabet) {
    std::vector<std::uint32_t> t(7, 0);
    const auto wt = build_wavelet_tree<std::uint32_t>(t, 1);
    const auto wm = build_wavelet_matrix<std::uint32_t>(t, 1);
    EXPECT_EQ(wt.width(), 0u);
    EXPECT_EQ(wt.access(3), 0u);
    EXPECT_EQ(wt.rank(0, 5), 5u);
    EXPECT_EQ(wt.select(0, 4), 3u);
    EXPECT_FALSE(wt.select(0, 8).has_value());
    EXPECT_EQ(wm.access(6), 0u);
    EXPECT_EQ(wm.rank(0, 7), 7u);
    EXPECT_EQ(wm.select(0, 1), 0u);
}

TEST(Structures, EmptyText) {
    std::vector<std::uint32_t> t;
    const auto wt = build_wavelet_tree<std::uint32_t>(t, 5);
    const auto wm = build_wavelet_matrix<std::uint32_t>(t, 5);
    for(std::uint64_t c = 0; c < 5; ++c) {
        EXPECT_EQ(wt.rank(c, 0), 0u);
        EXPECT_EQ(wm.rank(c, 0), 0u);
        EXPECT_FALSE(wt.select(c, 1).has_value());
        EXPECT_FALSE(wm.select(c, 1).has_value());
    }
}

TEST(Structures, RejectsInconsistentLevels) {
    std::vector<bit_vector> levels{bit_vector(3)};
    EXPECT_THROW(level_wavelet_tree(3, 8, levels), std::invalid_argument);
    EXPECT_THROW(level_wavelet_tree(4, 2, levels), std::invalid_argument);
    EXPECT_THROW(wavelet_matrix(3, 2, levels, {}), std::invalid_argument);
}

TEST(IndexFormat, HeaderLayout) {
    const auto wm = build_wavelet_matrix<std::uint32_t>(running_example, 8);
    const auto bytes = to_bytes(to_index(wm));
    ASSERT_GE(bytes.size(), 24u + 2u);
    EXPECT_EQ(bytes.substr(0, 4), "WVLT");
    EXPECT_EQ(bytes[4], 1);
    EXPECT_EQ(bytes[5], 1);
    EXPECT_EQ(static_cast<unsigned char>(bytes[6]), 10);  // n
    EXPECT_EQ(static_cast<unsigned char>(bytes[14]), 8);  // sigma
    EXPECT_EQ(static_cast<unsigned char>(bytes[22]), 3);  // level count
    EXPECT_EQ(static_cast<unsigned char>(bytes[24]), 5);  // Z[0]
    // 4 + 1 + 1 + 8 + 8 + 2 + 3*8 zeros + 3 * (8 + 8) levels
    EXPECT_EQ(bytes.size(), 24u + 24u + 48u);

    const auto tree_bytes = to_bytes(to_index(build_wavelet_tree<std::uint32_t>(running_example, 8)));
    EXPECT_EQ(tree_bytes[5], 0);
    EXPECT_EQ(tree_bytes.size(), 24u + 48u);
}

TEST(IndexFormat, RoundTripAnswersIdentically) {
    std::mt19937_64 rng(19);
    for(int round = 0; round < 40; ++round) {
        const std::uint64_t sigma = 1 + rng() % 300;
        const auto t = fixtures::random_text(rng, rng() % 700, sigma);
        for(auto kind : {structure_kind::tree, structure_kind::matrix}) {
            auto bits = construct<std::uint32_t>(t, sigma, {kind, algorithm::pc, 1});
            index_file f{kind, t.size(), sigma, bits};
            std::stringstream ss;
            write_index(ss, f);
            const auto first = ss.str();
            auto back = read_index(ss);
            EXPECT_EQ(back, f);
            EXPECT_EQ(to_bytes(back), first);
            std::visit([&](const auto& s) { check_queries(s, t, sigma); }, load_structure(back));
        }
    }
}

TEST(IndexFormat, RejectsCorruptHeaders) {
    const auto good = to_bytes(to_index(build_wavelet_tree<std::uint32_t>(running_example, 8)));
    auto bad_magic = good;
    bad_magic[0] = 'X';
    auto bad_version = good;
    bad_version[4] = 2;
    auto bad_levels = good;
    bad_levels[22] = 4;
    for(const auto& b : {bad_magic, bad_version, bad_levels, good.substr(0, good.size() - 3)}) {
        std::stringstream ss(b);
        EXPECT_THROW(read_index(ss), io::format_error);
    }
}
