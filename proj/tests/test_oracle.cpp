#include <wvlt/oracle.hpp>

#include "test_util.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace wvlt;
using fixtures::running_example;

TEST(Oracle, EmptyAndBinaryTexts) {
    std::vector<std::uint32_t> empty;
    const auto e = oracle::naive_wt<std::uint32_t>(empty, 8);
    ASSERT_EQ(e.levels.size(), 3u);
    for(const auto& l : e.levels) EXPECT_EQ(l.size(), 0u);

    std::vector<std::uint32_t> bin{1, 0, 0, 1, 1};
    const auto wt = oracle::naive_wt<std::uint32_t>(bin, 2);
    const auto wm = oracle::naive_wm<std::uint32_t>(bin, 2);
    EXPECT_EQ(wt.levels[0].to_string(), "10011");
    EXPECT_EQ(wm.levels, wt.levels);
    EXPECT_EQ(wm.zeros, (std::vector<std::uint64_t>{2}));
}

TEST(Oracle, RepeatedSymbolGivesConstantLevels) {
    std::vector<std::uint32_t> t(6, 5);
    const auto wm = oracle::naive_wm<std::uint32_t>(t, 8);
    EXPECT_EQ(wm.levels[0].to_string(), "111111");
    EXPECT_EQ(wm.levels[1].to_string(), "000000");
    EXPECT_EQ(wm.levels[2].to_string(), "111111");
}

TEST(Oracle, TextScans) {
    EXPECT_EQ(oracle::naive_rank<std::uint32_t>(running_example, 6, 10), 2u);
    EXPECT_EQ(oracle::naive_access<std::uint32_t>(running_example, 0), 0u);
    EXPECT_FALSE(oracle::naive_select<std::uint32_t>(running_example, 9, 1).has_value());
    EXPECT_EQ(oracle::naive_select<std::uint32_t>(running_example, 6, 2), 8u);
    EXPECT_THROW(oracle::naive_access<std::uint32_t>(running_example, 10), std::out_of_range);
}

TEST(Oracle, FirstLevelsAgree) {
    std::mt19937_64 rng(1);
    for(int round = 0; round < 50; ++round) {
        const std::uint64_t sigma = 2 + rng() % 1000;
        const auto t = fixtures::random_text(rng, rng() % 500, sigma);
        const auto wt = oracle::naive_wt<std::uint32_t>(t, sigma);
        const auto wm = oracle::naive_wm<std::uint32_t>(t, sigma);
        ASSERT_EQ(wt.levels[0], wm.levels[0]);
    }
}

TEST(Oracle, Guards) {
    std::vector<std::uint32_t> t(11, 0);
    EXPECT_THROW(oracle::naive_wt<std::uint32_t>(t, 2, {10, 100}), std::length_error);
    EXPECT_THROW(oracle::naive_wt<std::uint32_t>(t, 200, {100, 100}), std::length_error);
    std::vector<std::uint32_t> bad{3};
    EXPECT_THROW(oracle::naive_wm<std::uint32_t>(bad, 3), std::invalid_argument);
}
