#include <gtest/gtest.h>

#include "oracles.hpp"
#include "qmatch/enumerate.hpp"
#include "qmatch/errors.hpp"
#include "qmatch/graph6.hpp"

using namespace qmatch;

TEST(Enumerate, InclusionExclusionOracle) {
    const auto c = oracle::connected_counts(7);
    EXPECT_EQ(c[1], 1u);
    EXPECT_EQ(c[3], 4u);
    EXPECT_EQ(c[4], 38u);
    EXPECT_EQ(c[6], 26704u);
    EXPECT_EQ(c[7], 1866256u);
}

TEST(Enumerate, CountsMatchOracle) {
    const auto c = oracle::connected_counts(6);
    for (std::size_t n = 1; n <= 6; ++n) {
        ASSERT_EQ(all_connected(n).size(), c[n]) << "n=" << n;
    }
}

TEST(Enumerate, SevenNeedsFlag) {
    EXPECT_THROW(all_connected(7), CapacityError);
    EXPECT_THROW(all_connected(8, true), CapacityError);
    EXPECT_THROW(all_connected(0), InputError);
}

TEST(Enumerate, SevenWithFlag) {
    std::size_t count = 0;
    for_each_connected(7, [&](EdgeMask, const Graph&) { ++count; }, true);
    EXPECT_EQ(count, oracle::connected_counts(7)[7]);
}

TEST(Enumerate, IncreasingMaskOrderAndConnected) {
    EdgeMask prev = 0;
    bool first = true;
    for_each_connected(5, [&](EdgeMask mask, const Graph& g) {
        ASSERT_TRUE(first || mask > prev);
        first = false;
        prev = mask;
        ASSERT_EQ(mask_of(g), mask);
        ASSERT_TRUE(oracle::connected(g));
    });
}

TEST(Enumerate, MaskSharesGraph6PairOrder) {
    // Single-edge masks: graph6 body bit k is pair k.
    for (std::size_t k = 0; k < pair_count(6); ++k) {
        const Graph g = graph_from_mask(6, EdgeMask{1} << k);
        const std::string line = encode_graph6(g);
        const auto byte = static_cast<unsigned>(line[1 + k / 6] - 63);
        ASSERT_EQ(byte, 1u << (5 - k % 6));
    }
    EXPECT_EQ(pair_index(2, 3), 5u);
    EXPECT_EQ(pair_index(3, 0), 3u);
}

TEST(Sample, Deterministic) {
    const auto a = sample_connected(10, 0.5, 3, 7);
    const auto b = sample_connected(10, 0.5, 3, 7);
    EXPECT_EQ(a, b);
    EXPECT_NE(sample_connected(10, 0.5, 3, 8), a);
}

TEST(Sample, TwoVertices) {
    const auto g = sample_connected(2, 0.99, 1, 1);
    ASSERT_EQ(g.size(), 1u);
    EXPECT_EQ(g.front(), complete_graph(2));
}

TEST(Sample, AllConnected) {
    for (const Graph& g : sample_connected(15, 0.2, 200, 3)) {
        ASSERT_TRUE(oracle::connected(g));
    }
}

TEST(Sample, Errors) {
    EXPECT_THROW(sample_connected(10, 0.0, 1, 1), InputError);
    EXPECT_THROW(sample_connected(10, 1.0, 1, 1), InputError);
    EXPECT_THROW(sample_connected(1, 0.5, 1, 1), InputError);
    EXPECT_THROW(sample_connected(30, 0.001, 1, 1), SamplingError);
}
