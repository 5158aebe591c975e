#include <gtest/gtest.h>

#include <bit>
#include <numeric>
#include <random>

#include "mf2scf/texture.hpp"
#include "oracles.hpp"

using namespace mf2scf;

namespace {

GrayImage random_plane(std::mt19937_64& rng, std::size_t w, std::size_t h) {
    GrayImage g(w, h);
    for (auto& v : g.pixels()) v = static_cast<std::uint8_t>(rng() & 255);
    return g;
}

}  // namespace

TEST(Ulbp, U2TableMatchesTransitionCount) {
    const auto& table = u2_table();
    int next = 0;
    for (unsigned code = 0; code < 256; ++code) {
        const int u = oracle::transitions(code);
        EXPECT_EQ(uniformity(static_cast<std::uint8_t>(code)), u);
        if (u <= 2) {
            EXPECT_EQ(table[code], next++) << code;
        } else {
            EXPECT_EQ(table[code], kNonUniformLabel) << code;
        }
    }
    EXPECT_EQ(next, 58);
}

TEST(Ulbp, CenterOfThreeByThree) {
    // Neighbors in p order: right, upper-right, up, upper-left, left, lower-left, down, lower-right.
    GrayImage g(3, 3, 10);
    g.at(2, 1) = 20;  // p = 0
    g.at(2, 0) = 20;  // p = 1
    g.at(1, 0) = 10;  // p = 2 equal, so bit stays 0
    const auto codes = lbp_codes(g);
    ASSERT_EQ(codes.size(), 1u);
    EXPECT_EQ(codes[0], 0b00000011);
    EXPECT_EQ(ulbp_image(g)[0], u2_table()[3]);
}

TEST(Ulbp, ConstantPlaneIsAllZeroCode) {
    const auto h = ulbp_histogram(ulbp_image(GrayImage(10, 7, 55)));
    EXPECT_DOUBLE_EQ(h[0], 1.0);
    EXPECT_DOUBLE_EQ(std::accumulate(h.begin(), h.end(), 0.0), 1.0);
}

TEST(Ulbp, InvariantUnderIntensityShift) {
    std::mt19937_64 rng(1);
    for (int trial = 0; trial < 40; ++trial) {
        GrayImage g(12, 9);
        for (auto& v : g.pixels()) v = static_cast<std::uint8_t>(rng() % 200);
        const int shift = static_cast<int>(rng() % 56);
        GrayImage s = g;
        for (auto& v : s.pixels()) v = static_cast<std::uint8_t>(v + shift);
        EXPECT_EQ(ulbp_histogram(ulbp_image(g)), ulbp_histogram(ulbp_image(s)));
    }
}

TEST(Ulbp, RotationKeepsNonUniformBin) {
    std::mt19937_64 rng(2);
    for (int trial = 0; trial < 20; ++trial) {
        const std::size_t n = 11;
        const auto g = random_plane(rng, n, n);
        GrayImage rot(n, n);
        for (std::size_t y = 0; y < n; ++y)
            for (std::size_t x = 0; x < n; ++x) rot.at(y, n - 1 - x) = g.at(x, y);
        EXPECT_DOUBLE_EQ(ulbp_histogram(ulbp_image(g))[58], ulbp_histogram(ulbp_image(rot))[58]);
    }
}

TEST(Ulbp, HistogramIsNormalized) {
    std::mt19937_64 rng(4);
    const auto h = ulbp_histogram(ulbp_image(random_plane(rng, 20, 15)));
    EXPECT_NEAR(std::accumulate(h.begin(), h.end(), 0.0), 1.0, 1e-12);
    for (double v : h) EXPECT_GE(v, 0.0);
}

TEST(Ulbp, ArgumentChecks) {
    EXPECT_THROW((void)ulbp_image(GrayImage(2, 8)), ImageTooSmall);
    EXPECT_THROW((void)ulbp_image(GrayImage(8, 8), 16), InvalidArgument);
}

TEST(GlobalFeature, LengthAndSegments) {
    std::mt19937_64 rng(9);
    const auto a = random_plane(rng, 16, 16);
    const GrayImage zero(16, 16, 0);
    const auto f = global_feature(a, zero, zero, zero, a);
    ASSERT_EQ(f.values.size(), kGlobalFeatureLength);
    const auto ha = ulbp_histogram(ulbp_image(a));
    for (std::size_t i = 0; i < kUlbpBins; ++i) {
        EXPECT_EQ(f.values[i], ha[i]);
        EXPECT_EQ(f.values[4 * kUlbpBins + i], ha[i]);
    }
    EXPECT_DOUBLE_EQ(f.values[kUlbpBins], 1.0);
    EXPECT_THROW((void)global_feature(a, GrayImage(16, 15), zero, zero, zero), DimensionMismatch);
}
