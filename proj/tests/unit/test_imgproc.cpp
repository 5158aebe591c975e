#include <gtest/gtest.h>

#include <random>

#include "mf2scf/imgproc.hpp"
#include "oracles.hpp"

using namespace mf2scf;

namespace {

GrayImage gray_from(std::size_t w, std::size_t h, const std::function<int(std::size_t, std::size_t)>& f) {
    GrayImage g(w, h);
    for (std::size_t y = 0; y < h; ++y)
        for (std::size_t x = 0; x < w; ++x) g.at(x, y) = static_cast<std::uint8_t>(f(x, y));
    return g;
}

}  // namespace

TEST(Grayscale, BlackStaysBlack) {
    const GrayImage g = to_grayscale(RgbImage(5, 4, Rgb{0, 0, 0}));
    for (auto v : g.pixels()) EXPECT_EQ(v, 0);
    EXPECT_EQ(g.width(), 5u);
    EXPECT_EQ(g.height(), 4u);
}

TEST(Grayscale, LumaExamples) {
    EXPECT_EQ(luma({255, 255, 255}), 255);
    // 0.299 * 255 = 76.245
    EXPECT_EQ(luma({255, 0, 0}), 76);
    EXPECT_EQ(luma({0, 255, 0}), 150);  // 149.685
    EXPECT_EQ(luma({0, 0, 255}), 29);   // 29.07
}

TEST(Grayscale, GrayInputsAreFixedPoints) {
    for (int v = 0; v < 256; ++v) {
        const auto u = static_cast<std::uint8_t>(v);
        EXPECT_EQ(luma({u, u, u}), u);
    }
}

TEST(Sobel, ConstantImageHasZeroGradient) {
    const auto g = sobel_gradient(GrayImage(7, 5, 93));
    for (auto v : g.pixels()) EXPECT_EQ(v, 0);
}

TEST(Sobel, HorizontalRampGivesEight) {
    const auto ramp = gray_from(10, 6, [](std::size_t x, std::size_t) { return static_cast<int>(x); });
    const auto g = sobel_gradient(ramp);
    for (std::size_t y = 1; y + 1 < 6; ++y)
        for (std::size_t x = 1; x + 1 < 10; ++x) EXPECT_EQ(g.at(x, y), 8) << x << "," << y;
    // Replicate padding halves the central difference on the border column.
    EXPECT_EQ(g.at(0, 2), 4);
}

TEST(Sobel, HardStepClampsTo255) {
    const auto step = gray_from(8, 5, [](std::size_t x, std::size_t) { return x < 4 ? 0 : 255; });
    const auto g = sobel_gradient(step);
    for (std::size_t y = 1; y + 1 < 5; ++y) {
        EXPECT_EQ(g.at(3, y), 255);
        EXPECT_EQ(g.at(4, y), 255);
        EXPECT_EQ(g.at(1, y), 0);
    }
}

TEST(Sobel, RejectsTinyImages) {
    EXPECT_THROW((void)sobel_gradient(GrayImage(2, 5)), ImageTooSmall);
    EXPECT_THROW((void)sobel_gradient(GrayImage(5, 2)), ImageTooSmall);
}

TEST(Hsv, CanonicalValues) {
    const Hsv black = rgb_to_hsv(Rgb{0, 0, 0});
    EXPECT_EQ(black.h, 0.0);
    EXPECT_EQ(black.s, 0.0);
    EXPECT_EQ(black.v, 0.0);

    const Hsv red = rgb_to_hsv(Rgb{255, 0, 0});
    EXPECT_EQ(red.h, 0.0);
    EXPECT_EQ(red.s, 1.0);
    EXPECT_EQ(red.v, 1.0);

    const Hsv green = rgb_to_hsv(Rgb{0, 255, 0});
    EXPECT_DOUBLE_EQ(green.h, 120.0);
    EXPECT_EQ(green.s, 1.0);
    EXPECT_EQ(green.v, 1.0);

    // Cmax = R with G < B gives a negative raw hue that wraps.
    EXPECT_DOUBLE_EQ(rgb_to_hsv(Rgb{255, 0, 255}).h, 300.0);
}

TEST(Hsv, ValueIsMaxChannelAndRoundTrips) {
    std::mt19937_64 rng(7);
    for (int i = 0; i < 2000; ++i) {
        const Rgb px{static_cast<std::uint8_t>(rng() & 255), static_cast<std::uint8_t>(rng() & 255),
                     static_cast<std::uint8_t>(rng() & 255)};
        const Hsv hsv = rgb_to_hsv(px);
        EXPECT_EQ(hsv.v, std::max({px.r, px.g, px.b}) / 255.0);
        EXPECT_GE(hsv.h, 0.0);
        EXPECT_LT(hsv.h, 360.0);
        EXPECT_GE(hsv.s, 0.0);
        EXPECT_LE(hsv.s, 1.0);
        const Rgb back = oracle::hsv_to_rgb(hsv.h, hsv.s, hsv.v);
        EXPECT_LE(std::abs(back.r - px.r), 1);
        EXPECT_LE(std::abs(back.g - px.g), 1);
        EXPECT_LE(std::abs(back.b - px.b), 1);
    }
}
