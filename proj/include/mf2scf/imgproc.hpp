#pragma once

#include "mf2scf/image.hpp"

namespace mf2scf {

// BT.601 luma, rounded half-up and clamped to [0,255].
[[nodiscard]] std::uint8_t luma(Rgb px) noexcept;
[[nodiscard]] GrayImage to_grayscale(const RgbImage& img);

/// Sobel gradient magnitude round(sqrt(gx^2 + gy^2)) clamped to [0,255].
/// Borders are handled with replicate padding so the output keeps the
/// input dimensions. Throws ImageTooSmall below 3x3.
[[nodiscard]] GradientImage sobel_gradient(const GrayImage& gsi);

[[nodiscard]] Hsv rgb_to_hsv(Rgb px) noexcept;
[[nodiscard]] HsvImage rgb_to_hsv(const RgbImage& img);

void require_min_size(std::size_t width, std::size_t height, std::size_t min_side);

}  // namespace mf2scf
