#pragma once

#include <array>
#include <string>
#include <string_view>
#include <vector>

#include "mf2scf/image.hpp"

namespace mf2scf {

using BinaryMask = Raster<std::uint8_t, tags::Mask>;

enum class SliceShape { square, triangle, circle, ldc, rdc };

inline constexpr std::array<SliceShape, 5> kSliceShapes = {
    SliceShape::square, SliceShape::triangle, SliceShape::circle, SliceShape::ldc, SliceShape::rdc};

inline constexpr std::array<double, 4> kDefaultScaleFractions = {0.50, 0.65, 0.80, 0.95};

[[nodiscard]] std::string_view shape_name(SliceShape shape) noexcept;

struct MaskId {
    SliceShape shape = SliceShape::square;
    int scale_index = 0;

    // "<shape>_<scale_index>", used in exported file names.
    [[nodiscard]] std::string name() const;
};

struct Slice {
    MaskId id;
    BinaryMask mask;
};

/// The 20 masks in shape-major, scale-minor order.
using SliceSet = std::vector<Slice>;

/// Builds the 5 shapes x 4 scales mask set for a width x height image.
/// Throws ImageTooSmall when either side is below 8 pixels.
[[nodiscard]] SliceSet generate_masks(std::size_t width, std::size_t height,
                                      const std::array<double, 4>& fractions = kDefaultScaleFractions);

[[nodiscard]] std::size_t kept_count(const BinaryMask& mask) noexcept;

// Crops to the mask's bounding box and zero-fills pixels outside the mask.
[[nodiscard]] RgbImage apply_mask(const RgbImage& img, const BinaryMask& mask);

}  // namespace mf2scf
