#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "mf2scf/image.hpp"

namespace mf2scf {

inline constexpr std::size_t kUlbpBins = 59;
inline constexpr std::uint8_t kNonUniformLabel = 58;
inline constexpr std::size_t kGlobalFeatureLength = 5 * kUlbpBins;

/// Circular count of 0/1 transitions in an 8-bit pattern.
[[nodiscard]] int uniformity(std::uint8_t code) noexcept;

/// u2 mapping: the 58 codes with at most two transitions map to 0..57 in
/// ascending code order, every other code maps to 58.
[[nodiscard]] const std::array<std::uint8_t, 256>& u2_table() noexcept;

// Neighbor p sits at offset (dx[p], dy[p]) from the center: p = 0 is the
// right neighbor, then counter-clockwise on screen (y grows downward).
inline constexpr std::array<int, 8> kLbpDx = {1, 1, 0, -1, -1, -1, 0, 1};
inline constexpr std::array<int, 8> kLbpDy = {0, -1, -1, -1, 0, 1, 1, 1};

/// Interior (W-2)x(H-2) label plane.
using UlbpLabelImage = Raster<std::uint8_t>;
using Histogram59 = std::array<double, kUlbpBins>;

/// Raw 8-bit LBP code of every interior pixel; bit p is set iff I_p > I_c.
[[nodiscard]] Raster<std::uint8_t> lbp_codes(const GrayImage& plane);

/// Throws ImageTooSmall for planes below 3x3 and InvalidArgument for P != 8.
[[nodiscard]] UlbpLabelImage ulbp_image(const GrayImage& plane, int neighbors = 8);

/// 59-bin label histogram, L1-normalized.
[[nodiscard]] Histogram59 ulbp_histogram(const UlbpLabelImage& labels);

struct GlobalFeature {
    // [GSI, GoI, CC, DC, EC] segments of 59 bins each.
    std::vector<double> values;
};

[[nodiscard]] GlobalFeature global_feature(const GrayImage& gsi, const GrayImage& goi, const GrayImage& cc,
                                           const GrayImage& dc, const GrayImage& ec);

}  // namespace mf2scf
