#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <vector>

#include "mf2scf/image.hpp"

namespace mf2scf {

inline constexpr std::size_t kHsvBins = 256;
inline constexpr std::size_t kColorFeatureLength = 3 * kHsvBins;

using ChannelHistogram = std::array<std::uint64_t, kHsvBins>;

struct HsvHistograms {
    ChannelHistogram h{};
    ChannelHistogram s{};
    ChannelHistogram v{};
};

// bin(H) = floor(H / 360 * 256) clamped to 255; S and V round to 0..255.
[[nodiscard]] std::size_t hue_bin(double hue_degrees) noexcept;
[[nodiscard]] std::size_t unit_bin(double unit_value) noexcept;

[[nodiscard]] HsvHistograms hsv_histograms(const HsvImage& img);

struct ColorFeature {
    // [H, S, V] segments of 256 bins, each min-max normalized on its own.
    std::vector<double> values;
};

// (x - min) / (max - min) per element; a constant input maps to all zeros.
[[nodiscard]] std::vector<double> min_max_normalize(std::span<const double> values);

[[nodiscard]] ColorFeature color_feature(const HsvHistograms& hists);

}  // namespace mf2scf
