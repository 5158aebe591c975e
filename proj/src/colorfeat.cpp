#include "mf2scf/colorfeat.hpp"

#include <algorithm>
#include <cmath>

namespace mf2scf {

std::size_t hue_bin(double hue_degrees) noexcept {
    const double bin = std::floor(hue_degrees / 360.0 * static_cast<double>(kHsvBins));
    return static_cast<std::size_t>(std::clamp(bin, 0.0, static_cast<double>(kHsvBins - 1)));
}

std::size_t unit_bin(double unit_value) noexcept {
    const double bin = std::floor(unit_value * 255.0 + 0.5);
    return static_cast<std::size_t>(std::clamp(bin, 0.0, 255.0));
}

HsvHistograms hsv_histograms(const HsvImage& img) {
    HsvHistograms out;
    for (const Hsv& px : img.pixels()) {
        ++out.h[hue_bin(px.h)];
        ++out.s[unit_bin(px.s)];
        ++out.v[unit_bin(px.v)];
    }
    return out;
}

std::vector<double> min_max_normalize(std::span<const double> values) {
    std::vector<double> out(values.size(), 0.0);
    if (values.empty()) {
        return out;
    }
    const auto [lo, hi] = std::minmax_element(values.begin(), values.end());
    const double range = *hi - *lo;
    if (range > 0.0) {
        for (std::size_t i = 0; i < values.size(); ++i) {
            out[i] = (values[i] - *lo) / range;
        }
    }
    return out;
}

namespace {

void append_min_max(const ChannelHistogram& counts, std::vector<double>& out) {
    std::array<double, kHsvBins> real{};
    std::copy(counts.begin(), counts.end(), real.begin());
    const auto normalized = min_max_normalize(real);
    out.insert(out.end(), normalized.begin(), normalized.end());
}

}  // namespace

ColorFeature color_feature(const HsvHistograms& hists) {
    ColorFeature f;
    f.values.reserve(kColorFeatureLength);
    append_min_max(hists.h, f.values);
    append_min_max(hists.s, f.values);
    append_min_max(hists.v, f.values);
    return f;
}

}  // namespace mf2scf
