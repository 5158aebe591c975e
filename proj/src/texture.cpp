#include "mf2scf/texture.hpp"

#include <bit>

#include "mf2scf/imgproc.hpp"

namespace mf2scf {

int uniformity(std::uint8_t code) noexcept {
    const auto rotated = static_cast<std::uint8_t>((code >> 1) | (code << 7));
    return std::popcount(static_cast<unsigned>(code ^ rotated));
}

const std::array<std::uint8_t, 256>& u2_table() noexcept {
    static const std::array<std::uint8_t, 256> table = [] {
        std::array<std::uint8_t, 256> t{};
        std::uint8_t next = 0;
        for (int code = 0; code < 256; ++code) {
            t[code] = uniformity(static_cast<std::uint8_t>(code)) <= 2 ? next++ : kNonUniformLabel;
        }
        return t;
    }();
    return table;
}

Raster<std::uint8_t> lbp_codes(const GrayImage& plane) {
    require_min_size(plane.width(), plane.height(), 3);
    Raster<std::uint8_t> codes(plane.width() - 2, plane.height() - 2);
    for (std::size_t y = 1; y + 1 < plane.height(); ++y) {
        for (std::size_t x = 1; x + 1 < plane.width(); ++x) {
            const int center = plane.at(x, y);
            unsigned code = 0;
            for (std::size_t p = 0; p < 8; ++p) {
                const int neighbor = plane.at(x + kLbpDx[p], y + kLbpDy[p]);
                if (neighbor - center > 0) {
                    code |= 1u << p;
                }
            }
            codes.at(x - 1, y - 1) = static_cast<std::uint8_t>(code);
        }
    }
    return codes;
}

UlbpLabelImage ulbp_image(const GrayImage& plane, int neighbors) {
    if (neighbors != 8) {
        throw InvalidArgument("ulbp_image supports P = 8 only");
    }
    UlbpLabelImage labels = lbp_codes(plane);
    const auto& table = u2_table();
    for (auto& v : labels.pixels()) {
        v = table[v];
    }
    return labels;
}

Histogram59 ulbp_histogram(const UlbpLabelImage& labels) {
    Histogram59 hist{};
    for (std::uint8_t label : labels.pixels()) {
        hist[label < kUlbpBins ? label : kNonUniformLabel] += 1.0;
    }
    const auto total = static_cast<double>(labels.size());
    if (total > 0.0) {
        for (double& b : hist) {
            b /= total;
        }
    }
    return hist;
}

GlobalFeature global_feature(const GrayImage& gsi, const GrayImage& goi, const GrayImage& cc,
                             const GrayImage& dc, const GrayImage& ec) {
    const GrayImage* planes[] = {&gsi, &goi, &cc, &dc, &ec};
    for (const GrayImage* p : planes) {
        if (!p->same_shape(gsi)) {
            throw DimensionMismatch("global_feature planes must share one size");
        }
    }
    GlobalFeature f;
    f.values.reserve(kGlobalFeatureLength);
    for (const GrayImage* p : planes) {
        const Histogram59 h = ulbp_histogram(ulbp_image(*p));
        f.values.insert(f.values.end(), h.begin(), h.end());
    }
    return f;
}

}  // namespace mf2scf
