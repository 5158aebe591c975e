#include "mf2scf/imgproc.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace mf2scf {

void require_min_size(std::size_t width, std::size_t height, std::size_t min_side) {
    if (width < min_side || height < min_side) {
        throw ImageTooSmall("image is " + std::to_string(width) + "x" + std::to_string(height) +
                            ", need at least " + std::to_string(min_side) + " per side");
    }
}

std::uint8_t luma(Rgb px) noexcept {
    // Integer form of round(0.299 R + 0.587 G + 0.114 B); the weights sum to 1000.
    const unsigned weighted = 299u * px.r + 587u * px.g + 114u * px.b;
    return static_cast<std::uint8_t>(std::min(255u, (weighted + 500u) / 1000u));
}

GrayImage to_grayscale(const RgbImage& img) {
    GrayImage out(img.width(), img.height());
    for (std::size_t i = 0; i < img.size(); ++i) {
        out[i] = luma(img[i]);
    }
    return out;
}

GradientImage sobel_gradient(const GrayImage& gsi) {
    require_min_size(gsi.width(), gsi.height(), 3);
    const auto w = static_cast<long>(gsi.width());
    const auto h = static_cast<long>(gsi.height());
    auto px = [&](long x, long y) -> int {
        x = std::clamp(x, 0L, w - 1);
        y = std::clamp(y, 0L, h - 1);
        return gsi.at(static_cast<std::size_t>(x), static_cast<std::size_t>(y));
    };

    GradientImage out(gsi.width(), gsi.height());
    for (long y = 0; y < h; ++y) {
        for (long x = 0; x < w; ++x) {
            const int gx = (px(x + 1, y - 1) + 2 * px(x + 1, y) + px(x + 1, y + 1)) -
                           (px(x - 1, y - 1) + 2 * px(x - 1, y) + px(x - 1, y + 1));
            const int gy = (px(x - 1, y + 1) + 2 * px(x, y + 1) + px(x + 1, y + 1)) -
                           (px(x - 1, y - 1) + 2 * px(x, y - 1) + px(x + 1, y - 1));
            const double mag = std::sqrt(static_cast<double>(gx * gx + gy * gy));
            out.at(static_cast<std::size_t>(x), static_cast<std::size_t>(y)) =
                static_cast<std::uint8_t>(std::min(255.0, std::floor(mag + 0.5)));
        }
    }
    return out;
}

Hsv rgb_to_hsv(Rgb px) noexcept {
    const double r = px.r / 255.0;
    const double g = px.g / 255.0;
    const double b = px.b / 255.0;
    const double cmax = std::max({r, g, b});
    const double cmin = std::min({r, g, b});
    const double chroma = cmax - cmin;

    double h = 0.0;
    if (chroma == 0.0) {
        h = 0.0;
    } else if (cmax == r) {
        h = 60.0 * std::fmod((g - b) / chroma, 6.0);
    } else if (cmax == g) {
        h = 60.0 * ((b - r) / chroma + 2.0);
    } else {
        h = 60.0 * ((r - g) / chroma + 4.0);
    }
    if (h < 0.0) {
        h += 360.0;
    }
    if (h >= 360.0) {
        h -= 360.0;
    }
    const double s = cmax == 0.0 ? 0.0 : chroma / cmax;
    return {h, s, cmax};
}

HsvImage rgb_to_hsv(const RgbImage& img) {
    HsvImage out(img.width(), img.height());
    for (std::size_t i = 0; i < img.size(); ++i) {
        out[i] = rgb_to_hsv(img[i]);
    }
    return out;
}

}  // namespace mf2scf
