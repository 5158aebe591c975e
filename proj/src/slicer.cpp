#include "mf2scf/slicer.hpp"

#include <algorithm>
#include <cmath>

#include "mf2scf/imgproc.hpp"

namespace mf2scf {

std::string_view shape_name(SliceShape shape) noexcept {
    switch (shape) {
        case SliceShape::square: return "square";
        case SliceShape::triangle: return "triangle";
        case SliceShape::circle: return "circle";
        case SliceShape::ldc: return "ldc";
        case SliceShape::rdc: return "rdc";
    }
    return "unknown";
}

std::string MaskId::name() const {
    return std::string(shape_name(shape)) + "_" + std::to_string(scale_index);
}

namespace {

struct Box {
    std::size_t x0, y0, side;
};

// Centered square of side round(f * min(W, H)).
Box centered_square(std::size_t w, std::size_t h, double f) {
    const auto side = std::max<std::size_t>(
        1, static_cast<std::size_t>(std::llround(f * static_cast<double>(std::min(w, h)))));
    return {(w - side) / 2, (h - side) / 2, side};
}

BinaryMask square_mask(std::size_t w, std::size_t h, double f) {
    BinaryMask m(w, h, 0);
    const Box b = centered_square(w, h, f);
    for (std::size_t y = b.y0; y < b.y0 + b.side; ++y) {
        for (std::size_t x = b.x0; x < b.x0 + b.side; ++x) {
            m.at(x, y) = 1;
        }
    }
    return m;
}

// Apex-up isosceles triangle inscribed in the square of the same scale:
// apex at the top-edge midpoint, base along the bottom edge.
BinaryMask triangle_mask(std::size_t w, std::size_t h, double f) {
    BinaryMask m(w, h, 0);
    const Box b = centered_square(w, h, f);
    const double side = static_cast<double>(b.side);
    for (std::size_t y = b.y0; y < b.y0 + b.side; ++y) {
        const double v = (static_cast<double>(y - b.y0) + 0.5) / side;
        for (std::size_t x = b.x0; x < b.x0 + b.side; ++x) {
            const double u = (static_cast<double>(x - b.x0) + 0.5) / side;
            if (std::abs(u - 0.5) <= 0.5 * v) {
                m.at(x, y) = 1;
            }
        }
    }
    return m;
}

BinaryMask circle_mask(std::size_t w, std::size_t h, double f) {
    BinaryMask m(w, h, 0);
    const double radius = 0.5 * f * static_cast<double>(std::min(w, h));
    const double cx = 0.5 * static_cast<double>(w - 1);
    const double cy = 0.5 * static_cast<double>(h - 1);
    for (std::size_t y = 0; y < h; ++y) {
        for (std::size_t x = 0; x < w; ++x) {
            const double dx = static_cast<double>(x) - cx;
            const double dy = static_cast<double>(y) - cy;
            if (dx * dx + dy * dy <= radius * radius) {
                m.at(x, y) = 1;
            }
        }
    }
    return m;
}

// Keeps the region on or below the top-left to bottom-right diagonal shifted
// up by c. In unit coordinates the kept area is 1 - (1 - c)^2 / 2, so
// c = 1 - sqrt(2 (1 - f)) gives area fraction f for f in [0.5, 1].
BinaryMask ldc_mask(std::size_t w, std::size_t h, double f) {
    BinaryMask m(w, h, 0);
    const double c = 1.0 - std::sqrt(2.0 * std::max(0.0, 1.0 - f));
    for (std::size_t y = 0; y < h; ++y) {
        const double v = (static_cast<double>(y) + 0.5) / static_cast<double>(h);
        for (std::size_t x = 0; x < w; ++x) {
            const double u = (static_cast<double>(x) + 0.5) / static_cast<double>(w);
            if (v >= u - c) {
                m.at(x, y) = 1;
            }
        }
    }
    return m;
}

BinaryMask mirror_horizontal(const BinaryMask& src) {
    BinaryMask m(src.width(), src.height(), 0);
    for (std::size_t y = 0; y < src.height(); ++y) {
        for (std::size_t x = 0; x < src.width(); ++x) {
            m.at(x, y) = src.at(src.width() - 1 - x, y);
        }
    }
    return m;
}

}  // namespace

SliceSet generate_masks(std::size_t width, std::size_t height, const std::array<double, 4>& fractions) {
    require_min_size(width, height, 8);
    for (double f : fractions) {
        if (!(f > 0.0 && f <= 1.0)) {
            throw InvalidArgument("slice scale fractions must lie in (0, 1]");
        }
    }
    SliceSet set;
    set.reserve(kSliceShapes.size() * fractions.size());
    for (SliceShape shape : kSliceShapes) {
        for (int s = 0; s < static_cast<int>(fractions.size()); ++s) {
            const double f = fractions[static_cast<std::size_t>(s)];
            BinaryMask mask;
            switch (shape) {
                case SliceShape::square: mask = square_mask(width, height, f); break;
                case SliceShape::triangle: mask = triangle_mask(width, height, f); break;
                case SliceShape::circle: mask = circle_mask(width, height, f); break;
                case SliceShape::ldc: mask = ldc_mask(width, height, f); break;
                case SliceShape::rdc: mask = mirror_horizontal(ldc_mask(width, height, f)); break;
            }
            set.push_back({MaskId{shape, s}, std::move(mask)});
        }
    }
    return set;
}

std::size_t kept_count(const BinaryMask& mask) noexcept {
    return static_cast<std::size_t>(std::count_if(mask.pixels().begin(), mask.pixels().end(),
                                                  [](std::uint8_t b) { return b != 0; }));
}

RgbImage apply_mask(const RgbImage& img, const BinaryMask& mask) {
    if (!img.same_shape(mask)) {
        throw DimensionMismatch("mask is " + std::to_string(mask.width()) + "x" +
                                std::to_string(mask.height()) + ", image is " +
                                std::to_string(img.width()) + "x" + std::to_string(img.height()));
    }
    std::size_t x0 = img.width(), y0 = img.height(), x1 = 0, y1 = 0;
    for (std::size_t y = 0; y < mask.height(); ++y) {
        for (std::size_t x = 0; x < mask.width(); ++x) {
            if (mask.at(x, y) != 0) {
                x0 = std::min(x0, x);
                y0 = std::min(y0, y);
                x1 = std::max(x1, x);
                y1 = std::max(y1, y);
            }
        }
    }
    if (x0 > x1) {
        throw InvalidArgument("mask keeps no pixels");
    }
    RgbImage out(x1 - x0 + 1, y1 - y0 + 1);
    for (std::size_t y = y0; y <= y1; ++y) {
        for (std::size_t x = x0; x <= x1; ++x) {
            if (mask.at(x, y) != 0) {
                out.at(x - x0, y - y0) = img.at(x, y);
            }
        }
    }
    return out;
}

}  // namespace mf2scf
