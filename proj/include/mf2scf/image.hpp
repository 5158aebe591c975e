#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "mf2scf/errors.hpp"

namespace mf2scf {

struct Rgb {
    std::uint8_t r = 0;
    std::uint8_t g = 0;
    std::uint8_t b = 0;

    friend bool operator==(const Rgb&, const Rgb&) = default;
};

// H in degrees [0,360), S and V in [0,1].
struct Hsv {
    double h = 0.0;
    double s = 0.0;
    double v = 0.0;
};

/// Row-major raster plane. `Tag` separates planes that share a pixel type
/// but not a meaning (gray intensity vs. gradient magnitude).
template <typename T, typename Tag = void>
class Raster {
public:
    using value_type = T;

    Raster() = default;
    Raster(std::size_t width, std::size_t height, T fill = T{})
        : width_(width), height_(height), data_(width * height, fill) {}
    Raster(std::size_t width, std::size_t height, std::vector<T> data)
        : width_(width), height_(height), data_(std::move(data)) {
        if (data_.size() != width_ * height_) {
            throw DimensionMismatch("raster data size does not match width*height");
        }
    }

    template <typename OtherTag>
    explicit Raster(const Raster<T, OtherTag>& other)
        : width_(other.width()), height_(other.height()),
          data_(other.pixels().begin(), other.pixels().end()) {}

    [[nodiscard]] std::size_t width() const noexcept { return width_; }
    [[nodiscard]] std::size_t height() const noexcept { return height_; }
    [[nodiscard]] std::size_t size() const noexcept { return data_.size(); }
    [[nodiscard]] bool empty() const noexcept { return data_.empty(); }

    T& at(std::size_t x, std::size_t y) { return data_[y * width_ + x]; }
    const T& at(std::size_t x, std::size_t y) const { return data_[y * width_ + x]; }
    T& operator[](std::size_t i) { return data_[i]; }
    const T& operator[](std::size_t i) const { return data_[i]; }

    [[nodiscard]] std::span<T> pixels() noexcept { return data_; }
    [[nodiscard]] std::span<const T> pixels() const noexcept { return data_; }

    template <typename U, typename UTag>
    [[nodiscard]] bool same_shape(const Raster<U, UTag>& other) const noexcept {
        return width_ == other.width() && height_ == other.height();
    }

    friend bool operator==(const Raster& a, const Raster& b) {
        return a.width_ == b.width_ && a.height_ == b.height_ && a.data_ == b.data_;
    }

private:
    std::size_t width_ = 0;
    std::size_t height_ = 0;
    std::vector<T> data_;
};

namespace tags {
struct Gray;
struct Gradient;
struct Mask;
}  // namespace tags

using RgbImage = Raster<Rgb>;
using HsvImage = Raster<Hsv>;
using GrayImage = Raster<std::uint8_t, tags::Gray>;
using GradientImage = Raster<std::uint8_t, tags::Gradient>;

}  // namespace mf2scf
