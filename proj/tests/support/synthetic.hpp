#pragma once

// Seeded generator of a small three-class texture dataset: tinted
// checkerboards, stripes and smooth value noise.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <random>
#include <string>
#include <vector>

#include "mf2scf/image.hpp"
#include "mf2scf/image_io.hpp"

namespace synthetic {

inline constexpr std::array<const char*, 3> kClassNames = {"checkerboard", "noise", "stripes"};

class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}
    double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
    int integer(int lo, int hi) { return lo + static_cast<int>(engine_() % static_cast<std::uint64_t>(hi - lo + 1)); }

private:
    std::mt19937_64 engine_;
};

inline std::uint8_t clamp8(double v) {
    return static_cast<std::uint8_t>(std::clamp(std::lround(v), 0L, 255L));
}

inline mf2scf::Rgb tinted(double level, const std::array<double, 3>& tint, double noise) {
    return {clamp8(level * tint[0] + noise), clamp8(level * tint[1] + noise), clamp8(level * tint[2] + noise)};
}

inline mf2scf::RgbImage checkerboard(Rng& rng, std::size_t size) {
    const int cell = rng.integer(4, 10);
    const int ox = rng.integer(0, cell - 1);
    const int oy = rng.integer(0, cell - 1);
    const std::array<double, 3> tint = {rng.uniform(0.9, 1.0), rng.uniform(0.45, 0.6), rng.uniform(0.2, 0.35)};
    const double dark = rng.uniform(40, 80);
    const double light = rng.uniform(190, 240);
    mf2scf::RgbImage img(size, size);
    for (std::size_t y = 0; y < size; ++y) {
        for (std::size_t x = 0; x < size; ++x) {
            const bool on = (((static_cast<int>(x) + ox) / cell + (static_cast<int>(y) + oy) / cell) % 2) == 0;
            img.at(x, y) = tinted(on ? light : dark, tint, rng.uniform(-6, 6));
        }
    }
    return img;
}

inline mf2scf::RgbImage stripes(Rng& rng, std::size_t size) {
    const int orientation = rng.integer(0, 2);
    const double period = rng.uniform(6, 14);
    const double phase = rng.uniform(0, 6.283185307179586);
    const std::array<double, 3> tint = {rng.uniform(0.2, 0.35), rng.uniform(0.4, 0.55), rng.uniform(0.9, 1.0)};
    mf2scf::RgbImage img(size, size);
    for (std::size_t y = 0; y < size; ++y) {
        for (std::size_t x = 0; x < size; ++x) {
            const double coord = orientation == 0   ? static_cast<double>(y)
                                 : orientation == 1 ? static_cast<double>(x)
                                                    : (static_cast<double>(x) + static_cast<double>(y)) / 1.4142;
            const double level = 140.0 + 90.0 * std::sin(6.283185307179586 * coord / period + phase);
            img.at(x, y) = tinted(level, tint, rng.uniform(-6, 6));
        }
    }
    return img;
}

inline mf2scf::RgbImage smooth_noise(Rng& rng, std::size_t size) {
    const int grid = rng.integer(4, 8);
    std::vector<double> knots(static_cast<std::size_t>((grid + 1) * (grid + 1)));
    for (double& k : knots) {
        k = rng.uniform(60, 220);
    }
    const std::array<double, 3> tint = {rng.uniform(0.3, 0.45), rng.uniform(0.9, 1.0), rng.uniform(0.35, 0.5)};
    mf2scf::RgbImage img(size, size);
    const double step = static_cast<double>(size) / grid;
    for (std::size_t y = 0; y < size; ++y) {
        for (std::size_t x = 0; x < size; ++x) {
            const double gx = static_cast<double>(x) / step;
            const double gy = static_cast<double>(y) / step;
            const int ix = std::min(static_cast<int>(gx), grid - 1);
            const int iy = std::min(static_cast<int>(gy), grid - 1);
            const double fx = gx - ix, fy = gy - iy;
            auto k = [&](int a, int b) { return knots[static_cast<std::size_t>(b * (grid + 1) + a)]; };
            const double level = (1 - fx) * (1 - fy) * k(ix, iy) + fx * (1 - fy) * k(ix + 1, iy) +
                                 (1 - fx) * fy * k(ix, iy + 1) + fx * fy * k(ix + 1, iy + 1);
            img.at(x, y) = tinted(level, tint, rng.uniform(-3, 3));
        }
    }
    return img;
}

struct Sample {
    std::size_t label;  // index into kClassNames
    mf2scf::RgbImage image;
};

inline std::vector<Sample> generate(std::uint64_t seed, std::size_t per_class = 20, std::size_t size = 64) {
    Rng rng(seed);
    std::vector<Sample> out;
    for (std::size_t i = 0; i < per_class; ++i) {
        out.push_back({0, checkerboard(rng, size)});
        out.push_back({1, smooth_noise(rng, size)});
        out.push_back({2, stripes(rng, size)});
    }
    return out;
}

// Writes <root>/<class>/<class>_<nn>.png.
inline void write_dataset(const std::filesystem::path& root, std::uint64_t seed, std::size_t per_class = 20,
                          std::size_t size = 64) {
    const auto samples = generate(seed, per_class, size);
    std::array<std::size_t, 3> counter{};
    for (const auto& s : samples) {
        const auto dir = root / kClassNames[s.label];
        std::filesystem::create_directories(dir);
        char name[64];
        std::snprintf(name, sizeof(name), "%s_%02zu.png", kClassNames[s.label], counter[s.label]++);
        mf2scf::save_png(dir / name, s.image);
    }
}

}  // namespace synthetic
