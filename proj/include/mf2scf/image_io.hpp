#pragma once

#include <filesystem>

#include "mf2scf/image.hpp"

namespace mf2scf {

// Decodes PNG/JPEG into 8-bit RGB; alpha is dropped, gray inputs are expanded.
[[nodiscard]] RgbImage load_rgb(const std::filesystem::path& path);

void save_png(const std::filesystem::path& path, const RgbImage& img);
void save_png(const std::filesystem::path& path, const GrayImage& img);

}  // namespace mf2scf
