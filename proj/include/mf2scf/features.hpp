#pragma once

#include <optional>
#include <vector>

#include "mf2scf/cngraph.hpp"
#include "mf2scf/colorfeat.hpp"
#include "mf2scf/image.hpp"
#include "mf2scf/texture.hpp"

namespace mf2scf {

struct ExtractOptions {
    CnParams params;
    GraphBuildOptions graph;
    EigenOptions eigen;
    bool keep_planes = false;
};

// The quantized 8-bit planes fed to ULBP, kept for debug export.
struct FeaturePlanes {
    GrayImage gsi;
    GrayImage goi;
    GrayImage cc;
    GrayImage dc;
    GrayImage ec;
};

struct ImageFeatures {
    GlobalFeature global;  // 295 values
    ColorFeature color;    // 768 values
    std::optional<FeaturePlanes> planes;
};

/// Gray and gradient planes, pixel graph, the three centrality maps, ULBP
/// histograms and HSV histograms for one image.
[[nodiscard]] ImageFeatures extract_features(const RgbImage& img, const ExtractOptions& options = {});

}  // namespace mf2scf
