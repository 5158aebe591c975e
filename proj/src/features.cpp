#include "mf2scf/features.hpp"

#include "mf2scf/imgproc.hpp"

namespace mf2scf {

ImageFeatures extract_features(const RgbImage& img, const ExtractOptions& options) {
    require_min_size(img.width(), img.height(), 3);
    const GrayImage gsi = to_grayscale(img);
    const GradientImage goi = sobel_gradient(gsi);
    const PixelGraph graph = build_graph(gsi, goi, options.params, options.graph);

    const GrayImage cc = quantize_feature_map(clustering_map(graph));
    const GrayImage dc = quantize_feature_map(degree_energy_map(graph));
    const GrayImage ec = quantize_feature_map(eigen_entropy_map(graph, options.eigen));
    const GrayImage goi_plane(goi);

    ImageFeatures out;
    out.global = global_feature(gsi, goi_plane, cc, dc, ec);
    out.color = color_feature(hsv_histograms(rgb_to_hsv(img)));
    if (options.keep_planes) {
        out.planes = FeaturePlanes{gsi, goi_plane, cc, dc, ec};
    }
    return out;
}

}  // namespace mf2scf
