#pragma once

#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include "mf2scf/image.hpp"

namespace mf2scf {

/// Thresholds of the pixel-graph edge rule plus the LBP neighbor count.
struct CnParams {
    double radius = 3.0;          // r, pixels
    double similarity = 0.315;    // t, bound on the edge weight
    double gradient_diff = 5.0;   // s, on the 0..255 gradient scale
    int lbp_neighbors = 8;        // P

    void validate() const;
};

enum class PairTraversal {
    // Every pair i < j of the n vertices is examined: n(n-1)/2 pair tests.
    upper_triangle,
    // Only pairs inside the radius window are examined. Same edge set.
    radius_window,
};

struct GraphBuildOptions {
    PairTraversal traversal = PairTraversal::upper_triangle;
};

/// Undirected pixel graph in compressed sparse row form. Vertex id of pixel
/// (x, y) is y * width + x; every neighbor list is sorted ascending.
class PixelGraph {
public:
    PixelGraph() = default;
    PixelGraph(std::size_t width, std::size_t height,
               const std::vector<std::vector<std::uint32_t>>& adjacency,
               std::uint64_t examined_pairs = 0);

    [[nodiscard]] std::size_t width() const noexcept { return width_; }
    [[nodiscard]] std::size_t height() const noexcept { return height_; }
    [[nodiscard]] std::size_t vertex_count() const noexcept { return offsets_.empty() ? 0 : offsets_.size() - 1; }
    [[nodiscard]] std::size_t edge_count() const noexcept { return neighbors_.size() / 2; }

    [[nodiscard]] std::span<const std::uint32_t> neighbors(std::size_t v) const noexcept {
        return {neighbors_.data() + offsets_[v], neighbors_.data() + offsets_[v + 1]};
    }
    [[nodiscard]] std::size_t degree(std::size_t v) const noexcept { return offsets_[v + 1] - offsets_[v]; }
    [[nodiscard]] bool has_edge(std::size_t a, std::size_t b) const noexcept;

    // Number of vertex pairs the builder evaluated against the edge rule.
    [[nodiscard]] std::uint64_t examined_pairs() const noexcept { return examined_pairs_; }

    // y = A x for the 0/1 adjacency matrix A.
    void multiply(std::span<const double> x, std::span<double> y) const;

private:
    std::size_t width_ = 0;
    std::size_t height_ = 0;
    std::vector<std::size_t> offsets_;
    std::vector<std::uint32_t> neighbors_;
    std::uint64_t examined_pairs_ = 0;
};

/// Edge weight (d^2 + r^2 |dI| / 255) / (2 r^2) for squared distance d2.
[[nodiscard]] double edge_weight(double d2, double intensity_diff, double radius) noexcept;

/// Edge test for two distinct pixels: d <= r, weight <= t and |dg| <= s.
[[nodiscard]] bool edge_rule(double d2, int intensity_diff, int gradient_diff, const CnParams& params) noexcept;

/// Throws DimensionMismatch when the planes differ in size.
[[nodiscard]] PixelGraph build_graph(const GrayImage& gsi, const GradientImage& goi, const CnParams& params,
                                     GraphBuildOptions options = {});

struct VertexStats {
    std::uint32_t degree = 0;         // k_i
    std::uint64_t neighbor_edges = 0; // c_i
};

[[nodiscard]] std::vector<VertexStats> vertex_stats(const PixelGraph& graph);

struct EigenData {
    double lambda_max = 0.0;
    std::vector<double> u;  // unit norm, entrywise >= 0
    double residual = 0.0;  // ||A u - lambda_max u||_2
    std::size_t iterations = 0;

    [[nodiscard]] double lambda() const noexcept { return lambda_max > 0.0 ? 1.0 / lambda_max : 0.0; }
};

struct EigenOptions {
    std::size_t max_iterations = 10'000;
    double tolerance = 1e-8;
};

/// Dominant eigenpair of the adjacency matrix, i.e. the limit of power
/// iteration from the all-ones vector. Each connected component is solved on
/// its own by restarted Lanczos from the all-ones start; the dominant vector
/// is the all-ones projection onto the components that attain the maximum
/// eigenvalue. max_iterations bounds the matrix-vector products per
/// component. Throws EigenNonConvergence when the final residual exceeds the
/// tolerance.
[[nodiscard]] EigenData dominant_eigenpair(const PixelGraph& graph, EigenOptions options = {});

enum class FeatureKind { cc, dc, ec };

[[nodiscard]] std::string_view feature_kind_name(FeatureKind kind) noexcept;

struct FeatureMap {
    FeatureKind kind = FeatureKind::cc;
    Raster<double> values;
};

[[nodiscard]] FeatureMap clustering_map(const PixelGraph& graph);
[[nodiscard]] FeatureMap degree_energy_map(const PixelGraph& graph);
[[nodiscard]] FeatureMap eigen_entropy_map(const PixelGraph& graph, EigenOptions options = {});
[[nodiscard]] FeatureMap eigen_entropy_map(const PixelGraph& graph, const EigenData& eigen);

/// Per-image min-max rescale to 0..255 (round half up); constant maps give 0.
[[nodiscard]] GrayImage quantize_feature_map(const FeatureMap& map);

}  // namespace mf2scf
