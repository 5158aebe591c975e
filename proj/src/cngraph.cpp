#include "mf2scf/cngraph.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include <Eigen/Dense>

namespace mf2scf {

void CnParams::validate() const {
    if (!(radius > 0.0) || !std::isfinite(radius)) {
        throw InvalidArgument("radius r must be > 0");
    }
    if (!(similarity > 0.0 && similarity <= 1.0)) {
        throw InvalidArgument("similarity threshold t must lie in (0, 1]");
    }
    if (!(gradient_diff >= 0.0) || !std::isfinite(gradient_diff)) {
        throw InvalidArgument("gradient threshold s must be >= 0");
    }
    if (lbp_neighbors != 8) {
        throw InvalidArgument("only P = 8 LBP neighbors are supported");
    }
}

PixelGraph::PixelGraph(std::size_t width, std::size_t height,
                       const std::vector<std::vector<std::uint32_t>>& adjacency,
                       std::uint64_t examined_pairs)
    : width_(width), height_(height), examined_pairs_(examined_pairs) {
    if (adjacency.size() != width * height) {
        throw DimensionMismatch("adjacency size does not match the pixel count");
    }
    offsets_.resize(adjacency.size() + 1, 0);
    for (std::size_t v = 0; v < adjacency.size(); ++v) {
        offsets_[v + 1] = offsets_[v] + adjacency[v].size();
    }
    neighbors_.reserve(offsets_.back());
    for (const auto& list : adjacency) {
        neighbors_.insert(neighbors_.end(), list.begin(), list.end());
    }
}

bool PixelGraph::has_edge(std::size_t a, std::size_t b) const noexcept {
    const auto adj = neighbors(a);
    return std::binary_search(adj.begin(), adj.end(), static_cast<std::uint32_t>(b));
}

void PixelGraph::multiply(std::span<const double> x, std::span<double> y) const {
    const std::size_t n = vertex_count();
    for (std::size_t v = 0; v < n; ++v) {
        double acc = 0.0;
        for (std::uint32_t j : neighbors(v)) {
            acc += x[j];
        }
        y[v] = acc;
    }
}

double edge_weight(double d2, double intensity_diff, double radius) noexcept {
    const double r2 = radius * radius;
    return (d2 + r2 * std::abs(intensity_diff) / 255.0) / (2.0 * r2);
}

bool edge_rule(double d2, int intensity_diff, int gradient_diff, const CnParams& params) noexcept {
    if (d2 > params.radius * params.radius) {
        return false;
    }
    if (static_cast<double>(std::abs(gradient_diff)) > params.gradient_diff) {
        return false;
    }
    return edge_weight(d2, static_cast<double>(intensity_diff), params.radius) <= params.similarity;
}

PixelGraph build_graph(const GrayImage& gsi, const GradientImage& goi, const CnParams& params,
                       GraphBuildOptions options) {
    params.validate();
    if (!gsi.same_shape(goi)) {
        throw DimensionMismatch("gray and gradient planes differ in size");
    }
    const std::size_t w = gsi.width();
    const std::size_t h = gsi.height();
    const std::size_t n = w * h;
    if (n > std::numeric_limits<std::uint32_t>::max()) {
        throw InvalidArgument("image too large for 32-bit vertex ids");
    }

    // Lists stay sorted: for vertex v, all neighbors u < v are appended while
    // the outer loop visits u (ascending), then the j > v neighbors ascending.
    std::vector<std::vector<std::uint32_t>> adjacency(n);
    std::uint64_t examined = 0;

    auto consider = [&](std::size_t i, std::size_t xi, std::size_t yi, std::size_t j, std::size_t xj,
                        std::size_t yj) {
        ++examined;
        const double dx = static_cast<double>(xj) - static_cast<double>(xi);
        const double dy = static_cast<double>(yj) - static_cast<double>(yi);
        const int di = static_cast<int>(gsi[j]) - static_cast<int>(gsi[i]);
        const int dg = static_cast<int>(goi[j]) - static_cast<int>(goi[i]);
        if (edge_rule(dx * dx + dy * dy, di, dg, params)) {
            adjacency[i].push_back(static_cast<std::uint32_t>(j));
            adjacency[j].push_back(static_cast<std::uint32_t>(i));
        }
    };

    if (options.traversal == PairTraversal::upper_triangle) {
        for (std::size_t i = 0; i < n; ++i) {
            const std::size_t xi = i % w;
            const std::size_t yi = i / w;
            std::size_t xj = xi;
            std::size_t yj = yi;
            for (std::size_t j = i + 1; j < n; ++j) {
                if (++xj == w) {
                    xj = 0;
                    ++yj;
                }
                consider(i, xi, yi, j, xj, yj);
            }
        }
    } else {
        const auto reach = static_cast<std::size_t>(std::floor(params.radius));
        for (std::size_t i = 0; i < n; ++i) {
            const std::size_t xi = i % w;
            const std::size_t yi = i / w;
            const std::size_t y_end = std::min(h - 1, yi + reach);
            for (std::size_t yj = yi; yj <= y_end; ++yj) {
                const std::size_t x_begin = yj == yi ? xi + 1 : (xi >= reach ? xi - reach : 0);
                const std::size_t x_end = std::min(w - 1, xi + reach);
                for (std::size_t xj = x_begin; xj <= x_end; ++xj) {
                    consider(i, xi, yi, yj * w + xj, xj, yj);
                }
            }
        }
    }
    return PixelGraph(w, h, adjacency, examined);
}

std::vector<VertexStats> vertex_stats(const PixelGraph& graph) {
    const std::size_t n = graph.vertex_count();
    std::vector<VertexStats> stats(n);
    for (std::size_t v = 0; v < n; ++v) {
        const auto adj = graph.neighbors(v);
        std::uint64_t shared = 0;
        // Each edge (a, b) among the neighbors is seen from both a and b.
        for (std::uint32_t a : adj) {
            const auto adj_a = graph.neighbors(a);
            auto p = adj.begin();
            auto q = adj_a.begin();
            while (p != adj.end() && q != adj_a.end()) {
                if (*p < *q) {
                    ++p;
                } else if (*q < *p) {
                    ++q;
                } else {
                    ++shared;
                    ++p;
                    ++q;
                }
            }
        }
        stats[v] = {static_cast<std::uint32_t>(adj.size()), shared / 2};
    }
    return stats;
}

namespace {

double norm2(std::span<const double> x) {
    return std::sqrt(std::inner_product(x.begin(), x.end(), x.begin(), 0.0));
}

std::vector<std::vector<std::uint32_t>> connected_components(const PixelGraph& graph) {
    const std::size_t n = graph.vertex_count();
    std::vector<char> seen(n, 0);
    std::vector<std::vector<std::uint32_t>> components;
    for (std::size_t s = 0; s < n; ++s) {
        if (seen[s]) {
            continue;
        }
        std::vector<std::uint32_t> comp{static_cast<std::uint32_t>(s)};
        seen[s] = 1;
        for (std::size_t head = 0; head < comp.size(); ++head) {
            for (std::uint32_t nb : graph.neighbors(comp[head])) {
                if (!seen[nb]) {
                    seen[nb] = 1;
                    comp.push_back(nb);
                }
            }
        }
        std::sort(comp.begin(), comp.end());
        components.push_back(std::move(comp));
    }
    return components;
}

struct ComponentEigen {
    double lambda = 0.0;
    std::size_t iterations = 0;
};

// Perron pair of one connected component by restarted Lanczos with full
// reorthogonalization, started from the all-ones vector. A connected
// component has a simple top eigenvalue, so this converges to the same
// vector as power iteration from that start, in far fewer products.
// On return u holds the unit-norm, non-negative vector on comp.
ComponentEigen component_perron(const PixelGraph& graph, std::span<const std::uint32_t> comp,
                                std::vector<double>& u, std::size_t max_products) {
    const std::size_t m = comp.size();
    if (m == 1) {
        u[comp[0]] = 1.0;
        return {0.0, 0};
    }
    // Local CSR over the component.
    std::vector<std::uint32_t> local(graph.vertex_count(), 0);
    for (std::size_t i = 0; i < m; ++i) {
        local[comp[i]] = static_cast<std::uint32_t>(i);
    }
    std::vector<std::size_t> offsets(m + 1, 0);
    std::vector<std::uint32_t> adj;
    for (std::size_t i = 0; i < m; ++i) {
        for (std::uint32_t j : graph.neighbors(comp[i])) {
            adj.push_back(local[j]);
        }
        offsets[i + 1] = adj.size();
    }
    auto apply = [&](const double* x, double* y) {
        for (std::size_t i = 0; i < m; ++i) {
            double acc = 0.0;
            for (std::size_t k = offsets[i]; k < offsets[i + 1]; ++k) {
                acc += x[adj[k]];
            }
            y[i] = acc;
        }
    };

    const auto dim = static_cast<long>(std::min<std::size_t>(m, 48));
    const auto rows = static_cast<long>(m);
    Eigen::MatrixXd q(rows, dim);
    Eigen::VectorXd x = Eigen::VectorXd::Constant(rows, 1.0 / std::sqrt(static_cast<double>(m)));
    Eigen::VectorXd w(rows);
    ComponentEigen result;
    constexpr double kStopResidual = 1e-12;

    while (result.iterations < max_products) {
        Eigen::VectorXd alpha = Eigen::VectorXd::Zero(dim);
        Eigen::VectorXd beta = Eigen::VectorXd::Zero(dim);
        q.col(0) = x;
        long k = 0;
        bool exact = false;
        for (; k < dim; ++k) {
            apply(q.col(k).data(), w.data());
            ++result.iterations;
            alpha[k] = q.col(k).dot(w);
            // Two passes of classical Gram-Schmidt against the whole basis.
            for (int pass = 0; pass < 2; ++pass) {
                w -= q.leftCols(k + 1) * (q.leftCols(k + 1).transpose() * w);
            }
            if (k + 1 == dim || result.iterations + 1 >= max_products) {
                break;
            }
            beta[k] = w.norm();
            if (beta[k] <= 1e-14 * std::max(1.0, std::abs(alpha[k]))) {
                exact = true;  // invariant subspace: the Ritz pair is exact
                break;
            }
            q.col(k + 1) = w / beta[k];
        }
        const long used = std::min(k + 1, dim);
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> tri;
        tri.computeFromTridiagonal(alpha.head(used), beta.head(std::max<long>(used - 1, 0)), Eigen::ComputeEigenvectors);
        const Eigen::VectorXd y = tri.eigenvectors().col(used - 1);
        x = q.leftCols(used) * y;
        x /= x.norm();
        if (x.sum() < 0.0) {
            x = -x;
        }
        apply(x.data(), w.data());
        ++result.iterations;
        result.lambda = x.dot(w);
        const double residual = (w - result.lambda * x).norm();
        if (residual <= kStopResidual * std::max(1.0, result.lambda) || exact) {
            break;
        }
    }
    for (std::size_t i = 0; i < m; ++i) {
        // Entries of a Perron vector are positive; clear rounding-level noise.
        u[comp[i]] = std::max(x[static_cast<long>(i)], 0.0);
    }
    return result;
}

}  // namespace

EigenData dominant_eigenpair(const PixelGraph& graph, EigenOptions options) {
    const std::size_t n = graph.vertex_count();
    EigenData data;
    data.u.assign(n, 0.0);
    if (n == 0) {
        return data;
    }
    if (graph.edge_count() == 0) {
        std::fill(data.u.begin(), data.u.end(), 1.0 / std::sqrt(static_cast<double>(n)));
        return data;
    }

    const auto components = connected_components(graph);
    std::vector<double> perron(n, 0.0);
    std::vector<double> scratch(n, 0.0);
    std::vector<double> lambdas(components.size(), 0.0);
    for (std::size_t c = 0; c < components.size(); ++c) {
        const auto r = component_perron(graph, components[c], perron, options.max_iterations);
        lambdas[c] = r.lambda;
        data.iterations = std::max(data.iterations, r.iterations);
    }

    data.lambda_max = *std::max_element(lambdas.begin(), lambdas.end());
    const double tie = 1e-10 * std::max(1.0, data.lambda_max);
    for (std::size_t c = 0; c < components.size(); ++c) {
        if (lambdas[c] < data.lambda_max - tie) {
            continue;
        }
        // Weight by the all-ones start vector's projection onto this component.
        double weight = 0.0;
        for (std::uint32_t v : components[c]) {
            weight += perron[v];
        }
        for (std::uint32_t v : components[c]) {
            data.u[v] = weight * perron[v];
        }
    }
    const double norm = norm2(data.u);
    for (double& x : data.u) {
        x /= norm;
    }

    graph.multiply(data.u, scratch);
    double res2 = 0.0;
    for (std::size_t v = 0; v < n; ++v) {
        const double r = scratch[v] - data.lambda_max * data.u[v];
        res2 += r * r;
    }
    data.residual = std::sqrt(res2);
    if (!(data.residual <= options.tolerance)) {
        throw EigenNonConvergence("residual " + std::to_string(data.residual) + " after " +
                                  std::to_string(data.iterations) + " iterations");
    }
    return data;
}

std::string_view feature_kind_name(FeatureKind kind) noexcept {
    switch (kind) {
        case FeatureKind::cc: return "cc";
        case FeatureKind::dc: return "dc";
        case FeatureKind::ec: return "ec";
    }
    return "unknown";
}

FeatureMap clustering_map(const PixelGraph& graph) {
    FeatureMap map{FeatureKind::cc, Raster<double>(graph.width(), graph.height(), 0.0)};
    const auto stats = vertex_stats(graph);
    for (std::size_t v = 0; v < stats.size(); ++v) {
        const double k = stats[v].degree;
        // k <= 1 leaves the coefficient undefined; it is 0 by convention.
        if (k >= 2) {
            map.values[v] = 2.0 * static_cast<double>(stats[v].neighbor_edges) / (k * (k - 1.0));
        }
    }
    return map;
}

FeatureMap degree_energy_map(const PixelGraph& graph) {
    FeatureMap map{FeatureKind::dc, Raster<double>(graph.width(), graph.height(), 0.0)};
    const std::size_t n = graph.vertex_count();
    if (n < 2) {
        return map;
    }
    const double denom = static_cast<double>(n - 1);
    for (std::size_t v = 0; v < n; ++v) {
        const double ratio = static_cast<double>(graph.degree(v)) / denom;
        map.values[v] = ratio * ratio;
    }
    return map;
}

FeatureMap eigen_entropy_map(const PixelGraph& graph, EigenOptions options) {
    return eigen_entropy_map(graph, dominant_eigenpair(graph, options));
}

FeatureMap eigen_entropy_map(const PixelGraph& graph, const EigenData& eigen) {
    FeatureMap map{FeatureKind::ec, Raster<double>(graph.width(), graph.height(), 0.0)};
    const std::size_t n = graph.vertex_count();
    if (graph.edge_count() == 0 || eigen.lambda_max <= 0.0) {
        return map;
    }
    if (eigen.u.size() != n) {
        throw DimensionMismatch("eigenvector length does not match the vertex count");
    }
    // x_i = lambda * sum_j e_ij u_j, which is u_i at convergence.
    std::vector<double> x(n, 0.0);
    graph.multiply(eigen.u, x);
    const double lambda = eigen.lambda();
    double log_sum = 0.0;
    for (double& xi : x) {
        xi *= lambda;
        if (xi > 0.0) {
            log_sum += std::log2(xi);
        }
    }
    for (std::size_t v = 0; v < n; ++v) {
        map.values[v] = -x[v] * log_sum;
    }
    return map;
}

GrayImage quantize_feature_map(const FeatureMap& map) {
    const auto values = map.values.pixels();
    GrayImage out(map.values.width(), map.values.height(), 0);
    if (values.empty()) {
        return out;
    }
    for (double v : values) {
        if (!std::isfinite(v)) {
            throw InvalidArgument("feature map has a non-finite value");
        }
    }
    const auto [lo, hi] = std::minmax_element(values.begin(), values.end());
    const double range = *hi - *lo;
    if (!(range > 0.0)) {
        return out;
    }
    for (std::size_t i = 0; i < values.size(); ++i) {
        const double scaled = (values[i] - *lo) / range * 255.0;
        out[i] = static_cast<std::uint8_t>(std::clamp(std::floor(scaled + 0.5), 0.0, 255.0));
    }
    return out;
}

}  // namespace mf2scf
