#pragma once

#include <span>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "mf2scf/dataset.hpp"

namespace mf2scf {

inline constexpr double kStdFloor = 1e-12;

/// Per-dimension z-scoring with statistics from the training rows.
struct Standardizer {
    Eigen::VectorXd mean;
    Eigen::VectorXd scale;  // population std, floored at kStdFloor

    [[nodiscard]] static Standardizer fit(const Eigen::MatrixXd& rows);
    [[nodiscard]] Eigen::VectorXd apply(const Eigen::VectorXd& x) const;
    // Raw -> standardized; throws LayoutMismatch on an already standardized vector.
    [[nodiscard]] FusedVector apply(const FusedVector& v) const;
    [[nodiscard]] std::size_t dim() const noexcept { return static_cast<std::size_t>(mean.size()); }
};

enum class ReductionKind { none, pca, lda };

[[nodiscard]] std::string_view reduction_name(ReductionKind kind) noexcept;
[[nodiscard]] ReductionKind parse_reduction(std::string_view name);

/// Centered linear map x -> basis * (x - mean), one output per basis row.
struct Projection {
    ReductionKind kind = ReductionKind::none;
    Eigen::VectorXd mean;
    Eigen::MatrixXd basis;
    // PCA: variance along each kept component. LDA: generalized eigenvalues.
    std::vector<double> eigenvalues;
    // PCA only: explained-variance ratio of every component found, descending.
    std::vector<double> explained_ratio;

    [[nodiscard]] Eigen::VectorXd apply(const Eigen::VectorXd& x) const;
    [[nodiscard]] std::size_t input_dim() const noexcept { return static_cast<std::size_t>(basis.cols()); }
    [[nodiscard]] std::size_t output_dim() const noexcept { return static_cast<std::size_t>(basis.rows()); }
};

/// Keeps the smallest number of principal components whose cumulative
/// explained variance reaches `variance_threshold`. Throws
/// DegenerateCovariance when the rows have zero total variance.
[[nodiscard]] Projection pca_fit(const Eigen::MatrixXd& rows, double variance_threshold = 0.95);
[[nodiscard]] Eigen::VectorXd pca_transform(const Projection& projection, const Eigen::VectorXd& x);

/// At most C-1 discriminant directions from the generalized eigenproblem
/// Sb v = mu (Sw + eps I) v, eps = 1e-6 trace(Sw) / d.
/// Throws SingularScatter when the regularized within-class scatter is not
/// positive definite.
[[nodiscard]] Projection lda_fit(const Eigen::MatrixXd& rows, std::span<const ClassId> labels,
                                 std::size_t class_count);
[[nodiscard]] Eigen::VectorXd lda_transform(const Projection& projection, const Eigen::VectorXd& x);

}  // namespace mf2scf
