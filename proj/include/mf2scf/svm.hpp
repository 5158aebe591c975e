#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "mf2scf/dataset.hpp"

namespace mf2scf {

struct SvmOptions {
    double c_penalty = 1.0;
    std::uint64_t seed = 0;
    std::size_t max_passes = 1000;
    // Stop when the projected-gradient spread of one pass falls below this.
    double tolerance = 1e-3;
};

struct BinarySvmTrace {
    // Dual objective 0.5 |w|^2 - sum(alpha) after each pass.
    std::vector<double> dual_objective;
    double primal_objective = 0.0;
    std::size_t passes = 0;
};

/// One-vs-rest linear SVMs with L2 regularization and hinge loss, solved by
/// dual coordinate descent. The bias is learned as the weight of a constant
/// 1 feature appended to every row.
class LinearSvm {
public:
    LinearSvm() = default;
    LinearSvm(Eigen::MatrixXd weights, Eigen::VectorXd biases);

    [[nodiscard]] static LinearSvm train(const Eigen::MatrixXd& rows, std::span<const ClassId> labels,
                                         std::size_t class_count, const SvmOptions& options,
                                         std::vector<BinarySvmTrace>* traces = nullptr);

    [[nodiscard]] Eigen::VectorXd scores(const Eigen::VectorXd& x) const;
    // argmax score; ties go to the lowest class id.
    [[nodiscard]] ClassId predict(const Eigen::VectorXd& x) const;

    [[nodiscard]] const Eigen::MatrixXd& weights() const noexcept { return weights_; }
    [[nodiscard]] const Eigen::VectorXd& biases() const noexcept { return biases_; }
    [[nodiscard]] std::size_t class_count() const noexcept { return static_cast<std::size_t>(weights_.rows()); }
    [[nodiscard]] std::size_t dim() const noexcept { return static_cast<std::size_t>(weights_.cols()); }

private:
    Eigen::MatrixXd weights_;  // class_count x dim
    Eigen::VectorXd biases_;
};

/// Binary problem with targets in {-1, +1}; returns [w, b].
[[nodiscard]] Eigen::VectorXd train_binary_svm(const Eigen::MatrixXd& rows, std::span<const double> targets,
                                               const SvmOptions& options, BinarySvmTrace* trace = nullptr);

}  // namespace mf2scf
