#include "mf2scf/svm.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <random>
#include <string>

#include "mf2scf/errors.hpp"

namespace mf2scf {

LinearSvm::LinearSvm(Eigen::MatrixXd weights, Eigen::VectorXd biases)
    : weights_(std::move(weights)), biases_(std::move(biases)) {
    if (weights_.rows() != biases_.size()) {
        throw DimensionMismatch("weight rows and bias count differ");
    }
}

Eigen::VectorXd train_binary_svm(const Eigen::MatrixXd& rows, std::span<const double> targets,
                                 const SvmOptions& options, BinarySvmTrace* trace) {
    const auto n = static_cast<std::size_t>(rows.rows());
    const auto d = rows.cols();
    if (targets.size() != n) {
        throw LengthMismatch("row and target counts differ");
    }
    const double c = options.c_penalty;
    if (!(c > 0.0)) {
        throw InvalidArgument("SVM penalty must be > 0");
    }

    // Augmented weight [w, b]; each row is implicitly [x, 1].
    Eigen::VectorXd w = Eigen::VectorXd::Zero(d + 1);
    std::vector<double> alpha(n, 0.0);
    std::vector<double> qdiag(n);
    for (std::size_t i = 0; i < n; ++i) {
        qdiag[i] = rows.row(static_cast<long>(i)).squaredNorm() + 1.0;
    }
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::mt19937_64 rng(options.seed);

    auto dual = [&] {
        return 0.5 * w.squaredNorm() - std::accumulate(alpha.begin(), alpha.end(), 0.0);
    };

    std::size_t pass = 0;
    for (; pass < options.max_passes; ++pass) {
        deterministic_shuffle(order, rng);
        double pg_max = -std::numeric_limits<double>::infinity();
        double pg_min = std::numeric_limits<double>::infinity();
        for (std::size_t i : order) {
            const auto row = rows.row(static_cast<long>(i));
            const double y = targets[i];
            const double g = y * (row.dot(w.head(d)) + w[d]) - 1.0;
            double pg = g;
            if (alpha[i] <= 0.0) {
                pg = std::min(g, 0.0);
            } else if (alpha[i] >= c) {
                pg = std::max(g, 0.0);
            }
            pg_max = std::max(pg_max, pg);
            pg_min = std::min(pg_min, pg);
            if (pg != 0.0) {
                const double old = alpha[i];
                alpha[i] = std::clamp(old - g / qdiag[i], 0.0, c);
                const double delta = (alpha[i] - old) * y;
                w.head(d) += delta * row.transpose();
                w[d] += delta;
            }
        }
        if (trace != nullptr) {
            trace->dual_objective.push_back(dual());
        }
        if (n == 0 || pg_max - pg_min < options.tolerance) {
            ++pass;
            break;
        }
    }
    if (trace != nullptr) {
        double hinge = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            const double margin = targets[i] * (rows.row(static_cast<long>(i)).dot(w.head(d)) + w[d]);
            hinge += std::max(0.0, 1.0 - margin);
        }
        trace->primal_objective = 0.5 * w.squaredNorm() + c * hinge;
        trace->passes = pass;
    }
    return w;
}

LinearSvm LinearSvm::train(const Eigen::MatrixXd& rows, std::span<const ClassId> labels, std::size_t class_count,
                           const SvmOptions& options, std::vector<BinarySvmTrace>* traces) {
    if (class_count < 2) {
        throw InvalidArgument("SVM training needs at least 2 classes");
    }
    if (static_cast<std::size_t>(rows.rows()) != labels.size()) {
        throw LengthMismatch("row and label counts differ");
    }
    const auto d = rows.cols();
    Eigen::MatrixXd weights(static_cast<long>(class_count), d);
    Eigen::VectorXd biases(static_cast<long>(class_count));
    if (traces != nullptr) {
        traces->assign(class_count, {});
    }
    std::vector<double> targets(labels.size());
    for (std::size_t c = 0; c < class_count; ++c) {
        for (std::size_t i = 0; i < labels.size(); ++i) {
            targets[i] = labels[i] == c ? 1.0 : -1.0;
        }
        SvmOptions per_class = options;
        per_class.seed = options.seed + c;
        const Eigen::VectorXd wb =
            train_binary_svm(rows, targets, per_class, traces != nullptr ? &(*traces)[c] : nullptr);
        weights.row(static_cast<long>(c)) = wb.head(d).transpose();
        biases[static_cast<long>(c)] = wb[d];
    }
    return LinearSvm(std::move(weights), std::move(biases));
}

Eigen::VectorXd LinearSvm::scores(const Eigen::VectorXd& x) const {
    if (x.size() != weights_.cols()) {
        throw LayoutMismatch("vector has " + std::to_string(x.size()) + " values, SVM expects " +
                             std::to_string(weights_.cols()));
    }
    return weights_ * x + biases_;
}

ClassId LinearSvm::predict(const Eigen::VectorXd& x) const {
    const Eigen::VectorXd s = scores(x);
    ClassId best = 0;
    for (Eigen::Index c = 1; c < s.size(); ++c) {
        if (s[c] > s[static_cast<long>(best)]) {
            best = static_cast<ClassId>(c);
        }
    }
    return best;
}

}  // namespace mf2scf
