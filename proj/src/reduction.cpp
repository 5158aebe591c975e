#include "mf2scf/reduction.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "mf2scf/errors.hpp"

namespace mf2scf {

Standardizer Standardizer::fit(const Eigen::MatrixXd& rows) {
    if (rows.rows() == 0) {
        throw InvalidArgument("cannot standardize an empty matrix");
    }
    Standardizer s;
    s.mean = rows.colwise().mean().transpose();
    const Eigen::MatrixXd centered = rows.rowwise() - s.mean.transpose();
    s.scale = (centered.array().square().colwise().sum() / static_cast<double>(rows.rows())).sqrt().transpose();
    s.scale = s.scale.cwiseMax(kStdFloor);
    return s;
}

Eigen::VectorXd Standardizer::apply(const Eigen::VectorXd& x) const {
    if (x.size() != mean.size()) {
        throw LayoutMismatch("vector has " + std::to_string(x.size()) + " values, standardizer expects " +
                             std::to_string(mean.size()));
    }
    return ((x - mean).array() / scale.array()).matrix();
}

FusedVector Standardizer::apply(const FusedVector& v) const {
    if (v.layout.stage != FeatureStage::raw) {
        throw LayoutMismatch("vector is already standardized");
    }
    const Eigen::VectorXd z = apply(Eigen::Map<const Eigen::VectorXd>(v.values.data(), static_cast<long>(v.values.size())));
    FusedVector out;
    out.layout = v.layout;
    out.layout.stage = FeatureStage::standardized;
    out.values.assign(z.data(), z.data() + z.size());
    return out;
}

std::string_view reduction_name(ReductionKind kind) noexcept {
    switch (kind) {
        case ReductionKind::none: return "none";
        case ReductionKind::pca: return "pca";
        case ReductionKind::lda: return "lda";
    }
    return "none";
}

ReductionKind parse_reduction(std::string_view name) {
    if (name == "none") return ReductionKind::none;
    if (name == "pca") return ReductionKind::pca;
    if (name == "lda") return ReductionKind::lda;
    throw InvalidArgument("unknown reduction '" + std::string(name) + "' (expected none, pca or lda)");
}

Eigen::VectorXd Projection::apply(const Eigen::VectorXd& x) const {
    if (kind == ReductionKind::none) {
        return x;
    }
    if (x.size() != mean.size()) {
        throw LayoutMismatch("vector has " + std::to_string(x.size()) + " values, projection expects " +
                             std::to_string(mean.size()));
    }
    return basis * (x - mean);
}

namespace {

// Deterministic sign: the entry of largest magnitude is positive.
void orient(Eigen::Ref<Eigen::VectorXd> v) {
    Eigen::Index arg = 0;
    v.cwiseAbs().maxCoeff(&arg);
    if (v[arg] < 0.0) {
        v = -v;
    }
}

}  // namespace

Projection pca_fit(const Eigen::MatrixXd& rows, double variance_threshold) {
    if (rows.rows() < 2) {
        throw InvalidArgument("pca_fit needs at least 2 rows");
    }
    if (!(variance_threshold > 0.0 && variance_threshold <= 1.0)) {
        throw InvalidArgument("pca variance threshold must lie in (0, 1]");
    }
    const auto n = rows.rows();
    const auto d = rows.cols();
    Projection p;
    p.kind = ReductionKind::pca;
    p.mean = rows.colwise().mean().transpose();
    const Eigen::MatrixXd centered = rows.rowwise() - p.mean.transpose();
    const double denom = static_cast<double>(n - 1);

    Eigen::VectorXd values;   // descending
    Eigen::MatrixXd vectors;  // columns in d-space, matching `values`
    if (d <= n) {
        const Eigen::MatrixXd cov = centered.transpose() * centered / denom;
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(cov);
        values = es.eigenvalues().reverse();
        vectors = es.eigenvectors().rowwise().reverse();
    } else {
        // Gram trick: eigenvectors of Xc Xc^T / (n-1) map to d-space through Xc^T.
        const Eigen::MatrixXd gram = centered * centered.transpose() / denom;
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(gram);
        values = es.eigenvalues().reverse();
        const Eigen::MatrixXd small = es.eigenvectors().rowwise().reverse();
        vectors = centered.transpose() * small;
        for (Eigen::Index c = 0; c < vectors.cols(); ++c) {
            const double norm = vectors.col(c).norm();
            if (norm > 0.0) {
                vectors.col(c) /= norm;
            }
        }
    }
    values = values.cwiseMax(0.0);
    const double total = values.sum();
    if (!(total > 0.0)) {
        throw DegenerateCovariance("all training vectors are identical");
    }

    p.explained_ratio.resize(static_cast<std::size_t>(values.size()));
    for (Eigen::Index i = 0; i < values.size(); ++i) {
        p.explained_ratio[static_cast<std::size_t>(i)] = values[i] / total;
    }
    Eigen::Index k = 0;
    double cumulative = 0.0;
    // 1e-12 absorbs rounding when the threshold is hit exactly.
    while (k < values.size() && cumulative < variance_threshold - 1e-12) {
        cumulative += p.explained_ratio[static_cast<std::size_t>(k)];
        ++k;
    }
    k = std::max<Eigen::Index>(k, 1);

    p.basis.resize(k, d);
    for (Eigen::Index i = 0; i < k; ++i) {
        Eigen::VectorXd v = vectors.col(i);
        orient(v);
        p.basis.row(i) = v.transpose();
        p.eigenvalues.push_back(values[i]);
    }
    return p;
}

Eigen::VectorXd pca_transform(const Projection& projection, const Eigen::VectorXd& x) {
    return projection.apply(x);
}

Projection lda_fit(const Eigen::MatrixXd& rows, std::span<const ClassId> labels, std::size_t class_count) {
    if (class_count < 2) {
        throw InvalidArgument("lda_fit needs at least 2 classes");
    }
    if (static_cast<std::size_t>(rows.rows()) != labels.size()) {
        throw LengthMismatch("row and label counts differ");
    }
    const auto d = rows.cols();
    std::vector<std::size_t> counts(class_count, 0);
    Eigen::MatrixXd class_means = Eigen::MatrixXd::Zero(static_cast<long>(class_count), d);
    for (Eigen::Index i = 0; i < rows.rows(); ++i) {
        const ClassId c = labels[static_cast<std::size_t>(i)];
        if (c >= class_count) {
            throw InvalidArgument("label out of range");
        }
        ++counts[c];
        class_means.row(static_cast<long>(c)) += rows.row(i);
    }
    for (std::size_t c = 0; c < class_count; ++c) {
        if (counts[c] < 2) {
            throw ClassTooSmall("lda_fit needs at least 2 records per class");
        }
        class_means.row(static_cast<long>(c)) /= static_cast<double>(counts[c]);
    }

    Projection p;
    p.kind = ReductionKind::lda;
    p.mean = rows.colwise().mean().transpose();

    Eigen::MatrixXd within = Eigen::MatrixXd::Zero(d, d);
    Eigen::MatrixXd between = Eigen::MatrixXd::Zero(d, d);
    Eigen::MatrixXd centered(rows.rows(), d);
    for (Eigen::Index i = 0; i < rows.rows(); ++i) {
        centered.row(i) = rows.row(i) - class_means.row(static_cast<long>(labels[static_cast<std::size_t>(i)]));
    }
    within.noalias() = centered.transpose() * centered;
    for (std::size_t c = 0; c < class_count; ++c) {
        const Eigen::VectorXd diff = class_means.row(static_cast<long>(c)).transpose() - p.mean;
        between.noalias() += static_cast<double>(counts[c]) * diff * diff.transpose();
    }

    const double ridge = 1e-6 * within.trace() / static_cast<double>(d);
    within.diagonal().array() += ridge;
    Eigen::LLT<Eigen::MatrixXd> llt(within);
    if (llt.info() != Eigen::Success || !(ridge > 0.0)) {
        throw SingularScatter("within-class scatter is singular after regularization");
    }
    Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::MatrixXd> es(between, within,
                                                                  Eigen::ComputeEigenvectors | Eigen::Ax_lBx);
    if (es.info() != Eigen::Success) {
        throw SingularScatter("generalized eigensolver failed");
    }
    const auto k = std::min<Eigen::Index>(static_cast<Eigen::Index>(class_count) - 1, d);
    p.basis.resize(k, d);
    for (Eigen::Index i = 0; i < k; ++i) {
        const Eigen::Index col = d - 1 - i;  // eigenvalues ascend
        Eigen::VectorXd v = es.eigenvectors().col(col);
        orient(v);
        p.basis.row(i) = v.transpose();
        p.eigenvalues.push_back(es.eigenvalues()[col]);
    }
    return p;
}

Eigen::VectorXd lda_transform(const Projection& projection, const Eigen::VectorXd& x) {
    return projection.apply(x);
}

}  // namespace mf2scf
