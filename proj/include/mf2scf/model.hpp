#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "mf2scf/reduction.hpp"
#include "mf2scf/svm.hpp"

namespace mf2scf {

struct TrainOptions {
    SvmOptions svm;
    ReductionKind reduction = ReductionKind::none;
    double pca_variance_threshold = 0.95;
};

/// Standardizer, optional PCA/LDA projection and one-vs-rest SVM weights.
/// Immutable once trained.
class Model {
public:
    Model() = default;
    Model(std::vector<std::string> class_names, FeatureLayout layout, std::string feature_fingerprint,
          Standardizer standardizer, Projection projection, LinearSvm svm);

    [[nodiscard]] static Model train(const LabeledDataset& train, const TrainOptions& options,
                                     std::string feature_fingerprint = {},
                                     std::vector<BinarySvmTrace>* traces = nullptr);

    // Throws LayoutMismatch when the vector's layout is not the trained one.
    [[nodiscard]] ClassId predict(const FusedVector& v) const;
    [[nodiscard]] Eigen::VectorXd scores(const FusedVector& v) const;

    [[nodiscard]] const std::vector<std::string>& class_names() const noexcept { return class_names_; }
    [[nodiscard]] const FeatureLayout& layout() const noexcept { return layout_; }
    [[nodiscard]] const std::string& feature_fingerprint() const noexcept { return feature_fingerprint_; }
    [[nodiscard]] const Standardizer& standardizer() const noexcept { return standardizer_; }
    [[nodiscard]] const Projection& projection() const noexcept { return projection_; }
    [[nodiscard]] const LinearSvm& svm() const noexcept { return svm_; }
    [[nodiscard]] std::size_t classifier_dim() const noexcept { return svm_.dim(); }

    [[nodiscard]] std::string serialize() const;
    [[nodiscard]] static Model deserialize(const std::string& text);
    void save(const std::filesystem::path& path) const;
    [[nodiscard]] static Model load(const std::filesystem::path& path);

private:
    std::vector<std::string> class_names_;
    FeatureLayout layout_;
    std::string feature_fingerprint_;
    Standardizer standardizer_;
    Projection projection_;
    LinearSvm svm_;
};

}  // namespace mf2scf
