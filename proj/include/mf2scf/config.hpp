#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "mf2scf/cngraph.hpp"
#include "mf2scf/reduction.hpp"
#include "mf2scf/slicer.hpp"

namespace mf2scf {

/// Everything a pipeline run depends on. Loaded from one JSON file, then
/// overridden by command-line flags.
struct RunConfig {
    std::filesystem::path dataset_root;
    std::filesystem::path cache_dir = ".mf2scf-cache";
    CnParams cn;
    std::array<double, 4> scale_fractions = kDefaultScaleFractions;
    double test_fraction = 0.3;
    // Share of each class's non-test records reserved for deep fine-tuning.
    double finetune_fraction = 0.5;
    std::uint64_t seed = 0;
    double svm_c = 1.0;
    // Accepted for parity with kernel SVM settings; a linear model ignores it.
    std::optional<double> kernel_gamma;
    ReductionKind reduction = ReductionKind::none;
    double pca_variance_threshold = 0.95;
    std::optional<std::filesystem::path> deep_features;
    unsigned workers = 0;  // 0 = hardware concurrency
    PairTraversal graph_traversal = PairTraversal::radius_window;

    void validate() const;

    // Hash of the parameters that change f2 / f3.
    [[nodiscard]] std::string feature_fingerprint() const;
    // Hash of every parameter that changes a trained model or report.
    [[nodiscard]] std::string run_fingerprint(std::size_t deep_dim) const;

    [[nodiscard]] nlohmann::json to_json() const;
};

/// Applies the keys of `j` onto `config`. Unknown keys throw InvalidArgument;
/// warnings (such as an ignored kernel_gamma) are appended to `warnings`.
void apply_json(RunConfig& config, const nlohmann::json& j, std::vector<std::string>& warnings);

[[nodiscard]] RunConfig load_config(const std::filesystem::path& path, std::vector<std::string>& warnings);

[[nodiscard]] std::string_view traversal_name(PairTraversal t) noexcept;
[[nodiscard]] PairTraversal parse_traversal(std::string_view name);

}  // namespace mf2scf
