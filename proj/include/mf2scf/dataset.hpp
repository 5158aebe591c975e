#pragma once

#include <cstdint>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "mf2scf/fusion.hpp"

namespace mf2scf {

using ClassId = std::size_t;

struct LabeledRecord {
    std::string image_id;
    ClassId label = 0;
    FusedVector features;
};

/// Records sharing one feature layout; class ids index `class_names`.
class LabeledDataset {
public:
    LabeledDataset() = default;
    explicit LabeledDataset(std::vector<std::string> class_names);

    // Throws LayoutMismatch when the record's layout differs from earlier ones.
    void add(LabeledRecord record);

    [[nodiscard]] const std::vector<std::string>& class_names() const noexcept { return class_names_; }
    [[nodiscard]] std::size_t class_count() const noexcept { return class_names_.size(); }
    [[nodiscard]] const std::vector<LabeledRecord>& records() const noexcept { return records_; }
    [[nodiscard]] std::size_t size() const noexcept { return records_.size(); }
    [[nodiscard]] const FeatureLayout& layout() const noexcept { return layout_; }

    [[nodiscard]] LabeledDataset subset(std::span<const std::size_t> indices) const;
    [[nodiscard]] std::vector<std::size_t> class_counts() const;

private:
    std::vector<std::string> class_names_;
    std::vector<LabeledRecord> records_;
    FeatureLayout layout_;
};

struct SplitSpec {
    double test_fraction = 0.3;
    std::uint64_t seed = 0;

    void validate() const;
};

struct SplitResult {
    std::vector<std::size_t> train;
    std::vector<std::size_t> test;
};

/// Fisher-Yates with a portable index draw, so shuffles match across
/// standard library implementations.
void deterministic_shuffle(std::vector<std::size_t>& items, std::mt19937_64& rng);

/// Stratified split of records given as (image_id, label) pairs: per class,
/// round(test_fraction * n_c) records go to test, clamped to [1, n_c - 1].
/// Records are ordered by image_id before shuffling, so the result depends
/// only on the record set and the seed. Throws ClassTooSmall below 2 records.
[[nodiscard]] SplitResult stratified_split(std::span<const std::string> image_ids, std::span<const ClassId> labels,
                                           std::size_t class_count, const SplitSpec& spec);

[[nodiscard]] SplitResult split(const LabeledDataset& ds, const SplitSpec& spec);

/// Fraction of exact matches. Throws LengthMismatch for unequal lengths and
/// InvalidArgument for empty input.
[[nodiscard]] double micro_accuracy(std::span<const ClassId> predictions, std::span<const ClassId> truths);

}  // namespace mf2scf
