#include "mf2scf/dataset.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "mf2scf/errors.hpp"

namespace mf2scf {

LabeledDataset::LabeledDataset(std::vector<std::string> class_names) : class_names_(std::move(class_names)) {}

void LabeledDataset::add(LabeledRecord record) {
    if (record.label >= class_names_.size()) {
        throw InvalidArgument("record '" + record.image_id + "' has an unknown class id");
    }
    if (records_.empty()) {
        layout_ = record.features.layout;
    } else if (record.features.layout != layout_) {
        throw LayoutMismatch("record '" + record.image_id + "' has layout " + record.features.layout.fingerprint() +
                             ", dataset has " + layout_.fingerprint());
    }
    if (record.features.values.size() != record.features.layout.total()) {
        throw LayoutMismatch("record '" + record.image_id + "' length does not match its layout");
    }
    records_.push_back(std::move(record));
}

LabeledDataset LabeledDataset::subset(std::span<const std::size_t> indices) const {
    LabeledDataset out(class_names_);
    for (std::size_t i : indices) {
        out.add(records_.at(i));
    }
    return out;
}

std::vector<std::size_t> LabeledDataset::class_counts() const {
    std::vector<std::size_t> counts(class_names_.size(), 0);
    for (const auto& r : records_) {
        ++counts[r.label];
    }
    return counts;
}

void SplitSpec::validate() const {
    if (!(test_fraction > 0.0 && test_fraction < 1.0)) {
        throw InvalidArgument("test_fraction must lie in (0, 1)");
    }
}

void deterministic_shuffle(std::vector<std::size_t>& items, std::mt19937_64& rng) {
    for (std::size_t i = items.size(); i > 1; --i) {
        const std::size_t j = static_cast<std::size_t>(rng() % i);
        std::swap(items[i - 1], items[j]);
    }
}

SplitResult stratified_split(std::span<const std::string> image_ids, std::span<const ClassId> labels,
                             std::size_t class_count, const SplitSpec& spec) {
    spec.validate();
    if (image_ids.size() != labels.size()) {
        throw LengthMismatch("image id and label lists differ in length");
    }
    std::vector<std::vector<std::size_t>> by_class(class_count);
    for (std::size_t i = 0; i < labels.size(); ++i) {
        if (labels[i] >= class_count) {
            throw InvalidArgument("label out of range");
        }
        by_class[labels[i]].push_back(i);
    }
    std::mt19937_64 rng(spec.seed);
    SplitResult out;
    for (std::size_t c = 0; c < class_count; ++c) {
        auto& members = by_class[c];
        if (members.size() < 2) {
            throw ClassTooSmall("class " + std::to_string(c) + " has " + std::to_string(members.size()) +
                                " records, need at least 2");
        }
        std::sort(members.begin(), members.end(),
                  [&](std::size_t a, std::size_t b) { return image_ids[a] < image_ids[b]; });
        deterministic_shuffle(members, rng);
        const auto n = static_cast<double>(members.size());
        auto n_test = static_cast<std::size_t>(std::floor(spec.test_fraction * n + 0.5));
        n_test = std::clamp<std::size_t>(n_test, 1, members.size() - 1);
        out.test.insert(out.test.end(), members.begin(), members.begin() + static_cast<long>(n_test));
        out.train.insert(out.train.end(), members.begin() + static_cast<long>(n_test), members.end());
    }
    std::sort(out.train.begin(), out.train.end());
    std::sort(out.test.begin(), out.test.end());
    return out;
}

SplitResult split(const LabeledDataset& ds, const SplitSpec& spec) {
    std::vector<std::string> ids;
    std::vector<ClassId> labels;
    ids.reserve(ds.size());
    labels.reserve(ds.size());
    for (const auto& r : ds.records()) {
        ids.push_back(r.image_id);
        labels.push_back(r.label);
    }
    return stratified_split(ids, labels, ds.class_count(), spec);
}

double micro_accuracy(std::span<const ClassId> predictions, std::span<const ClassId> truths) {
    if (predictions.size() != truths.size()) {
        throw LengthMismatch("prediction and truth lists differ in length");
    }
    if (predictions.empty()) {
        throw InvalidArgument("micro_accuracy of an empty label list");
    }
    std::size_t hits = 0;
    for (std::size_t i = 0; i < predictions.size(); ++i) {
        hits += predictions[i] == truths[i] ? 1 : 0;
    }
    return static_cast<double>(hits) / static_cast<double>(predictions.size());
}

}  // namespace mf2scf
