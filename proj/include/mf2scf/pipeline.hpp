#pragma once

#include <atomic>
#include <filesystem>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "mf2scf/config.hpp"
#include "mf2scf/dataset.hpp"
#include "mf2scf/features.hpp"
#include "mf2scf/interchange.hpp"
#include "mf2scf/model.hpp"

namespace mf2scf {

struct DatasetEntry {
    std::string image_id;  // path relative to the dataset root, '/' separated
    std::string class_name;
    std::filesystem::path path;
};

struct DatasetIndex {
    std::vector<std::string> class_names;  // sorted; index = ClassId
    std::vector<DatasetEntry> entries;     // sorted by image_id

    [[nodiscard]] ClassId class_id(const std::string& name) const;
};

/// Directory-per-class layout: <root>/<class>/*.png|*.jpg|*.jpeg.
[[nodiscard]] DatasetIndex scan_dataset(const std::filesystem::path& root);

struct ImageFailure {
    std::string image_id;
    std::string message;
};

/// One decimal-text file per image under <cache_dir>/<feature fingerprint>/.
/// Records are written to a temporary file and renamed into place.
class FeatureCache {
public:
    FeatureCache(std::filesystem::path cache_dir, std::string fingerprint);

    [[nodiscard]] std::optional<ImageFeatures> load(const std::string& image_id) const;
    void store(const std::string& image_id, const ImageFeatures& features) const;

    [[nodiscard]] const std::filesystem::path& directory() const noexcept { return dir_; }
    [[nodiscard]] std::filesystem::path record_path(const std::string& image_id) const;

private:
    std::filesystem::path dir_;
    std::string fingerprint_;
};

struct ExtractStats {
    std::size_t extracted = 0;
    std::size_t cache_hits = 0;
    std::vector<ImageFailure> failures;
};

struct DebugExport {
    std::filesystem::path directory;
    bool planes = true;  // <stem>__{cc,dc,ec}.png
    bool csv = true;     // <stem>__f2.csv / <stem>__f3.csv
};

[[nodiscard]] ExtractOptions extract_options(const RunConfig& config);

/// Runs `fn(i)` for i in [0, count) on a pool of `workers` threads.
void parallel_for(std::size_t count, unsigned workers, const std::function<void(std::size_t)>& fn);

/// Extracts (or loads from cache) f2/f3 for every entry. Slot i of `out`
/// stays empty when entry i failed; the failure is listed in the stats.
[[nodiscard]] ExtractStats extract_dataset(const RunConfig& config, const std::vector<DatasetEntry>& entries,
                                           std::vector<std::optional<ImageFeatures>>& out,
                                           const std::optional<DebugExport>& debug = std::nullopt);

struct SliceStats {
    std::size_t images = 0;
    std::size_t slices_written = 0;
    std::vector<ImageFailure> failures;
};

/// Per-class assignment of every record to fine-tune, train or test.
struct Assignment {
    std::vector<std::size_t> finetune;
    std::vector<std::size_t> train;
    std::vector<std::size_t> test;
};

[[nodiscard]] Assignment assign_records(const DatasetIndex& index, const RunConfig& config);

/// Writes 20 masked slices per image plus manifest.json into `out_dir`.
[[nodiscard]] SliceStats run_slice(const RunConfig& config, const std::filesystem::path& out_dir);

struct TrainOutcome {
    Model model;
    nlohmann::json report;
    ExtractStats extract;
};

/// Builds the labeled dataset (optionally joined with deep features), splits
/// it, trains and evaluates. Throws on any extraction failure.
[[nodiscard]] LabeledDataset build_dataset(const RunConfig& config, const DatasetIndex& index,
                                           ExtractStats* stats = nullptr);
[[nodiscard]] TrainOutcome run_train(const RunConfig& config);

/// Report over `test` with keys micro_accuracy, per_class_accuracy,
/// confusion_matrix, feature_layout, config_fingerprint.
[[nodiscard]] nlohmann::json evaluate(const Model& model, const LabeledDataset& test, const std::string& run_fingerprint);

[[nodiscard]] nlohmann::json run_eval(const RunConfig& config, const Model& model);

struct Prediction {
    std::string path;
    std::string label;
};

/// Extracts features for each image and predicts its label. Throws
/// LayoutMismatch when the model was trained with other feature parameters.
[[nodiscard]] std::vector<Prediction> run_predict(const RunConfig& config, const Model& model,
                                                  const std::vector<std::filesystem::path>& images,
                                                  std::vector<ImageFailure>& failures);

// Stable text rendering of a report (sorted keys, two-space indent).
[[nodiscard]] std::string report_text(const nlohmann::json& report);

void write_text_atomic(const std::filesystem::path& path, const std::string& text);

}  // namespace mf2scf
