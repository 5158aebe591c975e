#pragma once

#include <filesystem>
#include <map>
#include <string>
#include <vector>

namespace mf2scf {

/// Deep local features exchanged with the DenseNet exporter.
///
///   MF2SCF-F1 v1 dim=<d> [key=value ...]
///   <image_id>,<class_label>,<v_1>,...,<v_d>
///
/// image_id is the image path relative to the dataset root.
struct DeepFeatureRecord {
    std::string image_id;
    std::string class_label;
    std::vector<double> values;
};

struct DeepFeatureFile {
    std::size_t dim = 0;
    std::map<std::string, std::string> metadata;  // extra header tokens
    std::vector<DeepFeatureRecord> records;

    [[nodiscard]] const DeepFeatureRecord* find(const std::string& image_id) const;
};

// Throws FormatError with the offending line number.
[[nodiscard]] DeepFeatureFile parse_deep_features(const std::string& text);
[[nodiscard]] DeepFeatureFile read_deep_features(const std::filesystem::path& path);

[[nodiscard]] std::string format_deep_features(const DeepFeatureFile& file);
// Written to a temporary file, then renamed into place.
void write_deep_features(const std::filesystem::path& path, const DeepFeatureFile& file);

}  // namespace mf2scf
