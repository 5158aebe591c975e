#include "mf2scf/pipeline.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <fstream>
#include <mutex>
#include <sstream>
#include <thread>
#include <unordered_map>

#include <unistd.h>

#include "mf2scf/errors.hpp"
#include "mf2scf/image_io.hpp"
#include "mf2scf/slicer.hpp"
#include "mf2scf/text_format.hpp"

namespace mf2scf {

namespace fs = std::filesystem;

ClassId DatasetIndex::class_id(const std::string& name) const {
    const auto it = std::lower_bound(class_names.begin(), class_names.end(), name);
    if (it == class_names.end() || *it != name) {
        throw InvalidArgument("unknown class '" + name + "'");
    }
    return static_cast<ClassId>(it - class_names.begin());
}

namespace {

bool is_image_file(const fs::path& p) {
    std::string ext = p.extension().string();
    std::transform(ext.begin(), ext.end(), ext.begin(), [](unsigned char c) { return std::tolower(c); });
    return ext == ".png" || ext == ".jpg" || ext == ".jpeg";
}

std::string relative_id(const fs::path& path, const fs::path& root) {
    return fs::relative(path, root).generic_string();
}

std::string stem_of(const std::string& image_id) {
    return fs::path(image_id).stem().string();
}

std::string csv_line(std::span<const double> values) {
    return text::join(values, ',') + "\n";
}

}  // namespace

DatasetIndex scan_dataset(const fs::path& root) {
    if (root.empty() || !fs::is_directory(root)) {
        throw InvalidArgument("dataset root '" + root.string() + "' is not a directory");
    }
    DatasetIndex index;
    for (const auto& dir : fs::directory_iterator(root)) {
        if (dir.is_directory()) {
            index.class_names.push_back(dir.path().filename().string());
        }
    }
    std::sort(index.class_names.begin(), index.class_names.end());
    for (const auto& cls : index.class_names) {
        for (const auto& f : fs::recursive_directory_iterator(root / cls)) {
            if (f.is_regular_file() && is_image_file(f.path())) {
                index.entries.push_back({relative_id(f.path(), root), cls, f.path()});
            }
        }
    }
    std::sort(index.entries.begin(), index.entries.end(),
              [](const DatasetEntry& a, const DatasetEntry& b) { return a.image_id < b.image_id; });
    return index;
}

FeatureCache::FeatureCache(fs::path cache_dir, std::string fingerprint)
    : dir_(std::move(cache_dir) / fingerprint), fingerprint_(std::move(fingerprint)) {}

fs::path FeatureCache::record_path(const std::string& image_id) const {
    return dir_ / (text::fnv1a_hex(image_id) + ".feat");
}

std::optional<ImageFeatures> FeatureCache::load(const std::string& image_id) const {
    std::ifstream in(record_path(image_id), std::ios::binary);
    if (!in) {
        return std::nullopt;
    }
    std::string magic, id_line, fp_line, f2_line, f3_line;
    if (!std::getline(in, magic) || !std::getline(in, id_line) || !std::getline(in, fp_line) ||
        !std::getline(in, f2_line) || !std::getline(in, f3_line)) {
        return std::nullopt;
    }
    if (magic != "MF2SCF-FEATURES v1" || id_line != "image_id " + image_id ||
        fp_line != "fingerprint " + fingerprint_ || f2_line.rfind("f2 ", 0) != 0 || f3_line.rfind("f3 ", 0) != 0) {
        return std::nullopt;
    }
    try {
        ImageFeatures f;
        f.global.values = text::parse_doubles(std::string_view(f2_line).substr(3));
        f.color.values = text::parse_doubles(std::string_view(f3_line).substr(3));
        if (f.global.values.size() != kGlobalFeatureLength || f.color.values.size() != kColorFeatureLength) {
            return std::nullopt;
        }
        return f;
    } catch (const FormatError&) {
        return std::nullopt;
    }
}

void FeatureCache::store(const std::string& image_id, const ImageFeatures& features) const {
    fs::create_directories(dir_);
    std::string body = "MF2SCF-FEATURES v1\n";
    body += "image_id " + image_id + "\n";
    body += "fingerprint " + fingerprint_ + "\n";
    body += "f2 " + text::join(features.global.values) + "\n";
    body += "f3 " + text::join(features.color.values) + "\n";
    write_text_atomic(record_path(image_id), body);
}

void write_text_atomic(const fs::path& path, const std::string& text) {
    if (path.has_parent_path()) {
        fs::create_directories(path.parent_path());
    }
    std::ostringstream suffix;
    suffix << ".tmp." << ::getpid() << "." << std::hash<std::thread::id>{}(std::this_thread::get_id());
    const fs::path tmp = path.string() + suffix.str();
    {
        std::ofstream out(tmp, std::ios::binary);
        if (!out) {
            throw Error("cannot write '" + path.string() + "'");
        }
        out << text;
        if (!out) {
            throw Error("short write to '" + path.string() + "'");
        }
    }
    fs::rename(tmp, path);
}

ExtractOptions extract_options(const RunConfig& config) {
    ExtractOptions opts;
    opts.params = config.cn;
    opts.graph.traversal = config.graph_traversal;
    return opts;
}

void parallel_for(std::size_t count, unsigned workers, const std::function<void(std::size_t)>& fn) {
    if (workers == 0) {
        workers = std::max(1u, std::thread::hardware_concurrency());
    }
    workers = static_cast<unsigned>(std::min<std::size_t>(workers, std::max<std::size_t>(count, 1)));
    if (workers <= 1) {
        for (std::size_t i = 0; i < count; ++i) {
            fn(i);
        }
        return;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) {
        pool.emplace_back([&] {
            for (std::size_t i = next++; i < count; i = next++) {
                fn(i);
            }
        });
    }
}

ExtractStats extract_dataset(const RunConfig& config, const std::vector<DatasetEntry>& entries,
                             std::vector<std::optional<ImageFeatures>>& out, const std::optional<DebugExport>& debug) {
    config.validate();
    const FeatureCache cache(config.cache_dir, config.feature_fingerprint());
    ExtractOptions opts = extract_options(config);
    opts.keep_planes = debug.has_value() && debug->planes;

    out.assign(entries.size(), std::nullopt);
    std::atomic<std::size_t> extracted{0};
    std::atomic<std::size_t> hits{0};
    std::mutex failure_mutex;
    std::vector<ImageFailure> failures;

    parallel_for(entries.size(), config.workers, [&](std::size_t i) {
        const auto& e = entries[i];
        try {
            if (auto cached = cache.load(e.image_id); cached && !opts.keep_planes) {
                ++hits;
                out[i] = std::move(cached);
            } else {
                ImageFeatures f = extract_features(load_rgb(e.path), opts);
                cache.store(e.image_id, f);
                ++extracted;
                out[i] = std::move(f);
            }
            if (debug) {
                const fs::path base = debug->directory / fs::path(e.image_id).parent_path();
                fs::create_directories(base);
                const std::string stem = stem_of(e.image_id);
                if (debug->planes && out[i]->planes) {
                    save_png(base / (stem + "__cc.png"), out[i]->planes->cc);
                    save_png(base / (stem + "__dc.png"), out[i]->planes->dc);
                    save_png(base / (stem + "__ec.png"), out[i]->planes->ec);
                }
                if (debug->csv) {
                    write_text_atomic(base / (stem + "__f2.csv"), csv_line(out[i]->global.values));
                    write_text_atomic(base / (stem + "__f3.csv"), csv_line(out[i]->color.values));
                }
            }
        } catch (const std::exception& ex) {
            out[i].reset();
            std::lock_guard lock(failure_mutex);
            failures.push_back({e.image_id, ex.what()});
        }
    });

    std::sort(failures.begin(), failures.end(),
              [](const ImageFailure& a, const ImageFailure& b) { return a.image_id < b.image_id; });
    return {extracted.load(), hits.load(), std::move(failures)};
}

Assignment assign_records(const DatasetIndex& index, const RunConfig& config) {
    std::vector<std::string> ids;
    std::vector<ClassId> labels;
    for (const auto& e : index.entries) {
        ids.push_back(e.image_id);
        labels.push_back(index.class_id(e.class_name));
    }
    const SplitResult base = stratified_split(ids, labels, index.class_names.size(),
                                              SplitSpec{config.test_fraction, config.seed});
    Assignment out;
    out.test = base.test;

    std::vector<std::vector<std::size_t>> train_by_class(index.class_names.size());
    for (std::size_t i : base.train) {
        train_by_class[labels[i]].push_back(i);
    }
    // Separate stream so the test split is unchanged by finetune_fraction.
    std::mt19937_64 rng(config.seed ^ 0x9e3779b97f4a7c15ULL);
    for (auto& members : train_by_class) {
        deterministic_shuffle(members, rng);
        auto n_ft = static_cast<std::size_t>(
            std::floor(config.finetune_fraction * static_cast<double>(members.size()) + 0.5));
        if (members.size() >= 2) {
            n_ft = std::min(n_ft, members.size() - 1);
        } else {
            n_ft = 0;
        }
        out.finetune.insert(out.finetune.end(), members.begin(), members.begin() + static_cast<long>(n_ft));
        out.train.insert(out.train.end(), members.begin() + static_cast<long>(n_ft), members.end());
    }
    std::sort(out.finetune.begin(), out.finetune.end());
    std::sort(out.train.begin(), out.train.end());
    return out;
}

SliceStats run_slice(const RunConfig& config, const fs::path& out_dir) {
    config.validate();
    const DatasetIndex index = scan_dataset(config.dataset_root);
    const Assignment assignment = assign_records(index, config);
    std::vector<std::string> role(index.entries.size(), "train");
    for (std::size_t i : assignment.finetune) role[i] = "finetune";
    for (std::size_t i : assignment.test) role[i] = "test";

    std::vector<std::optional<std::vector<std::string>>> written(index.entries.size());
    std::mutex failure_mutex;
    SliceStats stats;
    parallel_for(index.entries.size(), config.workers, [&](std::size_t i) {
        const auto& e = index.entries[i];
        try {
            const RgbImage img = load_rgb(e.path);
            const SliceSet masks = generate_masks(img.width(), img.height(), config.scale_fractions);
            const fs::path rel_dir = fs::path(e.image_id).parent_path();
            fs::create_directories(out_dir / rel_dir);
            std::vector<std::string> files;
            for (const auto& slice : masks) {
                const fs::path rel = rel_dir / (stem_of(e.image_id) + "__" + slice.id.name() + ".png");
                save_png(out_dir / rel, apply_mask(img, slice.mask));
                files.push_back(rel.generic_string());
            }
            written[i] = std::move(files);
        } catch (const std::exception& ex) {
            std::lock_guard lock(failure_mutex);
            stats.failures.push_back({e.image_id, ex.what()});
        }
    });
    std::sort(stats.failures.begin(), stats.failures.end(),
              [](const ImageFailure& a, const ImageFailure& b) { return a.image_id < b.image_id; });

    nlohmann::json manifest;
    manifest["format"] = "mf2scf-slices-v1";
    manifest["slice_fill"] = "crop_to_mask_bbox_zero_outside";
    manifest["scale_fractions"] = config.scale_fractions;
    manifest["shapes"] = {"square", "triangle", "circle", "ldc", "rdc"};
    manifest["seed"] = config.seed;
    manifest["test_fraction"] = config.test_fraction;
    manifest["finetune_fraction"] = config.finetune_fraction;
    manifest["classes"] = index.class_names;
    nlohmann::json entries = nlohmann::json::array();
    for (std::size_t i = 0; i < index.entries.size(); ++i) {
        if (!written[i]) {
            continue;
        }
        ++stats.images;
        stats.slices_written += written[i]->size();
        entries.push_back({{"image_id", index.entries[i].image_id},
                           {"label", index.entries[i].class_name},
                           {"assignment", role[i]},
                           {"slices", *written[i]}});
    }
    manifest["entries"] = std::move(entries);
    nlohmann::json failures = nlohmann::json::array();
    for (const auto& f : stats.failures) {
        failures.push_back({{"image_id", f.image_id}, {"error", f.message}});
    }
    manifest["failures"] = std::move(failures);
    write_text_atomic(out_dir / "manifest.json", report_text(manifest));
    return stats;
}

LabeledDataset build_dataset(const RunConfig& config, const DatasetIndex& index, ExtractStats* stats_out) {
    std::vector<std::optional<ImageFeatures>> features;
    ExtractStats stats = extract_dataset(config, index.entries, features);
    if (stats_out != nullptr) {
        *stats_out = stats;
    }
    if (!stats.failures.empty()) {
        std::string msg = std::to_string(stats.failures.size()) + " image(s) failed:";
        for (const auto& f : stats.failures) {
            msg += "\n  " + f.image_id + ": " + f.message;
        }
        throw Error(msg);
    }

    std::optional<DeepFeatureFile> deep;
    std::unordered_map<std::string, const DeepFeatureRecord*> deep_by_id;
    if (config.deep_features) {
        deep = read_deep_features(*config.deep_features);
        for (const auto& r : deep->records) {
            deep_by_id.emplace(r.image_id, &r);
        }
    }

    LabeledDataset ds(index.class_names);
    std::vector<std::string> missing;
    for (std::size_t i = 0; i < index.entries.size(); ++i) {
        const auto& e = index.entries[i];
        std::span<const double> f1;
        if (deep) {
            const auto it = deep_by_id.find(e.image_id);
            if (it == deep_by_id.end()) {
                missing.push_back(e.image_id);
                continue;
            }
            if (it->second->class_label != e.class_name) {
                throw LayoutMismatch("deep feature record '" + e.image_id + "' is labeled '" +
                                     it->second->class_label + "', dataset says '" + e.class_name + "'");
            }
            f1 = it->second->values;
        }
        ds.add({e.image_id, index.class_id(e.class_name), fuse(f1, features[i]->global, features[i]->color)});
    }
    if (!missing.empty()) {
        std::string msg = std::to_string(missing.size()) + " image(s) have no deep feature record:";
        for (const auto& id : missing) {
            msg += "\n  " + id;
        }
        throw LayoutMismatch(msg);
    }
    return ds;
}

nlohmann::json evaluate(const Model& model, const LabeledDataset& test, const std::string& run_fingerprint) {
    const std::size_t c = model.class_names().size();
    std::vector<std::vector<std::size_t>> confusion(c, std::vector<std::size_t>(c, 0));
    std::vector<ClassId> predictions;
    std::vector<ClassId> truths;
    for (const auto& r : test.records()) {
        const ClassId p = model.predict(r.features);
        predictions.push_back(p);
        truths.push_back(r.label);
        ++confusion[r.label][p];
    }
    nlohmann::json report;
    report["micro_accuracy"] = predictions.empty() ? 0.0 : micro_accuracy(predictions, truths);
    nlohmann::json per_class = nlohmann::json::object();
    for (std::size_t k = 0; k < c; ++k) {
        std::size_t total = 0;
        for (std::size_t p = 0; p < c; ++p) {
            total += confusion[k][p];
        }
        per_class[model.class_names()[k]] =
            total == 0 ? 0.0 : static_cast<double>(confusion[k][k]) / static_cast<double>(total);
    }
    report["per_class_accuracy"] = per_class;
    report["confusion_matrix"] = confusion;
    report["classes"] = model.class_names();
    const FeatureLayout& layout = model.layout();
    report["feature_layout"] = {{"f1_len", layout.f1_len},
                                {"f2_len", layout.f2_len},
                                {"f3_len", layout.f3_len},
                                {"total", layout.total()},
                                {"classifier_dim", model.classifier_dim()}};
    report["reduction"] = {{"kind", std::string(reduction_name(model.projection().kind))},
                           {"dims", model.classifier_dim()}};
    report["config_fingerprint"] = run_fingerprint;
    report["test_records"] = test.size();
    return report;
}

TrainOutcome run_train(const RunConfig& config) {
    config.validate();
    const DatasetIndex index = scan_dataset(config.dataset_root);
    ExtractStats stats;
    const LabeledDataset ds = build_dataset(config, index, &stats);
    const Assignment assignment = assign_records(index, config);

    std::vector<std::size_t> train_idx = assignment.train;
    if (!config.deep_features) {
        // Without deep features there is no fine-tuning stage to hold out for.
        train_idx.insert(train_idx.end(), assignment.finetune.begin(), assignment.finetune.end());
        std::sort(train_idx.begin(), train_idx.end());
    }
    const LabeledDataset train = ds.subset(train_idx);
    const LabeledDataset test = ds.subset(assignment.test);

    TrainOptions opts;
    opts.svm.c_penalty = config.svm_c;
    opts.svm.seed = config.seed;
    opts.reduction = config.reduction;
    opts.pca_variance_threshold = config.pca_variance_threshold;
    Model model = Model::train(train, opts, config.feature_fingerprint());

    const std::string fp = config.run_fingerprint(ds.layout().f1_len);
    nlohmann::json report = evaluate(model, test, fp);
    report["train_records"] = train.size();
    return {std::move(model), std::move(report), std::move(stats)};
}

nlohmann::json run_eval(const RunConfig& config, const Model& model) {
    config.validate();
    if (model.feature_fingerprint() != config.feature_fingerprint()) {
        throw LayoutMismatch("model was trained with feature fingerprint " + model.feature_fingerprint() +
                             ", config gives " + config.feature_fingerprint());
    }
    const DatasetIndex index = scan_dataset(config.dataset_root);
    if (index.class_names != model.class_names()) {
        throw LayoutMismatch("dataset classes do not match the model's classes");
    }
    const LabeledDataset ds = build_dataset(config, index);
    const Assignment assignment = assign_records(index, config);
    return evaluate(model, ds.subset(assignment.test), config.run_fingerprint(ds.layout().f1_len));
}

std::vector<Prediction> run_predict(const RunConfig& config, const Model& model,
                                    const std::vector<fs::path>& images, std::vector<ImageFailure>& failures) {
    config.validate();
    if (model.feature_fingerprint() != config.feature_fingerprint()) {
        throw LayoutMismatch("model was trained with feature fingerprint " + model.feature_fingerprint() +
                             ", freshly extracted features have " + config.feature_fingerprint());
    }
    std::optional<DeepFeatureFile> deep;
    if (model.layout().f1_len > 0) {
        if (!config.deep_features) {
            throw LayoutMismatch("model expects deep features; pass --deep-features");
        }
        deep = read_deep_features(*config.deep_features);
    }
    std::vector<DatasetEntry> entries;
    for (const auto& p : images) {
        std::string id = p.generic_string();
        if (!config.dataset_root.empty()) {
            std::error_code ec;
            const auto rel = fs::relative(p, config.dataset_root, ec);
            if (!ec && !rel.empty() && *rel.begin() != "..") {
                id = rel.generic_string();
            }
        }
        entries.push_back({id, "", p});
    }
    std::vector<std::optional<ImageFeatures>> features;
    ExtractStats stats = extract_dataset(config, entries, features);
    failures = stats.failures;

    std::vector<Prediction> out;
    for (std::size_t i = 0; i < entries.size(); ++i) {
        if (!features[i]) {
            continue;
        }
        std::span<const double> f1;
        if (deep) {
            const DeepFeatureRecord* rec = deep->find(entries[i].image_id);
            if (rec == nullptr) {
                failures.push_back({entries[i].image_id, "no deep feature record"});
                continue;
            }
            f1 = rec->values;
        }
        const FusedVector v = fuse(f1, features[i]->global, features[i]->color);
        out.push_back({images[i].string(), model.class_names()[model.predict(v)]});
    }
    return out;
}

std::string report_text(const nlohmann::json& report) {
    return report.dump(2) + "\n";
}

}  // namespace mf2scf
