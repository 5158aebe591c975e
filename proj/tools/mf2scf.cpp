// mf2scf: slicing, feature extraction, training and evaluation driver.

#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "mf2scf/config.hpp"
#include "mf2scf/errors.hpp"
#include "mf2scf/pipeline.hpp"

namespace fs = std::filesystem;

namespace {

struct CommonFlags {
    std::optional<std::string> config;
    std::optional<std::string> dataset;
    std::optional<std::uint64_t> seed;
    std::optional<std::string> cache_dir;
    std::optional<std::string> deep_features;
    std::optional<std::string> reduction;
    std::optional<std::string> report;
    std::optional<double> radius;
    std::optional<double> similarity;
    std::optional<double> gradient_diff;
    std::optional<unsigned> workers;
    std::optional<std::string> traversal;
};

void add_common(CLI::App* cmd, CommonFlags& f) {
    cmd->add_option("--config", f.config, "JSON run configuration");
    cmd->add_option("--dataset", f.dataset, "Dataset root (<root>/<class>/*.png|jpg)");
    cmd->add_option("--seed", f.seed, "Split and training seed");
    cmd->add_option("--cache-dir", f.cache_dir, "Feature cache directory");
    cmd->add_option("--deep-features", f.deep_features, "MF2SCF-F1 deep feature file");
    cmd->add_option("--reduction", f.reduction, "none|pca|lda")->check(CLI::IsMember({"none", "pca", "lda"}));
    cmd->add_option("--report", f.report, "Write the JSON report here instead of stdout");
    cmd->add_option("--radius", f.radius, "Graph radius r");
    cmd->add_option("--similarity", f.similarity, "Edge weight threshold t");
    cmd->add_option("--gradient-diff", f.gradient_diff, "Gradient difference threshold s");
    cmd->add_option("--workers", f.workers, "Worker threads (0 = all cores)");
    cmd->add_option("--graph-traversal", f.traversal, "upper_triangle|radius_window")
        ->check(CLI::IsMember({"upper_triangle", "radius_window"}));
}

// Config file first, flags win.
mf2scf::RunConfig resolve(const CommonFlags& f) {
    std::vector<std::string> warnings;
    mf2scf::RunConfig config = f.config ? mf2scf::load_config(*f.config, warnings) : mf2scf::RunConfig{};
    for (const auto& w : warnings) {
        std::cerr << "warning: " << w << "\n";
    }
    if (f.dataset) config.dataset_root = *f.dataset;
    if (f.seed) config.seed = *f.seed;
    if (f.cache_dir) config.cache_dir = *f.cache_dir;
    if (f.deep_features) config.deep_features = fs::path(*f.deep_features);
    if (f.reduction) config.reduction = mf2scf::parse_reduction(*f.reduction);
    if (f.radius) config.cn.radius = *f.radius;
    if (f.similarity) config.cn.similarity = *f.similarity;
    if (f.gradient_diff) config.cn.gradient_diff = *f.gradient_diff;
    if (f.workers) config.workers = *f.workers;
    if (f.traversal) config.graph_traversal = mf2scf::parse_traversal(*f.traversal);
    config.validate();
    return config;
}

void emit_report(const nlohmann::json& report, const std::optional<std::string>& path) {
    const std::string text = mf2scf::report_text(report);
    if (path) {
        mf2scf::write_text_atomic(*path, text);
    } else {
        std::cout << text;
    }
}

void print_failures(const std::vector<mf2scf::ImageFailure>& failures) {
    for (const auto& f : failures) {
        std::cerr << "error: " << f.image_id << ": " << f.message << "\n";
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Multi-feature fusion scene classification toolkit"};
    app.require_subcommand(1);

    CommonFlags slice_flags, extract_flags, train_flags, predict_flags, eval_flags;

    auto* slice = app.add_subcommand("slice", "Export 20 masked slices per image and a manifest");
    add_common(slice, slice_flags);
    std::string slice_out;
    slice->add_option("--out", slice_out, "Output directory")->required();

    auto* extract = app.add_subcommand("extract", "Compute and cache f2/f3 for every image");
    add_common(extract, extract_flags);
    std::optional<std::string> debug_dir;
    extract->add_option("--debug-dir", debug_dir, "Export cc/dc/ec planes and f2/f3 CSV here");

    auto* train = app.add_subcommand("train", "Split, reduce, train the SVM and report");
    add_common(train, train_flags);
    std::string train_model;
    train->add_option("--model", train_model, "Output model file")->required();

    auto* predict = app.add_subcommand("predict", "Predict labels for image files");
    add_common(predict, predict_flags);
    std::string predict_model;
    std::vector<std::string> predict_images;
    predict->add_option("--model", predict_model, "Model file")->required();
    predict->add_option("images", predict_images, "Image paths")->required();

    auto* eval = app.add_subcommand("eval", "Evaluate a model on the test split");
    add_common(eval, eval_flags);
    std::string eval_model;
    eval->add_option("--model", eval_model, "Model file")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (*slice) {
            const auto config = resolve(slice_flags);
            const auto stats = mf2scf::run_slice(config, slice_out);
            print_failures(stats.failures);
            std::cerr << "sliced " << stats.images << " image(s) into " << stats.slices_written << " file(s)\n";
            return stats.failures.empty() ? 0 : 1;
        }
        if (*extract) {
            const auto config = resolve(extract_flags);
            const auto index = mf2scf::scan_dataset(config.dataset_root);
            std::optional<mf2scf::DebugExport> debug;
            if (debug_dir) {
                debug = mf2scf::DebugExport{*debug_dir};
            }
            std::vector<std::optional<mf2scf::ImageFeatures>> features;
            const auto stats = mf2scf::extract_dataset(config, index.entries, features, debug);
            print_failures(stats.failures);
            nlohmann::json summary = {{"images", index.entries.size()},
                                      {"extracted", stats.extracted},
                                      {"cache_hits", stats.cache_hits},
                                      {"failures", stats.failures.size()},
                                      {"feature_fingerprint", config.feature_fingerprint()}};
            emit_report(summary, extract_flags.report);
            return stats.failures.empty() ? 0 : 1;
        }
        if (*train) {
            const auto config = resolve(train_flags);
            const auto outcome = mf2scf::run_train(config);
            outcome.model.save(train_model);
            std::cerr << "features: " << outcome.extract.extracted << " extracted, " << outcome.extract.cache_hits
                      << " from cache\n";
            emit_report(outcome.report, train_flags.report);
            return 0;
        }
        if (*predict) {
            const auto config = resolve(predict_flags);
            const auto model = mf2scf::Model::load(predict_model);
            std::vector<fs::path> paths(predict_images.begin(), predict_images.end());
            std::vector<mf2scf::ImageFailure> failures;
            const auto predictions = mf2scf::run_predict(config, model, paths, failures);
            for (const auto& p : predictions) {
                std::cout << p.path << '\t' << p.label << '\n';
            }
            print_failures(failures);
            return failures.empty() ? 0 : 1;
        }
        if (*eval) {
            const auto config = resolve(eval_flags);
            const auto model = mf2scf::Model::load(eval_model);
            emit_report(mf2scf::run_eval(config, model), eval_flags.report);
            return 0;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 1;
}
