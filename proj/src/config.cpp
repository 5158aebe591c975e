#include "mf2scf/config.hpp"

#include <fstream>
#include <set>

#include "mf2scf/errors.hpp"
#include "mf2scf/text_format.hpp"

namespace mf2scf {

namespace {

constexpr std::string_view kFeatureVersion = "mf2scf-features-v1";

const std::set<std::string>& known_keys() {
    static const std::set<std::string> keys = {
        "dataset_root", "cache_dir", "r", "t", "s", "P", "scale_fractions", "test_fraction",
        "finetune_fraction", "seed", "svm_c", "kernel_gamma", "reduction", "pca_variance_threshold",
        "deep_features", "workers", "graph_traversal"};
    return keys;
}

template <typename T>
T get_as(const nlohmann::json& j, const std::string& key) {
    try {
        return j.get<T>();
    } catch (const nlohmann::json::exception&) {
        throw InvalidArgument("config key '" + key + "' has the wrong type");
    }
}

}  // namespace

std::string_view traversal_name(PairTraversal t) noexcept {
    return t == PairTraversal::upper_triangle ? "upper_triangle" : "radius_window";
}

PairTraversal parse_traversal(std::string_view name) {
    if (name == "upper_triangle") return PairTraversal::upper_triangle;
    if (name == "radius_window") return PairTraversal::radius_window;
    throw InvalidArgument("unknown graph_traversal '" + std::string(name) + "'");
}

void RunConfig::validate() const {
    cn.validate();
    SplitSpec{test_fraction, seed}.validate();
    if (!(finetune_fraction >= 0.0 && finetune_fraction < 1.0)) {
        throw InvalidArgument("finetune_fraction must lie in [0, 1)");
    }
    if (!(svm_c > 0.0)) {
        throw InvalidArgument("svm_c must be > 0");
    }
    if (!(pca_variance_threshold > 0.0 && pca_variance_threshold <= 1.0)) {
        throw InvalidArgument("pca_variance_threshold must lie in (0, 1]");
    }
    for (std::size_t i = 0; i < scale_fractions.size(); ++i) {
        if (!(scale_fractions[i] > 0.0 && scale_fractions[i] <= 1.0)) {
            throw InvalidArgument("scale_fractions must lie in (0, 1]");
        }
        if (i > 0 && scale_fractions[i] < scale_fractions[i - 1]) {
            throw InvalidArgument("scale_fractions must be non-decreasing");
        }
    }
}

std::string RunConfig::feature_fingerprint() const {
    std::string key(kFeatureVersion);
    key += ";r=" + text::format_double(cn.radius);
    key += ";t=" + text::format_double(cn.similarity);
    key += ";s=" + text::format_double(cn.gradient_diff);
    key += ";P=" + std::to_string(cn.lbp_neighbors);
    return text::fnv1a_hex(key);
}

std::string RunConfig::run_fingerprint(std::size_t deep_dim) const {
    std::string key = feature_fingerprint();
    key += ";test=" + text::format_double(test_fraction);
    key += ";finetune=" + text::format_double(finetune_fraction);
    key += ";seed=" + std::to_string(seed);
    key += ";C=" + text::format_double(svm_c);
    key += ";reduction=" + std::string(reduction_name(reduction));
    key += ";pca=" + text::format_double(pca_variance_threshold);
    key += ";deep=" + std::to_string(deep_dim);
    return text::fnv1a_hex(key);
}

nlohmann::json RunConfig::to_json() const {
    nlohmann::json j;
    j["dataset_root"] = dataset_root.generic_string();
    j["cache_dir"] = cache_dir.generic_string();
    j["r"] = cn.radius;
    j["t"] = cn.similarity;
    j["s"] = cn.gradient_diff;
    j["P"] = cn.lbp_neighbors;
    j["scale_fractions"] = scale_fractions;
    j["test_fraction"] = test_fraction;
    j["finetune_fraction"] = finetune_fraction;
    j["seed"] = seed;
    j["svm_c"] = svm_c;
    j["reduction"] = std::string(reduction_name(reduction));
    j["pca_variance_threshold"] = pca_variance_threshold;
    if (deep_features) {
        j["deep_features"] = deep_features->generic_string();
    }
    j["workers"] = workers;
    j["graph_traversal"] = std::string(traversal_name(graph_traversal));
    return j;
}

void apply_json(RunConfig& config, const nlohmann::json& j, std::vector<std::string>& warnings) {
    if (!j.is_object()) {
        throw InvalidArgument("config must be a JSON object");
    }
    for (const auto& [key, value] : j.items()) {
        if (!known_keys().contains(key)) {
            throw InvalidArgument("unknown config key '" + key + "'");
        }
        if (key == "dataset_root") config.dataset_root = get_as<std::string>(value, key);
        else if (key == "cache_dir") config.cache_dir = get_as<std::string>(value, key);
        else if (key == "r") config.cn.radius = get_as<double>(value, key);
        else if (key == "t") config.cn.similarity = get_as<double>(value, key);
        else if (key == "s") config.cn.gradient_diff = get_as<double>(value, key);
        else if (key == "P") config.cn.lbp_neighbors = get_as<int>(value, key);
        else if (key == "scale_fractions") config.scale_fractions = get_as<std::array<double, 4>>(value, key);
        else if (key == "test_fraction") config.test_fraction = get_as<double>(value, key);
        else if (key == "finetune_fraction") config.finetune_fraction = get_as<double>(value, key);
        else if (key == "seed") config.seed = get_as<std::uint64_t>(value, key);
        else if (key == "svm_c") config.svm_c = get_as<double>(value, key);
        else if (key == "kernel_gamma") {
            config.kernel_gamma = get_as<double>(value, key);
            warnings.emplace_back("kernel_gamma has no effect on a linear SVM and is ignored");
        } else if (key == "reduction") config.reduction = parse_reduction(get_as<std::string>(value, key));
        else if (key == "pca_variance_threshold") config.pca_variance_threshold = get_as<double>(value, key);
        else if (key == "deep_features") {
            if (value.is_null()) {
                config.deep_features.reset();
            } else {
                config.deep_features = get_as<std::string>(value, key);
            }
        } else if (key == "workers") config.workers = get_as<unsigned>(value, key);
        else if (key == "graph_traversal") config.graph_traversal = parse_traversal(get_as<std::string>(value, key));
    }
}

RunConfig load_config(const std::filesystem::path& path, std::vector<std::string>& warnings) {
    std::ifstream in(path);
    if (!in) {
        throw InvalidArgument("cannot read config file '" + path.string() + "'");
    }
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::parse_error& e) {
        throw InvalidArgument("config '" + path.string() + "' is not valid JSON: " + e.what());
    }
    RunConfig config;
    apply_json(config, j, warnings);
    return config;
}

}  // namespace mf2scf
