#include "mf2scf/model.hpp"

#include <fstream>
#include <sstream>

#include "mf2scf/errors.hpp"
#include "mf2scf/text_format.hpp"

namespace mf2scf {

namespace {

constexpr std::string_view kMagic = "MF2SCF-MODEL";
constexpr int kVersion = 1;

Eigen::MatrixXd to_matrix(const std::vector<const FusedVector*>& vectors) {
    const auto d = static_cast<long>(vectors.empty() ? 0 : vectors.front()->values.size());
    Eigen::MatrixXd m(static_cast<long>(vectors.size()), d);
    for (std::size_t i = 0; i < vectors.size(); ++i) {
        m.row(static_cast<long>(i)) =
            Eigen::Map<const Eigen::RowVectorXd>(vectors[i]->values.data(), d);
    }
    return m;
}

std::string vector_line(std::string_view key, std::span<const double> values) {
    std::string line(key);
    if (!values.empty()) {
        line.push_back(' ');
        line += text::join(values);
    }
    line.push_back('\n');
    return line;
}

std::string vector_line(std::string_view key, const Eigen::VectorXd& v) {
    return vector_line(key, std::span<const double>(v.data(), static_cast<std::size_t>(v.size())));
}

class LineReader {
public:
    explicit LineReader(const std::string& text) : in_(text) {}

    std::string next() {
        std::string line;
        if (!std::getline(in_, line)) {
            throw FormatError("model file ends early (line " + std::to_string(line_no_ + 1) + ")");
        }
        ++line_no_;
        return line;
    }

    // Splits "key rest" and checks the key.
    std::string expect(std::string_view key) {
        std::string line = next();
        if (line.compare(0, key.size(), key) != 0 || (line.size() > key.size() && line[key.size()] != ' ')) {
            throw FormatError("model line " + std::to_string(line_no_) + ": expected '" + std::string(key) + "'");
        }
        return line.size() > key.size() ? line.substr(key.size() + 1) : std::string{};
    }

    Eigen::VectorXd expect_vector(std::string_view key, std::size_t expected) {
        const auto values = text::parse_doubles(expect(key));
        if (values.size() != expected) {
            throw FormatError("model line " + std::to_string(line_no_) + ": '" + std::string(key) + "' has " +
                              std::to_string(values.size()) + " values, expected " + std::to_string(expected));
        }
        return Eigen::Map<const Eigen::VectorXd>(values.data(), static_cast<long>(values.size()));
    }

private:
    std::istringstream in_;
    std::size_t line_no_ = 0;
};

std::vector<std::size_t> parse_sizes(const std::string& rest, std::size_t count) {
    std::vector<std::size_t> out;
    for (auto tok : text::split(rest, ' ')) {
        out.push_back(static_cast<std::size_t>(text::parse_int(tok)));
    }
    if (out.size() != count) {
        throw FormatError("expected " + std::to_string(count) + " sizes in '" + rest + "'");
    }
    return out;
}

}  // namespace

Model::Model(std::vector<std::string> class_names, FeatureLayout layout, std::string feature_fingerprint,
             Standardizer standardizer, Projection projection, LinearSvm svm)
    : class_names_(std::move(class_names)),
      layout_(layout),
      feature_fingerprint_(std::move(feature_fingerprint)),
      standardizer_(std::move(standardizer)),
      projection_(std::move(projection)),
      svm_(std::move(svm)) {
    if (layout_.stage != FeatureStage::raw) {
        throw LayoutMismatch("models are trained on raw feature vectors");
    }
    if (standardizer_.dim() != layout_.total()) {
        throw LayoutMismatch("standardizer size does not match the feature layout");
    }
    const std::size_t projected =
        projection_.kind == ReductionKind::none ? standardizer_.dim() : projection_.output_dim();
    if (svm_.dim() != projected || svm_.class_count() != class_names_.size()) {
        throw LayoutMismatch("SVM weights do not match the projected feature size or class count");
    }
}

Model Model::train(const LabeledDataset& train, const TrainOptions& options, std::string feature_fingerprint,
                   std::vector<BinarySvmTrace>* traces) {
    if (train.class_count() < 2) {
        throw InvalidArgument("training needs at least 2 classes");
    }
    if (train.size() == 0) {
        throw InvalidArgument("training set is empty");
    }
    std::vector<const FusedVector*> vectors;
    std::vector<ClassId> labels;
    for (const auto& r : train.records()) {
        vectors.push_back(&r.features);
        labels.push_back(r.label);
    }
    const Eigen::MatrixXd raw = to_matrix(vectors);
    Standardizer standardizer = Standardizer::fit(raw);
    Eigen::MatrixXd z = (raw.rowwise() - standardizer.mean.transpose()).array().rowwise() /
                        standardizer.scale.transpose().array();

    Projection projection;
    switch (options.reduction) {
        case ReductionKind::none: break;
        case ReductionKind::pca: projection = pca_fit(z, options.pca_variance_threshold); break;
        case ReductionKind::lda: projection = lda_fit(z, labels, train.class_count()); break;
    }
    if (projection.kind != ReductionKind::none) {
        z = (z.rowwise() - projection.mean.transpose()) * projection.basis.transpose();
    }
    LinearSvm svm = LinearSvm::train(z, labels, train.class_count(), options.svm, traces);
    return Model(train.class_names(), train.layout(), std::move(feature_fingerprint), std::move(standardizer),
                 std::move(projection), std::move(svm));
}

Eigen::VectorXd Model::scores(const FusedVector& v) const {
    if (v.layout != layout_) {
        throw LayoutMismatch("vector layout " + v.layout.fingerprint() + " does not match model layout " +
                             layout_.fingerprint());
    }
    if (v.values.size() != layout_.total()) {
        throw LayoutMismatch("vector length does not match its layout");
    }
    const Eigen::VectorXd x = Eigen::Map<const Eigen::VectorXd>(v.values.data(), static_cast<long>(v.values.size()));
    return svm_.scores(projection_.apply(standardizer_.apply(x)));
}

ClassId Model::predict(const FusedVector& v) const {
    const Eigen::VectorXd s = scores(v);
    ClassId best = 0;
    for (Eigen::Index c = 1; c < s.size(); ++c) {
        if (s[c] > s[static_cast<long>(best)]) {
            best = static_cast<ClassId>(c);
        }
    }
    return best;
}

std::string Model::serialize() const {
    std::string out;
    out += std::string(kMagic) + "\n";
    out += "version " + std::to_string(kVersion) + "\n";
    out += "layout " + layout_.fingerprint() + "\n";
    out += "features " + (feature_fingerprint_.empty() ? std::string("-") : feature_fingerprint_) + "\n";
    out += "classes " + std::to_string(class_names_.size()) + "\n";
    for (const auto& name : class_names_) {
        out += "class " + name + "\n";
    }
    out += "standardizer " + std::to_string(standardizer_.dim()) + "\n";
    out += vector_line("mean", standardizer_.mean);
    out += vector_line("scale", standardizer_.scale);
    out += "projection " + std::string(reduction_name(projection_.kind)) + " " +
           std::to_string(projection_.kind == ReductionKind::none ? 0 : projection_.output_dim()) + " " +
           std::to_string(projection_.kind == ReductionKind::none ? 0 : projection_.input_dim()) + "\n";
    if (projection_.kind != ReductionKind::none) {
        out += vector_line("mean", projection_.mean);
        out += vector_line("eigenvalues", projection_.eigenvalues);
        for (Eigen::Index r = 0; r < projection_.basis.rows(); ++r) {
            out += vector_line("row", Eigen::VectorXd(projection_.basis.row(r).transpose()));
        }
    }
    out += "svm " + std::to_string(svm_.class_count()) + " " + std::to_string(svm_.dim()) + "\n";
    out += vector_line("bias", svm_.biases());
    for (Eigen::Index r = 0; r < svm_.weights().rows(); ++r) {
        out += vector_line("weights", Eigen::VectorXd(svm_.weights().row(r).transpose()));
    }
    out += "end\n";
    return out;
}

Model Model::deserialize(const std::string& text) {
    LineReader in(text);
    if (in.next() != kMagic) {
        throw FormatError("not an MF2SCF model file");
    }
    const auto version = text::parse_int(in.expect("version"));
    if (version != kVersion) {
        throw FormatError("unsupported model version " + std::to_string(version));
    }
    const FeatureLayout layout = FeatureLayout::parse(in.expect("layout"));
    std::string config = in.expect("features");
    if (config == "-") {
        config.clear();
    }
    const auto class_count = static_cast<std::size_t>(text::parse_int(in.expect("classes")));
    std::vector<std::string> names;
    for (std::size_t c = 0; c < class_count; ++c) {
        names.push_back(in.expect("class"));
    }

    const auto dim = static_cast<std::size_t>(text::parse_int(in.expect("standardizer")));
    Standardizer standardizer;
    standardizer.mean = in.expect_vector("mean", dim);
    standardizer.scale = in.expect_vector("scale", dim);

    const auto proj_header = text::split(in.expect("projection"), ' ');
    if (proj_header.size() != 3) {
        throw FormatError("bad projection header");
    }
    Projection projection;
    projection.kind = parse_reduction(proj_header[0]);
    const auto k = static_cast<std::size_t>(text::parse_int(proj_header[1]));
    const auto proj_in = static_cast<std::size_t>(text::parse_int(proj_header[2]));
    if (projection.kind != ReductionKind::none) {
        projection.mean = in.expect_vector("mean", proj_in);
        const Eigen::VectorXd eig = in.expect_vector("eigenvalues", k);
        projection.eigenvalues.assign(eig.data(), eig.data() + eig.size());
        projection.basis.resize(static_cast<long>(k), static_cast<long>(proj_in));
        for (std::size_t r = 0; r < k; ++r) {
            projection.basis.row(static_cast<long>(r)) = in.expect_vector("row", proj_in).transpose();
        }
    }

    const auto svm_sizes = parse_sizes(in.expect("svm"), 2);
    Eigen::VectorXd biases = in.expect_vector("bias", svm_sizes[0]);
    Eigen::MatrixXd weights(static_cast<long>(svm_sizes[0]), static_cast<long>(svm_sizes[1]));
    for (std::size_t r = 0; r < svm_sizes[0]; ++r) {
        weights.row(static_cast<long>(r)) = in.expect_vector("weights", svm_sizes[1]).transpose();
    }
    if (in.next() != "end") {
        throw FormatError("model file is missing its 'end' marker");
    }
    return Model(std::move(names), layout, std::move(config), std::move(standardizer), std::move(projection),
                 LinearSvm(std::move(weights), std::move(biases)));
}

void Model::save(const std::filesystem::path& path) const {
    const auto tmp = path.string() + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary);
        if (!out) {
            throw Error("cannot write model file '" + path.string() + "'");
        }
        out << serialize();
    }
    std::filesystem::rename(tmp, path);
}

Model Model::load(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw Error("cannot read model file '" + path.string() + "'");
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return deserialize(buf.str());
}

}  // namespace mf2scf
