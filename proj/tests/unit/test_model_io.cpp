#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <random>

#include "mf2scf/interchange.hpp"
#include "mf2scf/model.hpp"
#include "mf2scf/text_format.hpp"

using namespace mf2scf;
namespace fs = std::filesystem;

namespace {

LabeledDataset toy_dataset(std::size_t f1_len, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> nd(0.0, 0.05);
    LabeledDataset ds({"alpha", "beta", "gamma"});
    for (ClassId c = 0; c < 3; ++c) {
        for (int i = 0; i < 8; ++i) {
            GlobalFeature g{std::vector<double>(kGlobalFeatureLength)};
            ColorFeature col{std::vector<double>(kColorFeatureLength)};
            std::vector<double> f1(f1_len);
            for (std::size_t k = 0; k < g.values.size(); ++k) g.values[k] = (k % 3 == c ? 0.4 : 0.1) + nd(rng);
            for (std::size_t k = 0; k < col.values.size(); ++k) col.values[k] = (k % 3 == c ? 0.7 : 0.2) + nd(rng);
            for (auto& v : f1) v = static_cast<double>(c) + nd(rng);
            ds.add({"c" + std::to_string(c) + "/" + std::to_string(i), c, fuse(f1, g, col)});
        }
    }
    return ds;
}

fs::path temp_dir(const std::string& name) {
    const auto p = fs::temp_directory_path() / ("mf2scf_" + name + "_" + std::to_string(::testing::UnitTest::GetInstance()->random_seed()));
    fs::remove_all(p);
    fs::create_directories(p);
    return p;
}

}  // namespace

TEST(TextFormat, ShortestRoundTrip) {
    std::mt19937_64 rng(1);
    std::uniform_real_distribution<double> u(-1e6, 1e6);
    for (int i = 0; i < 1000; ++i) {
        const double x = u(rng);
        EXPECT_EQ(text::parse_double(text::format_double(x)), x);
    }
    EXPECT_EQ(text::format_double(0.5), "0.5");
    EXPECT_THROW((void)text::parse_double("1.5x"), FormatError);
    EXPECT_THROW((void)text::parse_int(""), FormatError);
    EXPECT_EQ(text::fnv1a_hex(""), "cbf29ce484222325");
}

class ModelRoundTrip : public ::testing::TestWithParam<ReductionKind> {};

TEST_P(ModelRoundTrip, SerializeIsStableAndPredictionsMatch) {
    const auto ds = toy_dataset(4, 5);
    TrainOptions opts;
    opts.reduction = GetParam();
    opts.svm.seed = 3;
    const auto model = Model::train(ds, opts, "abc123");
    const std::string text = model.serialize();
    const auto back = Model::deserialize(text);
    EXPECT_EQ(back.serialize(), text);
    EXPECT_EQ(back.class_names(), model.class_names());
    EXPECT_EQ(back.layout(), ds.layout());
    EXPECT_EQ(back.feature_fingerprint(), "abc123");
    for (const auto& r : ds.records()) {
        EXPECT_EQ(back.predict(r.features), model.predict(r.features));
        EXPECT_EQ(model.predict(r.features), r.label);
    }
}

INSTANTIATE_TEST_SUITE_P(Reductions, ModelRoundTrip,
                         ::testing::Values(ReductionKind::none, ReductionKind::pca, ReductionKind::lda),
                         [](const auto& info) { return std::string(reduction_name(info.param)); });

TEST(Model, ClassifierDimensions) {
    const auto ds = toy_dataset(0, 7);
    TrainOptions opts;
    EXPECT_EQ(Model::train(ds, opts).classifier_dim(), 1063u);
    opts.reduction = ReductionKind::lda;
    EXPECT_EQ(Model::train(ds, opts).classifier_dim(), 2u);
    opts.reduction = ReductionKind::pca;
    EXPECT_LT(Model::train(ds, opts).classifier_dim(), 24u);
}

TEST(Model, RejectsForeignLayout) {
    const auto model = Model::train(toy_dataset(4, 1), TrainOptions{});
    const auto other = toy_dataset(2, 1);
    EXPECT_THROW((void)model.predict(other.records()[0].features), LayoutMismatch);
}

TEST(Model, SaveLoadAndCorruption) {
    const auto dir = temp_dir("model");
    const auto model = Model::train(toy_dataset(0, 2), TrainOptions{});
    model.save(dir / "m.txt");
    EXPECT_EQ(Model::load(dir / "m.txt").serialize(), model.serialize());

    std::string text = model.serialize();
    EXPECT_THROW((void)Model::deserialize("garbage\n"), FormatError);
    EXPECT_THROW((void)Model::deserialize(text.substr(0, text.size() / 2)), FormatError);
    EXPECT_THROW((void)Model::load(dir / "missing.txt"), Error);
    fs::remove_all(dir);
}

TEST(Interchange, ParseAndRoundTrip) {
    const std::string text =
        "MF2SCF-F1 v1 dim=3 backbone=densenet121\r\n"
        "beach/b1.png,beach,0.5,1,-2.25\r\n"
        "forest/f1.png,forest,0,0,1e-3\n";
    const auto file = parse_deep_features(text);
    EXPECT_EQ(file.dim, 3u);
    EXPECT_EQ(file.metadata.at("backbone"), "densenet121");
    ASSERT_EQ(file.records.size(), 2u);
    EXPECT_EQ(file.records[0].values, (std::vector<double>{0.5, 1.0, -2.25}));
    ASSERT_NE(file.find("forest/f1.png"), nullptr);
    EXPECT_EQ(file.find("forest/f1.png")->class_label, "forest");
    EXPECT_EQ(file.find("nope"), nullptr);

    const auto again = parse_deep_features(format_deep_features(file));
    EXPECT_EQ(again.records[1].values, file.records[1].values);
    EXPECT_EQ(format_deep_features(again), format_deep_features(file));

    const auto dir = temp_dir("deep");
    write_deep_features(dir / "f1.txt", file);
    EXPECT_EQ(read_deep_features(dir / "f1.txt").records.size(), 2u);
    fs::remove_all(dir);
}

TEST(Interchange, ErrorsCarryLineNumbers) {
    try {
        (void)parse_deep_features("MF2SCF-F1 v1 dim=2\na.png,a,1,2\nb.png,b,1\n");
        FAIL() << "expected FormatError";
    } catch (const FormatError& e) {
        EXPECT_NE(std::string(e.what()).find("line 3"), std::string::npos) << e.what();
    }
    EXPECT_THROW((void)parse_deep_features("MF2SCF-F2 v1 dim=2\n"), FormatError);
    EXPECT_THROW((void)parse_deep_features("MF2SCF-F1 v1 dim=1\na.png,a,zz\n"), FormatError);
    EXPECT_THROW((void)parse_deep_features(""), FormatError);
}
