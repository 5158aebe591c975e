// Python bindings. Images are HxWx3 uint8 arrays (RGB) or HxW uint8 planes.

#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include "mf2scf/cngraph.hpp"
#include "mf2scf/colorfeat.hpp"
#include "mf2scf/config.hpp"
#include "mf2scf/errors.hpp"
#include "mf2scf/features.hpp"
#include "mf2scf/imgproc.hpp"
#include "mf2scf/interchange.hpp"
#include "mf2scf/pipeline.hpp"
#include "mf2scf/slicer.hpp"
#include "mf2scf/texture.hpp"

namespace py = pybind11;
using namespace mf2scf;

namespace {

using U8Array = py::array_t<std::uint8_t, py::array::c_style | py::array::forcecast>;

RgbImage to_rgb(const U8Array& a) {
    if (a.ndim() != 3 || a.shape(2) != 3) {
        throw DimensionMismatch("expected an HxWx3 uint8 array");
    }
    const auto h = static_cast<std::size_t>(a.shape(0));
    const auto w = static_cast<std::size_t>(a.shape(1));
    RgbImage img(w, h);
    const std::uint8_t* p = a.data();
    for (std::size_t i = 0; i < w * h; ++i) {
        img[i] = Rgb{p[3 * i], p[3 * i + 1], p[3 * i + 2]};
    }
    return img;
}

GrayImage to_gray(const U8Array& a) {
    if (a.ndim() != 2) {
        throw DimensionMismatch("expected an HxW uint8 array");
    }
    const auto h = static_cast<std::size_t>(a.shape(0));
    const auto w = static_cast<std::size_t>(a.shape(1));
    return GrayImage(w, h, std::vector<std::uint8_t>(a.data(), a.data() + w * h));
}

template <typename Image>
U8Array plane_array(const Image& img) {
    U8Array out(py::array::ShapeContainer{static_cast<py::ssize_t>(img.height()), static_cast<py::ssize_t>(img.width())});
    std::copy(img.pixels().begin(), img.pixels().end(), out.mutable_data());
    return out;
}

U8Array rgb_array(const RgbImage& img) {
    U8Array out(py::array::ShapeContainer{static_cast<py::ssize_t>(img.height()), static_cast<py::ssize_t>(img.width()), py::ssize_t{3}});
    std::uint8_t* p = out.mutable_data();
    for (std::size_t i = 0; i < img.size(); ++i) {
        p[3 * i] = img[i].r;
        p[3 * i + 1] = img[i].g;
        p[3 * i + 2] = img[i].b;
    }
    return out;
}

py::array_t<double> double_array(std::span<const double> v) {
    py::array_t<double> out(py::array::ShapeContainer{static_cast<py::ssize_t>(v.size())});
    std::copy(v.begin(), v.end(), out.mutable_data());
    return out;
}

CnParams cn_params(double r, double t, double s) {
    CnParams p{r, t, s, 8};
    p.validate();
    return p;
}

py::dict extract(const U8Array& image, double r, double t, double s, bool planes) {
    ExtractOptions opts;
    opts.params = cn_params(r, t, s);
    opts.graph.traversal = PairTraversal::radius_window;
    opts.keep_planes = planes;
    ImageFeatures f;
    {
        const RgbImage img = to_rgb(image);
        py::gil_scoped_release release;
        f = extract_features(img, opts);
    }
    py::dict d;
    d["f2"] = double_array(f.global.values);
    d["f3"] = double_array(f.color.values);
    if (f.planes) {
        d["gsi"] = plane_array(f.planes->gsi);
        d["goi"] = plane_array(f.planes->goi);
        d["cc"] = plane_array(f.planes->cc);
        d["dc"] = plane_array(f.planes->dc);
        d["ec"] = plane_array(f.planes->ec);
    }
    return d;
}

py::list graph_edges(const U8Array& gray, double r, double t, double s) {
    const GrayImage g = to_gray(gray);
    const PixelGraph graph = build_graph(g, sobel_gradient(g), cn_params(r, t, s), {PairTraversal::radius_window});
    py::list out;
    for (std::size_t v = 0; v < graph.vertex_count(); ++v) {
        for (auto u : graph.neighbors(v)) {
            if (v < u) {
                out.append(py::make_tuple(v, u));
            }
        }
    }
    return out;
}

py::list slices(const U8Array& image) {
    const RgbImage img = to_rgb(image);
    py::list out;
    for (const auto& s : generate_masks(img.width(), img.height())) {
        out.append(py::make_tuple(s.id.name(), rgb_array(apply_mask(img, s.mask))));
    }
    return out;
}

RunConfig config_from(const py::dict& overrides) {
    RunConfig config;
    std::vector<std::string> warnings;
    const auto json_mod = py::module_::import("json");
    const std::string text = py::str(json_mod.attr("dumps")(overrides));
    apply_json(config, nlohmann::json::parse(text), warnings);
    for (const auto& w : warnings) {
        PyErr_WarnEx(PyExc_UserWarning, w.c_str(), 1);
    }
    config.validate();
    return config;
}

py::dict to_py(const nlohmann::json& j) {
    const auto json_mod = py::module_::import("json");
    return json_mod.attr("loads")(j.dump());
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Complex-network texture and HSV color features with a linear SVM classifier";

    py::register_exception<Error>(m, "Error", PyExc_RuntimeError);

    m.attr("GLOBAL_FEATURE_LENGTH") = kGlobalFeatureLength;
    m.attr("COLOR_FEATURE_LENGTH") = kColorFeatureLength;

    m.def("to_grayscale", [](const U8Array& img) { return plane_array(to_grayscale(to_rgb(img))); });
    m.def("sobel_gradient", [](const U8Array& gray) { return plane_array(sobel_gradient(to_gray(gray))); });
    m.def("rgb_to_hsv", [](int r, int g, int b) {
        const Hsv h = rgb_to_hsv(Rgb{static_cast<std::uint8_t>(r), static_cast<std::uint8_t>(g),
                                     static_cast<std::uint8_t>(b)});
        return py::make_tuple(h.h, h.s, h.v);
    }, py::arg("r"), py::arg("g"), py::arg("b"));
    m.def("ulbp_histogram", [](const U8Array& gray) {
        const auto h = ulbp_histogram(ulbp_image(to_gray(gray)));
        return double_array(h);
    });
    m.def("graph_edges", &graph_edges, py::arg("gray"), py::arg("r") = 3.0, py::arg("t") = 0.315,
          py::arg("s") = 5.0, "Undirected pixel-graph edges as (i, j) with i < j, vertex id y * W + x.");
    m.def("extract_features", &extract, py::arg("image"), py::arg("r") = 3.0, py::arg("t") = 0.315,
          py::arg("s") = 5.0, py::arg("planes") = false,
          "Returns {'f2': 295 values, 'f3': 768 values}, plus the quantized planes when planes=True.");
    m.def("slices", &slices, py::arg("image"), "The 20 masked crops as (name, HxWx3 array) pairs.");

    m.def("read_deep_features", [](const std::filesystem::path& path) {
        const auto file = read_deep_features(path);
        py::list records;
        for (const auto& r : file.records) {
            records.append(py::make_tuple(r.image_id, r.class_label, double_array(r.values)));
        }
        py::dict d;
        d["dim"] = file.dim;
        d["metadata"] = file.metadata;
        d["records"] = records;
        return d;
    });

    m.def("feature_fingerprint", [](const py::dict& cfg) { return config_from(cfg).feature_fingerprint(); },
          py::arg("config") = py::dict());
    m.def("train", [](const py::dict& cfg, const std::filesystem::path& model_path) {
        const auto outcome = run_train(config_from(cfg));
        outcome.model.save(model_path);
        return to_py(outcome.report);
    }, py::arg("config"), py::arg("model_path"), "Runs the training pipeline; returns the report.");
    m.def("evaluate", [](const py::dict& cfg, const std::filesystem::path& model_path) {
        return to_py(run_eval(config_from(cfg), Model::load(model_path)));
    }, py::arg("config"), py::arg("model_path"));
    m.def("predict", [](const py::dict& cfg, const std::filesystem::path& model_path,
                        const std::vector<std::filesystem::path>& images) {
        std::vector<ImageFailure> failures;
        const auto preds = run_predict(config_from(cfg), Model::load(model_path), images, failures);
        if (!failures.empty()) {
            throw ImageReadError(failures.front().image_id + ": " + failures.front().message);
        }
        py::dict out;
        for (const auto& p : preds) {
            out[py::str(p.path)] = p.label;
        }
        return out;
    }, py::arg("config"), py::arg("model_path"), py::arg("images"));
}
