// Acceptance gate: one PASS/FAIL line per criterion. Exit status is the
// number of failed criteria (0 when everything passes).

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "mf2scf/cngraph.hpp"
#include "mf2scf/colorfeat.hpp"
#include "mf2scf/features.hpp"
#include "mf2scf/imgproc.hpp"
#include "mf2scf/pipeline.hpp"
#include "mf2scf/texture.hpp"
#include "oracles.hpp"
#include "synthetic.hpp"

using namespace mf2scf;
namespace fs = std::filesystem;
using Clock = std::chrono::steady_clock;

namespace {

struct Outcome {
    bool ok = false;
    std::string detail;
};

int failures = 0;

void criterion(const std::string& name, double budget_s, const std::function<Outcome()>& body) {
    const auto t0 = Clock::now();
    Outcome out;
    try {
        out = body();
    } catch (const std::exception& e) {
        out = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(Clock::now() - t0).count();
    const bool in_time = secs < budget_s;
    const bool pass = out.ok && in_time;
    if (!pass) ++failures;
    std::printf("%s %s: %s; %.3f s (budget %.0f s%s)\n", pass ? "PASS" : "FAIL", name.c_str(), out.detail.c_str(),
                secs, budget_s, in_time ? "" : ", exceeded");
    std::fflush(stdout);
}

struct Planes {
    GrayImage gsi;
    GradientImage goi;
};

// 8x8 planes with amplitudes from very flat to full range, so the graphs
// range from dense to nearly empty.
std::vector<Planes> random_8x8(std::size_t count, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::vector<Planes> out;
    for (std::size_t k = 0; k < count; ++k) {
        const int amplitude = std::array{4, 12, 30, 80, 255}[k % 5];
        const int base = static_cast<int>(rng() % static_cast<unsigned>(256 - amplitude));
        GrayImage g(8, 8);
        for (auto& v : g.pixels()) v = static_cast<std::uint8_t>(base + static_cast<int>(rng() % (amplitude + 1)));
        out.push_back({g, sobel_gradient(g)});
    }
    return out;
}

std::vector<int> ints(std::span<const std::uint8_t> p) { return {p.begin(), p.end()}; }

oracle::EdgeSet edge_set(const PixelGraph& g) {
    oracle::EdgeSet s;
    for (std::size_t v = 0; v < g.vertex_count(); ++v)
        for (auto u : g.neighbors(v))
            if (v < u) s.emplace(v, u);
    return s;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    return {std::istreambuf_iterator<char>(in), {}};
}

RunConfig e2e_config(const fs::path& data, const fs::path& cache) {
    RunConfig c;
    c.dataset_root = data;
    c.cache_dir = cache;
    c.cn = CnParams{3.0, 0.315, 5.0, 8};
    c.svm_c = 1.0;
    c.test_fraction = 0.3;
    c.seed = 2024;
    c.workers = 1;
    return c;
}

}  // namespace

int main(int argc, char** argv) {
    fs::path work = fs::temp_directory_path() / "mf2scf_acceptance";
    for (int i = 1; i + 1 < argc; ++i) {
        if (std::string(argv[i]) == "--work-dir") work = argv[i + 1];
    }
    fs::remove_all(work);
    fs::create_directories(work);

    const CnParams params;

    criterion("dimensional exactness", 1.0, [&] {
        std::size_t bad = 0, n = 0;
        for (const auto& s : synthetic::generate(99, 2, 32)) {
            const auto f = extract_features(s.image);
            bad += f.global.values.size() != 295 || f.color.values.size() != 768;
            ++n;
        }
        RgbImage odd(13, 9, Rgb{10, 200, 30});
        const auto f = extract_features(odd);
        bad += f.global.values.size() != 295 || f.color.values.size() != 768;
        ++n;
        return Outcome{bad == 0, "|f2| = 295 and |f3| = 768 on " + std::to_string(n - bad) + "/" + std::to_string(n) +
                                     " images"};
    });

    const auto graphs = random_8x8(50, 0xacce55);

    criterion("graph oracle equivalence", 10.0, [&] {
        std::size_t equal = 0, edges = 0;
        for (const auto& p : graphs) {
            const auto g = build_graph(p.gsi, p.goi, params);
            const auto ref = oracle::brute_force_edges(ints(p.gsi.pixels()), ints(p.goi.pixels()), 8, params.radius,
                                                       params.similarity, params.gradient_diff);
            equal += edge_set(g) == ref;
            edges += ref.size();
        }
        return Outcome{equal == graphs.size(), std::to_string(equal) + "/50 edge sets equal the all-pairs oracle (" +
                                                   std::to_string(edges) + " edges total)"};
    });

    criterion("centrality oracles", 30.0, [&] {
        std::size_t cc_ok = 0, ec_ok = 0;
        double worst_ec = 0.0, worst_res = 0.0;
        for (const auto& p : graphs) {
            const auto g = build_graph(p.gsi, p.goi, params);
            const auto a = oracle::dense_adjacency(edge_set(g), 64);
            const auto tri = oracle::triangle_edges(a);
            const auto stats = vertex_stats(g);
            const auto cc = clustering_map(g);
            bool same = true;
            for (std::size_t i = 0; i < 64; ++i) {
                const auto k = static_cast<std::uint64_t>(a.row(static_cast<long>(i)).sum());
                const double expect = k > 1 ? 2.0 * static_cast<double>(tri[i]) / static_cast<double>(k * (k - 1)) : 0.0;
                same = same && stats[i].neighbor_edges == tri[i] && stats[i].degree == k && cc.values[i] == expect;
            }
            cc_ok += same;

            if (g.edge_count() == 0) {
                const auto ec = eigen_entropy_map(g);
                bool zero = true;
                for (double v : ec.values.pixels()) zero = zero && v == 0.0;
                ec_ok += zero;
                continue;
            }
            const auto eig = dominant_eigenpair(g);
            const auto dense = oracle::dense_dominant(a);
            const auto ref = oracle::entropy_from_eigenvector(dense.u);
            const auto ec = eigen_entropy_map(g, eig);
            double err = 0.0;
            for (std::size_t i = 0; i < 64; ++i) err = std::max(err, std::abs(ec.values[i] - ref[i]));
            worst_ec = std::max(worst_ec, err);
            worst_res = std::max(worst_res, eig.residual);
            ec_ok += err <= 1e-6 && eig.residual <= 1e-8;
        }
        char buf[160];
        std::snprintf(buf, sizeof buf, "CC/c_i exact on %zu/50, EC on %zu/50 (max |dE| %.2e, max residual %.2e)", cc_ok,
                      ec_ok, worst_ec, worst_res);
        return Outcome{cc_ok == 50 && ec_ok == 50, buf};
    });

    criterion("ULBP invariants", 5.0, [&] {
        std::mt19937_64 rng(4242);
        std::size_t shift_ok = 0, rot_ok = 0;
        for (int k = 0; k < 100; ++k) {
            const std::size_t w = 6 + rng() % 20, h = 6 + rng() % 20;
            const int shift = 1 + static_cast<int>(rng() % 100);
            GrayImage g(w, h), s(w, h);
            for (std::size_t i = 0; i < g.size(); ++i) {
                g[i] = static_cast<std::uint8_t>(rng() % (256 - shift));
                s[i] = static_cast<std::uint8_t>(g[i] + shift);
            }
            shift_ok += ulbp_image(g) == ulbp_image(s);
        }
        for (int k = 0; k < 100; ++k) {
            const std::size_t n = 6 + rng() % 20;
            GrayImage g(n, n), r(n, n);
            for (auto& v : g.pixels()) v = static_cast<std::uint8_t>(rng() & 255);
            for (std::size_t y = 0; y < n; ++y)
                for (std::size_t x = 0; x < n; ++x) r.at(y, n - 1 - x) = g.at(x, y);
            rot_ok += ulbp_histogram(ulbp_image(g))[58] == ulbp_histogram(ulbp_image(r))[58];
        }
        std::size_t table_ok = 0;
        unsigned next = 0;
        for (unsigned c = 0; c < 256; ++c) {
            const bool uniform = oracle::transitions(c) <= 2;
            const unsigned expect = uniform ? next++ : 58u;
            table_ok += u2_table()[c] == expect && uniformity(static_cast<std::uint8_t>(c)) == oracle::transitions(c);
        }
        return Outcome{shift_ok == 100 && rot_ok == 100 && table_ok == 256 && next == 58,
                       "shift " + std::to_string(shift_ok) + "/100, rotation bin 58 " + std::to_string(rot_ok) +
                           "/100, u2 table " + std::to_string(table_ok) + "/256 (" + std::to_string(next) +
                           " uniform codes)"};
    });

    criterion("HSV golden values", 5.0, [&] {
        struct Golden {
            Rgb rgb;
            double h, s, v;
        };
        const double half = 128.0 / 255.0;
        const Golden golden[] = {
            {{0, 0, 0}, 0, 0, 0},           {{255, 255, 255}, 0, 0, 1},     {{128, 128, 128}, 0, 0, half},
            {{192, 192, 192}, 0, 0, 192.0 / 255.0},
            {{255, 0, 0}, 0, 1, 1},         {{0, 255, 0}, 120, 1, 1},       {{0, 0, 255}, 240, 1, 1},
            {{255, 255, 0}, 60, 1, 1},      {{0, 255, 255}, 180, 1, 1},     {{255, 0, 255}, 300, 1, 1},
            {{128, 0, 0}, 0, 1, half},      {{0, 128, 0}, 120, 1, half},    {{0, 0, 128}, 240, 1, half},
            {{128, 128, 0}, 60, 1, half},   {{0, 128, 128}, 180, 1, half},  {{128, 0, 128}, 300, 1, half},
        };
        std::size_t gold_ok = 0;
        for (const auto& g : golden) {
            const Hsv o = rgb_to_hsv(g.rgb);
            gold_ok += std::abs(o.h - g.h) <= 1e-9 && std::abs(o.s - g.s) <= 1e-9 && std::abs(o.v - g.v) <= 1e-9;
        }
        std::mt19937_64 rng(777);
        std::size_t trip_ok = 0;
        for (int k = 0; k < 1000; ++k) {
            const Rgb p{static_cast<std::uint8_t>(rng() & 255), static_cast<std::uint8_t>(rng() & 255),
                        static_cast<std::uint8_t>(rng() & 255)};
            const Hsv o = rgb_to_hsv(p);
            const Rgb b = oracle::hsv_to_rgb(o.h, o.s, o.v);
            trip_ok += std::abs(b.r - p.r) <= 1 && std::abs(b.g - p.g) <= 1 && std::abs(b.b - p.b) <= 1;
        }
        return Outcome{gold_ok == 16 && trip_ok == 1000, std::to_string(gold_ok) + "/16 golden colors, " +
                                                             std::to_string(trip_ok) + "/1000 round trips within 1"};
    });

    const fs::path data = work / "synthetic";
    synthetic::write_dataset(data, 2024, 20, 64);

    std::string model_a, report_a;
    criterion("end-to-end desk-scale classification", 300.0, [&] {
        const auto cfg = e2e_config(data, work / "cache_a");
        const auto run = run_train(cfg);
        model_a = run.model.serialize();
        report_a = report_text(run.report);
        const double acc = run.report["micro_accuracy"].get<double>();
        char buf[160];
        std::snprintf(buf, sizeof buf, "micro accuracy %.4f on %zu test images (need >= 0.95), single thread", acc,
                      run.report["test_records"].get<std::size_t>());
        return Outcome{acc >= 0.95, buf};
    });

    criterion("examined pairs equal n(n-1)/2", 30.0, [&] {
        std::size_t ok = 0, total = 0;
        for (const auto& [w, h] : std::vector<std::pair<std::size_t, std::size_t>>{{8, 8}, {3, 3}, {17, 5}, {64, 64}}) {
            GrayImage g(w, h);
            std::mt19937_64 rng(w * 31 + h);
            for (auto& v : g.pixels()) v = static_cast<std::uint8_t>(rng() & 255);
            const auto graph = build_graph(g, sobel_gradient(g), params, {PairTraversal::upper_triangle});
            const std::uint64_t n = w * h;
            ok += graph.examined_pairs() == n * (n - 1) / 2 && graph.examined_pairs() != n * n;
            ++total;
        }
        return Outcome{ok == total, std::to_string(ok) + "/" + std::to_string(total) +
                                        " image sizes examine exactly n(n-1)/2 pairs"};
    });

    criterion("determinism", 300.0, [&] {
        fs::remove_all(work / "cache_a");
        const auto run = run_train(e2e_config(data, work / "cache_b"));
        const bool model_same = run.model.serialize() == model_a;
        const bool report_same = report_text(run.report) == report_a;
        // Also through files written by the save path.
        run.model.save(work / "model_b.txt");
        write_text_atomic(work / "report_b.json", report_text(run.report));
        const bool files_same = slurp(work / "model_b.txt") == model_a && slurp(work / "report_b.json") == report_a;
        return Outcome{!model_a.empty() && model_same && report_same && files_same,
                       std::string("model ") + (model_same ? "identical" : "differs") + ", report " +
                           (report_same ? "identical" : "differs") + ", saved files " +
                           (files_same ? "identical" : "differ")};
    });

    std::printf("%d criterion(s) failed\n", failures);
    return failures;
}
