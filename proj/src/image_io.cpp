#include "mf2scf/image_io.hpp"

#include <opencv2/imgcodecs.hpp>

#include "mf2scf/imgproc.hpp"

namespace mf2scf {

RgbImage load_rgb(const std::filesystem::path& path) {
    const cv::Mat bgr = cv::imread(path.string(), cv::IMREAD_COLOR);
    if (bgr.empty()) {
        throw ImageReadError("cannot decode image '" + path.string() + "'");
    }
    require_min_size(static_cast<std::size_t>(bgr.cols), static_cast<std::size_t>(bgr.rows), 3);
    RgbImage img(static_cast<std::size_t>(bgr.cols), static_cast<std::size_t>(bgr.rows));
    for (int y = 0; y < bgr.rows; ++y) {
        const auto* row = bgr.ptr<cv::Vec3b>(y);
        for (int x = 0; x < bgr.cols; ++x) {
            img.at(x, y) = Rgb{row[x][2], row[x][1], row[x][0]};
        }
    }
    return img;
}

void save_png(const std::filesystem::path& path, const RgbImage& img) {
    cv::Mat bgr(static_cast<int>(img.height()), static_cast<int>(img.width()), CV_8UC3);
    for (int y = 0; y < bgr.rows; ++y) {
        auto* row = bgr.ptr<cv::Vec3b>(y);
        for (int x = 0; x < bgr.cols; ++x) {
            const Rgb px = img.at(x, y);
            row[x] = cv::Vec3b(px.b, px.g, px.r);
        }
    }
    if (!cv::imwrite(path.string(), bgr)) {
        throw Error("cannot write image '" + path.string() + "'");
    }
}

void save_png(const std::filesystem::path& path, const GrayImage& img) {
    cv::Mat gray(static_cast<int>(img.height()), static_cast<int>(img.width()), CV_8UC1);
    for (int y = 0; y < gray.rows; ++y) {
        auto* row = gray.ptr<std::uint8_t>(y);
        for (int x = 0; x < gray.cols; ++x) {
            row[x] = img.at(x, y);
        }
    }
    if (!cv::imwrite(path.string(), gray)) {
        throw Error("cannot write image '" + path.string() + "'");
    }
}

}  // namespace mf2scf
