#include "mf2scf/fusion.hpp"

#include "mf2scf/errors.hpp"
#include "mf2scf/text_format.hpp"

namespace mf2scf {

std::string FeatureLayout::fingerprint() const {
    return "f1=" + std::to_string(f1_len) + ";f2=" + std::to_string(f2_len) + ";f3=" + std::to_string(f3_len) +
           ";stage=" + (stage == FeatureStage::raw ? "raw" : "standardized");
}

FeatureLayout FeatureLayout::parse(const std::string& fingerprint) {
    FeatureLayout layout;
    const auto parts = text::split(fingerprint, ';');
    if (parts.size() != 4) {
        throw FormatError("bad layout fingerprint '" + fingerprint + "'");
    }
    auto value_of = [&](std::string_view part, std::string_view key) {
        if (part.substr(0, key.size()) != key) {
            throw FormatError("bad layout fingerprint '" + fingerprint + "'");
        }
        return part.substr(key.size());
    };
    layout.f1_len = static_cast<std::size_t>(text::parse_int(value_of(parts[0], "f1=")));
    layout.f2_len = static_cast<std::size_t>(text::parse_int(value_of(parts[1], "f2=")));
    layout.f3_len = static_cast<std::size_t>(text::parse_int(value_of(parts[2], "f3=")));
    const auto stage = value_of(parts[3], "stage=");
    if (stage == "raw") {
        layout.stage = FeatureStage::raw;
    } else if (stage == "standardized") {
        layout.stage = FeatureStage::standardized;
    } else {
        throw FormatError("bad layout stage in '" + fingerprint + "'");
    }
    return layout;
}

std::span<const double> FusedVector::f1() const noexcept {
    return std::span<const double>(values).subspan(0, layout.f1_len);
}
std::span<const double> FusedVector::f2() const noexcept {
    return std::span<const double>(values).subspan(layout.f1_len, layout.f2_len);
}
std::span<const double> FusedVector::f3() const noexcept {
    return std::span<const double>(values).subspan(layout.f1_len + layout.f2_len, layout.f3_len);
}

FusedVector fuse(std::span<const double> f1, const GlobalFeature& f2, const ColorFeature& f3) {
    FusedVector out;
    out.layout = FeatureLayout{f1.size(), f2.values.size(), f3.values.size(), FeatureStage::raw};
    out.values.reserve(out.layout.total());
    out.values.insert(out.values.end(), f1.begin(), f1.end());
    out.values.insert(out.values.end(), f2.values.begin(), f2.values.end());
    out.values.insert(out.values.end(), f3.values.begin(), f3.values.end());
    return out;
}

std::vector<FusedVector> fuse_all(const std::vector<std::vector<double>>& f1, const std::vector<GlobalFeature>& f2,
                                  const std::vector<ColorFeature>& f3) {
    if (f2.size() != f3.size() || (!f1.empty() && f1.size() != f2.size())) {
        throw LengthMismatch("feature lists differ in record count");
    }
    std::vector<FusedVector> out;
    out.reserve(f2.size());
    for (std::size_t i = 0; i < f2.size(); ++i) {
        const std::span<const double> deep = f1.empty() ? std::span<const double>{} : std::span<const double>(f1[i]);
        out.push_back(fuse(deep, f2[i], f3[i]));
        if (out.back().layout != out.front().layout) {
            throw LayoutMismatch("record " + std::to_string(i) + " has layout " + out.back().layout.fingerprint() +
                                 ", expected " + out.front().layout.fingerprint());
        }
    }
    return out;
}

}  // namespace mf2scf
