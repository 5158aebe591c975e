#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "mf2scf/colorfeat.hpp"
#include "mf2scf/texture.hpp"

namespace mf2scf {

enum class FeatureStage { raw, standardized };

/// Segment lengths of a fused vector plus the processing stage it is in.
struct FeatureLayout {
    std::size_t f1_len = 0;
    std::size_t f2_len = kGlobalFeatureLength;
    std::size_t f3_len = kColorFeatureLength;
    FeatureStage stage = FeatureStage::raw;

    [[nodiscard]] std::size_t total() const noexcept { return f1_len + f2_len + f3_len; }
    // e.g. "f1=0;f2=295;f3=768;stage=raw"
    [[nodiscard]] std::string fingerprint() const;
    [[nodiscard]] static FeatureLayout parse(const std::string& fingerprint);

    friend bool operator==(const FeatureLayout&, const FeatureLayout&) = default;
};

struct FusedVector {
    FeatureLayout layout;
    std::vector<double> values;

    [[nodiscard]] std::span<const double> f1() const noexcept;
    [[nodiscard]] std::span<const double> f2() const noexcept;
    [[nodiscard]] std::span<const double> f3() const noexcept;
};

/// [f1, f2, f3]; f1 may be empty when no deep features are used.
[[nodiscard]] FusedVector fuse(std::span<const double> f1, const GlobalFeature& f2, const ColorFeature& f3);

/// Fuses a whole dataset. Throws LayoutMismatch when f1 lengths differ.
[[nodiscard]] std::vector<FusedVector> fuse_all(const std::vector<std::vector<double>>& f1,
                                                const std::vector<GlobalFeature>& f2,
                                                const std::vector<ColorFeature>& f3);

}  // namespace mf2scf
