#pragma once

#include <array>
#include <string>
#include <vector>

#include "qmlbench/features.hpp"

namespace qmlbench {

inline constexpr int kPcaComponents = 4;
inline constexpr double kTwoPi = 6.28318530717958647693;

/// Per-feature mean/std fitted on the training set. A zero std is replaced
/// by 1 at fit time so constant features map to 0.
struct Standardizer {
    std::array<double, 20> means{};
    std::array<double, 20> stds{};

    std::array<double, 20> transform(const FeatureVector& x) const;
};

/// Top-4 principal directions of the standardized training matrix.
/// Covariance uses N-1; the sign of each component is fixed so its
/// largest-magnitude entry is positive.
struct PCAModel {
    std::array<std::array<double, 20>, kPcaComponents> components{};
    std::array<double, kPcaComponents> explained_variance{};
    double captured_fraction = 0.0;

    std::array<double, kPcaComponents> project(const std::array<double, 20>& x) const;
};

/// Min-max map of each projected dimension onto [0, 2pi], fitted on train,
/// clipped for out-of-range test values.
struct AngleScaler {
    std::array<double, kPcaComponents> mins{};
    std::array<double, kPcaComponents> maxs{};

    std::array<double, kPcaComponents> transform(const std::array<double, kPcaComponents>& z) const;
};

Standardizer fit_standardizer(const std::vector<FeatureVector>& train);

PCAModel fit_pca(const std::vector<std::array<double, 20>>& standardized);

AngleScaler fit_angle_scaler(const std::vector<std::array<double, kPcaComponents>>& projected);

std::array<double, kPcaComponents> project_and_rescale(const FeatureVector& x,
                                                       const Standardizer& s, const PCAModel& p,
                                                       const AngleScaler& a);

/// JSON sidecar with all three fitted models (field names match the structs).
std::string preprocess_to_json(const Standardizer& s, const PCAModel& p, const AngleScaler& a);
void preprocess_from_json(const std::string& text, Standardizer& s, PCAModel& p, AngleScaler& a);

}  // namespace qmlbench
