#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "qmlbench/cobyla.hpp"

namespace qmlbench {

/// Binary class labels. Healthy -> target +1, AML -> target -1.
enum class Label { Healthy = 0, AML = 1 };

inline double label_target(Label y) { return y == Label::Healthy ? 1.0 : -1.0; }

struct LabeledAngles {
    std::array<double, 4> x;  // rotation angles in [0, 2pi]
    Label y;
};

struct VQCModel {
    std::array<double, 8> theta{};
    std::vector<double> loss_history;  // best-seen loss per objective evaluation
    CobylaOptions optimizer;
    std::uint64_t seed = 0;
};

/// Mean squared error between <Z_0> and the +-1 targets.
double vqc_loss(const std::vector<double>& theta, const std::vector<LabeledAngles>& data);

/// Seeded theta init in [-0.1, 0.1], then COBYLA-style minimization of vqc_loss
/// for max_evals objective evaluations. The optimizer sees objective values only.
VQCModel train_vqc(const std::vector<LabeledAngles>& train, std::uint64_t seed,
                   int max_evals = 200);

/// <Z_0> >= 0 -> Healthy (ties included), otherwise AML.
Label predict_vqc(const VQCModel& model, const std::array<double, 4>& x);

std::string vqc_to_json(const VQCModel& m);
VQCModel vqc_from_json(const std::string& text);

}  // namespace qmlbench
