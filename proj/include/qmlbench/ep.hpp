#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "qmlbench/vqc.hpp"  // Label

namespace qmlbench {

/// Layered continuous Hopfield network. Each weight matrix W[l]
/// (shape sizes[l+1] x sizes[l]) couples adjacent layers and is used in both
/// directions, so w_ij = w_ji holds by construction.
struct EPNetwork {
    std::vector<int> layer_sizes;           // e.g. {20, 256, 128, 64, 2}
    std::vector<Eigen::MatrixXd> weights;   // one per adjacent pair
    std::vector<Eigen::VectorXd> biases;    // one per non-input layer

    static EPNetwork make(const std::vector<int>& sizes, std::uint64_t seed);
    int n_free_layers() const { return static_cast<int>(layer_sizes.size()) - 1; }
};

/// Activations of the free (non-input) layers; entries stay in (-1, 1).
struct EPState {
    Eigen::VectorXd input;                  // clamped
    std::vector<Eigen::VectorXd> layers;    // one per non-input layer

    const Eigen::VectorXd& output() const { return layers.back(); }
};

struct RelaxOptions {
    int max_sweeps = 100;
    double tolerance = 1e-4;
    double damping = 0.5;
};

struct RelaxResult {
    EPState state;
    bool converged = false;
    int sweeps = 0;
};

struct EPTrainConfig {
    double beta = 0.1;
    double momentum = 0.9;
    double lr0 = 0.05;
    int max_epochs = 100;
    int patience = 15;
    RelaxOptions relax;
    double target_magnitude = 0.85;  // soft +-targets reachable by tanh units
    std::vector<int> hidden_sizes = {256, 128, 64};
    std::uint64_t seed = 0;
};

struct EPDeltas {
    std::vector<Eigen::MatrixXd> weights;
    std::vector<Eigen::VectorXd> biases;
};

struct EPSample {
    Eigen::VectorXd x;
    Label y;
};

struct EPTrainResult {
    EPNetwork net;  // best-validation snapshot
    std::vector<double> valid_accuracy_history;
    int best_epoch = 0;
    int epochs_run = 0;
};

/// Hopfield energy: -sum_pairs W_ij s_i s_j - sum b_i s_i + sum rho(s_i),
/// rho(s) = s atanh(s) + ln(1 - s^2)/2. Input units enter the coupling term only.
/// Throws std::domain_error if any |s_i| >= 1.
double energy(const EPNetwork& net, const EPState& state);

/// Damped fixed-point settling to the free equilibrium from the zero state.
RelaxResult free_phase(const EPNetwork& net, const Eigen::VectorXd& x,
                       const RelaxOptions& opts = {});

/// Settling with the output nudge force beta*(y - s_out), initialized from `from`.
RelaxResult nudged_phase(const EPNetwork& net, const Eigen::VectorXd& x,
                         const Eigen::VectorXd& y, double beta, const EPState& from,
                         const RelaxOptions& opts = {});

/// Contrastive update: dW = (lr/beta)(s^b s^b' - s* s*') per adjacent pair,
/// db = (lr/beta)(s^b - s*). Depends only on the two equilibria, beta, and lr.
EPDeltas ep_update(const EPNetwork& net, const EPState& free_state,
                   const EPState& nudged_state, double beta, double lr);

/// Per-sample EP training with momentum, cosine-annealed learning rate, and
/// early stopping on validation accuracy.
EPTrainResult train_ep(const std::vector<EPSample>& train, const std::vector<EPSample>& valid,
                       const EPTrainConfig& config);

/// Free phase, then argmax over the two output units; ties go to Healthy.
Label predict_ep(const EPNetwork& net, const Eigen::VectorXd& x,
                 const RelaxOptions& opts = {});

std::string ep_to_json(const EPNetwork& net);
EPNetwork ep_from_json(const std::string& text);

}  // namespace qmlbench
