#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "qmlbench/ep.hpp"  // EPSample, Label

namespace qmlbench {

/// Backprop MLP baseline: tanh hidden layers, 2-way softmax output.
struct DenseModel {
    std::vector<int> layer_sizes;  // {20, 64, 32, 2}
    std::vector<Eigen::MatrixXd> weights;
    std::vector<Eigen::VectorXd> biases;

    static DenseModel make(const std::vector<int>& sizes, std::uint64_t seed);

    Eigen::VectorXd softmax_output(const Eigen::VectorXd& x) const;
};

struct DenseGradients {
    std::vector<Eigen::MatrixXd> weights;
    std::vector<Eigen::VectorXd> biases;
};

struct DenseTrainConfig {
    double lr = 0.01;
    double momentum = 0.9;
    int max_epochs = 200;
    int patience = 15;
    std::vector<int> hidden_sizes = {64, 32};
    std::uint64_t seed = 0;
};

struct DenseTrainResult {
    DenseModel model;  // best-validation snapshot
    std::vector<double> train_loss_history;
    std::vector<double> valid_accuracy_history;
    int best_epoch = 0;
};

/// Cross-entropy of the softmax output against the one-hot label.
double dense_loss(const DenseModel& m, const Eigen::VectorXd& x, Label y);

/// Backpropagated gradients of dense_loss for a single sample.
DenseGradients dense_gradients(const DenseModel& m, const Eigen::VectorXd& x, Label y);

DenseTrainResult train_dense(const std::vector<EPSample>& train,
                             const std::vector<EPSample>& valid, const DenseTrainConfig& config);

/// Argmax of the softmax outputs; tie goes to Healthy.
Label predict_dense(const DenseModel& m, const Eigen::VectorXd& x);

std::string dense_to_json(const DenseModel& m);
DenseModel dense_from_json(const std::string& text);

}  // namespace qmlbench
