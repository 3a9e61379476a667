#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <random>

#include "qmlbench/dense.hpp"
#include "qmlbench/rng.hpp"

using namespace qmlbench;

namespace {

// XOR pattern in the first two features, padded to 20 dims
std::vector<EPSample> xor_data() {
    std::vector<EPSample> out;
    const double pts[4][2] = {{0, 0}, {0, 1}, {1, 0}, {1, 1}};
    for (int rep = 0; rep < 10; ++rep)
        for (int i = 0; i < 4; ++i) {
            Eigen::VectorXd x = Eigen::VectorXd::Zero(20);
            x(0) = pts[i][0];
            x(1) = pts[i][1];
            Label y = (pts[i][0] != pts[i][1]) ? Label::AML : Label::Healthy;
            out.push_back({x, y});
        }
    return out;
}

}  // namespace

TEST_CASE("softmax outputs are a strict probability vector") {
    DenseModel m = DenseModel::make({20, 8, 2}, 3);
    std::mt19937_64 rng(1);
    for (int trial = 0; trial < 20; ++trial) {
        Eigen::VectorXd x(20);
        for (int i = 0; i < 20; ++i) x(i) = normal(rng);
        Eigen::VectorXd p = m.softmax_output(x);
        CHECK(p.sum() == doctest::Approx(1.0).epsilon(1e-9));
        CHECK(p.minCoeff() > 0.0);
    }
}

TEST_CASE("backprop gradients match central finite differences") {
    DenseModel m = DenseModel::make({6, 5, 2}, 11);
    std::mt19937_64 rng(2);
    Eigen::VectorXd x(6);
    for (int i = 0; i < 6; ++i) x(i) = normal(rng);

    for (Label y : {Label::Healthy, Label::AML}) {
        DenseGradients g = dense_gradients(m, x, y);
        const double eps = 1e-6;
        for (size_t l = 0; l < m.weights.size(); ++l)
            for (int r = 0; r < m.weights[l].rows(); ++r)
                for (int c = 0; c < m.weights[l].cols(); ++c) {
                    DenseModel plus = m, minus = m;
                    plus.weights[l](r, c) += eps;
                    minus.weights[l](r, c) -= eps;
                    double fd = (dense_loss(plus, x, y) - dense_loss(minus, x, y)) / (2 * eps);
                    double rel = std::abs(g.weights[l](r, c) - fd) /
                                 std::max(std::abs(fd), 1e-6);
                    CHECK(rel < 1e-4);
                }
    }
}

TEST_CASE("XOR data is fit perfectly") {
    auto data = xor_data();
    DenseTrainConfig cfg;
    cfg.hidden_sizes = {8, 4};
    cfg.seed = 0;
    DenseTrainResult res = train_dense(data, data, cfg);
    int correct = 0;
    for (const auto& s : data) correct += predict_dense(res.model, s.x) == s.y;
    CHECK(correct == static_cast<int>(data.size()));
}

TEST_CASE("training loss is mostly non-increasing on separable data") {
    auto data = xor_data();
    DenseTrainConfig cfg;
    cfg.hidden_sizes = {8, 4};
    cfg.max_epochs = 50;
    DenseTrainResult res = train_dense(data, data, cfg);
    int drops = 0, steps = 0;
    for (size_t i = 1; i < res.train_loss_history.size(); ++i) {
        ++steps;
        drops += res.train_loss_history[i] <= res.train_loss_history[i - 1] + 1e-12;
    }
    CHECK(steps > 0);
    CHECK(static_cast<double>(drops) / steps >= 0.9);
}

TEST_CASE("same seed gives identical models; single-class data is rejected") {
    auto data = xor_data();
    DenseTrainConfig cfg;
    cfg.hidden_sizes = {6};
    cfg.max_epochs = 10;
    cfg.seed = 9;
    DenseTrainResult a = train_dense(data, data, cfg);
    DenseTrainResult b = train_dense(data, data, cfg);
    for (size_t l = 0; l < a.model.weights.size(); ++l)
        CHECK((a.model.weights[l] - b.model.weights[l]).cwiseAbs().maxCoeff() == 0.0);

    auto single = data;
    for (auto& s : single) s.y = Label::AML;
    CHECK_THROWS_AS(train_dense(single, data, cfg), std::invalid_argument);
}

TEST_CASE("prediction conventions from logits") {
    DenseModel m;
    m.layer_sizes = {2, 2};
    m.weights.push_back((Eigen::MatrixXd(2, 2) << 1, 0, 0, 1).finished());
    m.biases.push_back(Eigen::VectorXd::Zero(2));
    Eigen::VectorXd x(2);
    x << 2, -1;
    CHECK(predict_dense(m, x) == Label::Healthy);
    x << -3, 0.5;
    CHECK(predict_dense(m, x) == Label::AML);
    x << 0, 0;  // tie
    CHECK(predict_dense(m, x) == Label::Healthy);
}

TEST_CASE("model JSON round-trip") {
    DenseModel m = DenseModel::make({5, 4, 2}, 21);
    DenseModel r = dense_from_json(dense_to_json(m));
    CHECK(r.layer_sizes == m.layer_sizes);
    for (size_t l = 0; l < m.weights.size(); ++l)
        CHECK((r.weights[l] - m.weights[l]).cwiseAbs().maxCoeff() == 0.0);
}
