#include "qmlbench/dense.hpp"

#include <cmath>
#include <stdexcept>

#include "json.hpp"

#include "qmlbench/rng.hpp"

namespace qmlbench {

namespace {

// forward pass keeping the post-activation of every layer
std::vector<Eigen::VectorXd> forward(const DenseModel& m, const Eigen::VectorXd& x) {
    std::vector<Eigen::VectorXd> acts;
    acts.push_back(x);
    for (size_t l = 0; l < m.weights.size(); ++l) {
        Eigen::VectorXd z = m.weights[l] * acts.back() + m.biases[l];
        if (l + 1 < m.weights.size()) {
            acts.push_back(z.array().tanh().matrix());
        } else {
            // stable softmax
            Eigen::VectorXd e = (z.array() - z.maxCoeff()).exp();
            acts.push_back(e / e.sum());
        }
    }
    return acts;
}

int label_index(Label y) { return y == Label::Healthy ? 0 : 1; }

}  // namespace

DenseModel DenseModel::make(const std::vector<int>& sizes, std::uint64_t seed) {
    if (sizes.size() < 2) throw std::invalid_argument("DenseModel: need at least two layers");
    DenseModel m;
    m.layer_sizes = sizes;
    std::mt19937_64 rng(seed);
    for (size_t l = 0; l + 1 < sizes.size(); ++l) {
        double bound = std::sqrt(6.0 / (sizes[l] + sizes[l + 1]));
        Eigen::MatrixXd w(sizes[l + 1], sizes[l]);
        for (int r = 0; r < w.rows(); ++r)
            for (int c = 0; c < w.cols(); ++c) w(r, c) = uniform(rng, -bound, bound);
        m.weights.push_back(std::move(w));
        m.biases.push_back(Eigen::VectorXd::Zero(sizes[l + 1]));
    }
    return m;
}

Eigen::VectorXd DenseModel::softmax_output(const Eigen::VectorXd& x) const {
    return forward(*this, x).back();
}

double dense_loss(const DenseModel& m, const Eigen::VectorXd& x, Label y) {
    Eigen::VectorXd p = m.softmax_output(x);
    return -std::log(std::max(p(label_index(y)), 1e-300));
}

DenseGradients dense_gradients(const DenseModel& m, const Eigen::VectorXd& x, Label y) {
    auto acts = forward(m, x);
    const size_t L = m.weights.size();
    DenseGradients g;
    g.weights.resize(L);
    g.biases.resize(L);

    // softmax + cross-entropy: delta = p - onehot
    Eigen::VectorXd delta = acts.back();
    delta(label_index(y)) -= 1.0;
    for (size_t l = L; l-- > 0;) {
        g.weights[l] = delta * acts[l].transpose();
        g.biases[l] = delta;
        if (l > 0) {
            Eigen::VectorXd back = m.weights[l].transpose() * delta;
            delta = back.cwiseProduct(
                (1.0 - acts[l].array().square()).matrix());  // tanh' = 1 - tanh^2
        }
    }
    return g;
}

DenseTrainResult train_dense(const std::vector<EPSample>& train,
                             const std::vector<EPSample>& valid, const DenseTrainConfig& config) {
    if (train.empty() || valid.empty()) throw std::invalid_argument("train_dense: empty data");
    bool has_healthy = false, has_aml = false;
    for (const auto& s : train) (s.y == Label::Healthy ? has_healthy : has_aml) = true;
    if (!has_healthy || !has_aml)
        throw std::invalid_argument("train_dense: training set must contain both classes");

    const int dim = static_cast<int>(train.front().x.size());
    std::vector<int> sizes = {dim};
    sizes.insert(sizes.end(), config.hidden_sizes.begin(), config.hidden_sizes.end());
    sizes.push_back(2);
    DenseModel model = DenseModel::make(sizes, config.seed);

    std::vector<Eigen::MatrixXd> vel_w;
    std::vector<Eigen::VectorXd> vel_b;
    for (const auto& w : model.weights) vel_w.push_back(Eigen::MatrixXd::Zero(w.rows(), w.cols()));
    for (const auto& b : model.biases) vel_b.push_back(Eigen::VectorXd::Zero(b.size()));

    DenseTrainResult result;
    result.model = model;
    double best_acc = -1.0;
    int since_best = 0;
    std::mt19937_64 shuffle_rng(mix_seed(config.seed, 2));
    std::vector<size_t> order(train.size());
    for (size_t i = 0; i < order.size(); ++i) order[i] = i;

    for (int epoch = 0; epoch < config.max_epochs; ++epoch) {
        for (size_t i = order.size(); i > 1; --i)
            std::swap(order[i - 1], order[uniform_index(shuffle_rng, i)]);
        double epoch_loss = 0.0;
        for (size_t idx : order) {
            const EPSample& s = train[idx];
            epoch_loss += dense_loss(model, s.x, s.y);
            DenseGradients g = dense_gradients(model, s.x, s.y);
            for (size_t l = 0; l < model.weights.size(); ++l) {
                vel_w[l] = config.momentum * vel_w[l] - config.lr * g.weights[l];
                vel_b[l] = config.momentum * vel_b[l] - config.lr * g.biases[l];
                model.weights[l] += vel_w[l];
                model.biases[l] += vel_b[l];
            }
        }
        result.train_loss_history.push_back(epoch_loss / train.size());

        int correct = 0;
        for (const auto& s : valid) correct += predict_dense(model, s.x) == s.y;
        double acc = static_cast<double>(correct) / valid.size();
        result.valid_accuracy_history.push_back(acc);
        if (acc > best_acc) {
            best_acc = acc;
            result.best_epoch = epoch;
            result.model = model;
            since_best = 0;
        } else if (++since_best >= config.patience) {
            break;
        }
    }
    return result;
}

Label predict_dense(const DenseModel& m, const Eigen::VectorXd& x) {
    Eigen::VectorXd p = m.softmax_output(x);
    return p(0) >= p(1) ? Label::Healthy : Label::AML;
}

std::string dense_to_json(const DenseModel& m) {
    nlohmann::json j;
    j["layer_sizes"] = m.layer_sizes;
    auto weights = nlohmann::json::array();
    for (const auto& w : m.weights) {
        std::vector<double> flat(w.size());
        for (int r = 0; r < w.rows(); ++r)
            for (int c = 0; c < w.cols(); ++c) flat[static_cast<size_t>(r) * w.cols() + c] = w(r, c);
        weights.push_back({{"rows", w.rows()}, {"cols", w.cols()}, {"data", flat}});
    }
    j["weights"] = weights;
    auto biases = nlohmann::json::array();
    for (const auto& b : m.biases)
        biases.push_back(std::vector<double>(b.data(), b.data() + b.size()));
    j["biases"] = biases;
    return j.dump();
}

DenseModel dense_from_json(const std::string& text) {
    auto j = nlohmann::json::parse(text);
    DenseModel m;
    j.at("layer_sizes").get_to(m.layer_sizes);
    for (const auto& wj : j.at("weights")) {
        int rows = wj.at("rows"), cols = wj.at("cols");
        std::vector<double> flat = wj.at("data");
        Eigen::MatrixXd w(rows, cols);
        for (int r = 0; r < rows; ++r)
            for (int c = 0; c < cols; ++c) w(r, c) = flat[static_cast<size_t>(r) * cols + c];
        m.weights.push_back(std::move(w));
    }
    for (const auto& bj : j.at("biases")) {
        std::vector<double> v = bj;
        m.biases.push_back(Eigen::Map<Eigen::VectorXd>(v.data(), v.size()));
    }
    return m;
}

}  // namespace qmlbench
