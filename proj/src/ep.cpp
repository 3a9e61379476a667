#include "qmlbench/ep.hpp"

#include <cmath>
#include <stdexcept>

#include "json.hpp"

#include "qmlbench/rng.hpp"

namespace qmlbench {

namespace {

double rho_primitive(double s) {
    // integral of atanh from 0 to s, in closed form
    return s * std::atanh(s) + 0.5 * std::log1p(-s * s);
}

// One damped sweep over all free layers; returns max |delta s|.
// nudge < 0 disables the output force.
double sweep(const EPNetwork& net, EPState& st, double damping, double beta,
             const Eigen::VectorXd* target) {
    const int L = net.n_free_layers();
    double max_delta = 0.0;
    for (int l = 0; l < L; ++l) {
        const Eigen::VectorXd& below = l == 0 ? st.input : st.layers[l - 1];
        Eigen::VectorXd pre = net.weights[l] * below + net.biases[l];
        if (l + 1 < L) pre += net.weights[l + 1].transpose() * st.layers[l + 1];
        if (l == L - 1 && target) pre += beta * (*target - st.layers[l]);
        Eigen::VectorXd next = (1.0 - damping) * st.layers[l] + damping * pre.array().tanh().matrix();
        max_delta = std::max(max_delta, (next - st.layers[l]).cwiseAbs().maxCoeff());
        st.layers[l] = next;
    }
    return max_delta;
}

RelaxResult relax(const EPNetwork& net, EPState st, double beta, const Eigen::VectorXd* target,
                  const RelaxOptions& opts) {
    RelaxResult res;
    for (int i = 0; i < opts.max_sweeps; ++i) {
        double delta = sweep(net, st, opts.damping, beta, target);
        ++res.sweeps;
        if (delta < opts.tolerance) {
            res.converged = true;
            break;
        }
    }
    res.state = std::move(st);
    return res;
}

}  // namespace

EPNetwork EPNetwork::make(const std::vector<int>& sizes, std::uint64_t seed) {
    if (sizes.size() < 2) throw std::invalid_argument("EPNetwork: need at least two layers");
    EPNetwork net;
    net.layer_sizes = sizes;
    std::mt19937_64 rng(seed);
    for (size_t l = 0; l + 1 < sizes.size(); ++l) {
        // Keep the expected spectral norm of each coupling matrix near 0.5:
        // sigma_max of a random m x n matrix is about sigma_w (sqrt(m)+sqrt(n)),
        // and each hidden layer feels two such couplings during settling, so
        // larger (Xavier-style) scales saturate the tanh fixed point.
        double bound = std::sqrt(3.0) * 0.5 / (std::sqrt(static_cast<double>(sizes[l])) +
                                               std::sqrt(static_cast<double>(sizes[l + 1])));
        Eigen::MatrixXd w(sizes[l + 1], sizes[l]);
        for (int r = 0; r < w.rows(); ++r)
            for (int c = 0; c < w.cols(); ++c) w(r, c) = uniform(rng, -bound, bound);
        net.weights.push_back(std::move(w));
        net.biases.push_back(Eigen::VectorXd::Zero(sizes[l + 1]));
    }
    return net;
}

double energy(const EPNetwork& net, const EPState& state) {
    const int L = net.n_free_layers();
    double e = 0.0;
    for (int l = 0; l < L; ++l) {
        const Eigen::VectorXd& below = l == 0 ? state.input : state.layers[l - 1];
        const Eigen::VectorXd& s = state.layers[l];
        e -= s.dot(net.weights[l] * below);  // each undirected pair counted once
        e -= net.biases[l].dot(s);
        for (int i = 0; i < s.size(); ++i) {
            if (std::abs(s(i)) >= 1.0) throw std::domain_error("energy: |s| >= 1");
            e += rho_primitive(s(i));
        }
    }
    return e;
}

RelaxResult free_phase(const EPNetwork& net, const Eigen::VectorXd& x, const RelaxOptions& opts) {
    if (x.size() != net.layer_sizes.front())
        throw std::invalid_argument("free_phase: input size mismatch");
    EPState st;
    st.input = x;
    for (int l = 1; l < static_cast<int>(net.layer_sizes.size()); ++l)
        st.layers.push_back(Eigen::VectorXd::Zero(net.layer_sizes[l]));
    return relax(net, std::move(st), 0.0, nullptr, opts);
}

RelaxResult nudged_phase(const EPNetwork& net, const Eigen::VectorXd& x, const Eigen::VectorXd& y,
                         double beta, const EPState& from, const RelaxOptions& opts) {
    if (beta <= 0.0) throw std::invalid_argument("nudged_phase: beta must be positive");
    if (y.size() != net.layer_sizes.back())
        throw std::invalid_argument("nudged_phase: target size mismatch");
    EPState st = from;
    st.input = x;
    return relax(net, std::move(st), beta, &y, opts);
}

EPDeltas ep_update(const EPNetwork& net, const EPState& free_state, const EPState& nudged_state,
                   double beta, double lr) {
    const int L = net.n_free_layers();
    EPDeltas d;
    const double scale = lr / beta;
    for (int l = 0; l < L; ++l) {
        const Eigen::VectorXd& below_free = l == 0 ? free_state.input : free_state.layers[l - 1];
        const Eigen::VectorXd& below_nudged =
            l == 0 ? nudged_state.input : nudged_state.layers[l - 1];
        d.weights.push_back(scale * (nudged_state.layers[l] * below_nudged.transpose() -
                                     free_state.layers[l] * below_free.transpose()));
        d.biases.push_back(scale * (nudged_state.layers[l] - free_state.layers[l]));
    }
    return d;
}

EPTrainResult train_ep(const std::vector<EPSample>& train, const std::vector<EPSample>& valid,
                       const EPTrainConfig& config) {
    if (train.empty() || valid.empty()) throw std::invalid_argument("train_ep: empty data");
    bool has_healthy = false, has_aml = false;
    for (const auto& s : train) (s.y == Label::Healthy ? has_healthy : has_aml) = true;
    if (!has_healthy || !has_aml)
        throw std::invalid_argument("train_ep: training set must contain both classes");

    const int dim = static_cast<int>(train.front().x.size());
    std::vector<int> sizes = {dim};
    sizes.insert(sizes.end(), config.hidden_sizes.begin(), config.hidden_sizes.end());
    sizes.push_back(2);
    EPNetwork net = EPNetwork::make(sizes, config.seed);

    std::vector<Eigen::MatrixXd> vel_w;
    std::vector<Eigen::VectorXd> vel_b;
    for (const auto& w : net.weights) vel_w.push_back(Eigen::MatrixXd::Zero(w.rows(), w.cols()));
    for (const auto& b : net.biases) vel_b.push_back(Eigen::VectorXd::Zero(b.size()));

    auto target_of = [&](Label y) {
        Eigen::VectorXd t(2);
        double m = config.target_magnitude;
        if (y == Label::Healthy)
            t << m, -m;
        else
            t << -m, m;
        return t;
    };
    auto valid_accuracy = [&] {
        int correct = 0;
        for (const auto& s : valid) correct += predict_ep(net, s.x, config.relax) == s.y;
        return static_cast<double>(correct) / valid.size();
    };

    EPTrainResult result;
    result.net = net;
    double best_acc = -1.0;
    int since_best = 0;
    std::mt19937_64 shuffle_rng(mix_seed(config.seed, 1));
    std::vector<size_t> order(train.size());
    for (size_t i = 0; i < order.size(); ++i) order[i] = i;

    for (int epoch = 0; epoch < config.max_epochs; ++epoch) {
        double lr = config.lr0 * 0.5 * (1.0 + std::cos(M_PI * epoch / config.max_epochs));
        // deterministic per-epoch shuffle
        for (size_t i = order.size(); i > 1; --i)
            std::swap(order[i - 1], order[uniform_index(shuffle_rng, i)]);

        for (size_t idx : order) {
            const EPSample& sample = train[idx];
            RelaxResult free_res = free_phase(net, sample.x, config.relax);
            Eigen::VectorXd y = target_of(sample.y);
            RelaxResult nudged_res =
                nudged_phase(net, sample.x, y, config.beta, free_res.state, config.relax);
            EPDeltas d = ep_update(net, free_res.state, nudged_res.state, config.beta, lr);
            for (size_t l = 0; l < net.weights.size(); ++l) {
                vel_w[l] = config.momentum * vel_w[l] + d.weights[l];
                vel_b[l] = config.momentum * vel_b[l] + d.biases[l];
                net.weights[l] += vel_w[l];
                net.biases[l] += vel_b[l];
            }
        }

        double acc = valid_accuracy();
        result.valid_accuracy_history.push_back(acc);
        result.epochs_run = epoch + 1;
        if (acc > best_acc) {
            best_acc = acc;
            result.best_epoch = epoch;
            result.net = net;
            since_best = 0;
        } else if (++since_best >= config.patience) {
            break;
        }
    }
    return result;
}

Label predict_ep(const EPNetwork& net, const Eigen::VectorXd& x, const RelaxOptions& opts) {
    RelaxResult res = free_phase(net, x, opts);
    const Eigen::VectorXd& out = res.state.output();
    return out(0) >= out(1) ? Label::Healthy : Label::AML;  // tie -> Healthy
}

std::string ep_to_json(const EPNetwork& net) {
    nlohmann::json j;
    j["layer_sizes"] = net.layer_sizes;
    auto weights = nlohmann::json::array();
    for (const auto& w : net.weights) {
        std::vector<double> flat(w.size());
        for (int r = 0; r < w.rows(); ++r)
            for (int c = 0; c < w.cols(); ++c) flat[static_cast<size_t>(r) * w.cols() + c] = w(r, c);
        weights.push_back({{"rows", w.rows()}, {"cols", w.cols()}, {"data", flat}});
    }
    j["weights"] = weights;
    auto biases = nlohmann::json::array();
    for (const auto& b : net.biases)
        biases.push_back(std::vector<double>(b.data(), b.data() + b.size()));
    j["biases"] = biases;
    return j.dump();
}

EPNetwork ep_from_json(const std::string& text) {
    auto j = nlohmann::json::parse(text);
    EPNetwork net;
    j.at("layer_sizes").get_to(net.layer_sizes);
    for (const auto& wj : j.at("weights")) {
        int rows = wj.at("rows"), cols = wj.at("cols");
        std::vector<double> flat = wj.at("data");
        Eigen::MatrixXd w(rows, cols);
        for (int r = 0; r < rows; ++r)
            for (int c = 0; c < cols; ++c) w(r, c) = flat[static_cast<size_t>(r) * cols + c];
        net.weights.push_back(std::move(w));
    }
    for (const auto& bj : j.at("biases")) {
        std::vector<double> v = bj;
        net.biases.push_back(Eigen::Map<Eigen::VectorXd>(v.data(), v.size()));
    }
    return net;
}

}  // namespace qmlbench
