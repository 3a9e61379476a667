#include "qmlbench/vqc.hpp"

#include <stdexcept>

#include "json.hpp"

#include "qmlbench/parallel.hpp"
#include "qmlbench/qsim.hpp"
#include "qmlbench/rng.hpp"

namespace qmlbench {

double vqc_loss(const std::vector<double>& theta, const std::vector<LabeledAngles>& data) {
    if (data.empty()) throw std::invalid_argument("vqc_loss: empty data");
    std::vector<double> residuals(data.size());
    parallel_for(data.size(), [&](size_t i) {
        std::vector<double> x(data[i].x.begin(), data[i].x.end());
        double z = run_classifier_circuit(x, theta);
        double d = z - label_target(data[i].y);
        residuals[i] = d * d;
    });
    double acc = 0.0;  // sequential reduction keeps the result deterministic
    for (double r : residuals) acc += r;
    return acc / data.size();
}

VQCModel train_vqc(const std::vector<LabeledAngles>& train, std::uint64_t seed, int max_evals) {
    if (train.empty()) throw std::invalid_argument("train_vqc: empty training set");
    bool has_healthy = false, has_aml = false;
    for (const auto& s : train) (s.y == Label::Healthy ? has_healthy : has_aml) = true;
    if (!has_healthy || !has_aml)
        throw std::invalid_argument("train_vqc: training set must contain both classes");

    std::mt19937_64 rng(seed);
    std::vector<double> theta0(8);
    for (double& t : theta0) t = uniform(rng, -0.1, 0.1);

    VQCModel model;
    model.seed = seed;
    model.optimizer.max_evals = max_evals;

    auto objective = [&](const std::vector<double>& theta) {
        double loss = vqc_loss(theta, train);
        double best = model.loss_history.empty() ? loss : model.loss_history.back();
        model.loss_history.push_back(std::min(loss, best));
        return loss;
    };
    CobylaResult res = cobyla_minimize(objective, theta0, model.optimizer);
    for (int i = 0; i < 8; ++i) model.theta[i] = res.x[i];
    return model;
}

Label predict_vqc(const VQCModel& model, const std::array<double, 4>& x) {
    std::vector<double> xv(x.begin(), x.end());
    std::vector<double> theta(model.theta.begin(), model.theta.end());
    return run_classifier_circuit(xv, theta) >= 0.0 ? Label::Healthy : Label::AML;
}

std::string vqc_to_json(const VQCModel& m) {
    nlohmann::json j;
    j["theta"] = m.theta;
    j["label_map"] = {{"Healthy", +1}, {"AML", -1}};
    j["loss_history"] = m.loss_history;
    j["optimizer_config"] = {{"rho_begin", m.optimizer.rho_begin},
                             {"rho_end", m.optimizer.rho_end},
                             {"max_evals", m.optimizer.max_evals}};
    j["seed"] = m.seed;
    return j.dump(2);
}

VQCModel vqc_from_json(const std::string& text) {
    auto j = nlohmann::json::parse(text);
    VQCModel m;
    j.at("theta").get_to(m.theta);
    j.at("loss_history").get_to(m.loss_history);
    m.optimizer.rho_begin = j.at("optimizer_config").at("rho_begin");
    m.optimizer.rho_end = j.at("optimizer_config").at("rho_end");
    m.optimizer.max_evals = j.at("optimizer_config").at("max_evals");
    m.seed = j.value("seed", 0ULL);
    return m;
}

}  // namespace qmlbench
