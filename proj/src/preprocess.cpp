#include "qmlbench/preprocess.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <Eigen/Dense>

#include "json.hpp"

namespace qmlbench {

std::array<double, 20> Standardizer::transform(const FeatureVector& x) const {
    std::array<double, 20> out;
    for (int i = 0; i < 20; ++i) out[i] = (x[i] - means[i]) / stds[i];
    return out;
}

std::array<double, kPcaComponents> PCAModel::project(const std::array<double, 20>& x) const {
    std::array<double, kPcaComponents> out{};
    for (int k = 0; k < kPcaComponents; ++k)
        for (int i = 0; i < 20; ++i) out[k] += components[k][i] * x[i];
    return out;
}

std::array<double, kPcaComponents> AngleScaler::transform(
    const std::array<double, kPcaComponents>& z) const {
    std::array<double, kPcaComponents> out;
    for (int k = 0; k < kPcaComponents; ++k) {
        double range = maxs[k] - mins[k];
        double t = range > 0 ? (z[k] - mins[k]) / range : 0.0;
        out[k] = std::clamp(t, 0.0, 1.0) * kTwoPi;
    }
    return out;
}

Standardizer fit_standardizer(const std::vector<FeatureVector>& train) {
    if (train.empty()) throw std::invalid_argument("fit_standardizer: empty training set");
    Standardizer s;
    for (const auto& x : train)
        for (int i = 0; i < 20; ++i) s.means[i] += x[i];
    for (int i = 0; i < 20; ++i) s.means[i] /= train.size();
    for (const auto& x : train)
        for (int i = 0; i < 20; ++i) s.stds[i] += (x[i] - s.means[i]) * (x[i] - s.means[i]);
    for (int i = 0; i < 20; ++i) {
        s.stds[i] = std::sqrt(s.stds[i] / train.size());  // population
        if (s.stds[i] == 0.0) s.stds[i] = 1.0;
    }
    return s;
}

PCAModel fit_pca(const std::vector<std::array<double, 20>>& standardized) {
    const auto n = standardized.size();
    if (n < 5) throw std::invalid_argument("fit_pca: need at least 5 training vectors");

    Eigen::MatrixXd X(n, 20);
    for (size_t r = 0; r < n; ++r)
        for (int c = 0; c < 20; ++c) X(r, c) = standardized[r][c];
    Eigen::RowVectorXd mean = X.colwise().mean();
    X.rowwise() -= mean;
    Eigen::MatrixXd cov = (X.transpose() * X) / static_cast<double>(n - 1);

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(cov);
    if (es.info() != Eigen::Success) throw std::runtime_error("fit_pca: eigendecomposition failed");
    // Eigen sorts ascending; take the top-k from the back.
    PCAModel p;
    double trace = es.eigenvalues().sum();
    double captured = 0.0;
    for (int k = 0; k < kPcaComponents; ++k) {
        int idx = 19 - k;
        Eigen::VectorXd v = es.eigenvectors().col(idx);
        int imax = 0;
        for (int i = 1; i < 20; ++i)
            if (std::abs(v(i)) > std::abs(v(imax))) imax = i;
        if (v(imax) < 0) v = -v;
        for (int i = 0; i < 20; ++i) p.components[k][i] = v(i);
        p.explained_variance[k] = std::max(0.0, es.eigenvalues()(idx));
        captured += p.explained_variance[k];
    }
    p.captured_fraction = trace > 0 ? captured / trace : 0.0;
    return p;
}

AngleScaler fit_angle_scaler(const std::vector<std::array<double, kPcaComponents>>& projected) {
    if (projected.empty()) throw std::invalid_argument("fit_angle_scaler: empty training set");
    AngleScaler a;
    for (int k = 0; k < kPcaComponents; ++k) {
        a.mins[k] = projected[0][k];
        a.maxs[k] = projected[0][k];
    }
    for (const auto& z : projected)
        for (int k = 0; k < kPcaComponents; ++k) {
            a.mins[k] = std::min(a.mins[k], z[k]);
            a.maxs[k] = std::max(a.maxs[k], z[k]);
        }
    return a;
}

std::array<double, kPcaComponents> project_and_rescale(const FeatureVector& x,
                                                       const Standardizer& s, const PCAModel& p,
                                                       const AngleScaler& a) {
    return a.transform(p.project(s.transform(x)));
}

std::string preprocess_to_json(const Standardizer& s, const PCAModel& p, const AngleScaler& a) {
    nlohmann::json j;
    j["standardizer"] = {{"means", s.means}, {"stds", s.stds}};
    j["pca"] = {{"components", p.components},
                {"explained_variance", p.explained_variance},
                {"captured_fraction", p.captured_fraction}};
    j["angle_scaler"] = {{"mins", a.mins}, {"maxs", a.maxs}};
    return j.dump(2);
}

void preprocess_from_json(const std::string& text, Standardizer& s, PCAModel& p, AngleScaler& a) {
    auto j = nlohmann::json::parse(text);
    j.at("standardizer").at("means").get_to(s.means);
    j.at("standardizer").at("stds").get_to(s.stds);
    j.at("pca").at("components").get_to(p.components);
    j.at("pca").at("explained_variance").get_to(p.explained_variance);
    j.at("pca").at("captured_fraction").get_to(p.captured_fraction);
    j.at("angle_scaler").at("mins").get_to(a.mins);
    j.at("angle_scaler").at("maxs").get_to(a.maxs);
}

}  // namespace qmlbench
