#include "qmlbench/qsim.hpp"

#include <cmath>
#include <stdexcept>

#include "json.hpp"

namespace qmlbench {

namespace {
constexpr double kPi = 3.14159265358979323846;
using cd = std::complex<double>;
}  // namespace

QuantumState::QuantumState(int n_qubits) : n_qubits_(n_qubits) {
    if (n_qubits < 1 || n_qubits > kMaxQubits)
        throw std::invalid_argument("QuantumState: qubit count out of range");
    amps_.assign(size_t{1} << n_qubits, cd{0.0, 0.0});
    amps_[0] = 1.0;
}

void QuantumState::apply(const Gate& g) {
    if (g.target < 0 || g.target >= n_qubits_)
        throw std::invalid_argument("gate target out of range");
    const size_t n = amps_.size();
    const size_t tmask = size_t{1} << g.target;

    switch (g.kind) {
        case GateKind::H: {
            const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
            for (size_t i = 0; i < n; ++i) {
                if (i & tmask) continue;
                cd a = amps_[i], b = amps_[i | tmask];
                amps_[i] = inv_sqrt2 * (a + b);
                amps_[i | tmask] = inv_sqrt2 * (a - b);
            }
            break;
        }
        case GateKind::RY: {
            const double c = std::cos(g.angle / 2.0), s = std::sin(g.angle / 2.0);
            for (size_t i = 0; i < n; ++i) {
                if (i & tmask) continue;
                cd a = amps_[i], b = amps_[i | tmask];
                amps_[i] = c * a - s * b;
                amps_[i | tmask] = s * a + c * b;
            }
            break;
        }
        case GateKind::RZ: {
            const cd e0 = std::polar(1.0, -g.angle / 2.0);
            const cd e1 = std::polar(1.0, g.angle / 2.0);
            for (size_t i = 0; i < n; ++i) amps_[i] *= (i & tmask) ? e1 : e0;
            break;
        }
        case GateKind::CX: {
            if (g.control < 0 || g.control >= n_qubits_)
                throw std::invalid_argument("gate control out of range");
            if (g.control == g.target)
                throw std::invalid_argument("CX control equals target");
            const size_t cmask = size_t{1} << g.control;
            for (size_t i = 0; i < n; ++i)
                if ((i & cmask) && !(i & tmask)) std::swap(amps_[i], amps_[i | tmask]);
            break;
        }
    }
}

void QuantumState::apply(const Circuit& c) {
    if (c.n_qubits != n_qubits_) throw std::invalid_argument("circuit/state qubit mismatch");
    for (const Gate& g : c.gates) apply(g);
}

double QuantumState::norm_sq() const {
    double acc = 0.0;
    for (const cd& a : amps_) acc += std::norm(a);
    return acc;
}

Circuit zz_feature_map(const std::vector<double>& x) {
    if (x.size() != 4) throw std::invalid_argument("zz_feature_map expects 4 angles");
    Circuit c{4, {}};
    for (int q = 0; q < 4; ++q) c.gates.push_back({GateKind::H, q});
    for (int q = 0; q < 4; ++q) c.gates.push_back({GateKind::RZ, q, -1, 2.0 * x[q]});
    for (int q = 0; q < 4; ++q)
        for (int r = q + 1; r < 4; ++r) {
            c.gates.push_back({GateKind::CX, r, q});
            c.gates.push_back({GateKind::RZ, r, -1, 2.0 * (kPi - x[q]) * (kPi - x[r])});
            c.gates.push_back({GateKind::CX, r, q});
        }
    return c;
}

Circuit real_amplitudes_ansatz(const std::vector<double>& theta) {
    if (theta.size() != 8) throw std::invalid_argument("real_amplitudes_ansatz expects 8 parameters");
    Circuit c{4, {}};
    for (int q = 0; q < 4; ++q) c.gates.push_back({GateKind::RY, q, -1, theta[q]});
    for (int q = 0; q < 3; ++q) c.gates.push_back({GateKind::CX, q + 1, q});
    for (int q = 0; q < 4; ++q) c.gates.push_back({GateKind::RY, q, -1, theta[4 + q]});
    return c;
}

double expectation_z0(const QuantumState& state) {
    double acc = 0.0;
    const auto& amps = state.amplitudes();
    for (size_t i = 0; i < amps.size(); ++i) acc += ((i & 1) ? -1.0 : 1.0) * std::norm(amps[i]);
    return acc;
}

double run_classifier_circuit(const std::vector<double>& x, const std::vector<double>& theta) {
    QuantumState state(4);
    state.apply(zz_feature_map(x));
    state.apply(real_amplitudes_ansatz(theta));
    return expectation_z0(state);
}

std::string circuit_to_json(const Circuit& c) {
    nlohmann::json gates = nlohmann::json::array();
    for (const Gate& g : c.gates) {
        nlohmann::json j;
        switch (g.kind) {
            case GateKind::H: j["kind"] = "h"; break;
            case GateKind::RY: j["kind"] = "ry"; break;
            case GateKind::RZ: j["kind"] = "rz"; break;
            case GateKind::CX: j["kind"] = "cx"; break;
        }
        j["target"] = g.target;
        if (g.kind == GateKind::CX) j["control"] = g.control;
        if (g.kind == GateKind::RY || g.kind == GateKind::RZ) j["angle"] = g.angle;
        gates.push_back(j);
    }
    return nlohmann::json{{"n_qubits", c.n_qubits}, {"gates", gates}}.dump(2);
}

}  // namespace qmlbench
