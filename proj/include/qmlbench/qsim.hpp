#pragma once

#include <complex>
#include <string>
#include <vector>

namespace qmlbench {

inline constexpr int kMaxQubits = 12;

enum class GateKind { H, RY, RZ, CX };

struct Gate {
    GateKind kind;
    int target;
    int control = -1;     // CX only
    double angle = 0.0;   // RY/RZ only
};

struct Circuit {
    int n_qubits;
    std::vector<Gate> gates;
};

/// Dense statevector, qubit 0 = least significant bit of the basis index.
class QuantumState {
  public:
    explicit QuantumState(int n_qubits);  // initializes to |0...0>

    int n_qubits() const { return n_qubits_; }
    const std::vector<std::complex<double>>& amplitudes() const { return amps_; }
    std::vector<std::complex<double>>& amplitudes() { return amps_; }

    void apply(const Gate& g);
    void apply(const Circuit& c);

    double norm_sq() const;

  private:
    int n_qubits_;
    std::vector<std::complex<double>> amps_;
};

/// One repetition of the second-order Pauli-Z feature map on 4 qubits:
/// H layer, RZ(2 x_q), and for every pair q<r: CX, RZ(2 (pi-x_q)(pi-x_r)), CX.
Circuit zz_feature_map(const std::vector<double>& x);

/// RY layer (theta 0..3), linear CX chain 0->1->2->3, RY layer (theta 4..7).
Circuit real_amplitudes_ansatz(const std::vector<double>& theta);

/// <Z_0> = sum |amp|^2 * (+1 if bit 0 clear else -1).
double expectation_z0(const QuantumState& state);

/// Feature map then ansatz on |0000>, returning <Z_0>. Exact statevector.
double run_classifier_circuit(const std::vector<double>& x, const std::vector<double>& theta);

/// Debug dump: JSON gate list (kind, qubits, angle) for external cross-checks.
std::string circuit_to_json(const Circuit& c);

}  // namespace qmlbench
