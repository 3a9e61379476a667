// Test-only reference implementations, independent of the library code paths
// they check.
#pragma once

#include <cmath>
#include <complex>
#include <functional>
#include <vector>

#include "qmlbench/features.hpp"
#include "qmlbench/image.hpp"
#include "qmlbench/qsim.hpp"

namespace oracle {

using cd = std::complex<double>;
using Matrix = std::vector<std::vector<cd>>;

inline Matrix identity(size_t n) {
    Matrix m(n, std::vector<cd>(n, 0.0));
    for (size_t i = 0; i < n; ++i) m[i][i] = 1.0;
    return m;
}

inline Matrix kron(const Matrix& a, const Matrix& b) {
    size_t ar = a.size(), ac = a[0].size(), br = b.size(), bc = b[0].size();
    Matrix out(ar * br, std::vector<cd>(ac * bc, 0.0));
    for (size_t i = 0; i < ar; ++i)
        for (size_t j = 0; j < ac; ++j)
            for (size_t k = 0; k < br; ++k)
                for (size_t l = 0; l < bc; ++l) out[i * br + k][j * bc + l] = a[i][j] * b[k][l];
    return out;
}

inline std::vector<cd> matvec(const Matrix& m, const std::vector<cd>& v) {
    std::vector<cd> out(m.size(), 0.0);
    for (size_t i = 0; i < m.size(); ++i)
        for (size_t j = 0; j < v.size(); ++j) out[i] += m[i][j] * v[j];
    return out;
}

// Full-matrix gate action. Qubit 0 is the least-significant bit, so the
// Kronecker chain runs from qubit n-1 down to qubit 0.
inline Matrix gate_matrix(const qmlbench::Gate& g, int n_qubits) {
    Matrix single;
    switch (g.kind) {
        case qmlbench::GateKind::H: {
            double s = 1.0 / std::sqrt(2.0);
            single = {{s, s}, {s, -s}};
            break;
        }
        case qmlbench::GateKind::RY: {
            double c = std::cos(g.angle / 2), s = std::sin(g.angle / 2);
            single = {{c, -s}, {s, c}};
            break;
        }
        case qmlbench::GateKind::RZ: {
            single = {{std::polar(1.0, -g.angle / 2), 0.0}, {0.0, std::polar(1.0, g.angle / 2)}};
            break;
        }
        case qmlbench::GateKind::CX: {
            // projector decomposition: |0><0|_c (x) I + |1><1|_c (x) X_t
            Matrix p0 = {{1, 0}, {0, 0}}, p1 = {{0, 0}, {0, 1}};
            Matrix x = {{0, 1}, {1, 0}}, i2 = identity(2);
            Matrix term0 = {{1}}, term1 = {{1}};
            for (int q = n_qubits - 1; q >= 0; --q) {
                term0 = kron(term0, q == g.control ? p0 : i2);
                term1 = kron(term1, q == g.control ? p1 : (q == g.target ? x : i2));
            }
            Matrix out = term0;
            for (size_t r = 0; r < out.size(); ++r)
                for (size_t c = 0; c < out.size(); ++c) out[r][c] += term1[r][c];
            return out;
        }
    }
    Matrix full = {{1}};
    for (int q = n_qubits - 1; q >= 0; --q) full = kron(full, q == g.target ? single : identity(2));
    return full;
}

inline std::vector<cd> simulate(const qmlbench::Circuit& c) {
    std::vector<cd> state(size_t{1} << c.n_qubits, 0.0);
    state[0] = 1.0;
    for (const auto& g : c.gates) state = matvec(gate_matrix(g, c.n_qubits), state);
    return state;
}

inline double expectation_z0(const std::vector<cd>& state) {
    double acc = 0;
    for (size_t i = 0; i < state.size(); ++i) acc += ((i & 1) ? -1.0 : 1.0) * std::norm(state[i]);
    return acc;
}

// Brute-force symmetric pair counting for the horizontal (0,+1) offset.
inline qmlbench::GlcmFeatures brute_glcm(const qmlbench::GrayImage& img) {
    double P[8][8] = {};
    double total = 0;
    auto level = [](double v) {
        int q = static_cast<int>(std::floor(v / 32.0));
        return q < 0 ? 0 : (q > 7 ? 7 : q);
    };
    for (int r = 0; r < img.height; ++r)
        for (int c = 0; c + 1 < img.width; ++c) {
            int a = level(img.at(r, c)), b = level(img.at(r, c + 1));
            P[a][b] += 1;
            P[b][a] += 1;
            total += 2;
        }
    for (auto& row : P)
        for (auto& x : row) x /= total;
    double contrast = 0, dis = 0, hom = 0, en = 0, mu = 0, var = 0, cov = 0;
    double marg[8] = {};
    for (int i = 0; i < 8; ++i)
        for (int j = 0; j < 8; ++j) {
            contrast += P[i][j] * (i - j) * (i - j);
            dis += P[i][j] * std::abs(i - j);
            hom += P[i][j] / (1 + std::abs(i - j));
            en += P[i][j] * P[i][j];
            marg[i] += P[i][j];
        }
    for (int i = 0; i < 8; ++i) mu += i * marg[i];
    for (int i = 0; i < 8; ++i) var += (i - mu) * (i - mu) * marg[i];
    for (int i = 0; i < 8; ++i)
        for (int j = 0; j < 8; ++j) cov += (i - mu) * (j - mu) * P[i][j];
    return {contrast, dis, hom, en, var < 1e-12 ? 1.0 : cov / var};
}

// Direct O(N^4) two-dimensional DFT band energies.
inline qmlbench::FftFeatures direct_dft_features(const qmlbench::GrayImage& img) {
    const int N = img.width, M = img.height;
    double total = 0, low = 0, high = 0, weighted = 0;
    for (int v = 0; v < M; ++v)
        for (int u = 0; u < N; ++u) {
            cd acc = 0;
            for (int y = 0; y < M; ++y)
                for (int x = 0; x < N; ++x) {
                    double ang = -2.0 * M_PI * (static_cast<double>(u) * x / N +
                                                static_cast<double>(v) * y / M);
                    acc += img.at(y, x) * cd(std::cos(ang), std::sin(ang));
                }
            double uc = u < N / 2 ? u : u - N;
            double vc = v < M / 2 ? v : v - M;
            double r = std::sqrt(uc * uc + vc * vc);
            double s = std::norm(acc);
            total += s;
            (r <= 8.0 ? low : high) += s;
            weighted += r * s;
        }
    if (total <= 0) return {1, 0, 0};
    return {low / total, high / total, weighted / total};
}

// Reference bilinear sample with pixel-center alignment and clamped borders.
inline double bilinear_at(const qmlbench::GrayImage& src, double fx, double fy) {
    auto clampi = [](int v, int hi) { return v < 0 ? 0 : (v > hi ? hi : v); };
    int x0 = static_cast<int>(std::floor(fx)), y0 = static_cast<int>(std::floor(fy));
    double wx = fx - x0, wy = fy - y0;
    int x0c = clampi(x0, src.width - 1), x1c = clampi(x0 + 1, src.width - 1);
    int y0c = clampi(y0, src.height - 1), y1c = clampi(y0 + 1, src.height - 1);
    double top = src.at(y0c, x0c) * (1 - wx) + src.at(y0c, x1c) * wx;
    double bot = src.at(y1c, x0c) * (1 - wx) + src.at(y1c, x1c) * wx;
    return top * (1 - wy) + bot * wy;
}

// Scalar root bracketing for fixed-point equations s = f(s).
inline double bisect(const std::function<double(double)>& g, double lo, double hi,
                     double tol = 1e-12) {
    double flo = g(lo);
    for (int i = 0; i < 200; ++i) {
        double mid = (lo + hi) / 2;
        double fm = g(mid);
        if ((fm <= 0) == (flo <= 0)) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
        if (hi - lo < tol) break;
    }
    return (lo + hi) / 2;
}

}  // namespace oracle
