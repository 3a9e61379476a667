#pragma once

#include <functional>
#include <vector>

namespace qmlbench {

struct CobylaOptions {
    double rho_begin = 1.0;
    double rho_end = 1e-4;
    int max_evals = 200;  // objective evaluations after simplex initialization
};

struct CobylaResult {
    std::vector<double> x;
    double f = 0.0;
    int evaluations = 0;  // total objective calls, including initialization
};

/// Derivative-free linear-approximation trust-region minimizer (COBYLA-style,
/// unconstrained). Maintains an n+1 point simplex, fits a linear model over it,
/// and steps from the best vertex within a trust radius that shrinks from
/// rho_begin to rho_end. Deterministic given x0; returns the best point seen.
/// Throws std::runtime_error if the objective returns a non-finite value.
CobylaResult cobyla_minimize(const std::function<double(const std::vector<double>&)>& f,
                             const std::vector<double>& x0, const CobylaOptions& opts = {});

}  // namespace qmlbench
