#include "qmlbench/cobyla.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include <Eigen/Dense>

namespace qmlbench {

namespace {

struct Vertex {
    Eigen::VectorXd x;
    double f;
};

}  // namespace

CobylaResult cobyla_minimize(const std::function<double(const std::vector<double>&)>& f,
                             const std::vector<double>& x0, const CobylaOptions& opts) {
    const int n = static_cast<int>(x0.size());
    if (n == 0) throw std::invalid_argument("cobyla_minimize: empty start point");

    CobylaResult result;
    result.x = x0;
    result.f = std::numeric_limits<double>::infinity();

    auto evaluate = [&](const Eigen::VectorXd& x) {
        std::vector<double> xv(x.data(), x.data() + n);
        double v = f(xv);
        ++result.evaluations;
        if (!std::isfinite(v))
            throw std::runtime_error("cobyla_minimize: objective returned a non-finite value");
        if (v < result.f) {
            result.f = v;
            result.x = xv;
        }
        return v;
    };

    double rho = opts.rho_begin;
    Eigen::VectorXd start = Eigen::Map<const Eigen::VectorXd>(x0.data(), n);

    // initial simplex: start point plus rho-sized coordinate offsets
    std::vector<Vertex> simplex;
    simplex.reserve(n + 1);
    simplex.push_back({start, evaluate(start)});
    for (int i = 0; i < n; ++i) {
        Eigen::VectorXd p = start;
        p(i) += rho;
        simplex.push_back({p, evaluate(p)});
    }
    const int init_evals = result.evaluations;
    auto budget_left = [&] { return result.evaluations - init_evals < opts.max_evals; };

    // center taken by value: callers pass simplex entries and the first thing
    // this does is clear the simplex
    auto rebuild = [&](Eigen::VectorXd center, double cf) {
        simplex.clear();
        simplex.push_back({center, cf});
        for (int i = 0; i < n && budget_left(); ++i) {
            Eigen::VectorXd p = center;
            p(i) += rho;
            simplex.push_back({p, evaluate(p)});
        }
    };

    int fails_at_level = 0;
    while (budget_left()) {
        int best = 0, worst = 0;
        for (int i = 1; i <= n && i < static_cast<int>(simplex.size()); ++i) {
            if (simplex[i].f < simplex[best].f) best = i;
            if (simplex[i].f > simplex[worst].f) worst = i;
        }
        if (static_cast<int>(simplex.size()) < n + 1) break;  // budget ran out mid-rebuild

        // linear interpolant over the simplex edges rooted at the best vertex
        Eigen::MatrixXd edges(n, n);
        Eigen::VectorXd df(n);
        int row = 0;
        for (int i = 0; i <= n; ++i) {
            if (i == best) continue;
            edges.row(row) = (simplex[i].x - simplex[best].x).transpose();
            df(row) = simplex[i].f - simplex[best].f;
            ++row;
        }
        Eigen::FullPivLU<Eigen::MatrixXd> lu(edges);
        if (!lu.isInvertible()) {
            rebuild(simplex[best].x, simplex[best].f);
            continue;
        }
        Eigen::VectorXd grad = lu.solve(df);
        double gnorm = grad.norm();

        bool improved = false;
        if (gnorm > 1e-14 && budget_left()) {
            Eigen::VectorXd dir = -grad / gnorm;
            double step = rho;
            Eigen::VectorXd cand = simplex[best].x + step * dir;
            double fc = evaluate(cand);
            if (fc < simplex[best].f) {
                // doubling line search along the model descent direction
                while (budget_left()) {
                    Eigen::VectorXd next = simplex[best].x + 2.0 * step * dir;
                    double fn = evaluate(next);
                    if (fn >= fc) break;
                    step *= 2.0;
                    cand = next;
                    fc = fn;
                }
                simplex[worst] = {cand, fc};
                improved = true;
            } else if (fc < simplex[worst].f) {
                // not a descent step, but it still tightens the simplex
                simplex[worst] = {cand, fc};
            }
        }
        if (improved) {
            fails_at_level = 0;
        } else if (++fails_at_level >= 2) {
            // a failed candidate can still have replaced the worst vertex and
            // sharpened the model, so give each radius a second attempt
            if (rho <= opts.rho_end) break;
            rho = std::max(rho * 0.5, opts.rho_end);
            // refresh the geometry around the best vertex at the new scale
            int best2 = 0;
            for (int i = 1; i <= n; ++i)
                if (simplex[i].f < simplex[best2].f) best2 = i;
            rebuild(simplex[best2].x, simplex[best2].f);
            fails_at_level = 0;
        }
    }
    return result;
}

}  // namespace qmlbench
