#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <limits>

#include "qmlbench/cobyla.hpp"

using namespace qmlbench;

TEST_CASE("8-dim convex bowl converges to the known minimum") {
    auto f = [](const std::vector<double>& p) {
        double acc = 0;
        for (double v : p) acc += (v - 3.0) * (v - 3.0);
        return acc;
    };
    CobylaResult res = cobyla_minimize(f, std::vector<double>(8, 0.0));
    for (double v : res.x) CHECK(std::abs(v - 3.0) <= 1e-3);
    CHECK(res.evaluations <= 200 + 9);
}

TEST_CASE("ill-conditioned 2-d quadratic reaches (1, -2)") {
    auto f = [](const std::vector<double>& p) {
        return (p[0] - 1) * (p[0] - 1) + 10.0 * (p[1] + 2) * (p[1] + 2);
    };
    CobylaResult res = cobyla_minimize(f, {0.0, 0.0});
    CHECK(std::abs(res.x[0] - 1.0) <= 1e-3);
    CHECK(std::abs(res.x[1] + 2.0) <= 1e-3);
}

TEST_CASE("best-seen value is non-increasing across evaluations") {
    std::vector<double> best_trace;
    double best = std::numeric_limits<double>::infinity();
    auto f = [&](const std::vector<double>& p) {
        double v = std::sin(3 * p[0]) + p[0] * p[0] + (p[1] - 1) * (p[1] - 1);
        best = std::min(best, v);
        best_trace.push_back(best);
        return v;
    };
    CobylaResult res = cobyla_minimize(f, {2.0, -1.0});
    for (size_t i = 1; i < best_trace.size(); ++i) CHECK(best_trace[i] <= best_trace[i - 1]);
    CHECK(res.f == doctest::Approx(best));
}

TEST_CASE("deterministic given the same start point") {
    auto f = [](const std::vector<double>& p) {
        return std::cos(p[0]) + (p[1] - 0.5) * (p[1] - 0.5) + 0.1 * p[0] * p[0];
    };
    CobylaResult a = cobyla_minimize(f, {1.0, 1.0});
    CobylaResult b = cobyla_minimize(f, {1.0, 1.0});
    CHECK(a.x == b.x);
    CHECK(a.f == b.f);
}

TEST_CASE("non-finite objective aborts with a diagnostic") {
    auto f = [](const std::vector<double>& p) {
        return p[0] > 0.5 ? std::numeric_limits<double>::quiet_NaN() : p[0] * p[0];
    };
    CHECK_THROWS_AS(cobyla_minimize(f, {0.4, 0.0}), std::runtime_error);
}

TEST_CASE("evaluation budget is respected") {
    int calls = 0;
    auto f = [&](const std::vector<double>& p) {
        ++calls;
        return p[0] * p[0] + p[1] * p[1] + p[2] * p[2];
    };
    CobylaOptions opts;
    opts.max_evals = 50;
    cobyla_minimize(f, {5.0, 5.0, 5.0}, opts);
    CHECK(calls <= 50 + 4);  // budget plus simplex initialization
}
