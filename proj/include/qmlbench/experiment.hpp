#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "qmlbench/dataset.hpp"

namespace qmlbench {

enum class Method { EP, VQC, Dense };

const char* method_name(Method m);
Method method_from_string(const std::string& s);

struct ExperimentConfig {
    Method method = Method::VQC;
    int samples_per_class = 50;
    std::uint64_t seed = 0;
    std::string data_dir;
    std::string out_dir = ".";
    // method-specific knobs (defaults match the module configs)
    int vqc_max_evals = 200;
};

struct ExperimentReport {
    ExperimentConfig config;
    int train_size = 0;
    int test_size = 0;
    double accuracy = 0.0;
    // confusion[true][pred], class order {Healthy, AML}
    std::array<std::array<int, 2>, 2> confusion{};
    std::array<double, 2> precision{};
    std::array<double, 2> recall{};
    double train_seconds = 0.0;
    double test_seconds = 0.0;
    double pca_captured_fraction = -1.0;  // VQC only
    std::string version;

    std::string to_json() const;
};

/// Full pipeline: features (CSV cache) -> method-specific preprocessing ->
/// timed training -> timed test evaluation -> JSON report + summary CSV row.
ExperimentReport run_experiment(const ExperimentConfig& config);

struct SweepRow {
    Method method;
    int samples_per_class;
    double mean_accuracy;
    double std_accuracy;
    double mean_train_seconds;
    double mean_test_seconds;
    int n_seeds;
};

/// Cartesian product of (methods x sizes x seeds); writes one report per run
/// plus an aggregate CSV (accuracy vs samples-per-class) under out_dir.
std::vector<SweepRow> run_sweep(const std::vector<Method>& methods, const std::vector<int>& sizes,
                                const std::vector<std::uint64_t>& seeds,
                                const std::string& data_dir, const std::string& out_dir);

void write_sweep_csv(const std::string& path, const std::vector<SweepRow>& rows);

/// Build revision baked in at configure time.
const char* version_string();

}  // namespace qmlbench
