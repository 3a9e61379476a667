#include <cstdio>
#include <exception>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "qmlbench/dataset.hpp"
#include "qmlbench/experiment.hpp"

using namespace qmlbench;

int main(int argc, char** argv) {
    CLI::App app{"qmlbench: EP / VQC / dense-baseline blood-cell classification benchmark"};
    app.require_subcommand(1);

    // extract
    std::string x_data, x_out = "features.csv";
    auto* extract = app.add_subcommand("extract", "Extract 20-dim features for a dataset tree");
    extract->add_option("--data", x_data, "dataset root with Healthy/ and AML/ subdirs")
        ->required();
    extract->add_option("--out", x_out, "output CSV path");

    // synth
    int s_n = 50;
    std::uint64_t s_seed = 0;
    std::string s_out;
    auto* synth = app.add_subcommand("synth", "Generate a seeded synthetic dataset");
    synth->add_option("--n", s_n, "images per class")->required();
    synth->add_option("--seed", s_seed, "generator seed");
    synth->add_option("--out", s_out, "output directory")->required();

    // run
    ExperimentConfig cfg;
    std::string r_method = "vqc";
    auto* run = app.add_subcommand("run", "Run one experiment");
    run->add_option("--method", r_method, "ep|vqc|dense")->required();
    run->add_option("--samples-per-class", cfg.samples_per_class, "50|100|200|250")->required();
    run->add_option("--seed", cfg.seed, "random seed");
    run->add_option("--data", cfg.data_dir, "dataset root")->required();
    run->add_option("--out", cfg.out_dir, "output directory");

    // sweep
    std::vector<std::string> w_methods = {"ep", "vqc", "dense"};
    std::vector<int> w_sizes = {50, 100, 200, 250};
    std::vector<std::uint64_t> w_seeds = {0, 1, 2};
    std::string w_data, w_out = ".";
    auto* sweep = app.add_subcommand("sweep", "Run the full method x size x seed grid");
    sweep->add_option("--methods", w_methods, "subset of {ep,vqc,dense}");
    sweep->add_option("--sizes", w_sizes, "samples-per-class values");
    sweep->add_option("--seeds", w_seeds, "seed list");
    sweep->add_option("--data", w_data, "dataset root")->required();
    sweep->add_option("--out", w_out, "output directory");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*extract) {
            DatasetManifest m = load_manifest(x_data);
            auto features = extract_all(m.entries);
            std::vector<Label> labels;
            for (const auto& e : m.entries) labels.push_back(e.label);
            write_feature_csv(x_out, labels, features);
            std::printf("wrote %zu rows to %s\n", labels.size(), x_out.c_str());
        } else if (*synth) {
            DatasetManifest m = synth_dataset(s_n, s_seed, s_out);
            std::printf("wrote %zu images under %s\n", m.entries.size(), s_out.c_str());
        } else if (*run) {
            cfg.method = method_from_string(r_method);
            ExperimentReport report = run_experiment(cfg);
            std::printf("%s n=%d seed=%llu: accuracy %.4f (train %.2fs, test %.3fs)\n",
                        method_name(cfg.method), cfg.samples_per_class,
                        static_cast<unsigned long long>(cfg.seed), report.accuracy,
                        report.train_seconds, report.test_seconds);
        } else if (*sweep) {
            std::vector<Method> methods;
            for (const auto& s : w_methods) methods.push_back(method_from_string(s));
            auto rows = run_sweep(methods, w_sizes, w_seeds, w_data, w_out);
            for (const auto& r : rows)
                std::printf("%-6s n=%-4d accuracy %.4f +- %.4f (%d seeds)\n",
                            method_name(r.method), r.samples_per_class, r.mean_accuracy,
                            r.std_accuracy, r.n_seeds);
        }
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
    return 0;
}
