#include "qmlbench/experiment.hpp"

#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <stdexcept>

#include "json.hpp"

#include "qmlbench/dense.hpp"
#include "qmlbench/ep.hpp"
#include "qmlbench/preprocess.hpp"
#include "qmlbench/rng.hpp"
#include "qmlbench/vqc.hpp"

namespace fs = std::filesystem;

namespace qmlbench {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

// Reference accuracies at 250 samples/class, echoed into reports for context.
nlohmann::json reference_accuracies() {
    return {{"CNN (Classical)", 0.984},
            {"Dense NN (Classical)", 0.920},
            {"EP (Quantum-inspired)", 0.864},
            {"VQC (Quantum, sim)", 0.830}};
}

struct Split {
    std::vector<Label> labels;
    std::vector<FeatureVector> features;
};

// Stratified 80/20 carve-out of a validation set from the training portion,
// used for early stopping so the test set stays untouched.
void carve_validation(const Split& train, std::uint64_t seed, Split& fit, Split& valid) {
    for (Label cls : {Label::Healthy, Label::AML}) {
        std::vector<size_t> idx;
        for (size_t i = 0; i < train.labels.size(); ++i)
            if (train.labels[i] == cls) idx.push_back(i);
        std::mt19937_64 rng(mix_seed(seed, 100 + static_cast<int>(cls)));
        for (size_t i = idx.size(); i > 1; --i)
            std::swap(idx[i - 1], idx[uniform_index(rng, i)]);
        size_t n_fit = static_cast<size_t>(std::lround(0.8 * idx.size()));
        n_fit = std::max<size_t>(1, std::min(n_fit, idx.size() - 1));
        for (size_t i = 0; i < idx.size(); ++i) {
            Split& dst = i < n_fit ? fit : valid;
            dst.labels.push_back(train.labels[idx[i]]);
            dst.features.push_back(train.features[idx[i]]);
        }
    }
}

std::vector<EPSample> to_samples(const Split& s, const Standardizer& std_model) {
    std::vector<EPSample> out;
    for (size_t i = 0; i < s.labels.size(); ++i) {
        auto z = std_model.transform(s.features[i]);
        Eigen::VectorXd x = Eigen::Map<Eigen::VectorXd>(z.data(), z.size());
        out.push_back({x, s.labels[i]});
    }
    return out;
}

std::string config_tag(const ExperimentConfig& c) {
    return std::string(method_name(c.method)) + "_n" + std::to_string(c.samples_per_class) + "_s" +
           std::to_string(c.seed);
}

void finish_metrics(ExperimentReport& r) {
    int total = 0, diag = 0;
    for (int t = 0; t < 2; ++t)
        for (int p = 0; p < 2; ++p) total += r.confusion[t][p];
    diag = r.confusion[0][0] + r.confusion[1][1];
    r.test_size = total;
    r.accuracy = total > 0 ? static_cast<double>(diag) / total : 0.0;
    for (int c = 0; c < 2; ++c) {
        int pred_c = r.confusion[0][c] + r.confusion[1][c];
        int true_c = r.confusion[c][0] + r.confusion[c][1];
        r.precision[c] = pred_c > 0 ? static_cast<double>(r.confusion[c][c]) / pred_c : 0.0;
        r.recall[c] = true_c > 0 ? static_cast<double>(r.confusion[c][c]) / true_c : 0.0;
    }
}

}  // namespace

const char* method_name(Method m) {
    switch (m) {
        case Method::EP: return "ep";
        case Method::VQC: return "vqc";
        case Method::Dense: return "dense";
    }
    return "?";
}

Method method_from_string(const std::string& s) {
    if (s == "ep") return Method::EP;
    if (s == "vqc") return Method::VQC;
    if (s == "dense") return Method::Dense;
    throw std::invalid_argument("unknown method: " + s + " (expected ep|vqc|dense)");
}

std::string ExperimentReport::to_json() const {
    nlohmann::json j;
    j["config"] = {{"method", method_name(config.method)},
                   {"samples_per_class", config.samples_per_class},
                   {"seed", config.seed},
                   {"data_dir", config.data_dir},
                   {"out_dir", config.out_dir},
                   {"vqc_max_evals", config.vqc_max_evals}};
    j["train_size"] = train_size;
    j["test_size"] = test_size;
    j["accuracy"] = accuracy;
    j["confusion_matrix"] = {{"rows", "true {Healthy, AML}"},
                             {"cols", "predicted {Healthy, AML}"},
                             {"data", confusion}};
    j["precision"] = {{"Healthy", precision[0]}, {"AML", precision[1]}};
    j["recall"] = {{"Healthy", recall[0]}, {"AML", recall[1]}};
    j["train_seconds"] = train_seconds;
    j["test_seconds"] = test_seconds;
    if (pca_captured_fraction >= 0) j["pca_captured_fraction"] = pca_captured_fraction;
    j["reference_accuracy_250_per_class"] = reference_accuracies();
    j["version"] = version;
    return j.dump(2);
}

ExperimentReport run_experiment(const ExperimentConfig& config) {
    ExperimentReport report;
    report.config = config;
    report.version = version_string();

    fs::create_directories(config.out_dir);

    DatasetManifest manifest;
    try {
        manifest = load_manifest(config.data_dir);
    } catch (const std::exception& e) {
        throw std::runtime_error(std::string("[stage: dataset] ") + e.what());
    }

    // feature cache keyed by data directory contents (entry count)
    std::vector<Label> all_labels;
    std::vector<FeatureVector> all_features;
    fs::path cache = fs::path(config.out_dir) / "features_cache.csv";
    bool cache_ok = false;
    if (fs::exists(cache)) {
        try {
            auto [labels, feats] = read_feature_csv(cache.string());
            if (labels.size() == manifest.entries.size()) {
                bool labels_match = true;
                for (size_t i = 0; i < labels.size(); ++i)
                    labels_match &= labels[i] == manifest.entries[i].label;
                if (labels_match) {
                    all_labels = std::move(labels);
                    all_features = std::move(feats);
                    cache_ok = true;
                }
            }
        } catch (const std::exception&) {
            cache_ok = false;
        }
    }
    if (!cache_ok) {
        try {
            all_features = extract_all(manifest.entries);
            for (const auto& e : manifest.entries) all_labels.push_back(e.label);
            write_feature_csv(cache.string(), all_labels, all_features);
        } catch (const std::exception& e) {
            throw std::runtime_error(std::string("[stage: features] ") + e.what());
        }
    }

    auto [train_entries, test_entries] =
        build_subset(manifest, config.samples_per_class, config.seed);
    report.train_size = static_cast<int>(train_entries.size());

    // look up cached features by path
    auto feature_of = [&](const ManifestEntry& e) -> const FeatureVector& {
        for (size_t i = 0; i < manifest.entries.size(); ++i)
            if (manifest.entries[i].path == e.path) return all_features[i];
        throw std::runtime_error("[stage: features] entry missing from cache: " + e.path);
    };
    Split train, test;
    for (const auto& e : train_entries) {
        train.labels.push_back(e.label);
        train.features.push_back(feature_of(e));
    }
    for (const auto& e : test_entries) {
        test.labels.push_back(e.label);
        test.features.push_back(feature_of(e));
    }

    std::vector<Label> predictions(test.labels.size());
    try {
        if (config.method == Method::VQC) {
            Standardizer std_model = fit_standardizer(train.features);
            std::vector<std::array<double, 20>> standardized;
            for (const auto& f : train.features) standardized.push_back(std_model.transform(f));
            PCAModel pca = fit_pca(standardized);
            report.pca_captured_fraction = pca.captured_fraction;
            std::vector<std::array<double, kPcaComponents>> projected;
            for (const auto& z : standardized) projected.push_back(pca.project(z));
            AngleScaler scaler = fit_angle_scaler(projected);

            std::ofstream side(fs::path(config.out_dir) /
                               ("preprocess_" + config_tag(config) + ".json"));
            side << preprocess_to_json(std_model, pca, scaler);

            std::vector<LabeledAngles> train_angles;
            for (size_t i = 0; i < train.labels.size(); ++i)
                train_angles.push_back(
                    {project_and_rescale(train.features[i], std_model, pca, scaler),
                     train.labels[i]});

            auto t0 = Clock::now();
            VQCModel model = train_vqc(train_angles, config.seed, config.vqc_max_evals);
            report.train_seconds = seconds_since(t0);

            std::ofstream mf(fs::path(config.out_dir) / ("model_" + config_tag(config) + ".json"));
            mf << vqc_to_json(model);

            t0 = Clock::now();
            for (size_t i = 0; i < test.labels.size(); ++i)
                predictions[i] = predict_vqc(
                    model, project_and_rescale(test.features[i], std_model, pca, scaler));
            report.test_seconds = seconds_since(t0);
        } else {
            Standardizer std_model = fit_standardizer(train.features);
            Split fit, valid;
            carve_validation(train, config.seed, fit, valid);
            auto fit_samples = to_samples(fit, std_model);
            auto valid_samples = to_samples(valid, std_model);
            auto test_samples = to_samples(test, std_model);

            if (config.method == Method::EP) {
                EPTrainConfig ep_cfg;
                ep_cfg.seed = config.seed;
                auto t0 = Clock::now();
                EPTrainResult res = train_ep(fit_samples, valid_samples, ep_cfg);
                report.train_seconds = seconds_since(t0);
                std::ofstream mf(fs::path(config.out_dir) /
                                 ("model_" + config_tag(config) + ".json"));
                mf << ep_to_json(res.net);
                t0 = Clock::now();
                for (size_t i = 0; i < test_samples.size(); ++i)
                    predictions[i] = predict_ep(res.net, test_samples[i].x);
                report.test_seconds = seconds_since(t0);
            } else {
                DenseTrainConfig d_cfg;
                d_cfg.seed = config.seed;
                auto t0 = Clock::now();
                DenseTrainResult res = train_dense(fit_samples, valid_samples, d_cfg);
                report.train_seconds = seconds_since(t0);
                std::ofstream mf(fs::path(config.out_dir) /
                                 ("model_" + config_tag(config) + ".json"));
                mf << dense_to_json(res.model);
                t0 = Clock::now();
                for (size_t i = 0; i < test_samples.size(); ++i)
                    predictions[i] = predict_dense(res.model, test_samples[i].x);
                report.test_seconds = seconds_since(t0);
            }
        }
    } catch (const std::exception& e) {
        throw std::runtime_error(std::string("[stage: train/eval] ") + e.what());
    }

    for (size_t i = 0; i < test.labels.size(); ++i)
        ++report.confusion[static_cast<int>(test.labels[i])][static_cast<int>(predictions[i])];
    finish_metrics(report);

    std::ofstream rf(fs::path(config.out_dir) / ("report_" + config_tag(config) + ".json"));
    rf << report.to_json();

    // append a one-line summary row
    fs::path summary = fs::path(config.out_dir) / "runs.csv";
    bool fresh = !fs::exists(summary);
    std::ofstream sf(summary, std::ios::app);
    if (fresh)
        sf << "method,samples_per_class,seed,accuracy,train_seconds,test_seconds,version\n";
    sf << method_name(config.method) << ',' << config.samples_per_class << ',' << config.seed
       << ',' << report.accuracy << ',' << report.train_seconds << ',' << report.test_seconds
       << ',' << report.version << "\n";

    return report;
}

std::vector<SweepRow> run_sweep(const std::vector<Method>& methods, const std::vector<int>& sizes,
                                const std::vector<std::uint64_t>& seeds,
                                const std::string& data_dir, const std::string& out_dir) {
    std::vector<SweepRow> rows;
    for (Method m : methods)
        for (int n : sizes) {
            std::vector<double> accs, train_ts, test_ts;
            for (std::uint64_t s : seeds) {
                ExperimentConfig cfg;
                cfg.method = m;
                cfg.samples_per_class = n;
                cfg.seed = s;
                cfg.data_dir = data_dir;
                cfg.out_dir = out_dir;
                ExperimentReport r = run_experiment(cfg);
                accs.push_back(r.accuracy);
                train_ts.push_back(r.train_seconds);
                test_ts.push_back(r.test_seconds);
            }
            double mean = 0, var = 0, mtr = 0, mte = 0;
            for (double a : accs) mean += a;
            mean /= accs.size();
            for (double a : accs) var += (a - mean) * (a - mean);
            var /= accs.size();
            for (double t : train_ts) mtr += t;
            for (double t : test_ts) mte += t;
            rows.push_back({m, n, mean, std::sqrt(var), mtr / accs.size(), mte / accs.size(),
                            static_cast<int>(accs.size())});
        }
    write_sweep_csv((fs::path(out_dir) / "sweep_summary.csv").string(), rows);
    return rows;
}

void write_sweep_csv(const std::string& path, const std::vector<SweepRow>& rows) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("I/O error: cannot write " + path);
    out << "method,samples_per_class,mean_accuracy,std_accuracy,mean_train_seconds,"
           "mean_test_seconds,n_seeds\n";
    for (const auto& r : rows)
        out << method_name(r.method) << ',' << r.samples_per_class << ',' << r.mean_accuracy << ','
            << r.std_accuracy << ',' << r.mean_train_seconds << ',' << r.mean_test_seconds << ','
            << r.n_seeds << "\n";
}

const char* version_string() {
#ifdef QMLBENCH_VERSION
    return QMLBENCH_VERSION;
#else
    return "unknown";
#endif
}

}  // namespace qmlbench
