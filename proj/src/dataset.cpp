#include "qmlbench/dataset.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "qmlbench/image.hpp"
#include "qmlbench/parallel.hpp"
#include "qmlbench/rng.hpp"

namespace fs = std::filesystem;

namespace qmlbench {

namespace {

bool is_image_file(const fs::path& p) {
    std::string ext = p.extension().string();
    std::transform(ext.begin(), ext.end(), ext.begin(), ::tolower);
    return ext == ".png" || ext == ".tiff" || ext == ".tif" || ext == ".jpg" ||
           ext == ".jpeg" || ext == ".bmp";
}

std::vector<ManifestEntry> scan_class_dir(const fs::path& dir, Label label) {
    std::vector<ManifestEntry> out;
    if (!fs::is_directory(dir)) return out;
    for (const auto& de : fs::directory_iterator(dir))
        if (de.is_regular_file() && is_image_file(de.path()))
            out.push_back({de.path().string(), label});
    std::sort(out.begin(), out.end(),
              [](const ManifestEntry& a, const ManifestEntry& b) { return a.path < b.path; });
    return out;
}

// Fisher-Yates with the deterministic index draw
template <typename T>
void seeded_shuffle(std::vector<T>& v, std::mt19937_64& rng) {
    for (size_t i = v.size(); i > 1; --i) std::swap(v[i - 1], v[uniform_index(rng, i)]);
}

}  // namespace

DatasetManifest load_manifest(const std::string& root) {
    DatasetManifest m;
    m.source = root;
    auto healthy = scan_class_dir(fs::path(root) / "Healthy", Label::Healthy);
    auto aml = scan_class_dir(fs::path(root) / "AML", Label::AML);
    if (healthy.empty() || aml.empty())
        throw std::invalid_argument(
            "load_manifest: expected non-empty <root>/Healthy and <root>/AML directories under " +
            root);
    m.entries = std::move(healthy);
    m.entries.insert(m.entries.end(), aml.begin(), aml.end());
    return m;
}

std::pair<std::vector<ManifestEntry>, std::vector<ManifestEntry>> build_subset(
    const DatasetManifest& manifest, int samples_per_class, std::uint64_t seed) {
    std::vector<ManifestEntry> train, test;
    for (Label cls : {Label::Healthy, Label::AML}) {
        std::vector<ManifestEntry> pool;
        for (const auto& e : manifest.entries)
            if (e.label == cls) pool.push_back(e);
        if (static_cast<int>(pool.size()) < samples_per_class)
            throw std::invalid_argument(std::string("build_subset: class ") + label_name(cls) +
                                        " has only " + std::to_string(pool.size()) +
                                        " samples, need " + std::to_string(samples_per_class));
        std::mt19937_64 rng(mix_seed(seed, static_cast<int>(cls)));
        seeded_shuffle(pool, rng);
        pool.resize(samples_per_class);
        int n_train = static_cast<int>(std::lround(0.8 * samples_per_class));
        train.insert(train.end(), pool.begin(), pool.begin() + n_train);
        test.insert(test.end(), pool.begin() + n_train, pool.end());
    }
    return {train, test};
}

namespace {

GrayImage synth_image(Label cls, std::mt19937_64& rng) {
    GrayImage img(kCanonicalSize, kCanonicalSize);
    const bool healthy = cls == Label::Healthy;

    // A small share of each class is pushed to an exaggerated presentation
    // along exactly one of four independent attribute axes: class-aligned
    // size+gain (small/dim Healthy, large/bright AML), background grain,
    // interior grain, and cell shape. Each axis gets extremes on both ends,
    // roughly equidistant from the pooled class midpoint, so the bulk of both
    // classes stays in the interior of the min-max-rescaled range instead of
    // flush against its ends, and so no single image property is decisive.
    const bool tail = uniform01(rng) < 0.26;
    const int axis = tail ? int(uniform(rng, 0.0, 4.0)) : -1;  // class/bg/grain/shape
    const bool hi = uniform01(rng) < 0.5;  // direction along the chosen axis
    const bool ex_class = axis == 0, ex_bg = axis == 1, ex_grain = axis == 2, ex_shape = axis == 3;

    const double ex_amt = uniform(rng, 0.92, 1.0);  // single draw: class tails form a ray
    // bg axis: a smooth background whose floor is shifted bright or dark
    const double base = ex_bg ? (hi ? uniform(rng, 45.0, 55.0) : uniform(rng, 9.0, 11.0))
                              : uniform(rng, 24.0, 26.0);
    const double slope = uniform(rng, -0.02, 0.02);
    const double bg_noise = ex_bg ? uniform(rng, 3.5, 5.0)
                                  : (healthy ? uniform(rng, 8.5, 9.5) : uniform(rng, 11.5, 12.5));
    for (int r = 0; r < img.height; ++r)
        for (int c = 0; c < img.width; ++c)
            img.at(r, c) = base + slope * c + bg_noise * uniform(rng, -1.0, 1.0);

    const double cx = 32.0 + uniform(rng, -2.0, 2.0);
    const double cy = 32.0 + uniform(rng, -2.0, 2.0);

    // class parameter ranges deliberately overlap: any single image property is
    // only a weak label cue, which keeps the classification task nontrivial.
    const double gain =
        ex_class ? (healthy ? 1.0 - 0.26 * ex_amt : 1.0 + 0.26 * ex_amt) : 1.0;
    const double phi = uniform(rng, 0.0, M_PI);
    const double cphi = std::cos(phi), sphi = std::sin(phi);
    if (healthy) {
        // smaller, elongated, smoother cell with low-frequency radial shading
        const double mean_r = ex_class ? 9.0 - 3.4 * ex_amt : uniform(rng, 8.5, 9.5);
        const double elong = (ex_shape && !hi) ? uniform(rng, 0.45, 0.52) : uniform(rng, 0.76, 0.84);
        const double a = mean_r / std::sqrt(elong);  // axis split preserves the area
        const double b = mean_r * std::sqrt(elong);
        const double wl = (ex_shape && hi) ? uniform(rng, 0.30, 0.36) : 0.0;  // boundary lobes
        const double pl = uniform(rng, 0.0, 2 * M_PI);
        const double peak = gain * uniform(rng, 156.0, 162.0);
        const double noise =
            gain * (ex_grain ? (hi ? uniform(rng, 34.0, 38.0) : uniform(rng, 5.0, 7.0))
                             : uniform(rng, 17.0, 20.0));
        for (int r = 0; r < img.height; ++r)
            for (int c = 0; c < img.width; ++c) {
                double grain = uniform(rng, -1.0, 1.0);  // drawn row-major, always
                double dx = c - cx, dy = r - cy;
                double u = (dx * cphi + dy * sphi) / a;
                double v = (-dx * sphi + dy * cphi) / b;
                double mod = 1.0 + wl * std::sin(3.0 * std::atan2(v, u) + pl);
                double d2 = (u * u + v * v) / (mod * mod);
                if (d2 < 1.0) img.at(r, c) = peak * (1.0 - 0.4 * d2) + noise * grain;
            }
    } else {
        // larger, rounder, lobed, speckled blast
        const double R = ex_class ? 9.65 + 3.75 * ex_amt : uniform(rng, 9.4, 9.9);
        const double elong = (ex_shape && !hi) ? uniform(rng, 0.48, 0.55) : 1.0;
        const double w3base = (ex_shape && hi) ? uniform(rng, 0.38, 0.44) : uniform(rng, 0.14, 0.18);
        const double w3 = w3base, p3 = uniform(rng, 0.0, 2 * M_PI);
        const double w5 = uniform(rng, 0.04, 0.08), p5 = uniform(rng, 0.0, 2 * M_PI);
        const double mean_in = gain * uniform(rng, 144.0, 150.0);
        const double speckle =
            gain * (ex_grain ? (hi ? uniform(rng, 44.0, 48.0) : uniform(rng, 7.0, 9.0))
                             : uniform(rng, 22.5, 26.5));
        for (int r = 0; r < img.height; ++r)
            for (int c = 0; c < img.width; ++c) {
                double grain = uniform(rng, -1.0, 1.0);
                double dx = c - cx, dy = r - cy;
                double u = (dx * cphi + dy * sphi) / std::sqrt(elong);
                double v = (-dx * sphi + dy * cphi) * std::sqrt(elong);
                double theta = std::atan2(v, u);
                double radius =
                    R * (1.0 + w3 * std::sin(3 * theta + p3) + w5 * std::sin(5 * theta + p5));
                if (std::hypot(u, v) < radius) img.at(r, c) = mean_in + speckle * grain;
            }
    }
    for (double& v : img.pixels) v = std::clamp(v, 0.0, 255.0);
    return img;
}

}  // namespace

DatasetManifest synth_dataset(int n_per_class, std::uint64_t seed, const std::string& out_dir) {
    if (n_per_class < 10) throw std::invalid_argument("synth_dataset: n_per_class must be >= 10");
    fs::path root(out_dir);
    std::error_code ec;
    fs::create_directories(root / "Healthy", ec);
    fs::create_directories(root / "AML", ec);
    if (!fs::is_directory(root / "Healthy") || !fs::is_directory(root / "AML"))
        throw std::runtime_error("I/O error: cannot create output directory " + out_dir);

    DatasetManifest m;
    m.source = "synthetic";
    for (Label cls : {Label::Healthy, Label::AML}) {
        for (int i = 0; i < n_per_class; ++i) {
            std::mt19937_64 rng(mix_seed(seed, static_cast<std::uint64_t>(cls) * 1000000 + i));
            GrayImage img = synth_image(cls, rng);
            char name[64];
            std::snprintf(name, sizeof(name), "%s_%04d.png", label_name(cls), i);
            fs::path p = root / label_name(cls) / name;
            write_png(p.string(), img);
            m.entries.push_back({p.string(), cls});
        }
    }

    // separability gate: stump fitted on even-indexed images, scored on odd
    auto features = extract_all(m.entries);
    std::vector<Label> fit_y, eval_y;
    std::vector<FeatureVector> fit_x, eval_x;
    for (size_t i = 0; i < m.entries.size(); ++i) {
        if (i % 2 == 0) {
            fit_y.push_back(m.entries[i].label);
            fit_x.push_back(features[i]);
        } else {
            eval_y.push_back(m.entries[i].label);
            eval_x.push_back(features[i]);
        }
    }
    double acc = stump_holdout_accuracy(fit_y, fit_x, eval_y, eval_x);
    if (acc < 0.85)
        throw std::runtime_error("synth_dataset: stump separability check failed (accuracy " +
                                 std::to_string(acc) + " < 0.85)");
    return m;
}

void write_feature_csv(const std::string& path, const std::vector<Label>& labels,
                       const std::vector<FeatureVector>& features) {
    if (labels.size() != features.size())
        throw std::invalid_argument("write_feature_csv: label/feature count mismatch");
    std::ofstream out(path);
    if (!out) throw std::runtime_error("I/O error: cannot write " + path);
    out << "label";
    for (int i = 1; i <= 20; ++i) {
        char h[8];
        std::snprintf(h, sizeof(h), ",f%02d", i);
        out << h;
    }
    out << "\n";
    char buf[64];
    for (size_t r = 0; r < labels.size(); ++r) {
        out << label_name(labels[r]);
        for (double v : features[r]) {
            std::snprintf(buf, sizeof(buf), ",%.17g", v);
            out << buf;
        }
        out << "\n";
    }
}

std::pair<std::vector<Label>, std::vector<FeatureVector>> read_feature_csv(
    const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("I/O error: cannot read " + path);
    std::string line;
    if (!std::getline(in, line) || line.rfind("label,f01", 0) != 0)
        throw std::runtime_error("format error: not a feature CSV: " + path);
    std::vector<Label> labels;
    std::vector<FeatureVector> features;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::stringstream ss(line);
        std::string cell;
        std::getline(ss, cell, ',');
        Label y;
        if (cell == "Healthy")
            y = Label::Healthy;
        else if (cell == "AML")
            y = Label::AML;
        else
            throw std::runtime_error("format error: unknown label '" + cell + "' in " + path);
        FeatureVector f{};
        for (int i = 0; i < 20; ++i) {
            if (!std::getline(ss, cell, ','))
                throw std::runtime_error("format error: short row in " + path);
            f[i] = std::stod(cell);
        }
        labels.push_back(y);
        features.push_back(f);
    }
    return {labels, features};
}

std::vector<FeatureVector> extract_all(const std::vector<ManifestEntry>& entries) {
    std::vector<FeatureVector> out(entries.size());
    parallel_for(entries.size(),
                 [&](size_t i) { out[i] = extract_features(load_grayscale(entries[i].path)); });
    return out;
}

double stump_holdout_accuracy(const std::vector<Label>& fit_labels,
                              const std::vector<FeatureVector>& fit_features,
                              const std::vector<Label>& eval_labels,
                              const std::vector<FeatureVector>& eval_features) {
    int best_feature = 0;
    double best_thresh = 0.0;
    bool best_above_is_aml = true;
    size_t best_correct = 0;
    for (int f = 0; f < 20; ++f) {
        std::vector<double> vals;
        for (const auto& x : fit_features) vals.push_back(x[f]);
        std::vector<double> cands = vals;
        std::sort(cands.begin(), cands.end());
        cands.erase(std::unique(cands.begin(), cands.end()), cands.end());
        for (size_t t = 0; t + 1 < cands.size(); ++t) {
            double thresh = (cands[t] + cands[t + 1]) / 2.0;
            for (bool above_is_aml : {true, false}) {
                size_t correct = 0;
                for (size_t i = 0; i < vals.size(); ++i) {
                    Label pred = (vals[i] > thresh) == above_is_aml ? Label::AML : Label::Healthy;
                    correct += pred == fit_labels[i];
                }
                if (correct > best_correct) {
                    best_correct = correct;
                    best_feature = f;
                    best_thresh = thresh;
                    best_above_is_aml = above_is_aml;
                }
            }
        }
    }
    size_t correct = 0;
    for (size_t i = 0; i < eval_labels.size(); ++i) {
        Label pred = (eval_features[i][best_feature] > best_thresh) == best_above_is_aml
                         ? Label::AML
                         : Label::Healthy;
        correct += pred == eval_labels[i];
    }
    return eval_labels.empty() ? 0.0 : static_cast<double>(correct) / eval_labels.size();
}

}  // namespace qmlbench
