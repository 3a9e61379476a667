#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "qmlbench/features.hpp"
#include "qmlbench/vqc.hpp"  // Label

namespace qmlbench {

struct ManifestEntry {
    std::string path;
    Label label;
};

struct DatasetManifest {
    std::vector<ManifestEntry> entries;
    std::string source;  // directory root or "synthetic"
};

inline const char* label_name(Label y) { return y == Label::Healthy ? "Healthy" : "AML"; }

/// Scan `<root>/Healthy` and `<root>/AML` for image files (png/tiff/jpg/bmp),
/// sorted by path for deterministic ordering. Throws if either class is empty.
DatasetManifest load_manifest(const std::string& root);

/// Per class: draw samples_per_class entries without replacement from the
/// seeded generator, then split that class 80/20 (train count = round(0.8 n)).
std::pair<std::vector<ManifestEntry>, std::vector<ManifestEntry>> build_subset(
    const DatasetManifest& manifest, int samples_per_class, std::uint64_t seed);

/// Write a seeded synthetic dataset of 64x64 PNGs under out_dir/Healthy and
/// out_dir/AML. Healthy: small smooth ellipse; AML: larger irregular speckled
/// blob. Classes are separable in feature space; a depth-1 stump fitted on one
/// half of the images must reach >= 85% accuracy on the other half, otherwise
/// this throws.
DatasetManifest synth_dataset(int n_per_class, std::uint64_t seed, const std::string& out_dir);

/// Feature cache: CSV with header `label,f01..f20`, one row per manifest entry
/// in manifest order, 17 significant digits.
void write_feature_csv(const std::string& path, const std::vector<Label>& labels,
                       const std::vector<FeatureVector>& features);
std::pair<std::vector<Label>, std::vector<FeatureVector>> read_feature_csv(
    const std::string& path);

/// Extract features for every entry (parallel across images).
std::vector<FeatureVector> extract_all(const std::vector<ManifestEntry>& entries);

/// Best single-feature threshold classifier; returns accuracy on the
/// evaluation set. Used as the separability oracle for synthetic data.
double stump_holdout_accuracy(const std::vector<Label>& fit_labels,
                              const std::vector<FeatureVector>& fit_features,
                              const std::vector<Label>& eval_labels,
                              const std::vector<FeatureVector>& eval_features);

}  // namespace qmlbench
