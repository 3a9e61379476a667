#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>
#include <set>
#include <string>

#include "qmlbench/dataset.hpp"
#include "qmlbench/rng.hpp"

using namespace qmlbench;
namespace fs = std::filesystem;

namespace {

fs::path temp_dir(const std::string& tag) {
    fs::path p = fs::temp_directory_path() / ("qmlbench_test_" + tag);
    fs::remove_all(p);
    fs::create_directories(p);
    return p;
}

DatasetManifest fake_manifest(int n_per_class) {
    DatasetManifest m;
    for (int i = 0; i < n_per_class; ++i)
        m.entries.push_back({"h_" + std::to_string(i) + ".png", Label::Healthy});
    for (int i = 0; i < n_per_class; ++i)
        m.entries.push_back({"a_" + std::to_string(i) + ".png", Label::AML});
    m.source = "fake";
    return m;
}

int count_label(const std::vector<ManifestEntry>& v, Label y) {
    return static_cast<int>(std::count_if(v.begin(), v.end(),
                                          [&](const ManifestEntry& e) { return e.label == y; }));
}

std::set<std::string> paths_of(const std::vector<ManifestEntry>& v) {
    std::set<std::string> s;
    for (const auto& e : v) s.insert(e.path);
    return s;
}

std::string read_file(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    return std::string(std::istreambuf_iterator<char>(in), {});
}

}  // namespace

TEST_CASE("build_subset splits 250 per class into 400 train / 100 test") {
    DatasetManifest m = fake_manifest(300);
    auto [train, test] = build_subset(m, 250, 7);
    CHECK(train.size() == 400);
    CHECK(test.size() == 100);
    CHECK(count_label(train, Label::Healthy) == 200);
    CHECK(count_label(train, Label::AML) == 200);
    CHECK(count_label(test, Label::Healthy) == 50);
    CHECK(count_label(test, Label::AML) == 50);

    // train and test are disjoint
    auto tr = paths_of(train), te = paths_of(test);
    CHECK(tr.size() == train.size());
    CHECK(te.size() == test.size());
    for (const auto& p : te) CHECK(tr.count(p) == 0);
}

TEST_CASE("build_subset with 50 per class gives 40 train / 10 test per class") {
    DatasetManifest m = fake_manifest(60);
    auto [train, test] = build_subset(m, 50, 0);
    CHECK(train.size() == 80);
    CHECK(test.size() == 20);
    CHECK(count_label(train, Label::Healthy) == 40);
    CHECK(count_label(test, Label::AML) == 10);
}

TEST_CASE("build_subset is deterministic per seed and varies across seeds") {
    DatasetManifest m = fake_manifest(100);
    auto [t1, e1] = build_subset(m, 50, 3);
    auto [t2, e2] = build_subset(m, 50, 3);
    CHECK(paths_of(t1) == paths_of(t2));
    CHECK(paths_of(e1) == paths_of(e2));
    for (size_t i = 0; i < t1.size(); ++i) CHECK(t1[i].path == t2[i].path);

    auto [t3, e3] = build_subset(m, 50, 4);
    CHECK(paths_of(t1) != paths_of(t3));
}

TEST_CASE("build_subset requires enough samples in each class") {
    DatasetManifest m;
    for (int i = 0; i < 40; ++i) m.entries.push_back({"h" + std::to_string(i), Label::Healthy});
    for (int i = 0; i < 10; ++i) m.entries.push_back({"a" + std::to_string(i), Label::AML});
    CHECK_THROWS_WITH_AS(build_subset(m, 20, 0), doctest::Contains("AML"), std::invalid_argument);
}

TEST_CASE("synth_dataset writes the requested files deterministically") {
    fs::path d1 = temp_dir("synth1");
    fs::path d2 = temp_dir("synth2");
    DatasetManifest m1 = synth_dataset(20, 5, d1.string());
    DatasetManifest m2 = synth_dataset(20, 5, d2.string());
    CHECK(m1.entries.size() == 40);
    CHECK(count_label(m1.entries, Label::Healthy) == 20);
    CHECK(count_label(m1.entries, Label::AML) == 20);

    // same seed regenerates byte-identical images
    for (size_t i = 0; i < m1.entries.size(); ++i) {
        CHECK(fs::path(m1.entries[i].path).filename() == fs::path(m2.entries[i].path).filename());
        CHECK(read_file(m1.entries[i].path) == read_file(m2.entries[i].path));
    }

    // the written tree is loadable as a manifest
    DatasetManifest reloaded = load_manifest(d1.string());
    CHECK(reloaded.entries.size() == 40);

    fs::remove_all(d1);
    fs::remove_all(d2);
}

TEST_CASE("synthetic classes are separable by a depth-1 stump") {
    fs::path d = temp_dir("synth_sep");
    DatasetManifest m = synth_dataset(30, 1, d.string());
    std::vector<FeatureVector> feats = extract_all(m.entries);
    std::vector<Label> labels;
    for (const auto& e : m.entries) labels.push_back(e.label);

    std::vector<Label> fit_l, ev_l;
    std::vector<FeatureVector> fit_f, ev_f;
    for (size_t i = 0; i < feats.size(); ++i) {
        if (i % 2 == 0) {
            fit_l.push_back(labels[i]);
            fit_f.push_back(feats[i]);
        } else {
            ev_l.push_back(labels[i]);
            ev_f.push_back(feats[i]);
        }
    }
    CHECK(stump_holdout_accuracy(fit_l, fit_f, ev_l, ev_f) >= 0.85);
    fs::remove_all(d);
}

TEST_CASE("feature CSV round-trips bit-exactly") {
    std::mt19937_64 rng(17);
    std::vector<Label> labels;
    std::vector<FeatureVector> feats;
    for (int i = 0; i < 12; ++i) {
        labels.push_back(i % 2 ? Label::AML : Label::Healthy);
        FeatureVector f;
        for (auto& v : f) v = normal(rng) * 1e3;
        feats.push_back(f);
    }
    fs::path d = temp_dir("csv");
    std::string path = (d / "cache.csv").string();
    write_feature_csv(path, labels, feats);
    auto [rl, rf] = read_feature_csv(path);
    REQUIRE(rl.size() == labels.size());
    for (size_t i = 0; i < labels.size(); ++i) {
        CHECK(rl[i] == labels[i]);
        for (int j = 0; j < 20; ++j) CHECK(rf[i][j] == feats[i][j]);
    }
    fs::remove_all(d);
}

TEST_CASE("load_manifest rejects a root missing a class directory") {
    fs::path d = temp_dir("manifest_empty");
    fs::create_directories(d / "Healthy");
    std::ofstream((d / "Healthy" / "x.png").string()) << "stub";
    CHECK_THROWS(load_manifest(d.string()));
    fs::remove_all(d);
}
