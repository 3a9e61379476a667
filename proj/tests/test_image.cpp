#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstdio>
#include <filesystem>

#include "oracles.hpp"
#include "qmlbench/image.hpp"

using namespace qmlbench;

namespace {
std::string temp_path(const char* name) {
    return (std::filesystem::temp_directory_path() / name).string();
}
}  // namespace

TEST_CASE("constant 64x64 PNG round-trips unchanged") {
    GrayImage img(64, 64, 128.0);
    std::string p = temp_path("qmlbench_const.png");
    write_png(p, img);
    GrayImage loaded = load_grayscale(p);
    REQUIRE(loaded.width == 64);
    REQUIRE(loaded.height == 64);
    for (double v : loaded.pixels) CHECK(v == doctest::Approx(128.0));
    std::remove(p.c_str());
}

TEST_CASE("bilinear resize of a constant image is constant") {
    GrayImage img(128, 128, 200.0);
    GrayImage out = canonicalize(img);
    REQUIRE(out.width == 64);
    for (double v : out.pixels) CHECK(v == doctest::Approx(200.0).epsilon(1e-12));
}

TEST_CASE("2x2 upscale matches the reference bilinear formula") {
    GrayImage src(2, 2);
    src.at(0, 0) = 0;
    src.at(0, 1) = 255;
    src.at(1, 0) = 0;
    src.at(1, 1) = 255;
    GrayImage out = bilinear_resize(src, 64, 64);
    double sx = 2.0 / 64, sy = 2.0 / 64;
    for (int r = 0; r < 64; ++r)
        for (int c = 0; c < 64; ++c) {
            double expect = oracle::bilinear_at(src, (c + 0.5) * sx - 0.5, (r + 0.5) * sy - 0.5);
            CHECK(out.at(r, c) == doctest::Approx(expect).epsilon(1e-12));
        }
    // column-wise gradient: rows identical, columns non-decreasing
    for (int c = 0; c + 1 < 64; ++c) {
        CHECK(out.at(0, c) <= out.at(0, c + 1) + 1e-12);
        CHECK(out.at(0, c) == doctest::Approx(out.at(63, c)));
    }
}

TEST_CASE("color images convert with luminance weights") {
    // uniform pure-red 8x8
    std::vector<unsigned char> rgb(8 * 8 * 3, 0);
    for (size_t i = 0; i < 64; ++i) rgb[3 * i] = 200;
    GrayImage g = rgb_to_gray(rgb.data(), 8, 8);
    for (double v : g.pixels) CHECK(v == doctest::Approx(0.299 * 200));
}

TEST_CASE("missing file raises an I/O error") {
    CHECK_THROWS_AS(load_grayscale("/nonexistent/nope.png"), std::runtime_error);
}

TEST_CASE("non-image content raises a format error") {
    std::string p = temp_path("qmlbench_notimage.png");
    FILE* f = std::fopen(p.c_str(), "wb");
    std::fputs("this is not a png", f);
    std::fclose(f);
    CHECK_THROWS_WITH_AS(load_grayscale(p), doctest::Contains("format error"), std::runtime_error);
    std::remove(p.c_str());
}
