#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace qmlbench {

inline constexpr int kCanonicalSize = 64;

/// Single-channel image, row-major, intensities in [0, 255].
/// After canonicalization width == height == 64.
struct GrayImage {
    int width = 0;
    int height = 0;
    std::vector<double> pixels;  // size width*height, row-major

    GrayImage() = default;
    GrayImage(int w, int h, double fill = 0.0)
        : width(w), height(h), pixels(static_cast<size_t>(w) * h, fill) {
        if (w <= 0 || h <= 0) throw std::invalid_argument("GrayImage: non-positive dimension");
    }

    double& at(int row, int col) { return pixels[static_cast<size_t>(row) * width + col]; }
    double at(int row, int col) const { return pixels[static_cast<size_t>(row) * width + col]; }
    size_t size() const { return pixels.size(); }
};

/// Bilinear resize with replicate borders. Source sample coordinates follow
/// the half-pixel (pixel-center aligned) convention.
GrayImage bilinear_resize(const GrayImage& src, int out_w, int out_h);

/// Resize to 64x64 if needed and clamp intensities into [0, 255].
GrayImage canonicalize(const GrayImage& img);

/// Luminance conversion for interleaved RGB data (0.299 R + 0.587 G + 0.114 B).
GrayImage rgb_to_gray(const unsigned char* rgb, int width, int height);

/// Decode an image file (PNG/TIFF/JPEG/BMP), convert to grayscale, resize to 64x64.
GrayImage load_grayscale(const std::string& path);

/// Write a grayscale image as an 8-bit PNG (values rounded and clamped).
void write_png(const std::string& path, const GrayImage& img);

}  // namespace qmlbench
