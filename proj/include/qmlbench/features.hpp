#pragma once

#include <array>

#include "qmlbench/image.hpp"

namespace qmlbench {

/// 20 engineered features in fixed order:
///   [0..4]   intensity: mean, std, min, max, median
///   [5..9]   texture:   contrast, dissimilarity, homogeneity, energy, correlation
///   [10..13] morphology: area, perimeter, eccentricity, solidity
///   [14..16] edges:     edge density, mean edge strength, edge variation
///   [17..19] frequency: low-freq energy fraction, high-freq fraction, centroid
using FeatureVector = std::array<double, 20>;

inline constexpr std::array<const char*, 20> kFeatureNames = {
    "mean_intensity", "std_intensity", "min_intensity", "max_intensity", "median_intensity",
    "glcm_contrast", "glcm_dissimilarity", "glcm_homogeneity", "glcm_energy", "glcm_correlation",
    "area", "perimeter", "eccentricity", "solidity",
    "edge_density", "mean_edge_strength", "edge_variation",
    "low_freq_energy", "high_freq_energy", "freq_centroid"};

struct IntensityStats {
    double mean, stddev, min, max, median;  // population std; lower median for even counts
};

struct GlcmFeatures {
    double contrast, dissimilarity, homogeneity, energy, correlation;
};

struct MorphologyFeatures {
    double area, perimeter, eccentricity, solidity;
};

struct EdgeFeatures {
    double density, mean_strength, variation;
};

struct FftFeatures {
    double low_fraction, high_fraction, centroid;
};

IntensityStats intensity_stats(const GrayImage& img);

/// 8 gray levels (floor(v/32), clipped to 7), offset (0,+1), symmetric, normalized.
/// Correlation of a constant image is 1 by convention.
GlcmFeatures glcm_features(const GrayImage& img);

/// Otsu threshold, largest 4-connected component; perimeter = boundary-edge count;
/// eccentricity from second central moments; solidity against the pixel-center
/// convex hull with lattice-point area correction. Empty foreground -> all zeros.
MorphologyFeatures morphology_features(const GrayImage& img);

/// 3x3 Sobel with replicate padding; edge pixel iff magnitude > 0.1 * max magnitude.
EdgeFeatures edge_features(const GrayImage& img);

/// Centered power spectrum; radial cutoff R = 8 (DC in the low band).
/// Zero-energy image -> (1, 0, 0).
FftFeatures fft_features(const GrayImage& img);

FeatureVector extract_features(const GrayImage& img);

}  // namespace qmlbench
