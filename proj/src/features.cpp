#include "qmlbench/features.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numeric>
#include <vector>

namespace qmlbench {

namespace {

double population_std(const std::vector<double>& v, double mean) {
    double acc = 0.0;
    for (double x : v) acc += (x - mean) * (x - mean);
    return std::sqrt(acc / v.size());
}

int gray_level(double v) {
    int q = static_cast<int>(std::floor(v / 32.0));
    return std::clamp(q, 0, 7);
}

}  // namespace

IntensityStats intensity_stats(const GrayImage& img) {
    const auto& p = img.pixels;
    double mean = std::accumulate(p.begin(), p.end(), 0.0) / p.size();
    auto [mn, mx] = std::minmax_element(p.begin(), p.end());
    std::vector<double> sorted = p;
    // lower-middle median convention for even counts
    size_t k = (sorted.size() - 1) / 2;
    std::nth_element(sorted.begin(), sorted.begin() + k, sorted.end());
    return {mean, population_std(p, mean), *mn, *mx, sorted[k]};
}

GlcmFeatures glcm_features(const GrayImage& img) {
    constexpr int L = 8;
    double P[L][L] = {};
    double total = 0.0;
    for (int r = 0; r < img.height; ++r) {
        for (int c = 0; c + 1 < img.width; ++c) {
            int a = gray_level(img.at(r, c));
            int b = gray_level(img.at(r, c + 1));
            P[a][b] += 1.0;
            P[b][a] += 1.0;  // symmetric counting
            total += 2.0;
        }
    }
    if (total == 0.0) return {0, 0, 1, 1, 1};  // 1xN column image has no horizontal pairs
    for (auto& row : P)
        for (double& x : row) x /= total;

    double contrast = 0, dissim = 0, homog = 0, energy = 0;
    double marg[L] = {};
    for (int i = 0; i < L; ++i)
        for (int j = 0; j < L; ++j) {
            double p = P[i][j];
            contrast += p * (i - j) * (i - j);
            dissim += p * std::abs(i - j);
            homog += p / (1.0 + std::abs(i - j));
            energy += p * p;
            marg[i] += p;
        }
    double mu = 0, var = 0;
    for (int i = 0; i < L; ++i) mu += i * marg[i];
    for (int i = 0; i < L; ++i) var += (i - mu) * (i - mu) * marg[i];
    double corr;
    if (var < 1e-12) {
        corr = 1.0;  // constant image is perfectly self-correlated
    } else {
        corr = 0.0;
        for (int i = 0; i < L; ++i)
            for (int j = 0; j < L; ++j) corr += (i - mu) * (j - mu) * P[i][j];
        corr /= var;
    }
    return {contrast, dissim, homog, energy, corr};
}

namespace {

// Otsu threshold on a 256-bin histogram of floored intensities.
// Returns -1 when the histogram is degenerate (single occupied bin).
int otsu_threshold(const GrayImage& img) {
    double hist[256] = {};
    for (double v : img.pixels) hist[std::clamp(static_cast<int>(std::floor(v)), 0, 255)] += 1.0;
    int occupied = 0;
    for (double h : hist) occupied += h > 0;
    if (occupied < 2) return -1;

    double total = static_cast<double>(img.size());
    double sum_all = 0;
    for (int i = 0; i < 256; ++i) sum_all += i * hist[i];

    double w0 = 0, sum0 = 0, best_var = -1.0;
    int best_t = 0;
    for (int t = 0; t < 255; ++t) {
        w0 += hist[t];
        sum0 += t * hist[t];
        double w1 = total - w0;
        if (w0 == 0 || w1 == 0) continue;
        double m0 = sum0 / w0, m1 = (sum_all - sum0) / w1;
        double between = w0 * w1 * (m0 - m1) * (m0 - m1);
        if (between > best_var) {
            best_var = between;
            best_t = t;
        }
    }
    return best_t;
}

struct Pt {
    long x, y;
};

long cross(const Pt& o, const Pt& a, const Pt& b) {
    return (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x);
}

// Andrew monotone chain; returns hull in counter-clockwise order.
std::vector<Pt> convex_hull(std::vector<Pt> pts) {
    std::sort(pts.begin(), pts.end(),
              [](const Pt& a, const Pt& b) { return a.x < b.x || (a.x == b.x && a.y < b.y); });
    pts.erase(std::unique(pts.begin(), pts.end(),
                          [](const Pt& a, const Pt& b) { return a.x == b.x && a.y == b.y; }),
              pts.end());
    if (pts.size() < 3) return pts;
    std::vector<Pt> h(2 * pts.size());
    size_t k = 0;
    for (const auto& p : pts) {
        while (k >= 2 && cross(h[k - 2], h[k - 1], p) <= 0) --k;
        h[k++] = p;
    }
    size_t lower = k + 1;
    for (auto it = pts.rbegin() + 1; it != pts.rend(); ++it) {
        while (k >= lower && cross(h[k - 2], h[k - 1], *it) <= 0) --k;
        h[k++] = *it;
    }
    h.resize(k - 1);
    return h;
}

// Lattice points inside or on the hull (Pick's theorem). For a filled convex
// pixel region this equals its pixel count, so solidity of a convex region is 1.
double hull_lattice_area(const std::vector<Pt>& hull) {
    if (hull.size() < 3) return static_cast<double>(hull.size());
    long twice_area = 0;
    long boundary = 0;
    for (size_t i = 0; i < hull.size(); ++i) {
        const Pt& a = hull[i];
        const Pt& b = hull[(i + 1) % hull.size()];
        twice_area += a.x * b.y - b.x * a.y;
        boundary += std::gcd(std::labs(b.x - a.x), std::labs(b.y - a.y));
    }
    double shoelace = std::abs(twice_area) / 2.0;
    return shoelace + boundary / 2.0 + 1.0;
}

}  // namespace

MorphologyFeatures morphology_features(const GrayImage& img) {
    int t = otsu_threshold(img);
    if (t < 0) return {0, 0, 0, 0};

    const int W = img.width, H = img.height;
    std::vector<int> label(static_cast<size_t>(W) * H, 0);
    auto fg = [&](int r, int c) {
        return std::clamp(static_cast<int>(std::floor(img.at(r, c))), 0, 255) > t;
    };

    // largest 4-connected foreground component by flood fill
    int best_label = 0, best_count = 0, next = 0;
    std::vector<std::pair<int, int>> stack;
    for (int r = 0; r < H; ++r)
        for (int c = 0; c < W; ++c) {
            if (!fg(r, c) || label[static_cast<size_t>(r) * W + c] != 0) continue;
            ++next;
            int count = 0;
            stack.push_back({r, c});
            label[static_cast<size_t>(r) * W + c] = next;
            while (!stack.empty()) {
                auto [cr, cc] = stack.back();
                stack.pop_back();
                ++count;
                const int dr[] = {-1, 1, 0, 0}, dc[] = {0, 0, -1, 1};
                for (int k = 0; k < 4; ++k) {
                    int nr = cr + dr[k], nc = cc + dc[k];
                    if (nr < 0 || nr >= H || nc < 0 || nc >= W) continue;
                    size_t idx = static_cast<size_t>(nr) * W + nc;
                    if (label[idx] == 0 && fg(nr, nc)) {
                        label[idx] = next;
                        stack.push_back({nr, nc});
                    }
                }
            }
            if (count > best_count) {
                best_count = count;
                best_label = next;
            }
        }
    if (best_count == 0) return {0, 0, 0, 0};

    auto in_region = [&](int r, int c) {
        return r >= 0 && r < H && c >= 0 && c < W &&
               label[static_cast<size_t>(r) * W + c] == best_label;
    };

    double area = best_count;
    long perimeter = 0;
    double sx = 0, sy = 0;
    std::vector<Pt> pts;
    pts.reserve(best_count);
    for (int r = 0; r < H; ++r)
        for (int c = 0; c < W; ++c) {
            if (!in_region(r, c)) continue;
            pts.push_back({c, r});
            sx += c;
            sy += r;
            perimeter += !in_region(r - 1, c);
            perimeter += !in_region(r + 1, c);
            perimeter += !in_region(r, c - 1);
            perimeter += !in_region(r, c + 1);
        }
    double cx = sx / area, cy = sy / area;
    double sxx = 0, syy = 0, sxy = 0;
    for (const auto& p : pts) {
        double dx = p.x - cx, dy = p.y - cy;
        sxx += dx * dx;
        syy += dy * dy;
        sxy += dx * dy;
    }
    sxx /= area;
    syy /= area;
    sxy /= area;
    // eigenvalues of the 2x2 coordinate covariance
    double tr = sxx + syy;
    double disc = std::sqrt(std::max(0.0, (sxx - syy) * (sxx - syy) + 4 * sxy * sxy));
    double lmax = (tr + disc) / 2.0, lmin = (tr - disc) / 2.0;
    double ecc = lmax > 1e-12 ? std::sqrt(std::max(0.0, 1.0 - lmin / lmax)) : 0.0;

    double hull_area = hull_lattice_area(convex_hull(pts));
    double solidity = hull_area > 0 ? std::min(1.0, area / hull_area) : 1.0;

    return {area, static_cast<double>(perimeter), ecc, solidity};
}

EdgeFeatures edge_features(const GrayImage& img) {
    const int W = img.width, H = img.height;
    auto px = [&](int r, int c) { return img.at(std::clamp(r, 0, H - 1), std::clamp(c, 0, W - 1)); };
    std::vector<double> mag(static_cast<size_t>(W) * H);
    double max_mag = 0.0;
    for (int r = 0; r < H; ++r)
        for (int c = 0; c < W; ++c) {
            double gx = -px(r - 1, c - 1) + px(r - 1, c + 1) - 2 * px(r, c - 1) + 2 * px(r, c + 1) -
                        px(r + 1, c - 1) + px(r + 1, c + 1);
            double gy = -px(r - 1, c - 1) - 2 * px(r - 1, c) - px(r - 1, c + 1) +
                        px(r + 1, c - 1) + 2 * px(r + 1, c) + px(r + 1, c + 1);
            double m = std::hypot(gx, gy);
            mag[static_cast<size_t>(r) * W + c] = m;
            max_mag = std::max(max_mag, m);
        }
    if (max_mag == 0.0) return {0, 0, 0};
    double thresh = 0.1 * max_mag;
    size_t edges = 0;
    double mean = 0.0;
    for (double m : mag) {
        edges += m > thresh;
        mean += m;
    }
    mean /= mag.size();
    return {static_cast<double>(edges) / mag.size(), mean, population_std(mag, mean)};
}

FftFeatures fft_features(const GrayImage& img) {
    const int N = img.width;  // canonical images are square
    const int M = img.height;
    using cd = std::complex<double>;
    // row-column DFT; N is small enough that the direct 1-D transform is fine
    std::vector<cd> rows(static_cast<size_t>(M) * N), F(static_cast<size_t>(M) * N);
    for (int r = 0; r < M; ++r)
        for (int u = 0; u < N; ++u) {
            cd acc = 0;
            for (int x = 0; x < N; ++x) {
                double ang = -2.0 * M_PI * u * x / N;
                acc += img.at(r, x) * cd(std::cos(ang), std::sin(ang));
            }
            rows[static_cast<size_t>(r) * N + u] = acc;
        }
    for (int u = 0; u < N; ++u)
        for (int v = 0; v < M; ++v) {
            cd acc = 0;
            for (int y = 0; y < M; ++y) {
                double ang = -2.0 * M_PI * v * y / M;
                acc += rows[static_cast<size_t>(y) * N + u] * cd(std::cos(ang), std::sin(ang));
            }
            F[static_cast<size_t>(v) * N + u] = acc;
        }

    constexpr double cutoff = 8.0;
    double total = 0, low = 0, high = 0, weighted = 0;
    for (int v = 0; v < M; ++v)
        for (int u = 0; u < N; ++u) {
            double uc = u < N / 2 ? u : u - N;  // centered frequencies
            double vc = v < M / 2 ? v : v - M;
            double r = std::sqrt(uc * uc + vc * vc);
            double s = std::norm(F[static_cast<size_t>(v) * N + u]);
            total += s;
            (r <= cutoff ? low : high) += s;
            weighted += r * s;
        }
    if (total <= 0.0) return {1, 0, 0};  // all-black image
    return {low / total, high / total, weighted / total};
}

FeatureVector extract_features(const GrayImage& img) {
    auto s = intensity_stats(img);
    auto g = glcm_features(img);
    auto m = morphology_features(img);
    auto e = edge_features(img);
    auto f = fft_features(img);
    return {s.mean, s.stddev, s.min, s.max, s.median,
            g.contrast, g.dissimilarity, g.homogeneity, g.energy, g.correlation,
            m.area, m.perimeter, m.eccentricity, m.solidity,
            e.density, e.mean_strength, e.variation,
            f.low_fraction, f.high_fraction, f.centroid};
}

}  // namespace qmlbench
