#include "qmlbench/image.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include <opencv2/core.hpp>
#include <opencv2/imgcodecs.hpp>

namespace qmlbench {

GrayImage bilinear_resize(const GrayImage& src, int out_w, int out_h) {
    if (out_w <= 0 || out_h <= 0) throw std::invalid_argument("bilinear_resize: bad target size");
    GrayImage dst(out_w, out_h);
    const double sx = static_cast<double>(src.width) / out_w;
    const double sy = static_cast<double>(src.height) / out_h;
    for (int r = 0; r < out_h; ++r) {
        // map output pixel center to source coordinates
        double fy = (r + 0.5) * sy - 0.5;
        int y0 = static_cast<int>(std::floor(fy));
        double wy = fy - y0;
        int y0c = std::clamp(y0, 0, src.height - 1);
        int y1c = std::clamp(y0 + 1, 0, src.height - 1);
        for (int c = 0; c < out_w; ++c) {
            double fx = (c + 0.5) * sx - 0.5;
            int x0 = static_cast<int>(std::floor(fx));
            double wx = fx - x0;
            int x0c = std::clamp(x0, 0, src.width - 1);
            int x1c = std::clamp(x0 + 1, 0, src.width - 1);
            double top = src.at(y0c, x0c) * (1 - wx) + src.at(y0c, x1c) * wx;
            double bot = src.at(y1c, x0c) * (1 - wx) + src.at(y1c, x1c) * wx;
            dst.at(r, c) = top * (1 - wy) + bot * wy;
        }
    }
    return dst;
}

GrayImage canonicalize(const GrayImage& img) {
    GrayImage out = (img.width == kCanonicalSize && img.height == kCanonicalSize)
                        ? img
                        : bilinear_resize(img, kCanonicalSize, kCanonicalSize);
    for (double& v : out.pixels) v = std::clamp(v, 0.0, 255.0);
    return out;
}

GrayImage rgb_to_gray(const unsigned char* rgb, int width, int height) {
    GrayImage out(width, height);
    for (size_t i = 0; i < out.size(); ++i) {
        const unsigned char* p = rgb + 3 * i;
        out.pixels[i] = 0.299 * p[0] + 0.587 * p[1] + 0.114 * p[2];
    }
    return out;
}

GrayImage load_grayscale(const std::string& path) {
    cv::Mat raw = cv::imread(path, cv::IMREAD_UNCHANGED);
    if (raw.empty()) {
        // imread returns empty for both missing files and undecodable content
        FILE* f = std::fopen(path.c_str(), "rb");
        if (!f) throw std::runtime_error("I/O error: cannot read image file: " + path);
        std::fclose(f);
        throw std::runtime_error("format error: unsupported or corrupt image: " + path);
    }
    if (raw.cols == 0 || raw.rows == 0)
        throw std::invalid_argument("invalid input: zero-dimension image: " + path);

    cv::Mat m;
    raw.convertTo(m, raw.channels() == 1 ? CV_64FC1 : (raw.channels() == 3 ? CV_64FC3 : CV_64FC4));
    if (raw.depth() == CV_16U) m /= 257.0;  // 16-bit sources map onto the 8-bit range

    GrayImage g(m.cols, m.rows);
    for (int r = 0; r < m.rows; ++r) {
        for (int c = 0; c < m.cols; ++c) {
            if (m.channels() == 1) {
                g.at(r, c) = m.at<double>(r, c);
            } else if (m.channels() == 3) {
                cv::Vec3d px = m.at<cv::Vec3d>(r, c);  // OpenCV stores BGR
                g.at(r, c) = 0.299 * px[2] + 0.587 * px[1] + 0.114 * px[0];
            } else {
                cv::Vec4d px = m.at<cv::Vec4d>(r, c);
                g.at(r, c) = 0.299 * px[2] + 0.587 * px[1] + 0.114 * px[0];
            }
        }
    }
    return canonicalize(g);
}

void write_png(const std::string& path, const GrayImage& img) {
    cv::Mat m(img.height, img.width, CV_8UC1);
    for (int r = 0; r < img.height; ++r)
        for (int c = 0; c < img.width; ++c)
            m.at<unsigned char>(r, c) =
                static_cast<unsigned char>(std::clamp(std::lround(img.at(r, c)), 0L, 255L));
    if (!cv::imwrite(path, m))
        throw std::runtime_error("I/O error: cannot write PNG: " + path);
}

}  // namespace qmlbench
