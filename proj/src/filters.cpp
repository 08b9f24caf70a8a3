#include "ijv/filters.hpp"

#include <algorithm>
#include <cmath>

namespace ijv {

namespace {

inline int clamp_index(int i, int n) {
    return i < 0 ? 0 : (i >= n ? n - 1 : i);
}

}  // namespace

Frame median_filter(const Frame& frame, int window) {
    if (window < 3 || window % 2 == 0)
        throw Error("median_filter: window must be odd and >= 3");
    if (window > frame.width || window > frame.height)
        throw Error("median_filter: window larger than frame");

    const int r = window / 2;
    Frame out(frame.width, frame.height);
    std::vector<std::uint8_t> samples(
        static_cast<std::size_t>(window) * window);

    for (int y = 0; y < frame.height; ++y) {
        for (int x = 0; x < frame.width; ++x) {
            std::size_t k = 0;
            for (int dy = -r; dy <= r; ++dy) {
                const int sy = clamp_index(y + dy, frame.height);
                for (int dx = -r; dx <= r; ++dx)
                    samples[k++] = frame.at(clamp_index(x + dx, frame.width), sy);
            }
            auto mid = samples.begin() + samples.size() / 2;
            std::nth_element(samples.begin(), mid, samples.end());
            out.at(x, y) = *mid;
        }
    }
    return out;
}

std::vector<double> gaussian_kernel(double sigma, int radius) {
    if (sigma <= 0.0) throw Error("gaussian_filter: sigma must be positive");
    if (radius < 1) throw Error("gaussian_filter: radius must be >= 1");
    std::vector<double> k(2 * radius + 1);
    double sum = 0.0;
    for (int i = -radius; i <= radius; ++i) {
        k[i + radius] = std::exp(-0.5 * (i * i) / (sigma * sigma));
        sum += k[i + radius];
    }
    for (double& v : k) v /= sum;
    return k;
}

Frame gaussian_filter(const Frame& frame, double sigma, int radius) {
    const std::vector<double> kernel = gaussian_kernel(sigma, radius);
    const int w = frame.width, h = frame.height;

    std::vector<double> tmp(static_cast<std::size_t>(w) * h);
    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
            double acc = 0.0;
            for (int i = -radius; i <= radius; ++i)
                acc += kernel[i + radius] * frame.at(clamp_index(x + i, w), y);
            tmp[static_cast<std::size_t>(y) * w + x] = acc;
        }
    }

    Frame out(w, h);
    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
            double acc = 0.0;
            for (int i = -radius; i <= radius; ++i)
                acc += kernel[i + radius] *
                       tmp[static_cast<std::size_t>(clamp_index(y + i, h)) * w + x];
            const double v = std::round(acc);
            out.at(x, y) = static_cast<std::uint8_t>(
                std::clamp(v, 0.0, 255.0));
        }
    }
    return out;
}

Frame preprocess(const Frame& frame, const FilterParams& params) {
    return gaussian_filter(median_filter(frame, params.median_window),
                           params.gaussian_sigma, params.gaussian_radius);
}

}  // namespace ijv
