//
// filters.hpp
//
// Preprocessing chain: median filter followed by a Gaussian filter.
//

#pragma once

#include "ijv/core.hpp"

namespace ijv {

struct FilterParams {
    int median_window = 7;
    double gaussian_sigma = 1.5;
    int gaussian_radius = 3;
};

// Median of the window centered on each pixel, replicate padding.
Frame median_filter(const Frame& frame, int window);

// Separable convolution with a sampled Gaussian kernel normalized to
// sum 1; replicate padding; result rounded to nearest and clamped.
Frame gaussian_filter(const Frame& frame, double sigma, int radius);

// The sampled, normalized 1-D kernel (2 * radius + 1 taps).
std::vector<double> gaussian_kernel(double sigma, int radius);

Frame preprocess(const Frame& frame, const FilterParams& params);

}  // namespace ijv
