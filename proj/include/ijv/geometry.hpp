//
// geometry.hpp
//
// Contour extraction and manipulation: Moore-neighbor boundary tracing,
// periodic cubic-spline resampling to equidistant points, centroid,
// shoelace area and its gradient.
//

#pragma once

#include "ijv/core.hpp"

namespace ijv {

struct ResampleParams {
    int n_points = 32;
    int dense_samples = 4096;
};

// Ordered boundary pixel centers of an 8-connected mask, Moore-neighbor
// tracing with Jacob's stopping criterion, starting at the topmost-then-
// leftmost set pixel. Orientation normalized to positive shoelace area.
// Throws if the mask is empty or touches the grid border (pad first).
Contour trace_boundary(const Mask& mask);

// Periodic cubic spline through the input (chord-length parameterized),
// densely sampled, re-cut at n_points equal arc-length intervals
// starting from the input's first point.
Contour resample_closed_contour(const Contour& contour,
                                const ResampleParams& params);

// Arithmetic mean of the contour points.
Point centroid(const Contour& contour);

// Signed shoelace sum (positive = counterclockwise in math axes).
double signed_area(const Contour& contour);

// A = 1/2 |sum_n x_n (y_{n+1} - y_{n-1})|, cyclic indexing.
double polygon_area(const Contour& contour);

// Per-point gradient of polygon_area (of the absolute signed area).
std::vector<Point> area_gradient(const Contour& contour);

// CSV serialization, lines "n,x,y" with 6 decimal places.
std::string contour_to_csv(const Contour& contour);
Contour contour_from_csv(const std::string& text);

}  // namespace ijv
