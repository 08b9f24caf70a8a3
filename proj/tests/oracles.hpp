//
// oracles.hpp
//
// Independent reference implementations used only by tests: dense
// Gaussian elimination, brute-force point-in-polygon, direct 2D
// convolution, static-criterion flood fill.
//

#pragma once

#include <algorithm>
#include <cmath>
#include <deque>
#include <random>
#include <vector>

#include "ijv/core.hpp"

namespace oracle {

// Dense linear solve with partial pivoting.
inline std::vector<double> dense_solve(std::vector<std::vector<double>> a,
                                       std::vector<double> b) {
    const std::size_t n = b.size();
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t piv = col;
        for (std::size_t r = col + 1; r < n; ++r)
            if (std::abs(a[r][col]) > std::abs(a[piv][col])) piv = r;
        std::swap(a[col], a[piv]);
        std::swap(b[col], b[piv]);
        for (std::size_t r = col + 1; r < n; ++r) {
            const double f = a[r][col] / a[col][col];
            for (std::size_t c = col; c < n; ++c) a[r][c] -= f * a[col][c];
            b[r] -= f * b[col];
        }
    }
    std::vector<double> x(n);
    for (std::size_t i = n; i-- > 0;) {
        double s = b[i];
        for (std::size_t j = i + 1; j < n; ++j) s -= a[i][j] * x[j];
        x[i] = s / a[i][i];
    }
    return x;
}

// Even-odd point-in-polygon by ray casting (half-open edge rule, ray to
// the right, boundary points on a left edge count as inside).
inline bool point_in_polygon(double x, double y,
                             const std::vector<ijv::Point>& poly) {
    bool inside = false;
    const std::size_t n = poly.size();
    for (std::size_t i = 0; i < n; ++i) {
        const ijv::Point& p = poly[i];
        const ijv::Point& q = poly[(i + 1) % n];
        if ((p.y <= y && y < q.y) || (q.y <= y && y < p.y)) {
            const double xc = p.x + (y - p.y) * (q.x - p.x) / (q.y - p.y);
            if (x >= xc) continue;
            inside = !inside;
        }
    }
    return inside;
}

inline ijv::Mask rasterize_by_oracle(const ijv::Contour& c, int w, int h) {
    ijv::Mask m(w, h);
    for (int y = 0; y < h; ++y)
        for (int x = 0; x < w; ++x)
            if (point_in_polygon(x, y, c.points)) m.set(x, y);
    return m;
}

// Direct (non-separable) 2D Gaussian convolution, replicate padding.
inline ijv::Frame conv2d_gaussian(const ijv::Frame& f,
                                  const std::vector<double>& kernel,
                                  int radius) {
    ijv::Frame out(f.width, f.height);
    for (int y = 0; y < f.height; ++y)
        for (int x = 0; x < f.width; ++x) {
            double acc = 0.0;
            for (int j = -radius; j <= radius; ++j)
                for (int i = -radius; i <= radius; ++i) {
                    const int sx = std::clamp(x + i, 0, f.width - 1);
                    const int sy = std::clamp(y + j, 0, f.height - 1);
                    acc += kernel[i + radius] * kernel[j + radius] *
                           f.at(sx, sy);
                }
            out.at(x, y) = static_cast<std::uint8_t>(
                std::clamp(std::round(acc), 0.0, 255.0));
        }
    return out;
}

// Flood fill with a static acceptance criterion |I - ref| < threshold.
inline ijv::Mask flood_fill_static(const ijv::Frame& f, int sx, int sy,
                                   double ref, double threshold) {
    ijv::Mask m(f.width, f.height);
    std::deque<std::pair<int, int>> q;
    q.emplace_back(sx, sy);
    m.set(sx, sy);
    while (!q.empty()) {
        auto [x, y] = q.front();
        q.pop_front();
        for (int dy = -1; dy <= 1; ++dy)
            for (int dx = -1; dx <= 1; ++dx) {
                if (dx == 0 && dy == 0) continue;
                const int nx = x + dx, ny = y + dy;
                if (!f.in_bounds(nx, ny) || m.at(nx, ny)) continue;
                if (std::abs(static_cast<double>(f.at(nx, ny)) - ref) <
                    threshold) {
                    m.set(nx, ny);
                    q.emplace_back(nx, ny);
                }
            }
    }
    return m;
}

// Star-shaped (hence simple) random polygon around a center.
inline ijv::Contour random_star_polygon(std::mt19937& rng, int n,
                                        double cx = 0.0, double cy = 0.0,
                                        double rmin = 2.0, double rmax = 10.0) {
    std::uniform_real_distribution<double> rad(rmin, rmax);
    ijv::Contour c;
    for (int i = 0; i < n; ++i) {
        const double th = 2.0 * std::acos(-1.0) * i / n;
        const double r = rad(rng);
        c.points.push_back({cx + r * std::cos(th), cy + r * std::sin(th)});
    }
    return c;
}

// Random ellipse samples (convex contour).
inline ijv::Contour random_convex_contour(std::mt19937& rng, int n,
                                          double cx = 0.0, double cy = 0.0) {
    std::uniform_real_distribution<double> ax(5.0, 15.0), rot(0.0, 3.14);
    const double a = ax(rng), b = ax(rng), phi = rot(rng);
    ijv::Contour c;
    for (int i = 0; i < n; ++i) {
        const double th = 2.0 * std::acos(-1.0) * i / n;
        const double x = a * std::cos(th), y = b * std::sin(th);
        c.points.push_back({cx + x * std::cos(phi) - y * std::sin(phi),
                            cy + x * std::sin(phi) + y * std::cos(phi)});
    }
    return c;
}

}  // namespace oracle
