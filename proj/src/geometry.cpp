#include "ijv/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

namespace ijv {

namespace {

// Moore neighborhood, clockwise on screen (y grows downward):
// W, NW, N, NE, E, SE, S, SW.
constexpr int kMooreDx[8] = {-1, -1, 0, 1, 1, 1, 0, -1};
constexpr int kMooreDy[8] = {0, -1, -1, -1, 0, 1, 1, 1};

}  // namespace

Contour trace_boundary(const Mask& mask) {
    const int w = mask.width, h = mask.height;
    int sx = -1, sy = -1;
    std::size_t count = 0;
    for (int y = 0; y < h && sx < 0; ++y)
        for (int x = 0; x < w; ++x)
            if (mask.at(x, y)) {
                sx = x;
                sy = y;
                break;
            }
    if (sx < 0) throw Error("trace_boundary: empty mask");
    for (int y = 0; y < h; ++y)
        for (int x = 0; x < w; ++x)
            if (mask.at(x, y)) {
                ++count;
                if (x == 0 || y == 0 || x == w - 1 || y == h - 1)
                    throw Error(
                        "trace_boundary: mask touches the frame border; pad "
                        "the mask by one pixel first");
            }

    Contour contour;
    contour.points.push_back({static_cast<double>(sx), static_cast<double>(sy)});

    // The start pixel is topmost-then-leftmost, so its west neighbor is
    // clear; treat it as the initial backtrack cell.
    int px = sx, py = sy;
    int back = 0;  // index of the backtrack cell in the Moore ring
    const int start_back_x = sx - 1, start_back_y = sy;

    const std::size_t step_cap = 8 * count + 8;
    for (std::size_t step = 0; step < step_cap; ++step) {
        int found = -1;
        for (int i = 1; i <= 8; ++i) {
            const int idx = (back + i) % 8;
            const int nx = px + kMooreDx[idx];
            const int ny = py + kMooreDy[idx];
            if (mask.in_bounds(nx, ny) && mask.at(nx, ny)) {
                found = idx;
                break;
            }
        }
        if (found < 0) break;  // isolated pixel

        const int prev = (found + 7) % 8;  // cell scanned just before the hit
        const int bx = px + kMooreDx[prev];
        const int by = py + kMooreDy[prev];
        px += kMooreDx[found];
        py += kMooreDy[found];

        // Jacob's criterion: back at the start, entered the same way.
        if (px == sx && py == sy && bx == start_back_x && by == start_back_y)
            break;

        contour.points.push_back(
            {static_cast<double>(px), static_cast<double>(py)});

        // Re-index the backtrack cell relative to the new current pixel.
        back = 0;
        for (int i = 0; i < 8; ++i)
            if (px + kMooreDx[i] == bx && py + kMooreDy[i] == by) {
                back = i;
                break;
            }
    }

    if (contour.points.size() < 3)
        throw Error("trace_boundary: mask too small to form a contour");

    if (signed_area(contour) < 0.0)
        std::reverse(contour.points.begin() + 1, contour.points.end());
    return contour;
}

namespace {

// Cyclic tridiagonal solve (Thomas + Sherman-Morrison). b is the
// diagonal, a the sub-diagonal (a[i] multiplies x[i-1], cyclically),
// c the super-diagonal.
std::vector<double> solve_cyclic_tridiagonal(const std::vector<double>& a,
                                             std::vector<double> b,
                                             const std::vector<double>& c,
                                             const std::vector<double>& d) {
    const std::size_t n = b.size();
    auto thomas = [&](const std::vector<double>& diag,
                      const std::vector<double>& rhs) {
        std::vector<double> cp(n), x(n);
        cp[0] = c[0] / diag[0];
        x[0] = rhs[0] / diag[0];
        for (std::size_t i = 1; i < n; ++i) {
            const double m = diag[i] - a[i] * cp[i - 1];
            cp[i] = c[i] / m;
            x[i] = (rhs[i] - a[i] * x[i - 1]) / m;
        }
        for (std::size_t i = n - 1; i-- > 0;) x[i] -= cp[i] * x[i + 1];
        return x;
    };

    const double alpha = c[n - 1];  // bottom-left corner
    const double beta = a[0];       // top-right corner
    const double gamma = -b[0];
    std::vector<double> bm = b;
    bm[0] = b[0] - gamma;
    bm[n - 1] = b[n - 1] - alpha * beta / gamma;

    std::vector<double> u(n, 0.0);
    u[0] = gamma;
    u[n - 1] = alpha;

    const std::vector<double> y = thomas(bm, d);
    const std::vector<double> z = thomas(bm, u);

    const double vy = y[0] + beta / gamma * y[n - 1];
    const double vz = z[0] + beta / gamma * z[n - 1];
    const double factor = vy / (1.0 + vz);

    std::vector<double> x(n);
    for (std::size_t i = 0; i < n; ++i) x[i] = y[i] - factor * z[i];
    return x;
}

// Distinct consecutive points, closing duplicate dropped.
std::vector<Point> dedupe_closed(const std::vector<Point>& pts) {
    std::vector<Point> out;
    for (const Point& p : pts)
        if (out.empty() || !(out.back() == p)) out.push_back(p);
    while (out.size() > 1 && out.back() == out.front()) out.pop_back();
    return out;
}

struct PeriodicSpline {
    std::vector<double> t;      // knots, t[0] = 0, t[m] = total
    std::vector<double> vx, vy; // values, size m + 1 (closed)
    std::vector<double> mx, my; // second derivatives, size m + 1

    double total() const { return t.back(); }

    Point eval(double tt) const {
        const std::size_t m = t.size() - 1;
        std::size_t i =
            static_cast<std::size_t>(std::upper_bound(t.begin(), t.end(), tt) -
                                     t.begin());
        i = std::clamp<std::size_t>(i, 1, m) - 1;
        const double hseg = t[i + 1] - t[i];
        const double A = (t[i + 1] - tt) / hseg;
        const double B = (tt - t[i]) / hseg;
        const double cub = hseg * hseg / 6.0;
        auto comp = [&](const std::vector<double>& v,
                        const std::vector<double>& M) {
            return A * v[i] + B * v[i + 1] +
                   ((A * A * A - A) * M[i] + (B * B * B - B) * M[i + 1]) * cub;
        };
        return {comp(vx, mx), comp(vy, my)};
    }
};

PeriodicSpline fit_periodic_spline(const std::vector<Point>& pts) {
    const std::size_t m = pts.size();
    std::vector<double> h(m);
    for (std::size_t i = 0; i < m; ++i) {
        const Point& p = pts[i];
        const Point& q = pts[(i + 1) % m];
        h[i] = std::hypot(q.x - p.x, q.y - p.y);
    }

    auto second_derivs = [&](auto coord) {
        std::vector<double> a(m), b(m), c(m), d(m);
        for (std::size_t i = 0; i < m; ++i) {
            const std::size_t ip = (i + m - 1) % m;
            const std::size_t in = (i + 1) % m;
            a[i] = h[ip];
            b[i] = 2.0 * (h[ip] + h[i]);
            c[i] = h[i];
            d[i] = 6.0 * ((coord(pts[in]) - coord(pts[i])) / h[i] -
                          (coord(pts[i]) - coord(pts[ip])) / h[ip]);
        }
        return solve_cyclic_tridiagonal(a, b, c, d);
    };

    const std::vector<double> Mx =
        second_derivs([](const Point& p) { return p.x; });
    const std::vector<double> My =
        second_derivs([](const Point& p) { return p.y; });

    PeriodicSpline s;
    s.t.resize(m + 1);
    s.vx.resize(m + 1);
    s.vy.resize(m + 1);
    s.mx.resize(m + 1);
    s.my.resize(m + 1);
    s.t[0] = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
        s.vx[i] = pts[i].x;
        s.vy[i] = pts[i].y;
        s.mx[i] = Mx[i];
        s.my[i] = My[i];
        s.t[i + 1] = s.t[i] + h[i];
    }
    s.vx[m] = pts[0].x;
    s.vy[m] = pts[0].y;
    s.mx[m] = Mx[0];
    s.my[m] = My[0];
    return s;
}

}  // namespace

Contour resample_closed_contour(const Contour& contour,
                                const ResampleParams& params) {
    if (params.n_points < 8)
        throw Error("resample_closed_contour: n_points must be >= 8");
    if (params.dense_samples < 16 * params.n_points)
        throw Error("resample_closed_contour: dense_samples too small");

    const std::vector<Point> pts = dedupe_closed(contour.points);
    if (pts.size() < 4)
        throw Error("resample_closed_contour: need at least 4 distinct points");

    const PeriodicSpline spline = fit_periodic_spline(pts);
    if (!(spline.total() > 0.0))
        throw Error("resample_closed_contour: zero-length contour");

    // Dense polyline, closed: sample K + 1 parameters including t = total.
    const int K = params.dense_samples;
    std::vector<Point> dense(K + 1);
    std::vector<double> arclen(K + 1, 0.0);
    for (int k = 0; k <= K; ++k)
        dense[k] = spline.eval(spline.total() * k / K);
    for (int k = 1; k <= K; ++k)
        arclen[k] = arclen[k - 1] + std::hypot(dense[k].x - dense[k - 1].x,
                                               dense[k].y - dense[k - 1].y);
    const double L = arclen[K];
    if (!(L > 0.0))
        throw Error("resample_closed_contour: zero-length contour");

    Contour out;
    out.points.reserve(params.n_points);
    for (int j = 0; j < params.n_points; ++j) {
        const double s = L * j / params.n_points;
        const auto it = std::upper_bound(arclen.begin(), arclen.end(), s);
        std::size_t hi = std::clamp<std::size_t>(
            static_cast<std::size_t>(it - arclen.begin()), 1, K);
        const std::size_t lo = hi - 1;
        const double span = arclen[hi] - arclen[lo];
        const double t = span > 0.0 ? (s - arclen[lo]) / span : 0.0;
        out.points.push_back({dense[lo].x + t * (dense[hi].x - dense[lo].x),
                              dense[lo].y + t * (dense[hi].y - dense[lo].y)});
    }
    return out;
}

Point centroid(const Contour& contour) {
    if (contour.size() < 3) throw Error("centroid: need at least 3 points");
    double sx = 0.0, sy = 0.0;
    for (const Point& p : contour.points) {
        sx += p.x;
        sy += p.y;
    }
    const double n = static_cast<double>(contour.size());
    return {sx / n, sy / n};
}

double signed_area(const Contour& contour) {
    const auto& p = contour.points;
    const std::size_t n = p.size();
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const std::size_t in = (i + 1) % n;
        const std::size_t ip = (i + n - 1) % n;
        s += p[i].x * (p[in].y - p[ip].y);
    }
    return 0.5 * s;
}

double polygon_area(const Contour& contour) {
    if (contour.size() < 3) throw Error("polygon_area: need at least 3 points");
    return std::abs(signed_area(contour));
}

std::vector<Point> area_gradient(const Contour& contour) {
    if (contour.size() < 3)
        throw Error("area_gradient: need at least 3 points");
    const double sa = signed_area(contour);
    if (std::abs(sa) < 1e-12)
        throw Error("area_gradient: degenerate (zero-area) contour");
    const double s = sa > 0.0 ? 1.0 : -1.0;

    const auto& p = contour.points;
    const std::size_t n = p.size();
    std::vector<Point> g(n);
    for (std::size_t i = 0; i < n; ++i) {
        const std::size_t in = (i + 1) % n;
        const std::size_t ip = (i + n - 1) % n;
        g[i].x = s * (p[in].y - p[ip].y) / 2.0;
        g[i].y = s * (p[ip].x - p[in].x) / 2.0;
    }
    return g;
}

std::string contour_to_csv(const Contour& contour) {
    std::string out = "n,x,y\n";
    char buf[96];
    for (std::size_t i = 0; i < contour.points.size(); ++i) {
        std::snprintf(buf, sizeof(buf), "%zu,%.6f,%.6f\n", i,
                      contour.points[i].x, contour.points[i].y);
        out += buf;
    }
    return out;
}

Contour contour_from_csv(const std::string& text) {
    Contour c;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line.rfind("n,", 0) == 0) continue;
        std::size_t c1 = line.find(',');
        std::size_t c2 = line.find(',', c1 + 1);
        if (c1 == std::string::npos || c2 == std::string::npos)
            throw IoError("contour CSV: malformed line: " + line);
        c.points.push_back({std::stod(line.substr(c1 + 1, c2 - c1 - 1)),
                            std::stod(line.substr(c2 + 1))});
    }
    return c;
}

}  // namespace ijv
