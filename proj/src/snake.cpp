#include "ijv/snake.hpp"

#include <algorithm>
#include <cmath>

namespace ijv {

namespace {

int cyclic_distance(int i, int j, int n) {
    const int d = std::abs(i - j);
    return std::min(d, n - d);
}

}  // namespace

double InternalMatrix::entry(int i, int j) const {
    switch (cyclic_distance(i, j, n)) {
        case 0: return diag();
        case 1: return off1();
        case 2: return off2();
        default: return 0.0;
    }
}

std::vector<double> InternalMatrix::apply(const std::vector<double>& v) const {
    std::vector<double> out(n, 0.0);
    for (int i = 0; i < n; ++i) {
        const int im1 = (i + n - 1) % n, im2 = (i + n - 2) % n;
        const int ip1 = (i + 1) % n, ip2 = (i + 2) % n;
        out[i] = off2() * (v[im2] + v[ip2]) + off1() * (v[im1] + v[ip1]) +
                 diag() * v[i];
    }
    return out;
}

InternalMatrix build_internal_matrix(int n, double alpha, double beta) {
    if (n < 5) throw Error("build_internal_matrix: n must be >= 5");
    if (alpha < 0.0 || beta < 0.0)
        throw Error("build_internal_matrix: negative weights");
    return InternalMatrix{n, alpha, beta};
}

// ---------------------------------------------------------------------------
// DampedSolver

DampedSolver::DampedSolver(const InternalMatrix& B, double gamma)
    : B_(B), gamma_(gamma), n_(B.n) {
    if (!(gamma > 0.0)) throw Error("solve_damped_system: gamma must be > 0");

    // Banded (acyclic) part of B + gamma I: entries with |i - j| <= 2.
    lu_.assign(static_cast<std::size_t>(n_) * 5, 0.0);
    auto at = [&](int i, int j) -> double& {
        return lu_[static_cast<std::size_t>(i) * 5 + (j - i + 2)];
    };
    for (int i = 0; i < n_; ++i)
        for (int j = std::max(0, i - 2); j <= std::min(n_ - 1, i + 2); ++j)
            at(i, j) = (i == j ? gamma_ : 0.0) +
                       (std::abs(i - j) == 0   ? B_.diag()
                        : std::abs(i - j) == 1 ? B_.off1()
                                               : B_.off2());

    // LU in place, no pivoting (the damped system is diagonally dominant
    // for the parameter ranges of interest; refinement catches the rest).
    for (int i = 1; i < n_; ++i) {
        for (int r = std::max(0, i - 2); r < i; ++r) {
            const double piv = at(r, r);
            if (piv == 0.0) throw Error("solve_damped_system: singular band");
            const double l = at(i, r) / piv;
            at(i, r) = l;
            for (int c = r + 1; c <= std::min(n_ - 1, r + 2); ++c)
                at(i, c) -= l * at(r, c);
        }
    }

    // Wraparound entries live in rows 0, 1, n-2, n-1.
    for (int r : {0, 1, n_ - 2, n_ - 1})
        if (corner_rows_.empty() || corner_rows_.back() != r)
            corner_rows_.push_back(r);

    bool any_corner = false;
    for (int r : corner_rows_)
        for (int j = 0; j < n_; ++j)
            if (std::abs(r - j) > 2 && B_.entry(r, j) != 0.0) any_corner = true;
    if (!any_corner) {
        corner_rows_.clear();
        return;
    }

    const int k = static_cast<int>(corner_rows_.size());
    Z_.resize(k);
    for (int c = 0; c < k; ++c) {
        std::vector<double> e(n_, 0.0);
        e[corner_rows_[c]] = 1.0;
        Z_[c] = band_solve(e);
    }

    // W = I + V^T Z, where column c of V holds row corner_rows_[c] of the
    // wraparound-only matrix.
    W_.assign(static_cast<std::size_t>(k) * k, 0.0);
    for (int r = 0; r < k; ++r)
        for (int c = 0; c < k; ++c) {
            double acc = (r == c) ? 1.0 : 0.0;
            const int row = corner_rows_[r];
            for (int j = 0; j < n_; ++j)
                if (std::abs(row - j) > 2) {
                    const double v = B_.entry(row, j);
                    if (v != 0.0) acc += v * Z_[c][j];
                }
            W_[static_cast<std::size_t>(r) * k + c] = acc;
        }

    // Partial-pivot LU of the k x k correction system.
    W_piv_.resize(k);
    for (int col = 0; col < k; ++col) {
        int piv = col;
        for (int r = col + 1; r < k; ++r)
            if (std::abs(W_[static_cast<std::size_t>(r) * k + col]) >
                std::abs(W_[static_cast<std::size_t>(piv) * k + col]))
                piv = r;
        W_piv_[col] = piv;
        if (piv != col)
            for (int c = 0; c < k; ++c)
                std::swap(W_[static_cast<std::size_t>(col) * k + c],
                          W_[static_cast<std::size_t>(piv) * k + c]);
        const double d = W_[static_cast<std::size_t>(col) * k + col];
        if (d == 0.0) throw Error("solve_damped_system: singular correction");
        for (int r = col + 1; r < k; ++r) {
            const double l = W_[static_cast<std::size_t>(r) * k + col] / d;
            W_[static_cast<std::size_t>(r) * k + col] = l;
            for (int c = col + 1; c < k; ++c)
                W_[static_cast<std::size_t>(r) * k + c] -=
                    l * W_[static_cast<std::size_t>(col) * k + c];
        }
    }
}

std::vector<double> DampedSolver::band_solve(
    const std::vector<double>& rhs) const {
    auto at = [&](int i, int j) {
        return lu_[static_cast<std::size_t>(i) * 5 + (j - i + 2)];
    };
    std::vector<double> x = rhs;
    for (int i = 0; i < n_; ++i)
        for (int j = std::max(0, i - 2); j < i; ++j) x[i] -= at(i, j) * x[j];
    for (int i = n_ - 1; i >= 0; --i) {
        for (int j = i + 1; j <= std::min(n_ - 1, i + 2); ++j)
            x[i] -= at(i, j) * x[j];
        x[i] /= at(i, i);
    }
    return x;
}

std::vector<double> DampedSolver::apply_full(
    const std::vector<double>& v) const {
    std::vector<double> out = B_.apply(v);
    for (int i = 0; i < n_; ++i) out[i] += gamma_ * v[i];
    return out;
}

std::vector<double> DampedSolver::solve(const std::vector<double>& rhs) const {
    if (static_cast<int>(rhs.size()) != n_)
        throw Error("solve_damped_system: size mismatch");

    auto woodbury = [&](const std::vector<double>& b) {
        std::vector<double> z = band_solve(b);
        const int k = static_cast<int>(corner_rows_.size());
        if (k == 0) return z;
        std::vector<double> vtz(k, 0.0);
        for (int r = 0; r < k; ++r) {
            const int row = corner_rows_[r];
            for (int j = 0; j < n_; ++j)
                if (std::abs(row - j) > 2) {
                    const double v = B_.entry(row, j);
                    if (v != 0.0) vtz[r] += v * z[j];
                }
        }
        // W^-1 vtz via the stored LU.
        for (int col = 0; col < k; ++col) {
            if (W_piv_[col] != col) std::swap(vtz[col], vtz[W_piv_[col]]);
            for (int r = col + 1; r < k; ++r)
                vtz[r] -= W_[static_cast<std::size_t>(r) * k + col] * vtz[col];
        }
        for (int i = k - 1; i >= 0; --i) {
            for (int j = i + 1; j < k; ++j)
                vtz[i] -= W_[static_cast<std::size_t>(i) * k + j] * vtz[j];
            vtz[i] /= W_[static_cast<std::size_t>(i) * k + i];
        }
        for (int c = 0; c < k; ++c)
            for (int i = 0; i < n_; ++i) z[i] -= Z_[c][i] * vtz[c];
        return z;
    };

    std::vector<double> x = woodbury(rhs);

    double rhs_norm = 0.0;
    for (double v : rhs) rhs_norm = std::max(rhs_norm, std::abs(v));
    const double tol = 1e-10 * (1.0 + rhs_norm);

    for (int pass = 0; pass < 5; ++pass) {
        const std::vector<double> mx = apply_full(x);
        std::vector<double> resid(n_);
        double rn = 0.0;
        for (int i = 0; i < n_; ++i) {
            resid[i] = rhs[i] - mx[i];
            rn = std::max(rn, std::abs(resid[i]));
        }
        if (rn <= tol) return x;
        const std::vector<double> dx = woodbury(resid);
        for (int i = 0; i < n_; ++i) x[i] += dx[i];
    }

    // Final residual check at the contract tolerance.
    const std::vector<double> mx = apply_full(x);
    double rn = 0.0;
    for (int i = 0; i < n_; ++i) rn = std::max(rn, std::abs(rhs[i] - mx[i]));
    if (rn > 1e-8 * (1.0 + rhs_norm))
        throw Error("solve_damped_system: residual did not converge");
    return x;
}

std::vector<double> solve_damped_system(const InternalMatrix& B, double gamma,
                                        const std::vector<double>& rhs) {
    return DampedSolver(B, gamma).solve(rhs);
}

// ---------------------------------------------------------------------------
// Force field

ForceField external_force_field(const Frame& frame) {
    const int w = frame.width, h = frame.height;
    ForceField f;
    f.width = w;
    f.height = h;
    f.edge.resize(static_cast<std::size_t>(w) * h);
    f.fx.resize(f.edge.size());
    f.fy.resize(f.edge.size());

    auto I = [&](int x, int y) {
        return static_cast<double>(
            frame.at(std::clamp(x, 0, w - 1), std::clamp(y, 0, h - 1)));
    };
    for (int y = 0; y < h; ++y)
        for (int x = 0; x < w; ++x) {
            const double gx = (I(x + 1, y) - I(x - 1, y)) / 2.0;
            const double gy = (I(x, y + 1) - I(x, y - 1)) / 2.0;
            f.edge[static_cast<std::size_t>(y) * w + x] = gx * gx + gy * gy;
        }
    auto G = [&](int x, int y) {
        return f.edge[static_cast<std::size_t>(std::clamp(y, 0, h - 1)) * w +
                      std::clamp(x, 0, w - 1)];
    };
    for (int y = 0; y < h; ++y)
        for (int x = 0; x < w; ++x) {
            f.fx[static_cast<std::size_t>(y) * w + x] =
                -(G(x + 1, y) - G(x - 1, y)) / 2.0;
            f.fy[static_cast<std::size_t>(y) * w + x] =
                -(G(x, y + 1) - G(x, y - 1)) / 2.0;
        }
    return f;
}

namespace {

double bilinear(const std::vector<double>& grid, int w, int h, double x,
                double y) {
    const int x0 = std::clamp(static_cast<int>(std::floor(x)), 0, w - 1);
    const int y0 = std::clamp(static_cast<int>(std::floor(y)), 0, h - 1);
    const int x1 = std::min(x0 + 1, w - 1);
    const int y1 = std::min(y0 + 1, h - 1);
    const double tx = x - x0;
    const double ty = y - y0;
    const double v00 = grid[static_cast<std::size_t>(y0) * w + x0];
    const double v10 = grid[static_cast<std::size_t>(y0) * w + x1];
    const double v01 = grid[static_cast<std::size_t>(y1) * w + x0];
    const double v11 = grid[static_cast<std::size_t>(y1) * w + x1];
    return (1 - ty) * ((1 - tx) * v00 + tx * v10) +
           ty * ((1 - tx) * v01 + tx * v11);
}

void check_in_field(const ForceField& field, const Point& p) {
    if (p.x < 0.0 || p.x > field.width - 1 || p.y < 0.0 ||
        p.y > field.height - 1)
        throw Error("sample_force: point outside the field");
}

}  // namespace

Point sample_force(const ForceField& field, const Point& p) {
    check_in_field(field, p);
    return {bilinear(field.fx, field.width, field.height, p.x, p.y),
            bilinear(field.fy, field.width, field.height, p.x, p.y)};
}

double sample_edge(const ForceField& field, const Point& p) {
    check_in_field(field, p);
    return bilinear(field.edge, field.width, field.height, p.x, p.y);
}

// ---------------------------------------------------------------------------
// Iteration

double kappa(int t, const SnakeParams& params) {
    if (t < 0) throw Error("kappa: negative iteration index");
    return std::min(std::pow(params.kappa_base, -static_cast<double>(t)),
                    params.kappa_cap);
}

namespace {

// Mean interior intensity, or no value when the interior rasterizes to
// nothing.
bool interior_mean(const Frame& frame, const Contour& contour, double* out) {
    const Mask m = rasterize_contour(contour, frame.width, frame.height);
    std::size_t count = 0;
    double sum = 0.0;
    for (std::size_t i = 0; i < m.bits.size(); ++i)
        if (m.bits[i]) {
            sum += frame.data[i];
            ++count;
        }
    if (count == 0) return false;
    *out = sum / static_cast<double>(count);
    return true;
}

void validate(const SnakeParams& p) {
    if (!(p.gamma > 0.0)) throw Error("snake: gamma must be > 0");
    if (!(p.kappa_base > 0.0 && p.kappa_base < 1.0))
        throw Error("snake: kappa_base must be in (0, 1)");
    if (p.alpha < 0.0 || p.beta < 0.0)
        throw Error("snake: alpha and beta must be >= 0");
    if (p.max_iterations < 1) throw Error("snake: max_iterations must be >= 1");
    if (!(p.tol > 0.0)) throw Error("snake: tol must be > 0");
}

Contour step_impl(const Contour& contour, const ForceField& field,
                  const Frame& frame, const DampedSolver& solver, int t,
                  const SnakeParams& params) {
    const std::size_t n = contour.size();
    const double k = kappa(t, params);

    double wc = 0.0;
    std::vector<Point> agrad(n, Point{0.0, 0.0});
    double mean = 0.0;
    // A vanished interior or a degenerate polygon contributes no
    // constraint force; run_snake flags the collapse separately.
    if (interior_mean(frame, contour, &mean) &&
        std::abs(signed_area(contour)) >= 1e-12) {
        wc = params.w_scale * (mean - params.lumen_reference);
        agrad = area_gradient(contour);
    }

    std::vector<double> rhs_x(n), rhs_y(n);
    for (std::size_t i = 0; i < n; ++i) {
        Point p = contour.points[i];
        p.x = std::clamp(p.x, 0.0, static_cast<double>(field.width - 1));
        p.y = std::clamp(p.y, 0.0, static_cast<double>(field.height - 1));
        const Point f = sample_force(field, p);
        rhs_x[i] = params.gamma * contour.points[i].x - k * f.x - wc * agrad[i].x;
        rhs_y[i] = params.gamma * contour.points[i].y - k * f.y - wc * agrad[i].y;
    }

    const std::vector<double> xs = solver.solve(rhs_x);
    const std::vector<double> ys = solver.solve(rhs_y);

    Contour out;
    out.points.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        out.points[i].x =
            std::clamp(xs[i], 0.0, static_cast<double>(field.width - 1));
        out.points[i].y =
            std::clamp(ys[i], 0.0, static_cast<double>(field.height - 1));
    }
    return out;
}

}  // namespace

double constraint_weight(const Frame& frame, const Contour& contour,
                         const SnakeParams& params) {
    double mean = 0.0;
    if (!interior_mean(frame, contour, &mean))
        throw Error("constraint_weight: contour interior rasterizes to 0 pixels");
    return params.w_scale * (mean - params.lumen_reference);
}

Contour snake_step(const Contour& contour, const ForceField& field,
                   const Frame& frame, const InternalMatrix& B, int t,
                   const SnakeParams& params) {
    if (B.n != static_cast<int>(contour.size()))
        throw Error("snake_step: matrix size does not match contour");
    return step_impl(contour, field, frame, DampedSolver(B, params.gamma), t,
                     params);
}

double total_energy(const Contour& contour, const Frame& frame,
                    const ForceField& field, const SnakeParams& params) {
    const std::size_t n = contour.size();
    if (n < 3) throw Error("total_energy: need at least 3 points");

    double image = 0.0;
    for (const Point& p : contour.points) {
        Point q{std::clamp(p.x, 0.0, static_cast<double>(field.width - 1)),
                std::clamp(p.y, 0.0, static_cast<double>(field.height - 1))};
        image -= sample_edge(field, q);
    }

    double internal = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const Point& prev = contour.points[(i + n - 1) % n];
        const Point& cur = contour.points[i];
        const Point& next = contour.points[(i + 1) % n];
        const double dx = next.x - cur.x, dy = next.y - cur.y;
        const double d2x = next.x - 2.0 * cur.x + prev.x;
        const double d2y = next.y - 2.0 * cur.y + prev.y;
        internal += params.alpha * (dx * dx + dy * dy) +
                    params.beta * (d2x * d2x + d2y * d2y);
    }

    double constraint = 0.0;
    double mean = 0.0;
    if (interior_mean(frame, contour, &mean))
        constraint = params.w_scale * (mean - params.lumen_reference) *
                     polygon_area(contour);

    return image + internal + constraint;
}

SnakeResult run_snake(const Contour& initial, const Frame& frame,
                      const SnakeParams& params) {
    validate(params);
    const int n = static_cast<int>(initial.size());
    if (n < 5) throw Error("run_snake: need at least 5 contour points");

    const ForceField field = external_force_field(frame);
    const InternalMatrix B = build_internal_matrix(n, params.alpha, params.beta);
    const DampedSolver solver(B, params.gamma);

    SnakeResult res;
    res.contour = initial;
    res.diagnostics.energy_trace.push_back(
        total_energy(res.contour, frame, field, params));

    for (int t = 1; t <= params.max_iterations; ++t) {
        if (polygon_area(res.contour) < 3.0) {
            res.diagnostics.collapsed = true;
            break;
        }
        const Contour next =
            step_impl(res.contour, field, frame, solver, t, params);

        double disp = 0.0;
        for (int i = 0; i < n; ++i)
            disp += std::hypot(next.points[i].x - res.contour.points[i].x,
                               next.points[i].y - res.contour.points[i].y);
        disp /= n;

        res.contour = next;
        res.diagnostics.iterations_run = t;
        res.diagnostics.displacement_trace.push_back(disp);
        res.diagnostics.final_mean_displacement = disp;
        res.diagnostics.energy_trace.push_back(
            total_energy(res.contour, frame, field, params));

        if (polygon_area(res.contour) < 3.0) {
            res.diagnostics.collapsed = true;
            break;
        }
        if (disp < params.tol) {
            res.diagnostics.converged = true;
            break;
        }
    }
    return res;
}

}  // namespace ijv
