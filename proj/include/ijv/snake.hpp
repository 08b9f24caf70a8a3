//
// snake.hpp
//
// Active-contour solver: edge force field, cyclic pentadiagonal
// internal-energy system, area-constraint (balloon) force and the
// semi-implicit iteration.
//

#pragma once

#include "ijv/core.hpp"
#include "ijv/geometry.hpp"

namespace ijv {

struct SnakeParams {
    double alpha = 2.0;           // first-derivative weight
    double beta = 2.0;            // second-derivative weight
    double gamma = 2000.0;        // step damping
    double kappa_base = 0.98;     // kappa(t) = kappa_base^(-t)
    double kappa_cap = 20.0;
    double lumen_reference = 50.0;
    double w_scale = 2.0;
    int max_iterations = 300;
    double tol = 0.05;            // mean per-point displacement, pixels
};

// Gradient of the edge energy -|grad I|^2, plus the edge map itself
// (used for the energy trace).
struct ForceField {
    int width = 0;
    int height = 0;
    std::vector<double> fx, fy;  // gradient of -edge
    std::vector<double> edge;    // |grad I|^2
};

struct SnakeDiagnostics {
    int iterations_run = 0;
    double final_mean_displacement = 0.0;
    std::vector<double> energy_trace;        // size iterations_run + 1
    std::vector<double> displacement_trace;  // size iterations_run
    bool converged = false;
    bool collapsed = false;
};

struct SnakeResult {
    Contour contour;
    SnakeDiagnostics diagnostics;
};

// Cyclic pentadiagonal internal-energy matrix, row stencil
// [beta, -(alpha+4 beta), 2 alpha + 6 beta, -(alpha+4 beta), beta]
// around the diagonal with cyclic wraparound.
struct InternalMatrix {
    int n = 0;
    double alpha = 0.0;
    double beta = 0.0;

    double diag() const { return 2.0 * alpha + 6.0 * beta; }
    double off1() const { return -(alpha + 4.0 * beta); }
    double off2() const { return beta; }

    // Entry by cyclic distance between row and column.
    double entry(int i, int j) const;
    std::vector<double> apply(const std::vector<double>& v) const;
};

InternalMatrix build_internal_matrix(int n, double alpha, double beta);

// Prefactored solver for (B + gamma I) x = rhs. Pentadiagonal LU on the
// acyclic band plus a rank-4 Woodbury correction for the wraparound
// entries, finished with iterative refinement against the exact matrix.
class DampedSolver {
  public:
    DampedSolver(const InternalMatrix& B, double gamma);
    std::vector<double> solve(const std::vector<double>& rhs) const;

  private:
    std::vector<double> band_solve(const std::vector<double>& rhs) const;
    std::vector<double> apply_full(const std::vector<double>& v) const;

    InternalMatrix B_;
    double gamma_ = 0.0;
    int n_ = 0;
    // LU factors of the banded (acyclic) part, bandwidth 2.
    std::vector<double> lu_;            // n x 5 row-major (offsets -2..+2)
    std::vector<int> corner_rows_;      // rows carrying wraparound entries
    std::vector<std::vector<double>> Z_;  // K^-1 e_r for each corner row
    std::vector<double> W_;             // factored (I + V^T Z), k x k
    std::vector<int> W_piv_;
};

std::vector<double> solve_damped_system(const InternalMatrix& B, double gamma,
                                        const std::vector<double>& rhs);

ForceField external_force_field(const Frame& frame);

// Bilinear interpolation of (fx, fy) at a sub-pixel point.
Point sample_force(const ForceField& field, const Point& p);

// Bilinear interpolation of the edge map (for the energy trace).
double sample_edge(const ForceField& field, const Point& p);

double kappa(int t, const SnakeParams& params);

// w_c = w_scale * (mean interior intensity - lumen_reference); the
// interior is the rasterized contour. Throws on an empty interior.
double constraint_weight(const Frame& frame, const Contour& contour,
                         const SnakeParams& params);

Contour snake_step(const Contour& contour, const ForceField& field,
                   const Frame& frame, const InternalMatrix& B, int t,
                   const SnakeParams& params);

SnakeResult run_snake(const Contour& initial, const Frame& frame,
                      const SnakeParams& params);

double total_energy(const Contour& contour, const Frame& frame,
                    const ForceField& field, const SnakeParams& params);

}  // namespace ijv
