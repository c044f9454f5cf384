#pragma once

#include <limits>
#include <vector>

#include "twlab/rng.hpp"
#include "twlab/tridiag.hpp"

namespace twlab {

// Sentinel for the noise-free (deterministic Airy) operator.
inline constexpr double kBetaInfinity = std::numeric_limits<double>::infinity();

// Uniform grid on (0, L) with Dirichlet truncation at both ends: interior
// nodes y_i = i*h, i = 1..m, m = round(L/h) - 1.
struct SaoGrid {
    double L = 0.0;
    double h = 0.0;
    std::size_t m = 0;

    static SaoGrid make(double L, double h);

    // y-coordinate of interior node j (0-based).
    double node(std::size_t j) const { return static_cast<double>(j + 1) * h; }
};

// Discretized operator -s d^2/dy^2 + y/s^2 + coef * b', kept in split form:
// matrix.diag[i] = det_diag[i] + noise_coef * increments[i]/h.  The split is
// what lets a coupled difference cancel the shared noise identically.
struct SaoOperator {
    double beta = kBetaInfinity;
    double s = 1.0;
    SaoGrid grid;
    TridiagMatrix matrix;
    NoisePath noise;                 // the path the operator was built from
    std::vector<double> det_diag;    // deterministic part of the diagonal
    double noise_coef = 0.0;         // 2/sqrt(s*beta), 0 when beta = inf
};

// Noise coefficient 2/sqrt(s*beta) of the discretized operator (0 at
// beta = inf).  Exposed so couplings can reuse the exact float value.
double sao_noise_coef(double beta, double s);

// Build the scaled stochastic Airy operator on `grid` from `noise`
// (noise step must equal grid.h and cover all m nodes).  s = 1 gives the
// unscaled operator; beta = kBetaInfinity drops the noise term.
SaoOperator discretize_sao(double beta, double s, const SaoGrid& grid, const NoisePath& noise);

// Deterministic operator -a d^2/dx^2 + b x on the same grid.
SaoOperator airy_operator(double a, double b, const SaoGrid& grid);

// Brownian path for `grid` plus one extra unit of extent (so windowed
// averages over [y, y+1] are defined up to y = L).
NoisePath sample_noise_for_grid(RandomStream& stream, const SaoGrid& grid);

// k leading Tracy-Widom(beta) values (-Lambda_0 >= -Lambda_1 >= ...) from a
// fresh noise path drawn off `stream`.
std::vector<double> sample_tw(RandomStream& stream, double beta, const SaoGrid& grid,
                              std::size_t k, double tol = 1e-8);

// Piecewise-linear test function sampled on a uniform grid of step h:
// values[i] = f(i*h).  Must vanish at both ends (compact support inside the
// domain).
struct TestFunction {
    double h = 0.0;
    std::vector<double> values;

    static TestFunction make(double h, std::vector<double> values);

    // trapezoid integral of f^2
    double norm2_squared() const;
};

// Quadratic form for compactly supported f: the trapezoid-rule value of
// int (f')^2 + y f^2 - (4/sqrt(beta)) int f f' b.
double quadratic_form_compact(const TestFunction& f, double beta, const NoisePath& noise);

// Same form evaluated through the windowed average bbar(y) = int_y^{y+1} b;
// requires noise extending one unit beyond the support of f.
double quadratic_form_averaged(const TestFunction& f, double beta, const NoisePath& noise);

}  // namespace twlab
