#include "twlab/sao.hpp"

#include <cmath>
#include <string>

#include "twlab/errors.hpp"

namespace twlab {

SaoGrid SaoGrid::make(double L, double h) {
    if (!(L > 0.0) || !(h > 0.0)) throw InvalidParameter("SaoGrid: L and h must be > 0");
    long long m = std::llround(L / h) - 1;
    if (m < 2) throw InvalidParameter("SaoGrid: need at least 2 interior points");
    SaoGrid g;
    g.L = L;
    g.h = h;
    g.m = static_cast<std::size_t>(m);
    return g;
}

double sao_noise_coef(double beta, double s) {
    if (std::isinf(beta)) return 0.0;
    return 2.0 / std::sqrt(s * beta);
}

SaoOperator discretize_sao(double beta, double s, const SaoGrid& grid, const NoisePath& noise) {
    if (!(beta > 0.0)) throw InvalidParameter("discretize_sao: beta must be > 0 (or infinity)");
    if (!(s > 0.0)) throw InvalidParameter("discretize_sao: s must be > 0");
    const bool deterministic = std::isinf(beta);
    if (!deterministic) {
        if (std::abs(noise.h - grid.h) > 1e-12 * grid.h)
            throw InvalidParameter("discretize_sao: noise step does not match grid step");
        if (noise.increments.size() < grid.m)
            throw InvalidParameter("discretize_sao: noise path shorter than grid");
    }

    SaoOperator op;
    op.beta = beta;
    op.s = s;
    op.grid = grid;
    op.noise = noise;
    op.noise_coef = sao_noise_coef(beta, s);

    const double h = grid.h;
    const double lap = 2.0 * s / (h * h);
    const double inv_s2 = 1.0 / (s * s);
    op.det_diag.resize(grid.m);
    op.matrix.diag.resize(grid.m);
    op.matrix.off.assign(grid.m - 1, -s / (h * h));
    for (std::size_t i = 0; i < grid.m; ++i) {
        op.det_diag[i] = lap + grid.node(i) * inv_s2;
        double d = op.det_diag[i];
        if (!deterministic) d += op.noise_coef * (noise.increments[i] / h);
        op.matrix.diag[i] = d;
    }
    return op;
}

SaoOperator airy_operator(double a, double b, const SaoGrid& grid) {
    SaoOperator op;
    op.beta = kBetaInfinity;
    op.s = 1.0;
    op.grid = grid;
    op.noise_coef = 0.0;

    const double h = grid.h;
    op.det_diag.resize(grid.m);
    op.matrix.diag.resize(grid.m);
    op.matrix.off.assign(grid.m - 1, -a / (h * h));
    for (std::size_t i = 0; i < grid.m; ++i) {
        op.det_diag[i] = 2.0 * a / (h * h) + b * grid.node(i);
        op.matrix.diag[i] = op.det_diag[i];
    }
    return op;
}

NoisePath sample_noise_for_grid(RandomStream& stream, const SaoGrid& grid) {
    // one extra unit of path beyond L keeps windowed averages defined
    auto m = static_cast<std::size_t>(std::llround((grid.L + 1.0) / grid.h));
    return sample_brownian(stream, grid.h, m);
}

std::vector<double> sample_tw(RandomStream& stream, double beta, const SaoGrid& grid,
                              std::size_t k, double tol) {
    if (k < 1) throw InvalidParameter("sample_tw: k must be >= 1");
    NoisePath noise = sample_noise_for_grid(stream, grid);
    SaoOperator op = discretize_sao(beta, 1.0, grid, noise);
    SpectrumResult spec = smallest_eigenvalues(op.matrix, k, tol);
    std::vector<double> tw(k);
    for (std::size_t j = 0; j < k; ++j) tw[j] = -spec.eigenvalues[j];
    return tw;
}

TestFunction TestFunction::make(double h, std::vector<double> values) {
    if (!(h > 0.0)) throw InvalidParameter("TestFunction: h must be > 0");
    if (values.size() < 2) throw InvalidParameter("TestFunction: need at least 2 nodes");
    if (values.front() != 0.0 || values.back() != 0.0)
        throw InvalidParameter("TestFunction: must vanish at both ends (compact support)");
    for (double v : values)
        if (!std::isfinite(v)) throw InvalidParameter("TestFunction: non-finite value");
    TestFunction f;
    f.h = h;
    f.values = std::move(values);
    return f;
}

double TestFunction::norm2_squared() const {
    double acc = 0.0;
    for (std::size_t i = 0; i + 1 < values.size(); ++i)
        acc += 0.5 * (values[i] * values[i] + values[i + 1] * values[i + 1]);
    return acc * h;
}

namespace {

void check_noise_grid(const TestFunction& f, const NoisePath& noise, std::size_t needed,
                      const char* who) {
    if (std::abs(noise.h - f.h) > 1e-12 * f.h)
        throw InvalidParameter(std::string(who) + ": noise step does not match function grid");
    if (noise.increments.size() < needed)
        throw InvalidParameter(std::string(who) + ": noise path does not cover the support");
}

// deterministic part: trapezoid of (f')^2 + x f^2
double deterministic_part(const TestFunction& f) {
    const double h = f.h;
    const auto& v = f.values;
    double energy = 0.0;
    for (std::size_t i = 0; i + 1 < v.size(); ++i) {
        double df = (v[i + 1] - v[i]) / h;
        energy += df * df * h;
    }
    double potential = 0.0;
    for (std::size_t i = 0; i < v.size(); ++i) {
        double x = static_cast<double>(i) * h;
        double w = (i == 0 || i + 1 == v.size()) ? 0.5 : 1.0;
        potential += w * x * v[i] * v[i];
    }
    return energy + potential * h;
}

std::vector<double> path_nodes(const NoisePath& noise, std::size_t count) {
    std::vector<double> b(count, 0.0);
    for (std::size_t i = 1; i < count; ++i) b[i] = b[i - 1] + noise.increments[i - 1];
    return b;
}

// midpoint-in-cell rule for int f f' g dx with piecewise-linear f and g
// sampled at the nodes
double cell_rule_ffprime(const std::vector<double>& v, const std::vector<double>& g) {
    double acc = 0.0;
    for (std::size_t i = 0; i + 1 < v.size(); ++i)
        acc += (v[i + 1] - v[i]) * 0.5 * (v[i] + v[i + 1]) * 0.5 * (g[i] + g[i + 1]);
    return acc;  // the two h factors of f' dx cancel
}

}  // namespace

double quadratic_form_compact(const TestFunction& f, double beta, const NoisePath& noise) {
    if (!(beta > 0.0)) throw InvalidParameter("quadratic_form_compact: beta must be > 0");
    double det = deterministic_part(f);
    if (std::isinf(beta)) return det;

    check_noise_grid(f, noise, f.values.size() - 1, "quadratic_form_compact");
    std::vector<double> b = path_nodes(noise, f.values.size());
    double noise_integral = cell_rule_ffprime(f.values, b);  // int f f' b
    return det - (4.0 / std::sqrt(beta)) * noise_integral;
}

double quadratic_form_averaged(const TestFunction& f, double beta, const NoisePath& noise) {
    if (!(beta > 0.0)) throw InvalidParameter("quadratic_form_averaged: beta must be > 0");
    double det = deterministic_part(f);
    if (std::isinf(beta)) return det;

    const double h = f.h;
    const std::size_t n = f.values.size();
    const auto w = static_cast<std::size_t>(std::llround(1.0 / h));
    if (w < 1) throw InvalidParameter("quadratic_form_averaged: step too coarse for the unit window");
    check_noise_grid(f, noise, n - 1 + w, "quadratic_form_averaged");

    std::vector<double> b = path_nodes(noise, n + w);

    // bbar(x_i) = trapezoid of b over [x_i, x_i + 1]
    std::vector<double> bbar(n, 0.0);
    double window = 0.5 * (b[0] + b[w]);
    for (std::size_t j = 1; j < w; ++j) window += b[j];
    bbar[0] = window * h;
    for (std::size_t i = 1; i < n; ++i) {
        window += 0.5 * (b[i + w] + b[i + w - 1]) - 0.5 * (b[i] + b[i - 1]);
        bbar[i] = window * h;
    }

    // int f^2 bbar' dx with bbar'(x) = b(x+1) - b(x)
    double term1 = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        double weight = (i == 0 || i + 1 == n) ? 0.5 : 1.0;
        term1 += weight * f.values[i] * f.values[i] * (b[i + w] - b[i]);
    }
    term1 *= h;

    // int f f' (b - bbar) dx
    std::vector<double> diff(n);
    for (std::size_t i = 0; i < n; ++i) diff[i] = b[i] - bbar[i];
    double term2 = cell_rule_ffprime(f.values, diff);

    return det + (2.0 / std::sqrt(beta)) * (term1 - 2.0 * term2);
}

}  // namespace twlab
