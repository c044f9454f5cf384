#include "twlab/ordering.hpp"

#include <algorithm>
#include <cmath>

#include "twlab/errors.hpp"
#include "twlab/stats.hpp"

namespace twlab {

namespace {

void validate_pair(double beta, double beta_prime, const char* who) {
    if (!(beta > 0.0)) throw InvalidParameter(std::string(who) + ": beta must be > 0");
    if (!(beta_prime > beta))
        throw InvalidParameter(std::string(who) + ": beta' must exceed beta");
}

}  // namespace

Interval admissible_s_range(double beta, double beta_prime) {
    validate_pair(beta, beta_prime, "admissible_s_range");
    return {std::cbrt(beta / beta_prime), std::cbrt(beta_prime / beta)};
}

Interval admissible_alpha_range(double beta, double beta_prime) {
    validate_pair(beta, beta_prime, "admissible_alpha_range");
    double r = beta_prime / beta;
    return {std::cbrt(r), std::cbrt(r * r)};
}

CouplingParams coupling_from_s(double beta, double beta_prime, double s) {
    validate_pair(beta, beta_prime, "coupling_from_s");
    if (!(s > 0.0)) throw InvalidParameter("coupling_from_s: s must be > 0");
    CouplingParams p;
    p.beta = beta;
    p.beta_prime = beta_prime;
    p.s = s;
    // gamma is the ratio of the two noise coefficients, which is where the
    // value sqrt(beta'/(s*beta)) comes from; computing it as the ratio makes
    // the cancellation in coupled_difference exact in floating point.
    p.gamma = sao_noise_coef(beta, s) / sao_noise_coef(beta_prime, 1.0);
    p.alpha = s * p.gamma;
    Interval range = admissible_s_range(beta, beta_prime);
    p.admissible = range.contains(s);
    return p;
}

SaoOperator difference_operator(const CouplingParams& params, const SaoGrid& grid) {
    double a = params.gamma - params.s;
    double b = params.gamma - 1.0 / (params.s * params.s);
    return airy_operator(a, b, grid);
}

TridiagMatrix coupled_difference(const CouplingParams& params, const SaoOperator& prime_op,
                                 const SaoOperator& base_op) {
    if (prime_op.s != 1.0 || prime_op.beta != params.beta_prime || base_op.beta != params.beta ||
        base_op.s != params.s)
        throw InvalidParameter("coupled_difference: operators do not match the coupling");
    if (prime_op.grid.m != base_op.grid.m || prime_op.grid.h != base_op.grid.h)
        throw InvalidParameter("coupled_difference: operators live on different grids");
    if (prime_op.noise.increments.size() != base_op.noise.increments.size())
        throw InvalidParameter("coupled_difference: operators must share one noise path");

    const std::size_t m = prime_op.grid.m;
    const double h = prime_op.grid.h;
    // gamma equals the coefficient ratio bit-for-bit, so the shared noise
    // cancels identically and the result is path-independent.
    const double ratio = base_op.noise_coef / prime_op.noise_coef;
    const double residual_coef = (params.gamma - ratio) * prime_op.noise_coef;

    TridiagMatrix diff;
    diff.diag.resize(m);
    diff.off.resize(m - 1);
    for (std::size_t i = 0; i < m; ++i) {
        diff.diag[i] = params.gamma * prime_op.det_diag[i] - base_op.det_diag[i] +
                       residual_coef * (base_op.noise.increments[i] / h);
    }
    for (std::size_t i = 0; i + 1 < m; ++i)
        diff.off[i] = params.gamma * prime_op.matrix.off[i] - base_op.matrix.off[i];
    return diff;
}

DominanceReport pathwise_spectrum_check(RandomStream& stream, const CouplingParams& params,
                                        const SaoGrid& grid, std::size_t k, double tol) {
    if (k < 1) throw InvalidParameter("pathwise_spectrum_check: k must be >= 1");

    NoisePath noise = sample_noise_for_grid(stream, grid);
    SaoOperator prime_op = discretize_sao(params.beta_prime, 1.0, grid, noise);
    SaoOperator base_op = discretize_sao(params.beta, params.s, grid, noise);

    SpectrumResult prime_spec = smallest_eigenvalues(prime_op.matrix, k, tol);
    SpectrumResult base_spec = smallest_eigenvalues(base_op.matrix, k, tol);

    DominanceReport report;
    report.params = params;
    report.tol = tol;
    report.eigen_pairs.reserve(k);
    report.dominated.reserve(k);
    report.all_dominated = true;
    for (std::size_t j = 0; j < k; ++j) {
        double lhs = params.gamma * prime_spec.eigenvalues[j];
        double rhs = base_spec.eigenvalues[j];
        bool ok = lhs >= rhs - 2.0 * tol;
        report.eigen_pairs.emplace_back(lhs, rhs);
        report.dominated.push_back(ok);
        report.all_dominated = report.all_dominated && ok;
    }

    TridiagMatrix diff = coupled_difference(params, prime_op, base_op);
    report.psd_certificate = is_positive_semidefinite(diff, 1e-9 * (1.0 + diff.inf_norm()));
    return report;
}

std::vector<std::pair<double, double>> coupled_tw_samples(RandomStream& stream,
                                                          const CouplingParams& params,
                                                          const SaoGrid& grid, std::size_t m,
                                                          double tol) {
    if (!params.admissible)
        throw InvalidParameter("coupled_tw_samples: coupling parameters are not admissible");
    if (m < 1) throw InvalidParameter("coupled_tw_samples: m must be >= 1");

    std::vector<std::pair<double, double>> pairs;
    pairs.reserve(m);
    for (std::size_t i = 0; i < m; ++i) {
        NoisePath noise = sample_noise_for_grid(stream, grid);
        SaoOperator base_op = discretize_sao(params.beta, params.s, grid, noise);
        SaoOperator prime_op = discretize_sao(params.beta_prime, 1.0, grid, noise);
        double lambda0_base = smallest_eigenvalues(base_op.matrix, 1, tol).eigenvalues[0];
        double lambda0_prime = smallest_eigenvalues(prime_op.matrix, 1, tol).eigenvalues[0];
        // t is a TW_beta sample through the scaling identity
        pairs.emplace_back(-params.s * lambda0_base, -lambda0_prime);
    }
    return pairs;
}

DominanceTest dominance_test(const std::vector<double>& x, const std::vector<double>& y,
                             double alpha, double delta) {
    if (x.empty() || y.empty()) throw InvalidParameter("dominance_test: empty sample");
    if (!(alpha > 0.0)) throw InvalidParameter("dominance_test: alpha must be > 0");

    std::vector<double> scaled(y.size());
    for (std::size_t i = 0; i < y.size(); ++i) scaled[i] = alpha * y[i];

    DominanceTest result;
    result.alpha = alpha;
    result.delta = delta;
    result.n_x = x.size();
    result.n_y = y.size();
    result.d_plus = one_sided_ks(Ecdf(x), Ecdf(std::move(scaled)));
    result.threshold = dkw_radius(x.size(), delta) + dkw_radius(y.size(), delta);
    result.rejected = result.d_plus > result.threshold;
    return result;
}

TailFit tail_slope(const std::vector<double>& samples, TailSide side) {
    if (samples.empty()) throw InsufficientData("tail_slope: empty sample");
    std::vector<double> sorted(samples);
    std::sort(sorted.begin(), sorted.end());
    const std::size_t n = sorted.size();
    const double mn = sorted.front();
    const double mx = sorted.back();
    const double range = mx - mn;

    // The power law only covers a > 0, so flip the lower tail onto the upper
    // one and fit a single orientation.
    std::vector<double> tail(n);
    if (side == TailSide::upper) {
        tail = sorted;
    } else {
        for (std::size_t i = 0; i < n; ++i) tail[i] = -sorted[n - 1 - i];
    }
    const double power = side == TailSide::upper ? 1.5 : 3.0;

    // Fit window: the outermost decile of the sample range, widened to at
    // least the outermost decile (by count) of the admissible a > 0 samples;
    // pure value windows can hold only a handful of points for light tails.
    const double cut = side == TailSide::upper ? mx - 0.1 * range : -(mn + 0.1 * range);
    std::size_t admissible = 0, in_window = 0;
    for (std::size_t i = 0; i < n; ++i) {
        double a = tail[n - 1 - i];
        if (a <= 0.0) break;
        ++admissible;
        if (a >= cut) ++in_window;
    }
    std::size_t window = std::max(in_window, (admissible + 9) / 10);

    // one point per distinct value, paired with the exact empirical
    // exceedance probability; the extreme point has p = 0 and is skipped
    std::vector<double> xs, ys;
    for (std::size_t k = 1; k <= window; ++k) {
        double a = tail[n - 1 - k];
        if (a <= 0.0) break;
        if (a == tail[n - k]) continue;  // tie: keep only the largest rank
        xs.push_back(std::pow(a, power));
        ys.push_back(-std::log(static_cast<double>(k) / static_cast<double>(n)));
    }

    if (xs.size() < 5)
        throw InsufficientData("tail_slope: fewer than 5 usable tail points");

    double mean_x = 0.0, mean_y = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        mean_x += xs[i];
        mean_y += ys[i];
    }
    mean_x /= static_cast<double>(xs.size());
    mean_y /= static_cast<double>(xs.size());
    double sxy = 0.0, sxx = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        sxy += (xs[i] - mean_x) * (ys[i] - mean_y);
        sxx += (xs[i] - mean_x) * (xs[i] - mean_x);
    }
    if (sxx == 0.0) throw InsufficientData("tail_slope: degenerate tail window");

    TailFit fit;
    fit.side = side;
    fit.slope = sxy / sxx;
    fit.points = xs.size();
    return fit;
}

}  // namespace twlab
