#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "twlab/rng.hpp"
#include "twlab/sao.hpp"
#include "twlab/tridiag.hpp"

namespace twlab {

struct Interval {
    double lo = 0.0;
    double hi = 0.0;

    bool contains(double x) const { return lo <= x && x <= hi; }
};

// Parameters of the shared-noise coupling between H_{beta'} and H_beta^s.
// gamma is the exact float ratio of the two noise coefficients
// (2/sqrt(s*beta)) / (2/sqrt(beta')), which equals sqrt(beta'/(s*beta));
// alpha = s * gamma.  The coupling certifies eigenvalue dominance exactly
// when s lies in the admissible range.
struct CouplingParams {
    double beta = 0.0;
    double beta_prime = 0.0;
    double s = 1.0;
    double gamma = 0.0;
    double alpha = 0.0;
    bool admissible = false;
};

// Closed s-interval [(beta/beta')^{1/3}, (beta'/beta)^{1/3}] on which the
// difference gamma H_{beta'} - H_beta^s is positive semidefinite.
Interval admissible_s_range(double beta, double beta_prime);

// Closed alpha-interval [(beta'/beta)^{1/3}, (beta'/beta)^{2/3}].
Interval admissible_alpha_range(double beta, double beta_prime);

CouplingParams coupling_from_s(double beta, double beta_prime, double s);

// Deterministic difference gamma H_{beta'} - H_beta^s, which is the Airy-type
// operator A_{a,b} with a = gamma - s, b = gamma - 1/s^2.
SaoOperator difference_operator(const CouplingParams& params, const SaoGrid& grid);

// gamma * prime_op - base_op for two operators built on one shared noise
// path.  The shared stochastic terms cancel identically (gamma is the exact
// coefficient ratio), so the result does not depend on the path.
TridiagMatrix coupled_difference(const CouplingParams& params, const SaoOperator& prime_op,
                                 const SaoOperator& base_op);

// Per-index eigenvalue dominance on a single shared noise path.
struct DominanceReport {
    CouplingParams params;
    std::vector<std::pair<double, double>> eigen_pairs;  // (gamma*lambda_k', lambda_k^s)
    std::vector<bool> dominated;
    PsdCertificate psd_certificate;
    double tol = 0.0;
    bool all_dominated = false;
};

DominanceReport pathwise_spectrum_check(RandomStream& stream, const CouplingParams& params,
                                        const SaoGrid& grid, std::size_t k, double tol = 1e-8);

// m coupled pairs (t, t') with t a TW_beta sample recovered through the
// scaling identity (t = -s * lambda_0(H_beta^s)) and t' = -lambda_0(H_beta')
// on the same path.  For admissible params every pair satisfies
// t >= alpha * t' up to solver tolerance.
std::vector<std::pair<double, double>> coupled_tw_samples(RandomStream& stream,
                                                          const CouplingParams& params,
                                                          const SaoGrid& grid, std::size_t m,
                                                          double tol = 1e-8);

// One-sided ECDF test of "x stochastically dominates alpha * y" with a
// distribution-free DKW threshold.
struct DominanceTest {
    double alpha = 0.0;
    double delta = 0.0;
    double d_plus = 0.0;
    double threshold = 0.0;
    bool rejected = false;
    std::size_t n_x = 0;
    std::size_t n_y = 0;
};

DominanceTest dominance_test(const std::vector<double>& x, const std::vector<double>& y,
                             double alpha, double delta = 0.05);

enum class TailSide { upper, lower };

// Least-squares slope of -log(empirical tail probability) against a^{3/2}
// (upper tail) or a^3 (lower tail), fitted over the outermost decile of the
// sample range.  Theory for TW_beta predicts 2*beta/3 and beta/24.
struct TailFit {
    TailSide side = TailSide::upper;
    double slope = 0.0;
    std::size_t points = 0;
};

TailFit tail_slope(const std::vector<double>& samples, TailSide side);

}  // namespace twlab
