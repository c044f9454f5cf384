#pragma once

namespace twlab {

// Regularized lower incomplete gamma P(a, x) for a > 0, x >= 0.
// Series expansion for x < a + 1, Lentz continued fraction otherwise.
double lower_regularized_gamma(double a, double x);

// CDF of the chi distribution with real dof > 0: P(dof/2, x^2/2).
double chi_cdf(double x, double dof);

}  // namespace twlab
