#pragma once

#include <cstddef>
#include <vector>

namespace twlab {

// Empirical CDF: F(t) = #{x_i <= t} / n, a right-continuous step function.
class Ecdf {
public:
    explicit Ecdf(std::vector<double> samples);

    double operator()(double t) const;

    // left limit F(t-)
    double at_minus(double t) const;

    const std::vector<double>& sorted() const { return sorted_; }
    std::size_t n() const { return sorted_.size(); }

private:
    std::vector<double> sorted_;
};

inline Ecdf ecdf(std::vector<double> samples) { return Ecdf(std::move(samples)); }

// One-sided Kolmogorov-Smirnov statistic D+ = sup_t (F_x(t) - F_y(t)),
// evaluated at the pooled jump points and their left limits (exact for step
// functions).  Small D+ is evidence that x stochastically dominates y.
double one_sided_ks(const Ecdf& x, const Ecdf& y);

// Dvoretzky-Kiefer-Wolfowitz radius sqrt(ln(2/delta) / (2n)): with
// probability >= 1 - delta the ECDF of n samples stays within this band of
// the true CDF.
double dkw_radius(std::size_t n, double delta);

}  // namespace twlab
