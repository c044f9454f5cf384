#include "twlab/stats.hpp"

#include <algorithm>
#include <cmath>

#include "twlab/errors.hpp"

namespace twlab {

Ecdf::Ecdf(std::vector<double> samples) : sorted_(std::move(samples)) {
    if (sorted_.empty()) throw InvalidParameter("ecdf: empty sample");
    std::sort(sorted_.begin(), sorted_.end());
}

double Ecdf::operator()(double t) const {
    auto it = std::upper_bound(sorted_.begin(), sorted_.end(), t);
    return static_cast<double>(it - sorted_.begin()) / static_cast<double>(sorted_.size());
}

double Ecdf::at_minus(double t) const {
    auto it = std::lower_bound(sorted_.begin(), sorted_.end(), t);
    return static_cast<double>(it - sorted_.begin()) / static_cast<double>(sorted_.size());
}

double one_sided_ks(const Ecdf& x, const Ecdf& y) {
    // Both CDFs are steps, so the sup is attained at a pooled jump point or
    // its left limit; below every sample the difference is 0.
    double d = 0.0;
    auto scan = [&](const std::vector<double>& pts) {
        for (double t : pts) {
            d = std::max(d, x(t) - y(t));
            d = std::max(d, x.at_minus(t) - y.at_minus(t));
        }
    };
    scan(x.sorted());
    scan(y.sorted());
    return d;
}

double dkw_radius(std::size_t n, double delta) {
    if (n < 1) throw InvalidParameter("dkw_radius: n must be >= 1");
    if (!(delta > 0.0 && delta < 1.0)) throw InvalidParameter("dkw_radius: delta must be in (0,1)");
    return std::sqrt(std::log(2.0 / delta) / (2.0 * static_cast<double>(n)));
}

}  // namespace twlab
