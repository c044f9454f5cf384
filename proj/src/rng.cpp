#include "twlab/rng.hpp"

#include <cmath>
#include <string>

#include "twlab/errors.hpp"
#include "twlab/special.hpp"

namespace twlab {

namespace {

constexpr std::uint64_t kGolden = 0x9e3779b97f4a7c15ULL;

// SplitMix64 finalizer; statistically strong enough as a 64->64 mixer for
// Monte Carlo work.
std::uint64_t mix64(std::uint64_t z) {
    z ^= z >> 30;
    z *= 0xbf58476d1ce4e5b9ULL;
    z ^= z >> 27;
    z *= 0x94d049bb133111ebULL;
    z ^= z >> 31;
    return z;
}

}  // namespace

RandomStream::RandomStream(std::uint64_t seed, std::uint64_t stream_id)
    : seed_(seed), stream_id_(stream_id) {
    // Two mixing rounds decorrelate streams whose (seed, id) differ in few
    // bits.
    base_ = mix64(mix64(seed ^ 0x5851f42d4c957f2dULL) + mix64(stream_id ^ 0x14057b7ef767814fULL));
}

std::uint64_t RandomStream::next_u64() {
    ++position_;
    return mix64(base_ + position_ * kGolden);
}

double RandomStream::next_uniform() {
    // 53 random bits, shifted into (0,1) by a half-step so inverse CDFs never
    // see an endpoint.
    return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
}

double NoisePath::node(std::size_t i) const {
    double b = 0.0;
    for (std::size_t j = 0; j < i; ++j) b += increments[j];
    return b;
}

double normal_inverse_cdf(double u) {
    if (!(u > 0.0 && u < 1.0)) throw InvalidParameter("normal_inverse_cdf: u must be in (0,1)");

    // Acklam's rational initial guess, then one Halley step against
    // 0.5*erfc(-x/sqrt(2)).  The final accuracy is ~1 ulp and the map is
    // antisymmetric about u = 1/2 by construction.
    static const double a[] = {-3.969683028665376e+01, 2.209460984245205e+02,
                               -2.759285104469687e+02, 1.383577518672690e+02,
                               -3.066479806614716e+01, 2.506628277459239e+00};
    static const double b[] = {-5.447609879822406e+01, 1.615858368580409e+02,
                               -1.556989798598866e+02, 6.680131188771972e+01,
                               -1.328068155288572e+01};
    static const double c[] = {-7.784894002430293e-03, -3.223964580411365e-01,
                               -2.400758277161838e+00, -2.549732539343734e+00,
                               4.374664141464968e+00,  2.938163982698783e+00};
    static const double d[] = {7.784695709041462e-03, 3.224671290700398e-01,
                               2.445134137142996e+00, 3.754408661907416e+00};

    const double plow = 0.02425;
    double x;
    if (u < plow) {
        double q = std::sqrt(-2.0 * std::log(u));
        x = (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
            ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
    } else if (u > 1.0 - plow) {
        double q = std::sqrt(-2.0 * std::log(1.0 - u));
        x = -(((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
            ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
    } else {
        double q = u - 0.5;
        double r = q * q;
        x = (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * q /
            (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0);
    }

    // Halley refinement
    const double inv_sqrt2pi = 0.3989422804014326779;
    double e = 0.5 * std::erfc(-x * M_SQRT1_2) - u;
    double pdf = inv_sqrt2pi * std::exp(-0.5 * x * x);
    if (pdf > 0.0) {
        double w = e / pdf;
        x -= w / (1.0 + 0.5 * x * w);
    }
    return x;
}

double sample_gaussian(RandomStream& stream, double mu, double sigma) {
    if (!(sigma >= 0.0)) throw InvalidParameter("sample_gaussian: sigma must be >= 0");
    double z = normal_inverse_cdf(stream.next_uniform());
    return mu + sigma * z;
}

namespace {

// Marsaglia-Tsang gamma(alpha, 1) for alpha >= 1.
double sample_gamma_unit(RandomStream& stream, double alpha) {
    double d = alpha - 1.0 / 3.0;
    double c = 1.0 / std::sqrt(9.0 * d);
    for (;;) {
        double x = normal_inverse_cdf(stream.next_uniform());
        double t = 1.0 + c * x;
        if (t <= 0.0) continue;
        double v = t * t * t;
        double u = stream.next_uniform();
        if (std::log(u) < 0.5 * x * x + d - d * v + d * std::log(v)) return d * v;
    }
}

double sample_gamma(RandomStream& stream, double alpha) {
    if (alpha >= 1.0) return sample_gamma_unit(stream, alpha);
    // boost by one and rescale with a uniform power
    double g = sample_gamma_unit(stream, alpha + 1.0);
    double u = stream.next_uniform();
    return g * std::pow(u, 1.0 / alpha);
}

}  // namespace

double sample_chi(RandomStream& stream, double dof) {
    if (!(dof > 0.0)) throw InvalidParameter("sample_chi: dof must be > 0");
    // chi^2(dof) = Gamma(dof/2, scale 2)
    return std::sqrt(2.0 * sample_gamma(stream, 0.5 * dof));
}

double chi_inverse_cdf(double u, double dof) {
    if (!(u > 0.0 && u < 1.0)) throw InvalidParameter("chi_inverse_cdf: u must be in (0,1)");
    if (!(dof > 0.0)) throw InvalidParameter("chi_inverse_cdf: dof must be > 0");

    // Bracket the quantile, then bisect on the CDF.  The mean-based upper
    // seed grows geometrically until it covers u.
    double lo = 0.0;
    double hi = std::sqrt(dof) + 8.0 * std::sqrt(0.5) + 8.0;
    while (chi_cdf(hi, dof) < u) hi *= 2.0;

    for (int it = 0; it < 200; ++it) {
        double mid = 0.5 * (lo + hi);
        double f = chi_cdf(mid, dof) - u;
        if (std::abs(f) <= 1e-14) return mid;
        if (f < 0.0)
            lo = mid;
        else
            hi = mid;
        if (hi - lo <= 1e-13 * (1.0 + mid)) break;
    }
    return 0.5 * (lo + hi);
}

NoisePath sample_brownian(RandomStream& stream, double h, std::size_t m) {
    if (!(h > 0.0)) throw InvalidParameter("sample_brownian: h must be > 0");
    if (m < 1) throw InvalidParameter("sample_brownian: m must be >= 1");
    NoisePath path;
    path.h = h;
    path.increments.resize(m);
    double sd = std::sqrt(h);
    for (std::size_t i = 0; i < m; ++i)
        path.increments[i] = sd * normal_inverse_cdf(stream.next_uniform());
    return path;
}

}  // namespace twlab
