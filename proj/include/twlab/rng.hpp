#pragma once

#include <cstdint>
#include <vector>

namespace twlab {

// Counter-based random stream: every output is a pure function of
// (seed, stream_id, position), so runs are reproducible bit-for-bit on any
// platform and parallel workers can claim independent streams without
// coordination.  One stream per task; streams are not thread-safe objects.
class RandomStream {
public:
    RandomStream(std::uint64_t seed, std::uint64_t stream_id);

    std::uint64_t seed() const { return seed_; }
    std::uint64_t stream_id() const { return stream_id_; }
    std::uint64_t position() const { return position_; }

    // Next raw 64-bit word.
    std::uint64_t next_u64();

    // Uniform on the open interval (0,1); never returns an endpoint, so the
    // value is safe to feed through an inverse CDF.
    double next_uniform();

private:
    std::uint64_t seed_;
    std::uint64_t stream_id_;
    std::uint64_t base_;
    std::uint64_t position_ = 0;
};

inline RandomStream make_stream(std::uint64_t seed, std::uint64_t stream_id) {
    return RandomStream(seed, stream_id);
}

// Discrete Brownian increments on a uniform grid of step h:
// increments[i] ~ N(0, h) independent, representing b_{(i+1)h} - b_{ih}.
// The path starts at 0; cumulative sums give b at the grid nodes.
struct NoisePath {
    double h = 0.0;
    std::vector<double> increments;

    // b at node i (i increments summed); node 0 is the origin.
    double node(std::size_t i) const;
};

// Standard normal quantile, accurate to ~1e-15 and exactly antisymmetric
// about u = 1/2.
double normal_inverse_cdf(double u);

// N(mu, sigma^2) draw; sigma = 0 degenerates to the constant mu.
double sample_gaussian(RandomStream& stream, double mu, double sigma);

// chi draw with real degrees of freedom dof > 0 (the square is
// Gamma(dof/2, scale 2)).
double sample_chi(RandomStream& stream, double dof);

// Quantile of the chi distribution with real dof: the x with
// CDF_chi(dof)(x) = u to absolute tolerance 1e-10, strictly increasing in u
// and continuous in dof.
double chi_inverse_cdf(double u, double dof);

// m independent N(0, h) increments drawn from the stream.
NoisePath sample_brownian(RandomStream& stream, double h, std::size_t m);

}  // namespace twlab
