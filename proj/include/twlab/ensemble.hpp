#pragma once

#include <cstdint>
#include <vector>

#include "twlab/rng.hpp"
#include "twlab/tridiag.hpp"

namespace twlab {

// One draw of the tridiagonal beta-ensemble: matrix = T/sqrt(beta) with
// T.diag ~ N(0,2) iid and T.off[j] ~ chi with beta*(n-1-j) degrees of
// freedom.  Eigenvalues are stored descending (lambda_1 >= ... >= lambda_n).
struct EnsembleSample {
    std::size_t n = 0;
    double beta = 0.0;
    TridiagMatrix matrix;
    std::vector<double> eigenvalues;
};

// matrix draw alone, for callers that only need part of the spectrum
TridiagMatrix sample_beta_ensemble_matrix(RandomStream& stream, std::size_t n, double beta);

EnsembleSample sample_beta_ensemble(RandomStream& stream, std::size_t n, double beta,
                                    double tol = 1e-10);

// Edge rescaling n^{1/6} (2 sqrt(n) - lambda); order-reversing in lambda.
double edge_rescale(double lambda, std::size_t n);

// Figure rescaling (lambda - 2 sqrt(n)) n^{1/6} / beta^{2/3}; order-preserving.
double edge_rescale_figure(double lambda, std::size_t n, double beta);

// Eigenvalue-versus-beta curves under shared randomness: one draw of n
// Gaussians and n-1 uniforms, pushed through the chi quantile as the degrees
// of freedom vary with beta.  values[bi][ki] is the figure-rescaled ki-th
// largest eigenvalue at beta_grid[bi].
struct CurveTable {
    std::vector<double> beta_grid;
    std::vector<std::vector<double>> values;
};

CurveTable coupled_curves(std::uint64_t seed, std::size_t n,
                          const std::vector<double>& beta_grid, std::size_t k);

}  // namespace twlab
