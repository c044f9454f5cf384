#include "twlab/ensemble.hpp"

#include <algorithm>
#include <cmath>

#include "twlab/errors.hpp"

namespace twlab {

TridiagMatrix sample_beta_ensemble_matrix(RandomStream& stream, std::size_t n, double beta) {
    if (n < 1) throw InvalidParameter("sample_beta_ensemble: n must be >= 1");
    if (!(beta > 0.0)) throw InvalidParameter("sample_beta_ensemble: beta must be > 0");

    const double inv_sqrt_beta = 1.0 / std::sqrt(beta);
    const double sqrt2 = std::sqrt(2.0);
    TridiagMatrix T;
    T.diag.resize(n);
    for (std::size_t i = 0; i < n; ++i)
        T.diag[i] = inv_sqrt_beta * sample_gaussian(stream, 0.0, sqrt2);
    T.off.resize(n - 1);
    for (std::size_t j = 0; j + 1 < n; ++j) {
        double dof = beta * static_cast<double>(n - 1 - j);
        T.off[j] = inv_sqrt_beta * sample_chi(stream, dof);
    }
    return T;
}

EnsembleSample sample_beta_ensemble(RandomStream& stream, std::size_t n, double beta,
                                    double tol) {
    EnsembleSample sample;
    sample.n = n;
    sample.beta = beta;
    sample.matrix = sample_beta_ensemble_matrix(stream, n, beta);
    SpectrumResult spec = smallest_eigenvalues(sample.matrix, n, tol);
    sample.eigenvalues.assign(spec.eigenvalues.rbegin(), spec.eigenvalues.rend());
    return sample;
}

double edge_rescale(double lambda, std::size_t n) {
    if (n < 1) throw InvalidParameter("edge_rescale: n must be >= 1");
    double nn = static_cast<double>(n);
    return std::pow(nn, 1.0 / 6.0) * (2.0 * std::sqrt(nn) - lambda);
}

double edge_rescale_figure(double lambda, std::size_t n, double beta) {
    if (n < 1) throw InvalidParameter("edge_rescale_figure: n must be >= 1");
    if (!(beta > 0.0)) throw InvalidParameter("edge_rescale_figure: beta must be > 0");
    double nn = static_cast<double>(n);
    return (lambda - 2.0 * std::sqrt(nn)) * std::pow(nn, 1.0 / 6.0) / std::cbrt(beta * beta);
}

CurveTable coupled_curves(std::uint64_t seed, std::size_t n, const std::vector<double>& beta_grid,
                          std::size_t k) {
    if (n < 1) throw InvalidParameter("coupled_curves: n must be >= 1");
    if (k < 1 || k > n) throw InvalidParameter("coupled_curves: k must be in [1, n]");
    if (beta_grid.empty()) throw InvalidParameter("coupled_curves: empty beta grid");
    for (std::size_t i = 0; i < beta_grid.size(); ++i) {
        if (!(beta_grid[i] > 0.0)) throw InvalidParameter("coupled_curves: betas must be > 0");
        if (i > 0 && beta_grid[i] <= beta_grid[i - 1])
            throw InvalidParameter("coupled_curves: beta grid must be ascending");
    }

    // single shared draw of the raw randomness; beta only changes the maps
    RandomStream stream = make_stream(seed, 0);
    std::vector<double> gauss(n);
    for (double& g : gauss) g = normal_inverse_cdf(stream.next_uniform());
    std::vector<double> uniforms(n - 1);
    for (double& u : uniforms) u = stream.next_uniform();

    CurveTable table;
    table.beta_grid = beta_grid;
    table.values.resize(beta_grid.size());
    TridiagMatrix T;
    T.diag.resize(n);
    T.off.resize(n - 1);
    for (std::size_t bi = 0; bi < beta_grid.size(); ++bi) {
        double beta = beta_grid[bi];
        double scale_diag = std::sqrt(2.0 / beta);
        double inv_sqrt_beta = 1.0 / std::sqrt(beta);
        for (std::size_t i = 0; i < n; ++i) T.diag[i] = scale_diag * gauss[i];
        for (std::size_t j = 0; j + 1 < n; ++j) {
            double dof = beta * static_cast<double>(n - 1 - j);
            T.off[j] = inv_sqrt_beta * chi_inverse_cdf(uniforms[j], dof);
        }
        SpectrumResult spec = smallest_eigenvalues(T, n, 1e-11);
        table.values[bi].resize(k);
        for (std::size_t ki = 0; ki < k; ++ki) {
            double lambda = spec.eigenvalues[n - 1 - ki];  // ki-th largest
            table.values[bi][ki] = edge_rescale_figure(lambda, n, beta);
        }
    }
    return table;
}

}  // namespace twlab
