#pragma once

#include <cstddef>
#include <vector>

namespace twlab {

// Real symmetric tridiagonal matrix: diag has length n >= 1, off length n-1.
struct TridiagMatrix {
    std::vector<double> diag;
    std::vector<double> off;

    std::size_t size() const { return diag.size(); }

    // max-row-sum norm
    double inf_norm() const;
};

// Ascending eigenvalues with a certified absolute error bound (the final
// bisection bracket width).  `clustered` lists indices whose gap to a
// neighbour is below 1e-10 * ||T||_inf; eigenvectors for those indices span
// an invariant subspace rather than a unique direction.
struct SpectrumResult {
    std::vector<double> eigenvalues;
    double tol = 0.0;
    std::vector<double> residuals;   // filled on request, else empty
    std::vector<std::size_t> clustered;
};

// Certificate for the positive-semidefiniteness decision: a bracket
// [lower, upper] around the smallest eigenvalue.
struct PsdCertificate {
    bool psd = false;
    double smallest_lower = 0.0;
    double smallest_upper = 0.0;
};

// Number of eigenvalues of T strictly below x, by the shifted LDL^T sign
// count with a floor on pivot magnitude.
int sturm_count(const TridiagMatrix& T, double x);

// k smallest eigenvalues by bisection on Sturm counts, each bracketed to
// width <= tol.
SpectrumResult smallest_eigenvalues(const TridiagMatrix& T, std::size_t k, double tol,
                                    bool compute_residuals = false);

// Unit eigenvector for an eigenvalue estimate lambda, by inverse iteration
// with a pivoted tridiagonal solve.  Guarantees ||Tv - lambda v||_2 <=
// 1e-8 * ||T||_inf or throws NumericalFailure after bounded restarts.
std::vector<double> eigenvector(const TridiagMatrix& T, double lambda);

// True iff no eigenvalue lies strictly below -tol; the certificate carries a
// bracket around the smallest eigenvalue.
PsdCertificate is_positive_semidefinite(const TridiagMatrix& T, double tol);

}  // namespace twlab
