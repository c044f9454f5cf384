#include "twlab/tridiag.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <string>

#include "twlab/errors.hpp"

namespace twlab {

namespace {

void validate(const TridiagMatrix& T) {
    if (T.diag.empty()) throw InvalidParameter("tridiag: empty matrix");
    if (T.off.size() + 1 != T.diag.size())
        throw InvalidParameter("tridiag: off length must be n-1");
    for (double v : T.diag)
        if (!std::isfinite(v)) throw InvalidParameter("tridiag: non-finite diagonal entry");
    for (double v : T.off)
        if (!std::isfinite(v)) throw InvalidParameter("tridiag: non-finite off-diagonal entry");
}

// Pivot floor: 1e-300 base, raised just enough that off^2 / pivot stays
// finite on grids with very large entries.
double pivot_floor(const TridiagMatrix& T) {
    double max_off2 = 0.0;
    for (double e : T.off) max_off2 = std::max(max_off2, e * e);
    return std::max(1e-300, max_off2 * 1e-305);
}

int count_below(const TridiagMatrix& T, double x, double pivmin) {
    const std::size_t n = T.diag.size();
    int count = 0;
    double d = T.diag[0] - x;
    if (std::abs(d) < pivmin) d = (d < 0.0) ? -pivmin : pivmin;
    if (d < 0.0) ++count;
    for (std::size_t i = 1; i < n; ++i) {
        d = (T.diag[i] - x) - (T.off[i - 1] * T.off[i - 1]) / d;
        if (std::abs(d) < pivmin) d = (d < 0.0) ? -pivmin : pivmin;
        if (d < 0.0) ++count;
    }
    return count;
}

struct Bracket {
    double lo = 0.0;
    double hi = 0.0;
};

void gershgorin(const TridiagMatrix& T, double& lo, double& hi) {
    const std::size_t n = T.diag.size();
    lo = std::numeric_limits<double>::infinity();
    hi = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < n; ++i) {
        double r = 0.0;
        if (i > 0) r += std::abs(T.off[i - 1]);
        if (i + 1 < n) r += std::abs(T.off[i]);
        lo = std::min(lo, T.diag[i] - r);
        hi = std::max(hi, T.diag[i] + r);
    }
    // widen so strict counts are 0 and n at the ends
    double pad = 1e-12 * (1.0 + std::abs(lo) + std::abs(hi));
    lo -= pad;
    hi += pad;
}

// Bisect for the eigenvalue with ascending index j:
// inf { x : count_below(x) >= j+1 }.
Bracket bisect_index(const TridiagMatrix& T, std::size_t j, double tol, double lo, double hi,
                     double pivmin) {
    while (hi - lo > tol) {
        double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;  // interval at float resolution
        if (count_below(T, mid, pivmin) >= static_cast<int>(j) + 1)
            hi = mid;
        else
            lo = mid;
    }
    return {lo, hi};
}

}  // namespace

double TridiagMatrix::inf_norm() const {
    const std::size_t n = diag.size();
    double norm = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        double r = std::abs(diag[i]);
        if (i > 0) r += std::abs(off[i - 1]);
        if (i + 1 < n) r += std::abs(off[i]);
        norm = std::max(norm, r);
    }
    return norm;
}

int sturm_count(const TridiagMatrix& T, double x) {
    validate(T);
    return count_below(T, x, pivot_floor(T));
}

SpectrumResult smallest_eigenvalues(const TridiagMatrix& T, std::size_t k, double tol,
                                    bool compute_residuals) {
    validate(T);
    const std::size_t n = T.diag.size();
    if (k < 1 || k > n)
        throw InvalidParameter("smallest_eigenvalues: k must be in [1, n], got " +
                               std::to_string(k));
    if (!(tol > 0.0)) throw InvalidParameter("smallest_eigenvalues: tol must be > 0");

    const double pivmin = pivot_floor(T);
    double glo, ghi;
    gershgorin(T, glo, ghi);

    SpectrumResult result;
    result.tol = tol;
    result.eigenvalues.reserve(k);
    double lower = glo;
    for (std::size_t j = 0; j < k; ++j) {
        Bracket br = bisect_index(T, j, tol, lower, ghi, pivmin);
        result.eigenvalues.push_back(0.5 * (br.lo + br.hi));
        lower = br.lo;  // eigenvalue j+1 cannot lie below this
    }

    const double cluster_gap = 1e-10 * T.inf_norm();
    for (std::size_t j = 0; j + 1 < k; ++j) {
        if (result.eigenvalues[j + 1] - result.eigenvalues[j] < cluster_gap) {
            if (result.clustered.empty() || result.clustered.back() != j)
                result.clustered.push_back(j);
            result.clustered.push_back(j + 1);
        }
    }

    if (compute_residuals) {
        result.residuals.reserve(k);
        for (double lambda : result.eigenvalues) {
            std::vector<double> v = eigenvector(T, lambda);
            double acc = 0.0;
            for (std::size_t i = 0; i < n; ++i) {
                double r = (T.diag[i] - lambda) * v[i];
                if (i > 0) r += T.off[i - 1] * v[i - 1];
                if (i + 1 < n) r += T.off[i] * v[i + 1];
                acc += r * r;
            }
            result.residuals.push_back(std::sqrt(acc));
        }
    }
    return result;
}

namespace {

// Solve (T - mu I) z = rhs in place by Gaussian elimination with partial
// pivoting; the band gains one superdiagonal.  Near-singular pivots are
// clamped to +-tiny, which is what lets inverse iteration amplify the
// eigenvector component.
void pivoted_solve(const TridiagMatrix& T, double mu, std::vector<double>& z, double tiny) {
    const std::size_t n = T.diag.size();
    std::vector<double> sub(n, 0.0), dd(n, 0.0), du(n, 0.0), du2(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) dd[i] = T.diag[i] - mu;
    for (std::size_t i = 0; i + 1 < n; ++i) {
        sub[i] = T.off[i];
        du[i] = T.off[i];
    }

    for (std::size_t i = 0; i + 1 < n; ++i) {
        if (std::abs(dd[i]) >= std::abs(sub[i])) {
            if (std::abs(dd[i]) < tiny) dd[i] = (dd[i] < 0.0) ? -tiny : tiny;
            double m = sub[i] / dd[i];
            dd[i + 1] -= m * du[i];
            du2[i] = 0.0;
            z[i + 1] -= m * z[i];
        } else {
            // rows i and i+1 swap; old row i is eliminated against new row i
            double m = dd[i] / sub[i];
            double old_du_i = du[i];
            double old_dd_i1 = dd[i + 1];
            double old_du_i1 = (i + 2 < n) ? du[i + 1] : 0.0;
            dd[i] = sub[i];
            du[i] = old_dd_i1;
            du2[i] = old_du_i1;
            dd[i + 1] = old_du_i - m * old_dd_i1;
            if (i + 2 < n) du[i + 1] = -m * old_du_i1;
            std::swap(z[i], z[i + 1]);
            z[i + 1] -= m * z[i];
        }
    }
    if (std::abs(dd[n - 1]) < tiny) dd[n - 1] = (dd[n - 1] < 0.0) ? -tiny : tiny;

    for (std::size_t ii = n; ii-- > 0;) {
        double acc = z[ii];
        if (ii + 1 < n) acc -= du[ii] * z[ii + 1];
        if (ii + 2 < n) acc -= du2[ii] * z[ii + 2];
        z[ii] = acc / dd[ii];
    }
}

double mix_to_unit(std::uint64_t z) {
    z ^= z >> 30;
    z *= 0xbf58476d1ce4e5b9ULL;
    z ^= z >> 27;
    z *= 0x94d049bb133111ebULL;
    z ^= z >> 31;
    return (static_cast<double>(z >> 11) + 0.5) * 0x1.0p-53 - 0.5;
}

}  // namespace

std::vector<double> eigenvector(const TridiagMatrix& T, double lambda) {
    validate(T);
    const std::size_t n = T.diag.size();
    const double scale = std::max(T.inf_norm(), 1.0);
    const double tiny = std::numeric_limits<double>::epsilon() * scale;
    const double target = 1e-8 * T.inf_norm();

    for (int restart = 0; restart < 4; ++restart) {
        // shift nudges break exact singularity of T - mu I
        double mu = lambda + static_cast<double>(restart) * 3.0 * tiny;
        std::vector<double> v(n);
        for (std::size_t i = 0; i < n; ++i)
            v[i] = mix_to_unit((i + 1) * 0x9e3779b97f4a7c15ULL + static_cast<std::uint64_t>(restart));
        double nv = 0.0;
        for (double c : v) nv += c * c;
        nv = std::sqrt(nv);
        for (double& c : v) c /= nv;

        for (int iter = 0; iter < 25; ++iter) {
            std::vector<double> z = v;
            pivoted_solve(T, mu, z, tiny);
            double nz = 0.0;
            for (double c : z) nz += c * c;
            nz = std::sqrt(nz);
            if (!(nz > 0.0) || !std::isfinite(nz)) break;
            for (double& c : z) c /= nz;
            v = std::move(z);

            double acc = 0.0;
            for (std::size_t i = 0; i < n; ++i) {
                double r = (T.diag[i] - lambda) * v[i];
                if (i > 0) r += T.off[i - 1] * v[i - 1];
                if (i + 1 < n) r += T.off[i] * v[i + 1];
                acc += r * r;
            }
            if (std::sqrt(acc) <= target) return v;
        }
    }
    throw NumericalFailure("eigenvector: inverse iteration did not converge");
}

PsdCertificate is_positive_semidefinite(const TridiagMatrix& T, double tol) {
    validate(T);
    if (tol < 0.0) throw InvalidParameter("is_positive_semidefinite: tol must be >= 0");
    const double pivmin = pivot_floor(T);
    PsdCertificate cert;
    cert.psd = count_below(T, -tol, pivmin) == 0;

    double glo, ghi;
    gershgorin(T, glo, ghi);
    double width = std::max(1e-12, 1e-12 * (std::abs(glo) + std::abs(ghi)));
    Bracket br = bisect_index(T, 0, width, glo, ghi, pivmin);
    cert.smallest_lower = br.lo;
    cert.smallest_upper = br.hi;
    return cert;
}

}  // namespace twlab
