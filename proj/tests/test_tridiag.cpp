#include <doctest.h>

#include <cmath>
#include <vector>

#include "twlab/errors.hpp"
#include "twlab/rng.hpp"
#include "twlab/tridiag.hpp"

#include "oracles.hpp"

using namespace twlab;

namespace {

TridiagMatrix toeplitz(std::size_t n, double d, double e) {
    TridiagMatrix T;
    T.diag.assign(n, d);
    T.off.assign(n - 1, e);
    return T;
}

TridiagMatrix random_tridiag(RandomStream& s, std::size_t n, double scale) {
    TridiagMatrix T;
    T.diag.resize(n);
    T.off.resize(n - 1);
    for (auto& v : T.diag) v = scale * (2.0 * s.next_uniform() - 1.0);
    for (auto& v : T.off) v = scale * (2.0 * s.next_uniform() - 1.0);
    return T;
}

}  // namespace

TEST_CASE("sturm counts on the analytic Toeplitz spectrum") {
    // eigenvalues of tridiag(-1, 2, -1) at n = 3: 2 - sqrt(2), 2, 2 + sqrt(2)
    TridiagMatrix T = toeplitz(3, 2.0, -1.0);
    CHECK(sturm_count(T, 2.0) == 1);
    CHECK(sturm_count(T, -10.0) == 0);
    CHECK(sturm_count(T, 10.0) == 3);
}

TEST_CASE("sturm count is a nondecreasing step function covering n") {
    RandomStream s = make_stream(101, 0);
    TridiagMatrix T = random_tridiag(s, 12, 3.0);
    int prev = 0;
    CHECK(sturm_count(T, -50.0) == 0);
    for (double x = -50.0; x <= 50.0; x += 0.37) {
        int c = sturm_count(T, x);
        CHECK(c >= prev);
        prev = c;
    }
    CHECK(sturm_count(T, 50.0) == 12);
}

TEST_CASE("smallest eigenvalues") {
    SUBCASE("diagonal matrix") {
        TridiagMatrix T;
        T.diag = {3.0, 1.0, 2.0};
        T.off = {0.0, 0.0};
        SpectrumResult r = smallest_eigenvalues(T, 2, 1e-12);
        CHECK(r.eigenvalues[0] == doctest::Approx(1.0).epsilon(1e-10));
        CHECK(r.eigenvalues[1] == doctest::Approx(2.0).epsilon(1e-10));
    }
    SUBCASE("Toeplitz n = 5 analytic spectrum") {
        TridiagMatrix T = toeplitz(5, 2.0, -1.0);
        SpectrumResult r = smallest_eigenvalues(T, 5, 1e-12);
        for (int k = 1; k <= 5; ++k) {
            double want = 2.0 - 2.0 * std::cos(k * M_PI / 6.0);
            CHECK(r.eigenvalues[k - 1] == doctest::Approx(want).epsilon(1e-10));
        }
    }
    SUBCASE("k validation") {
        TridiagMatrix T = toeplitz(3, 2.0, -1.0);
        CHECK_THROWS_AS(smallest_eigenvalues(T, 4, 1e-8), InvalidParameter);
        CHECK_THROWS_AS(smallest_eigenvalues(T, 0, 1e-8), InvalidParameter);
    }
    SUBCASE("matches the dense characteristic-polynomial oracle at n = 8") {
        RandomStream s = make_stream(111, 0);
        for (int rep = 0; rep < 25; ++rep) {
            TridiagMatrix T = random_tridiag(s, 8, 2.0);
            std::vector<double> want = oracle::dense_eigenvalues(T);
            REQUIRE(want.size() == 8);
            SpectrumResult r = smallest_eigenvalues(T, 8, 1e-11);
            for (int k = 0; k < 8; ++k) CHECK(std::abs(r.eigenvalues[k] - want[k]) <= 1e-9);
        }
    }
    SUBCASE("invariant under off-diagonal sign flips") {
        RandomStream s = make_stream(121, 0);
        TridiagMatrix T = random_tridiag(s, 10, 2.0);
        TridiagMatrix F = T;
        for (std::size_t i = 0; i < F.off.size(); i += 2) F.off[i] = -F.off[i];
        SpectrumResult a = smallest_eigenvalues(T, 10, 1e-10);
        SpectrumResult b = smallest_eigenvalues(F, 10, 1e-10);
        for (int k = 0; k < 10; ++k)
            CHECK(std::abs(a.eigenvalues[k] - b.eigenvalues[k]) <= 2e-10);
    }
}

TEST_CASE("eigenvectors") {
    SUBCASE("decoupled 2x2") {
        TridiagMatrix T;
        T.diag = {1.0, 5.0};
        T.off = {0.0};
        std::vector<double> v = eigenvector(T, 1.0);
        CHECK(std::abs(v[0]) == doctest::Approx(1.0).epsilon(1e-10));
        CHECK(std::abs(v[1]) <= 1e-8);
    }
    SUBCASE("Toeplitz middle eigenvector") {
        TridiagMatrix T = toeplitz(3, 2.0, -1.0);
        std::vector<double> v = eigenvector(T, 2.0);
        double inv_sqrt2 = 1.0 / std::sqrt(2.0);
        CHECK(std::abs(v[0]) == doctest::Approx(inv_sqrt2).epsilon(1e-7));
        CHECK(std::abs(v[1]) <= 1e-7);
        CHECK(std::abs(v[2]) == doctest::Approx(inv_sqrt2).epsilon(1e-7));
        CHECK(v[0] * v[2] < 0.0);  // opposite signs
    }
    SUBCASE("residual bound on random instances") {
        RandomStream s = make_stream(131, 0);
        for (int rep = 0; rep < 10; ++rep) {
            TridiagMatrix T = random_tridiag(s, 8, 2.0);
            SpectrumResult r = smallest_eigenvalues(T, 8, 1e-11, /*compute_residuals=*/true);
            REQUIRE(r.residuals.size() == 8);
            for (double res : r.residuals) CHECK(res <= 1e-8 * T.inf_norm());
        }
    }
}

TEST_CASE("positive semidefiniteness certificates") {
    SUBCASE("zero matrix is PSD but not PD") {
        TridiagMatrix T;
        T.diag = {0.0, 0.0};
        T.off = {0.0};
        PsdCertificate c = is_positive_semidefinite(T, 0.0);
        CHECK(c.psd);
        CHECK(c.smallest_lower <= 0.0);
        CHECK(c.smallest_upper >= -1e-10);
    }
    SUBCASE("indefinite 2x2") {
        // eigenvalues -1 and 3
        TridiagMatrix T;
        T.diag = {1.0, 1.0};
        T.off = {-2.0};
        PsdCertificate c = is_positive_semidefinite(T, 1e-12);
        CHECK_FALSE(c.psd);
        CHECK(c.smallest_lower <= -1.0 + 1e-6);
        CHECK(c.smallest_upper >= -1.0 - 1e-6);
    }
    SUBCASE("certificate brackets the smallest eigenvalue") {
        RandomStream s = make_stream(141, 0);
        TridiagMatrix T = random_tridiag(s, 8, 2.0);
        std::vector<double> want = oracle::dense_eigenvalues(T);
        PsdCertificate c = is_positive_semidefinite(T, 0.0);
        CHECK(c.smallest_lower <= want[0]);
        CHECK(c.smallest_upper >= want[0] - 1e-9);
    }
}

TEST_CASE("Weyl monotonicity under PSD perturbations") {
    // A = B + C with C PSD forces lambda_k(A) >= lambda_k(B) for every k
    RandomStream s = make_stream(151, 0);
    for (int rep = 0; rep < 20; ++rep) {
        std::size_t n = 4 + rep % 5;
        TridiagMatrix B = random_tridiag(s, n, 2.0);
        TridiagMatrix C = random_tridiag(s, n, 1.0);
        double cmin = oracle::dense_eigenvalues(C).front();
        for (auto& d : C.diag) d += std::abs(cmin) + 0.01;
        REQUIRE(is_positive_semidefinite(C, 1e-12).psd);

        TridiagMatrix A = B;
        for (std::size_t i = 0; i < n; ++i) A.diag[i] += C.diag[i];
        for (std::size_t i = 0; i + 1 < n; ++i) A.off[i] += C.off[i];

        auto la = smallest_eigenvalues(A, n, 1e-11).eigenvalues;
        auto lb = smallest_eigenvalues(B, n, 1e-11).eigenvalues;
        for (std::size_t k = 0; k < n; ++k) CHECK(la[k] >= lb[k] - 1e-9);
    }
}
