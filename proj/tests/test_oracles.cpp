#include <cmath>
#include <vector>

#include "doctest.h"
#include "helpers.hpp"
#include "toepqr/errors.hpp"
#include "toepqr/oracles.hpp"
#include "toepqr/vec.hpp"

using namespace toepqr;

namespace {
constexpr double kEps = 0x1.0p-53;

Toeplitz tridiag3() { return build_toeplitz({2, 1, 0}, {2, 1, 0}); }
}  // namespace

TEST_SUITE("oracles") {

TEST_CASE("gram of the 3x3 tridiagonal example is exact") {
    const oracle::DenseMatrix g = oracle::gram(tridiag3());
    const std::vector<double> expected = {5, 4, 1, 4, 6, 4, 1, 4, 5};
    REQUIRE(g.a.size() == expected.size());
    for (std::size_t i = 0; i < expected.size(); ++i) CHECK(g.a[i] == expected[i]);
}

TEST_CASE("gram with ridge adds alpha to the diagonal only") {
    const oracle::DenseMatrix g = oracle::gram(tridiag3(), 2.5);
    CHECK(g(0, 0) == 7.5);
    CHECK(g(1, 1) == 8.5);
    CHECK(g(0, 1) == 4.0);
}

TEST_CASE("gram_dense is exactly symmetric") {
    const Toeplitz t = testutil::random_toeplitz(11, 7, 0.3, 1.7, 91);
    const oracle::DenseMatrix g = oracle::gram_dense(oracle::dense(t));
    for (int i = 0; i < g.m; ++i) {
        for (int j = 0; j < g.n; ++j) CHECK(g(i, j) == g(j, i));
    }
}

TEST_CASE("cholesky: frozen 2x2 factor") {
    oracle::DenseMatrix s(2, 2);
    s(0, 0) = 5;
    s(0, 1) = 4;
    s(1, 0) = 4;
    s(1, 1) = 5;
    const oracle::DenseMatrix r = oracle::cholesky(s);
    CHECK(r(0, 0) == std::sqrt(5.0));
    CHECK(r(0, 1) == 4.0 / std::sqrt(5.0));
    CHECK(r(1, 0) == 0.0);
    CHECK(r(1, 1) == doctest::Approx(3.0 / std::sqrt(5.0)).epsilon(1e-15));
}

TEST_CASE("cholesky rejects indefinite input") {
    oracle::DenseMatrix s(2, 2);
    s(0, 0) = 1;
    s(0, 1) = 2;
    s(1, 0) = 2;
    s(1, 1) = 1;
    CHECK_THROWS_AS(oracle::cholesky(s), NotPositiveDefinite);
    try {
        oracle::cholesky(s);
    } catch (const NotPositiveDefinite& e) {
        CHECK(e.pivot == 1);
    }
}

TEST_CASE("householder QR matches cholesky of the gram matrix") {
    for (std::uint64_t seed : {3ULL, 14ULL, 15ULL}) {
        const Toeplitz t = testutil::random_toeplitz(10, 6, 0.0, 1.0, seed);
        const oracle::DenseMatrix a = oracle::dense(t);
        const oracle::DenseMatrix rq = oracle::householder_qr(a);
        const oracle::DenseMatrix rc = oracle::cholesky(oracle::gram(t));
        // Both have positive diagonals, so they are the same factor up to
        // the kappa^2-scaled rounding of the Cholesky route.
        const double scale = oracle::norm1(rc);
        for (int i = 0; i < 6; ++i) {
            CHECK(rq(i, i) > 0.0);
            for (int j = i; j < 6; ++j) {
                CHECK(std::abs(rq(i, j) - rc(i, j)) <= 1e-10 * scale);
            }
        }
    }
}

TEST_CASE("householder QR reproduces A^T A") {
    const Toeplitz t = testutil::random_toeplitz(9, 9, 1.0, 2.0, 5);
    const oracle::DenseMatrix a = oracle::dense(t);
    const oracle::DenseMatrix r = oracle::householder_qr(a);
    const double gap = testutil::norm1_diff(oracle::gram_dense(r), oracle::gram(t));
    CHECK(gap <= 100 * 9 * kEps * oracle::norm1(oracle::gram(t)));
}

TEST_CASE("householder QR flags exact rank deficiency") {
    oracle::DenseMatrix a(3, 2);  // second column is zero
    a(0, 0) = 1;
    a(1, 0) = 2;
    a(2, 0) = 3;
    CHECK_THROWS_AS(oracle::householder_qr(a), RankDeficient);
}

TEST_CASE("triangular solves invert each other") {
    const oracle::DenseMatrix r = testutil::random_upper(8, 19);
    const std::vector<double> rhs = testutil::random_vector(8, 20);
    const std::vector<double> w = oracle::tri_solve_forward(r, rhs);
    // R^T w = rhs  =>  residual check.
    for (int i = 0; i < 8; ++i) {
        double s = 0.0;
        for (int k = 0; k <= i; ++k) s += r(k, i) * w[k];
        CHECK(s == doctest::Approx(rhs[i]).epsilon(1e-12));
    }
    const std::vector<double> x = oracle::tri_solve_backward(r, w);
    for (int i = 0; i < 8; ++i) {
        double s = 0.0;
        for (int j = i; j < 8; ++j) s += r(i, j) * x[j];
        CHECK(s == doctest::Approx(w[i]).epsilon(1e-12));
    }
    oracle::DenseMatrix singular = r;
    singular(3, 3) = 0.0;
    CHECK_THROWS_AS(oracle::tri_solve_forward(singular, rhs), SingularTriangular);
    CHECK_THROWS_AS(oracle::tri_solve_backward(singular, rhs), SingularTriangular);
}

TEST_CASE("cond1 of a diagonal matrix is the ratio of extremes") {
    oracle::DenseMatrix r(2, 2);
    r(0, 0) = 1.0;
    r(1, 1) = 1e-3;
    CHECK(oracle::cond1_triangular(r) == doctest::Approx(1e3).epsilon(1e-12));
    CHECK(oracle::cond1_triangular(oracle::DenseMatrix::identity(5)) == 1.0);
}

TEST_CASE("displacement: frozen 2x2 value and vanishing on Toeplitz") {
    oracle::DenseMatrix b(2, 2);
    b(0, 0) = 1;
    b(0, 1) = 2;
    b(1, 0) = 3;
    b(1, 1) = 5;
    const oracle::DenseMatrix d = oracle::displacement(b);
    REQUIRE(d.m == 1);
    REQUIRE(d.n == 1);
    CHECK(d(0, 0) == 4.0);

    const Toeplitz t = testutil::random_toeplitz(6, 6, 0.0, 1.0, 33);
    const oracle::DenseMatrix dt = oracle::displacement(oracle::dense(t));
    for (double v : dt.a) CHECK(v == 0.0);
}

TEST_CASE("dense normal-equation solve recovers a planted solution") {
    const Toeplitz t = tridiag3();
    const std::vector<double> x = oracle::solve_normal_cholesky(t, std::vector<double>{3, 4, 3});
    REQUIRE(x.size() == 3);
    for (double xi : x) CHECK(xi == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("least-squares oracle minimizes the residual") {
    const Toeplitz t = testutil::random_toeplitz(8, 3, 0.0, 1.0, 55);
    const std::vector<double> b = testutil::random_vector(8, 56);
    const std::vector<double> x = oracle::lsq_qr(t, b);
    // Normal-equation characterization: A^T (A x - b) = 0.
    std::vector<double> r = matvec(t, x);
    for (int i = 0; i < 8; ++i) r[i] -= b[i];
    const std::vector<double> nr = matvec_transpose(t, r);
    const double scale = oracle::norm1(t) * (norm2(b) + norm2(x));
    for (double v : nr) CHECK(std::abs(v) <= 1e-12 * scale);
    // And it agrees with the dense normal-equation route.
    const std::vector<double> xc = oracle::solve_normal_cholesky(t, b);
    for (int j = 0; j < 3; ++j) CHECK(x[j] == doctest::Approx(xc[j]).epsilon(1e-9));
}

}  // TEST_SUITE
