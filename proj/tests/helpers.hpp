#pragma once

// Shared utilities for the unit tests and the acceptance runner: seeded
// random problem construction, matrix-level rotation sweeps used by the
// update/downdate contract tests, and norm helpers over the dense oracles.

#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "toepqr/lattice.hpp"
#include "toepqr/oracles.hpp"
#include "toepqr/rng.hpp"
#include "toepqr/rotations.hpp"
#include "toepqr/toeplitz.hpp"

namespace testutil {

using namespace toepqr;

inline Toeplitz random_toeplitz(int m, int n, double mu, double sigma,
                                std::uint64_t seed) {
    rng::NormalSampler s(seed);
    std::vector<double> col(m);
    for (int i = 0; i < m; ++i) col[i] = s.next(mu, sigma);
    std::vector<double> row(n);
    row[0] = col[0];
    for (int j = 1; j < n; ++j) row[j] = s.next(mu, sigma);
    return build_toeplitz(std::move(col), std::move(row));
}

inline std::vector<double> random_vector(int n, std::uint64_t seed, double mu = 0.0,
                                         double sigma = 1.0) {
    rng::NormalSampler s(seed);
    std::vector<double> v(n);
    for (int i = 0; i < n; ++i) v[i] = s.next(mu, sigma);
    return v;
}

// Random upper-triangular matrix with diagonal bounded away from zero, used
// as a well-posed starting factor for rotation sweeps.
inline oracle::DenseMatrix random_upper(int n, std::uint64_t seed) {
    rng::NormalSampler s(seed);
    oracle::DenseMatrix r(n, n);
    for (int i = 0; i < n; ++i) {
        r(i, i) = 1.0 + std::abs(s.next());
        for (int j = i + 1; j < n; ++j) r(i, j) = s.next();
    }
    return r;
}

// One full sweep of plane rotations turning (R, x) into U with
// U^T U = R^T R + x x^T; R upper triangular, x overwritten.
inline oracle::DenseMatrix update_sweep(oracle::DenseMatrix r, std::vector<double> x) {
    const int n = r.n;
    for (int k = 0; k < n; ++k) {
        const PlaneResult g = gen_plane(r(k, k), x[k]);
        r(k, k) = g.r;
        for (int j = k + 1; j < n; ++j) {
            const auto [t2, v2] = apply_plane(g.rot, r(k, j), x[j]);
            r(k, j) = t2;
            x[j] = v2;
        }
    }
    return r;
}

// One full sweep of mixed downdating rotations turning (R, x) into U with
// U^T U = R^T R - x x^T; throws DowndateBreakdown if the result would not be
// positive definite.
inline oracle::DenseMatrix downdate_sweep(oracle::DenseMatrix r, std::vector<double> x) {
    const int n = r.n;
    for (int k = 0; k < n; ++k) {
        const DowndateResult g = gen_downdate(r(k, k), x[k]);
        r(k, k) = g.u_kk;
        for (int j = k + 1; j < n; ++j) {
            const auto [uj, x2] = apply_downdate_mixed(g.rot, r(k, j), x[j]);
            r(k, j) = uj;
            x[j] = x2;
        }
    }
    return r;
}

inline double norm1_diff(const oracle::DenseMatrix& a, const oracle::DenseMatrix& b) {
    return oracle::norm1(oracle::subtract(a, b));
}

// Packed factor rows -> dense, for norm computations.
inline oracle::DenseMatrix dense_factor(const RFactor& rf) {
    return oracle::from_rows(rf.rows);
}

// Largest relative elementwise gap between two packed factors (rows must
// have identical shapes). Returns 0 for bitwise-identical factors.
inline double max_rel_row_gap(const std::vector<std::vector<double>>& a,
                              const std::vector<std::vector<double>>& b) {
    double worst = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        for (std::size_t j = 0; j < a[i].size(); ++j) {
            const double den = std::max(std::abs(a[i][j]), 1.0);
            worst = std::max(worst, std::abs(a[i][j] - b[i][j]) / den);
        }
    }
    return worst;
}

}  // namespace testutil
