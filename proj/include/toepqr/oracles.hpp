#pragma once

// Dense O(n^3) reference implementations used by tests and the measurement
// harness: materialization, Gram matrices, Householder QR, Cholesky,
// triangular solves, 1-norm condition numbers, and the displacement
// operator.  Nothing here is on the fast path.

#include <span>
#include <utility>
#include <vector>

#include "toepqr/lattice.hpp"
#include "toepqr/toeplitz.hpp"

namespace toepqr::oracle {

struct DenseMatrix {
    int m = 0;
    int n = 0;
    std::vector<double> a;  // row-major

    DenseMatrix() = default;
    DenseMatrix(int m_, int n_) : m(m_), n(n_), a(static_cast<std::size_t>(m_) * n_, 0.0) {}

    double& operator()(int i, int j) { return a[static_cast<std::size_t>(i) * n + j]; }
    double operator()(int i, int j) const { return a[static_cast<std::size_t>(i) * n + j]; }

    static DenseMatrix identity(int n);
};

DenseMatrix dense(const Toeplitz& t);
DenseMatrix dense(const Hankel& h);

// Upper-triangular matrix from packed rows (row k holds r_kk..r_kn).
DenseMatrix from_rows(const std::vector<std::vector<double>>& rows);

DenseMatrix transpose(const DenseMatrix& a);
DenseMatrix matmul(const DenseMatrix& a, const DenseMatrix& b);
DenseMatrix subtract(const DenseMatrix& a, const DenseMatrix& b);
std::vector<double> matvec(const DenseMatrix& a, std::span<const double> v);

// M^T M by ascending-row summation; exactly symmetric (upper triangle
// computed, then mirrored).
DenseMatrix gram_dense(const DenseMatrix& m);

// A^T A + alpha I for Toeplitz A, via dense materialization.
DenseMatrix gram(const Toeplitz& t, double alpha = 0.0);

// Largest absolute column sum.
double norm1(const DenseMatrix& a);
double norm1(const Toeplitz& t);

// Householder QR; returns the n x n upper-triangular factor with positive
// diagonal.  Throws RankDeficient on an exactly zero pivot column.
DenseMatrix householder_qr(const DenseMatrix& a);

// Same, with the reflections also applied to a right-hand side; returns
// (R, first n entries of Q^T b) for least-squares solves.
std::pair<DenseMatrix, std::vector<double>> householder_qr_rhs(const DenseMatrix& a,
                                                               std::span<const double> b);

// Upper-triangular Cholesky factor of a symmetric positive definite matrix.
DenseMatrix cholesky(const DenseMatrix& s);

// Solves R^T w = rhs (forward substitution, ascending elimination order).
std::vector<double> tri_solve_forward(const DenseMatrix& r, std::span<const double> rhs);

// Solves R x = rhs (back substitution).
std::vector<double> tri_solve_backward(const DenseMatrix& r, std::span<const double> rhs);

// kappa_1(R) = ||R||_1 ||R^{-1}||_1 with the inverse formed column by
// column through back substitution.
double cond1_triangular(const DenseMatrix& r);

// Displacement operator: D(B)(i, j) = B(i+1, j+1) - B(i, j), one row and
// column shorter than B.  Vanishes exactly on Toeplitz matrices.
DenseMatrix displacement(const DenseMatrix& b);

// Dense reference solves.
std::vector<double> solve_normal_cholesky(const Toeplitz& t, std::span<const double> b,
                                          double alpha = 0.0);
std::vector<double> lsq_qr(const Toeplitz& t, std::span<const double> b);

}  // namespace toepqr::oracle
