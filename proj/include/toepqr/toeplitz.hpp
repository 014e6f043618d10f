#pragma once

// Compact representation of rectangular Toeplitz matrices, the partition
// vectors used by the fast factorization, and the Hankel-to-Toeplitz
// adapter.  An m x n Toeplitz matrix A (m >= n) has entries
//     A(i, j) = a_{j-i},   0-based i, j,
// so it is fully described by its first column and first row.  Dense
// materialization is reserved for test and oracle code.

#include <span>
#include <utility>
#include <vector>

#include "toepqr/tally.hpp"

namespace toepqr {

struct Toeplitz {
    // col[i] = a_{-i}  (first column: a_0, a_{-1}, ..., a_{1-m})
    // row[j] = a_{j}   (first row:    a_0, a_1,  ..., a_{n-1})
    std::vector<double> col;
    std::vector<double> row;

    int m() const { return static_cast<int>(col.size()); }
    int n() const { return static_cast<int>(row.size()); }

    // Diagonal value a_k, valid for 1-m <= k <= n-1.
    double diag(int k) const { return k >= 0 ? row[k] : col[-k]; }
};

// Validates and assembles a Toeplitz description.  Requires m >= n >= 1,
// col[0] == row[0] exactly, and finite entries.
Toeplitz build_toeplitz(std::vector<double> col, std::vector<double> row);

// The four overlap vectors of the two natural partitions of A:
//   A = [ a_0  y^T ]   =  [ B     ybar ]
//       [ z    B   ]      [ zbar^T  a_{n-m} ]
// where B is the common (m-1) x (n-1) interior block (shift invariance).
//   y    = (a_1, ..., a_{n-1})            length n-1
//   z    = (a_{-1}, ..., a_{1-m})         length m-1
//   ybar = (a_{n-1}, ..., a_{n-m+1})      length m-1
//   zbar = (a_{1-m}, ..., a_{n-m-1})      length n-1
struct Partitions {
    std::vector<double> y;
    std::vector<double> z;
    std::vector<double> ybar;
    std::vector<double> zbar;
};

// Requires n >= 2.
Partitions partition_vectors(const Toeplitz& t);

// y = A v.  Plain row-wise summation in ascending column order; bills m*n.
std::vector<double> matvec(const Toeplitz& t, std::span<const double> v,
                           Tally* tally = nullptr);

// y = A^T v.  Ascending row order per output entry; bills m*n.
std::vector<double> matvec_transpose(const Toeplitz& t, std::span<const double> v,
                                     Tally* tally = nullptr);

struct Hankel {
    // col[i] = h_i          (first column: h_0, ..., h_{m-1})
    // row[j] = h_{m-1+j}    (last row:     h_{m-1}, ..., h_{m+n-2})
    // Entries H(i, j) = h_{i+j}, 0-based.
    std::vector<double> col;
    std::vector<double> row;

    int m() const { return static_cast<int>(col.size()); }
    int n() const { return static_cast<int>(row.size()); }
};

// Validates a Hankel description: m >= n >= 1, col[m-1] == row[0] exactly,
// finite entries.
Hankel build_hankel(std::vector<double> col, std::vector<double> row);

// Reversing the rows of a Hankel matrix gives a Toeplitz matrix with the
// same columns up to order, so (JH)^T (JH) = H^T H exactly and any solver
// for Toeplitz systems applies.  Pure data movement, no arithmetic.
Toeplitz hankel_to_toeplitz(const Hankel& h);

// Adapter for solving H x = b: returns (JH, Jb) where J reverses order.
std::pair<Toeplitz, std::vector<double>> hankel_adapter(const Hankel& h,
                                                        std::span<const double> b);

// Interior block B of the partitions above as a standalone Toeplitz matrix
// (rows 0..m-2, cols 0..n-2 of A).  Requires n >= 2.
Toeplitz interior_block(const Toeplitz& t);

}  // namespace toepqr
