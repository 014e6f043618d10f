#include "toepqr/toeplitz.hpp"

#include <algorithm>
#include <cmath>

#include "toepqr/errors.hpp"

namespace toepqr {

namespace {

void require_finite(std::span<const double> v, const char* what) {
    for (double x : v) {
        if (!std::isfinite(x)) {
            throw NonFiniteInput(std::string(what) + " contains a non-finite value");
        }
    }
}

}  // namespace

Toeplitz build_toeplitz(std::vector<double> col, std::vector<double> row) {
    if (col.empty() || row.empty()) {
        throw ShapeError("toeplitz: column and row must be non-empty");
    }
    if (col.size() < row.size()) {
        throw ShapeError("toeplitz: requires m >= n, got m = " +
                         std::to_string(col.size()) + ", n = " + std::to_string(row.size()));
    }
    require_finite(col, "toeplitz column");
    require_finite(row, "toeplitz row");
    if (col[0] != row[0]) {
        throw MismatchedCorner("toeplitz: col[0] and row[0] must agree exactly");
    }
    return Toeplitz{std::move(col), std::move(row)};
}

Partitions partition_vectors(const Toeplitz& t) {
    const int m = t.m();
    const int n = t.n();
    if (n < 2) throw ShapeError("partition_vectors: requires n >= 2");

    Partitions p;
    p.y.assign(t.row.begin() + 1, t.row.end());            // a_1 .. a_{n-1}
    p.z.assign(t.col.begin() + 1, t.col.end());            // a_{-1} .. a_{1-m}
    p.ybar.resize(m - 1);
    for (int i = 0; i < m - 1; ++i) p.ybar[i] = t.diag(n - 1 - i);   // a_{n-1} .. a_{n-m+1}
    p.zbar.resize(n - 1);
    for (int j = 0; j < n - 1; ++j) p.zbar[j] = t.diag(j + 1 - m);   // a_{1-m} .. a_{n-m-1}
    return p;
}

std::vector<double> matvec(const Toeplitz& t, std::span<const double> v, Tally* tally) {
    const int m = t.m();
    const int n = t.n();
    if (static_cast<int>(v.size()) != n) {
        throw ShapeError("matvec: vector length must equal n");
    }
    std::vector<double> out(m);
    for (int i = 0; i < m; ++i) {
        double s = 0.0;
        for (int j = 0; j < n; ++j) s += t.diag(j - i) * v[j];
        out[i] = s;
    }
    bill(tally, static_cast<std::uint64_t>(m) * static_cast<std::uint64_t>(n));
    return out;
}

std::vector<double> matvec_transpose(const Toeplitz& t, std::span<const double> v,
                                     Tally* tally) {
    const int m = t.m();
    const int n = t.n();
    if (static_cast<int>(v.size()) != m) {
        throw ShapeError("matvec_transpose: vector length must equal m");
    }
    std::vector<double> out(n);
    for (int j = 0; j < n; ++j) {
        double s = 0.0;
        for (int i = 0; i < m; ++i) s += t.diag(j - i) * v[i];
        out[j] = s;
    }
    bill(tally, static_cast<std::uint64_t>(m) * static_cast<std::uint64_t>(n));
    return out;
}

Hankel build_hankel(std::vector<double> col, std::vector<double> row) {
    if (col.empty() || row.empty()) {
        throw ShapeError("hankel: column and row must be non-empty");
    }
    if (col.size() < row.size()) {
        throw ShapeError("hankel: requires m >= n, got m = " +
                         std::to_string(col.size()) + ", n = " + std::to_string(row.size()));
    }
    require_finite(col, "hankel column");
    require_finite(row, "hankel row");
    if (col.back() != row.front()) {
        throw MismatchedCorner("hankel: col[m-1] and row[0] must agree exactly");
    }
    return Hankel{std::move(col), std::move(row)};
}

Toeplitz hankel_to_toeplitz(const Hankel& h) {
    // Row i of JH is row m-1-i of H, so (JH)(i, j) = h_{m-1-i+j}: Toeplitz
    // with a_k = h_{m-1+k}.
    std::vector<double> col(h.col.rbegin(), h.col.rend());
    std::vector<double> row = h.row;
    return Toeplitz{std::move(col), std::move(row)};
}

std::pair<Toeplitz, std::vector<double>> hankel_adapter(const Hankel& h,
                                                        std::span<const double> b) {
    if (static_cast<int>(b.size()) != h.m()) {
        throw ShapeError("hankel_adapter: rhs length must equal m");
    }
    std::vector<double> jb(b.rbegin(), b.rend());
    return {hankel_to_toeplitz(h), std::move(jb)};
}

Toeplitz interior_block(const Toeplitz& t) {
    if (t.n() < 2) throw ShapeError("interior_block: requires n >= 2");
    std::vector<double> col(t.col.begin(), t.col.end() - 1);
    std::vector<double> row(t.row.begin(), t.row.end() - 1);
    return Toeplitz{std::move(col), std::move(row)};
}

}  // namespace toepqr
