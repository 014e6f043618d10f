#include "toepqr/oracles.hpp"

#include <algorithm>
#include <cmath>

#include "toepqr/errors.hpp"

namespace toepqr::oracle {

DenseMatrix DenseMatrix::identity(int n) {
    DenseMatrix eye(n, n);
    for (int i = 0; i < n; ++i) eye(i, i) = 1.0;
    return eye;
}

DenseMatrix dense(const Toeplitz& t) {
    DenseMatrix d(t.m(), t.n());
    for (int i = 0; i < t.m(); ++i) {
        for (int j = 0; j < t.n(); ++j) d(i, j) = t.diag(j - i);
    }
    return d;
}

DenseMatrix dense(const Hankel& h) {
    DenseMatrix d(h.m(), h.n());
    for (int i = 0; i < h.m(); ++i) {
        for (int j = 0; j < h.n(); ++j) {
            const int k = i + j;
            d(i, j) = k < h.m() ? h.col[k] : h.row[k - h.m() + 1];
        }
    }
    return d;
}

DenseMatrix from_rows(const std::vector<std::vector<double>>& rows) {
    const int n = static_cast<int>(rows.size());
    DenseMatrix r(n, n);
    for (int i = 0; i < n; ++i) {
        if (static_cast<int>(rows[i].size()) != n - i) {
            throw ShapeError("from_rows: row " + std::to_string(i + 1) + " has wrong length");
        }
        for (int j = i; j < n; ++j) r(i, j) = rows[i][j - i];
    }
    return r;
}

DenseMatrix transpose(const DenseMatrix& a) {
    DenseMatrix t(a.n, a.m);
    for (int i = 0; i < a.m; ++i) {
        for (int j = 0; j < a.n; ++j) t(j, i) = a(i, j);
    }
    return t;
}

DenseMatrix matmul(const DenseMatrix& a, const DenseMatrix& b) {
    if (a.n != b.m) throw ShapeError("matmul: inner dimensions differ");
    DenseMatrix c(a.m, b.n);
    for (int i = 0; i < a.m; ++i) {
        for (int j = 0; j < b.n; ++j) {
            double s = 0.0;
            for (int k = 0; k < a.n; ++k) s += a(i, k) * b(k, j);
            c(i, j) = s;
        }
    }
    return c;
}

DenseMatrix subtract(const DenseMatrix& a, const DenseMatrix& b) {
    if (a.m != b.m || a.n != b.n) throw ShapeError("subtract: shapes differ");
    DenseMatrix c(a.m, a.n);
    for (std::size_t i = 0; i < a.a.size(); ++i) c.a[i] = a.a[i] - b.a[i];
    return c;
}

std::vector<double> matvec(const DenseMatrix& a, std::span<const double> v) {
    if (static_cast<int>(v.size()) != a.n) throw ShapeError("matvec: length mismatch");
    std::vector<double> y(a.m);
    for (int i = 0; i < a.m; ++i) {
        double s = 0.0;
        for (int j = 0; j < a.n; ++j) s += a(i, j) * v[j];
        y[i] = s;
    }
    return y;
}

DenseMatrix gram_dense(const DenseMatrix& m) {
    DenseMatrix s(m.n, m.n);
    for (int i = 0; i < m.n; ++i) {
        for (int j = i; j < m.n; ++j) {
            double acc = 0.0;
            for (int k = 0; k < m.m; ++k) acc += m(k, i) * m(k, j);
            s(i, j) = acc;
            s(j, i) = acc;
        }
    }
    return s;
}

DenseMatrix gram(const Toeplitz& t, double alpha) {
    DenseMatrix s = gram_dense(dense(t));
    for (int i = 0; i < s.n; ++i) s(i, i) += alpha;
    return s;
}

double norm1(const DenseMatrix& a) {
    double best = 0.0;
    for (int j = 0; j < a.n; ++j) {
        double col = 0.0;
        for (int i = 0; i < a.m; ++i) col += std::abs(a(i, j));
        best = std::max(best, col);
    }
    return best;
}

double norm1(const Toeplitz& t) {
    double best = 0.0;
    for (int j = 0; j < t.n(); ++j) {
        double col = 0.0;
        for (int i = 0; i < t.m(); ++i) col += std::abs(t.diag(j - i));
        best = std::max(best, col);
    }
    return best;
}

namespace {

// One sweep of Householder elimination on `a` (m x n, m >= n), applying the
// same reflections to `b` when given.  Leaves R in the upper triangle.
void householder_sweep(DenseMatrix& a, std::vector<double>* b) {
    const int m = a.m;
    const int n = a.n;
    if (m < n) throw ShapeError("householder_qr: requires m >= n");
    std::vector<double> v(m);
    for (int k = 0; k < n; ++k) {
        double sigma2 = 0.0;
        for (int i = k; i < m; ++i) sigma2 += a(i, k) * a(i, k);
        if (sigma2 == 0.0) {
            throw RankDeficient("householder_qr: zero pivot column " + std::to_string(k));
        }
        const double sigma = std::sqrt(sigma2);
        for (int i = k; i < m; ++i) v[i] = a(i, k);
        v[k] += a(k, k) >= 0.0 ? sigma : -sigma;
        double vnorm2 = 0.0;
        for (int i = k; i < m; ++i) vnorm2 += v[i] * v[i];
        for (int j = k; j < n; ++j) {
            double proj = 0.0;
            for (int i = k; i < m; ++i) proj += v[i] * a(i, j);
            const double scale = 2.0 * proj / vnorm2;
            for (int i = k; i < m; ++i) a(i, j) -= scale * v[i];
        }
        if (b != nullptr) {
            double proj = 0.0;
            for (int i = k; i < m; ++i) proj += v[i] * (*b)[i];
            const double scale = 2.0 * proj / vnorm2;
            for (int i = k; i < m; ++i) (*b)[i] -= scale * v[i];
        }
    }
}

// Extracts the n x n upper triangle with positive diagonal, flipping row
// signs as needed (and the matching rhs entries).
DenseMatrix extract_r(const DenseMatrix& a, std::vector<double>* b) {
    DenseMatrix r(a.n, a.n);
    for (int i = 0; i < a.n; ++i) {
        const bool flip = a(i, i) < 0.0;
        for (int j = i; j < a.n; ++j) r(i, j) = flip ? -a(i, j) : a(i, j);
        if (flip && b != nullptr) (*b)[i] = -(*b)[i];
    }
    return r;
}

}  // namespace

DenseMatrix householder_qr(const DenseMatrix& a) {
    DenseMatrix work = a;
    householder_sweep(work, nullptr);
    return extract_r(work, nullptr);
}

std::pair<DenseMatrix, std::vector<double>> householder_qr_rhs(const DenseMatrix& a,
                                                               std::span<const double> b) {
    if (static_cast<int>(b.size()) != a.m) {
        throw ShapeError("householder_qr_rhs: rhs length must equal m");
    }
    DenseMatrix work = a;
    std::vector<double> rhs(b.begin(), b.end());
    householder_sweep(work, &rhs);
    DenseMatrix r = extract_r(work, &rhs);
    rhs.resize(a.n);
    return {std::move(r), std::move(rhs)};
}

DenseMatrix cholesky(const DenseMatrix& s) {
    if (s.m != s.n) throw ShapeError("cholesky: matrix must be square");
    const int n = s.n;
    DenseMatrix r(n, n);
    for (int k = 0; k < n; ++k) {
        double d = s(k, k);
        for (int i = 0; i < k; ++i) d -= r(i, k) * r(i, k);
        if (d <= 0.0) {
            throw NotPositiveDefinite(k, "pivot " + std::to_string(d));
        }
        r(k, k) = std::sqrt(d);
        for (int j = k + 1; j < n; ++j) {
            double v = s(k, j);
            for (int i = 0; i < k; ++i) v -= r(i, k) * r(i, j);
            r(k, j) = v / r(k, k);
        }
    }
    return r;
}

std::vector<double> tri_solve_forward(const DenseMatrix& r, std::span<const double> rhs) {
    if (r.m != r.n || static_cast<int>(rhs.size()) != r.n) {
        throw ShapeError("tri_solve_forward: shape mismatch");
    }
    const int n = r.n;
    std::vector<double> w(n);
    for (int i = 0; i < n; ++i) {
        double s = rhs[i];
        for (int j = 0; j < i; ++j) s -= r(j, i) * w[j];
        if (r(i, i) == 0.0) throw SingularTriangular("tri_solve_forward: zero diagonal");
        w[i] = s / r(i, i);
    }
    return w;
}

std::vector<double> tri_solve_backward(const DenseMatrix& r, std::span<const double> rhs) {
    if (r.m != r.n || static_cast<int>(rhs.size()) != r.n) {
        throw ShapeError("tri_solve_backward: shape mismatch");
    }
    const int n = r.n;
    std::vector<double> x(n);
    for (int i = n - 1; i >= 0; --i) {
        double s = rhs[i];
        for (int j = i + 1; j < n; ++j) s -= r(i, j) * x[j];
        if (r(i, i) == 0.0) throw SingularTriangular("tri_solve_backward: zero diagonal");
        x[i] = s / r(i, i);
    }
    return x;
}

double cond1_triangular(const DenseMatrix& r) {
    const int n = r.n;
    double inv_norm = 0.0;
    std::vector<double> e(n, 0.0);
    for (int j = 0; j < n; ++j) {
        e[j] = 1.0;
        const std::vector<double> col = tri_solve_backward(r, e);
        e[j] = 0.0;
        double sum = 0.0;
        for (double x : col) sum += std::abs(x);
        inv_norm = std::max(inv_norm, sum);
    }
    return norm1(r) * inv_norm;
}

DenseMatrix displacement(const DenseMatrix& b) {
    if (b.m < 2 || b.n < 2) throw ShapeError("displacement: matrix too small");
    DenseMatrix c(b.m - 1, b.n - 1);
    for (int i = 0; i + 1 < b.m; ++i) {
        for (int j = 0; j + 1 < b.n; ++j) c(i, j) = b(i + 1, j + 1) - b(i, j);
    }
    return c;
}

std::vector<double> solve_normal_cholesky(const Toeplitz& t, std::span<const double> b,
                                          double alpha) {
    const DenseMatrix r = cholesky(gram(t, alpha));
    const std::vector<double> d = matvec_transpose(t, b);
    return tri_solve_backward(r, tri_solve_forward(r, d));
}

std::vector<double> lsq_qr(const Toeplitz& t, std::span<const double> b) {
    const auto [r, qtb] = householder_qr_rhs(dense(t), b);
    return tri_solve_backward(r, qtb);
}

}  // namespace toepqr::oracle
