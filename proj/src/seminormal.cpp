#include "toepqr/seminormal.hpp"

#include <cmath>
#include <functional>
#include <utility>

#include "toepqr/errors.hpp"
#include "toepqr/vec.hpp"

namespace toepqr {

namespace {

using NormalSolveFn = std::function<std::vector<double>(std::span<const double>)>;

void validate_options(const SolveOptions& opts) {
    if (opts.refine_steps < 0) throw Error("refine_steps must be >= 0");
    if (opts.checkpoint_block < 1) throw Error("checkpoint_block must be >= 1");
}

// R^T w = d over packed rows, accumulator ("column") order: when row i is
// final, w_i is fixed and its contribution folds into all later positions.
// This is exactly the operation order of the fused streaming pass, so the
// dense and streaming forward substitutions agree bitwise.
std::vector<double> forward_subst_rows(const std::vector<std::vector<double>>& rows,
                                       std::span<const double> d, Tally* tally) {
    const int n = static_cast<int>(rows.size());
    std::vector<double> acc(d.begin(), d.end());
    std::vector<double> w(n);
    for (int i = 0; i < n; ++i) {
        const std::vector<double>& row = rows[i];
        if (row[0] == 0.0) throw SingularTriangular("forward substitution: zero diagonal");
        w[i] = acc[i] / row[0];
        for (int j = i + 1; j < n; ++j) acc[j] -= row[j - i] * w[i];
        bill(tally, static_cast<std::uint64_t>(n - i));
    }
    return w;
}

// R x = w over packed rows, ascending inner order; matches the per-row loop
// of the reverse-mode back substitutions bitwise.
std::vector<double> backward_subst_rows(const std::vector<std::vector<double>>& rows,
                                        std::span<const double> w, Tally* tally) {
    const int n = static_cast<int>(rows.size());
    std::vector<double> x(n);
    for (int i = n - 1; i >= 0; --i) {
        const std::vector<double>& row = rows[i];
        if (row[0] == 0.0) throw SingularTriangular("back substitution: zero diagonal");
        double s = w[i];
        for (int j = i + 1; j < n; ++j) s -= row[j - i] * x[j];
        x[i] = s / row[0];
        bill(tally, static_cast<std::uint64_t>(n - i));
    }
    return x;
}

FactorOptions factor_options(const SolveOptions& opts) {
    FactorOptions fopts;
    fopts.alpha = opts.alpha;
    fopts.variant = opts.variant;
    return fopts;
}

// O(n)-storage normal-equation solve: forward substitution rides the
// streaming factorization, back substitution rides the reverse
// regeneration from the rotation log.
std::vector<double> normal_solve_rotreverse(const Toeplitz& t, const SolveOptions& opts,
                                            std::span<const double> d, Tally* tally,
                                            StorageAudit* audit) {
    const int n = t.n();
    const std::size_t nw = static_cast<std::size_t>(n);
    std::vector<double> acc(d.begin(), d.end());
    std::vector<double> w(n);
    std::vector<double> x(n);
    AuditScope vectors(audit, 3 * nw);
    // Streaming factorization internals: scratch row plus three carried
    // vectors and the emitted row.
    AuditScope factor_internals(audit, 5 * nw);

    RotationLog log;
    {
        // Log contents: 3(n-1) (c, s) pairs, final carried vectors, last
        // column.
        AuditScope log_scope(audit, 10 * nw);
        log = factor_streaming(
            t, factor_options(opts),
            [&](int k, std::span<const double> row) {
                const int i = k - 1;
                if (row[0] == 0.0) {
                    throw SingularTriangular("streaming solve: zero diagonal");
                }
                w[i] = acc[i] / row[0];
                for (int j = i + 1; j < n; ++j) acc[j] -= row[j - i] * w[i];
                bill(tally, static_cast<std::uint64_t>(n - i));
            },
            tally);

        regenerate_reverse(
            log,
            [&](int k, std::span<const double> row) {
                const int i = k - 1;
                if (row[0] == 0.0) {
                    throw SingularTriangular("streaming solve: zero diagonal");
                }
                double s = w[i];
                for (int j = i + 1; j < n; ++j) s -= row[j - i] * x[j];
                x[i] = s / row[0];
                bill(tally, static_cast<std::uint64_t>(n - i));
            },
            tally);
    }
    return x;
}

std::vector<double> normal_solve_checkpointed(const Toeplitz& t, const SolveOptions& opts,
                                              std::span<const double> d, Tally* tally,
                                              StorageAudit* audit) {
    const int n = t.n();
    std::vector<double> acc(d.begin(), d.end());
    std::vector<double> w(n);
    std::vector<double> x(n);
    AuditScope vectors(audit, 3 * static_cast<std::size_t>(n));

    {
        AuditScope factor_internals(audit, 15 * static_cast<std::size_t>(n));
        factor_streaming(
            t, factor_options(opts),
            [&](int k, std::span<const double> row) {
                const int i = k - 1;
                if (row[0] == 0.0) {
                    throw SingularTriangular("checkpointed solve: zero diagonal");
                }
                w[i] = acc[i] / row[0];
                for (int j = i + 1; j < n; ++j) acc[j] -= row[j - i] * w[i];
                bill(tally, static_cast<std::uint64_t>(n - i));
            },
            tally);
    }

    checkpointed_reverse(
        t, opts,
        [&](int k, std::span<const double> row) {
            const int i = k - 1;
            if (row[0] == 0.0) {
                throw SingularTriangular("checkpointed solve: zero diagonal");
            }
            double s = w[i];
            for (int j = i + 1; j < n; ++j) s -= row[j - i] * x[j];
            x[i] = s / row[0];
            bill(tally, static_cast<std::uint64_t>(n - i));
        },
        tally, audit);
    return x;
}

std::vector<double> residual_vector(const Toeplitz& t, std::span<const double> b,
                                    std::span<const double> x, Tally* tally) {
    std::vector<double> r = matvec(t, x, tally);
    for (std::size_t i = 0; i < r.size(); ++i) r[i] = b[i] - r[i];
    return r;
}

RefineResult refine_loop(const Toeplitz& t, std::span<const double> b,
                         std::span<const double> x0, const NormalSolveFn& nsolve,
                         int steps, Tally* tally) {
    RefineResult res;
    res.x.assign(x0.begin(), x0.end());
    std::vector<double> r = residual_vector(t, b, res.x, tally);
    bill(tally, r.size());  // squarings in the norm
    res.residual_history.push_back(norm2(r));
    for (int step = 0; step < steps; ++step) {
        const std::vector<double> d = matvec_transpose(t, r, tally);
        const std::vector<double> delta = nsolve(d);
        for (std::size_t i = 0; i < res.x.size(); ++i) res.x[i] += delta[i];
        r = residual_vector(t, b, res.x, tally);
        bill(tally, r.size());
        res.residual_history.push_back(norm2(r));
    }
    return res;
}

SolveReport semi_normal(const Toeplitz& t, std::span<const double> b,
                        const SolveOptions& opts, StorageAudit* audit) {
    validate_options(opts);
    if (static_cast<int>(b.size()) != t.m()) {
        throw ShapeError("solve: rhs length must equal m");
    }

    Tally tally;
    const std::vector<double> d = matvec_transpose(t, b, &tally);

    RFactor rf;  // dense mode keeps the factor for reuse across refinements
    NormalSolveFn nsolve;
    switch (opts.storage_mode) {
        case StorageMode::Dense:
            rf = factor(t, factor_options(opts), &tally);
            nsolve = [&](std::span<const double> rhs) {
                const std::vector<double> w = forward_subst_rows(rf.rows, rhs, &tally);
                return backward_subst_rows(rf.rows, w, &tally);
            };
            break;
        case StorageMode::RotationReverse:
            nsolve = [&](std::span<const double> rhs) {
                return normal_solve_rotreverse(t, opts, rhs, &tally, audit);
            };
            break;
        case StorageMode::Checkpointed:
            nsolve = [&](std::span<const double> rhs) {
                return normal_solve_checkpointed(t, opts, rhs, &tally, audit);
            };
            break;
    }

    SolveReport report;
    report.x = nsolve(d);
    if (opts.refine_steps > 0) {
        report.x = refine_loop(t, b, report.x, nsolve, opts.refine_steps, &tally).x;
    }

    const std::vector<double> r = residual_vector(t, b, report.x, &tally);
    const std::vector<double> nr = matvec_transpose(t, r, &tally);
    bill(&tally, r.size() + nr.size());
    report.residual_2norm = norm2(r);
    report.normal_residual_2norm = norm2(nr);
    report.tally = tally.mults;
    return report;
}

}  // namespace

SolveReport solve(const Toeplitz& t, std::span<const double> b, const SolveOptions& opts) {
    if (t.m() != t.n()) {
        throw ShapeError("solve: matrix must be square; use least_squares for m > n");
    }
    return semi_normal(t, b, opts, nullptr);
}

SolveReport least_squares(const Toeplitz& t, std::span<const double> b,
                          const SolveOptions& opts) {
    return semi_normal(t, b, opts, nullptr);
}

SolveReport solve_streaming(const Toeplitz& t, std::span<const double> b, SolveOptions opts,
                            StorageAudit* audit) {
    opts.storage_mode = StorageMode::RotationReverse;
    return semi_normal(t, b, opts, audit);
}

namespace {

// Emits rows base.k + cnt, ..., base.k + 1 of R (step j emits row j + 1).
// Splits the range in half, advances a checkpoint copy over the first half,
// recurses on the second half first, then on the first; runs of at most
// `block` rows are generated forward into a buffer and emitted backwards.
void reverse_recursion(const LatticeState& base, int cnt, int block,
                       DowndateVariant variant, const RowEmitter& emit, Tally* tally,
                       StorageAudit* audit) {
    const std::size_t state_words = 4 * static_cast<std::size_t>(base.n - 1);
    if (cnt <= block) {
        LatticeState st = base;
        st.tally = Tally{};
        AuditScope state_scope(audit, state_words);
        std::vector<std::vector<double>> buf(cnt);
        std::size_t buf_words = 0;
        for (int i = 0; i < cnt; ++i) {
            StepResult sr = lattice_step(st, variant);
            buf_words += sr.rb_row.size();
            if (audit != nullptr) audit->alloc(sr.rb_row.size());
            buf[i] = std::move(sr.rb_row);
        }
        bill(tally, st.tally.mults);
        for (int i = cnt - 1; i >= 0; --i) emit(base.k + i + 1, buf[i]);
        if (audit != nullptr) audit->release(buf_words);
        return;
    }

    const int k1 = cnt / 2;
    const int k2 = cnt - k1;
    {
        LatticeState mid = base;
        mid.tally = Tally{};
        AuditScope mid_scope(audit, state_words);
        for (int i = 0; i < k1; ++i) lattice_step(mid, variant);
        bill(tally, mid.tally.mults);
        reverse_recursion(mid, k2, block, variant, emit, tally, audit);
    }
    reverse_recursion(base, k1, block, variant, emit, tally, audit);
}

}  // namespace

void checkpointed_reverse(const Toeplitz& t, const SolveOptions& opts,
                          const RowEmitter& emit, Tally* tally, StorageAudit* audit) {
    validate_options(opts);
    const int n = t.n();

    Tally acc;
    const FirstRow fr = first_row(t, opts.alpha, &acc);
    std::vector<double> row1(n);
    row1[0] = fr.r11;
    std::copy(fr.u.begin(), fr.u.end(), row1.begin() + 1);
    AuditScope row1_scope(audit, static_cast<std::size_t>(n));

    if (n >= 2) {
        LatticeState st = lattice_init(t, fr);
        AuditScope root_scope(audit, 4 * static_cast<std::size_t>(n - 1));
        reverse_recursion(st, n - 1, opts.checkpoint_block, opts.variant, emit, &acc,
                          audit);
    }
    emit(1, row1);
    bill(tally, acc.mults);
}

RefineResult iterative_refinement(const Toeplitz& t, std::span<const double> b,
                                  std::span<const double> x0, const RFactor& rf,
                                  int steps, Tally* tally) {
    if (steps < 0) throw Error("iterative_refinement: steps must be >= 0");
    if (static_cast<int>(b.size()) != t.m() || static_cast<int>(x0.size()) != t.n()) {
        throw ShapeError("iterative_refinement: shape mismatch");
    }
    if (static_cast<int>(rf.rows.size()) != t.n()) {
        throw ShapeError("iterative_refinement: factor must be dense with n rows");
    }
    Tally local;
    const NormalSolveFn nsolve = [&](std::span<const double> rhs) {
        const std::vector<double> w = forward_subst_rows(rf.rows, rhs, &local);
        return backward_subst_rows(rf.rows, w, &local);
    };
    RefineResult res = refine_loop(t, b, x0, nsolve, steps, &local);
    bill(tally, local.mults);
    return res;
}

}  // namespace toepqr
