#include "toepqr/lattice.hpp"

#include <algorithm>
#include <cmath>

#include "toepqr/errors.hpp"

namespace toepqr {

namespace {

void validate_alpha(double alpha) {
    if (!(std::isfinite(alpha) && alpha >= 0.0)) {
        throw Error("alpha must be finite and >= 0");
    }
}

}  // namespace

FirstRow first_row(const Toeplitz& t, double alpha, Tally* tally) {
    validate_alpha(alpha);
    const int m = t.m();
    const int n = t.n();

    double radicand = t.col[0] * t.col[0] + alpha;
    for (int i = 1; i < m; ++i) radicand += t.col[i] * t.col[i];
    bill(tally, static_cast<std::uint64_t>(m));
    if (radicand <= 0.0) {
        throw ZeroPivot("first_row: a_0^2 + z^T z + alpha is not positive");
    }

    FirstRow fr;
    fr.r11 = std::sqrt(radicand);
    if (n == 1) return fr;

    // r_11 u = a_0 y + B^T z, with B^T z summed directly over the interior
    // Toeplitz block in (m-1)(n-1) multiplications.
    const Toeplitz interior = interior_block(t);
    const std::span<const double> z(t.col.data() + 1, static_cast<std::size_t>(m - 1));
    const std::vector<double> btz = matvec_transpose(interior, z, tally);

    fr.u.resize(n - 1);
    for (int j = 0; j < n - 1; ++j) {
        fr.u[j] = (t.col[0] * t.row[j + 1] + btz[j]) / fr.r11;
    }
    bill(tally, 2 * static_cast<std::uint64_t>(n - 1));
    return fr;
}

LatticeState lattice_init(const Toeplitz& t, const FirstRow& fr) {
    const int m = t.m();
    const int n = t.n();
    if (n < 2) throw ShapeError("lattice_init: requires n >= 2");
    if (static_cast<int>(fr.u.size()) != n - 1) {
        throw ShapeError("lattice_init: first row has wrong length");
    }

    LatticeState st;
    st.n = n;
    st.k = 1;
    st.t.resize(n - 1);
    st.t[0] = fr.r11;
    std::copy(fr.u.begin(), fr.u.end() - 1, st.t.begin() + 1);
    st.yv.assign(t.row.begin() + 1, t.row.end());
    st.uv = fr.u;
    st.zv.resize(n - 1);
    for (int i = 0; i < n - 1; ++i) st.zv[i] = t.col[m - 1 - i];
    return st;
}

StepResult lattice_step(LatticeState& st, DowndateVariant variant) {
    const int n = st.n;
    const int k = st.k;
    if (k < 1 || k > n - 1) {
        throw ShapeError("lattice_step: step index out of range");
    }
    const int i0 = k - 1;
    std::vector<double>& t = st.t;
    Tally* tally = &st.tally;

    if (!(t[i0] > 0.0)) {
        throw ZeroPivot("lattice_step: diagonal is not positive");
    }

    StepResult out;
    for (StepPhase phase : kStepOrder) {
        switch (phase) {
            case StepPhase::UpdateY: {
                const PlaneResult gen = gen_plane(t[i0], st.yv[i0], tally);
                t[i0] = gen.r;
                st.yv[i0] = 0.0;
                for (int j = i0 + 1; j <= n - 2; ++j) {
                    const auto [tj, yj] = apply_plane(gen.rot, t[j], st.yv[j], tally);
                    t[j] = tj;
                    st.yv[j] = yj;
                }
                out.rot_y = gen.rot;
                break;
            }
            case StepPhase::DowndateU:
            case StepPhase::DowndateZbar: {
                const int pass = phase == StepPhase::DowndateU ? 1 : 2;
                std::vector<double>& xv = pass == 1 ? st.uv : st.zv;
                DowndateResult gen;
                try {
                    gen = gen_downdate(t[i0], xv[i0], tally);
                } catch (const DowndateBreakdown&) {
                    throw DowndateBreakdown(k, pass, "|carried element| >= diagonal");
                }
                t[i0] = gen.u_kk;
                xv[i0] = 0.0;
                for (int j = i0 + 1; j <= n - 2; ++j) {
                    const auto [rj, xj] =
                        variant == DowndateVariant::Mixed
                            ? apply_downdate_mixed(gen.rot, t[j], xv[j], tally)
                            : apply_downdate_pure(gen.rot, t[j], xv[j], tally);
                    t[j] = rj;
                    xv[j] = xj;
                }
                (pass == 1 ? out.rot_u : out.rot_z) = gen.rot;
                break;
            }
        }
    }

    out.rb_row.assign(t.begin() + i0, t.end());

    // Row k of R_b doubles as row k+1 of R_t shifted one column right; the
    // element falling off the end (r_{k+1,n}) lives in the emitted row and
    // the last-column record only.
    for (int j = n - 2; j >= i0 + 1; --j) t[j] = t[j - 1];
    st.k += 1;
    return out;
}

RotationLog factor_streaming(const Toeplitz& t, const FactorOptions& opts,
                             const RowEmitter& emit, Tally* tally) {
    validate_alpha(opts.alpha);
    const int n = t.n();

    Tally acc;
    const FirstRow fr = first_row(t, opts.alpha, &acc);

    RotationLog log;
    log.n = n;
    log.last_column.resize(n);

    std::vector<double> row1(n);
    row1[0] = fr.r11;
    std::copy(fr.u.begin(), fr.u.end(), row1.begin() + 1);
    log.last_column[0] = row1.back();
    if (emit) emit(1, row1);

    if (n >= 2) {
        LatticeState st = lattice_init(t, fr);
        st.tally = acc;
        log.rotations.reserve(3 * (n - 1));
        for (int k = 1; k <= n - 1; ++k) {
            const StepResult sr = lattice_step(st, opts.variant);
            log.rotations.push_back(sr.rot_y);
            log.rotations.push_back(sr.rot_u);
            log.rotations.push_back(sr.rot_z);
            log.last_column[k] = sr.rb_row.back();
            if (emit) emit(k + 1, sr.rb_row);
        }
        log.final_y = st.yv;
        log.final_u = st.uv;
        log.final_z = st.zv;
        acc = st.tally;
    }

    bill(tally, acc.mults);
    return log;
}

RFactor factor(const Toeplitz& t, const FactorOptions& opts, Tally* tally) {
    RFactor f;
    f.n = t.n();
    if (opts.keep_dense) f.rows.reserve(f.n);

    Tally acc;
    f.log = factor_streaming(
        t, opts,
        [&](int, std::span<const double> row) {
            if (opts.keep_dense) f.rows.emplace_back(row.begin(), row.end());
        },
        &acc);
    f.tally = acc;
    bill(tally, acc.mults);
    return f;
}

namespace {

void validate_log(const RotationLog& log) {
    const int n = log.n;
    if (n < 1 || static_cast<int>(log.last_column.size()) != n) {
        throw ShapeError("rotation log: last_column must have length n");
    }
    if (static_cast<int>(log.rotations.size()) != 3 * (n - 1)) {
        throw ShapeError("rotation log: expected 3(n-1) rotations");
    }
    for (int k = 0; k < n - 1; ++k) {
        const Rotation& ry = log.rotations[3 * k + 0];
        const Rotation& ru = log.rotations[3 * k + 1];
        const Rotation& rz = log.rotations[3 * k + 2];
        if (ry.kind != RotationKind::PlaneUpdate ||
            ru.kind != RotationKind::MixedDowndate ||
            rz.kind != RotationKind::MixedDowndate) {
            throw KindMismatch("rotation log: step " + std::to_string(k + 1) +
                               " does not follow the update/downdate/downdate pattern");
        }
        if (!(ru.c > 0.0) || !(rz.c > 0.0) || !(ry.c >= 0.0)) {
            throw KindMismatch("rotation log: rotation cosines out of range");
        }
    }
    auto check_final = [n](const std::vector<double>& v, const char* name) {
        if (!v.empty() && static_cast<int>(v.size()) != n - 1) {
            throw ShapeError(std::string("rotation log: ") + name + " has wrong length");
        }
    };
    check_final(log.final_y, "final_y");
    check_final(log.final_u, "final_u");
    check_final(log.final_z, "final_z");
}

}  // namespace

void regenerate_reverse(const RotationLog& log, const RowEmitter& emit, Tally* tally) {
    validate_log(log);
    const int n = log.n;

    if (emit) {
        const double rnn = log.last_column[n - 1];
        emit(n, std::span<const double>(&rnn, 1));
    }
    if (n == 1) return;

    Tally acc;
    // Carried vectors after the last step are exact zeros, so an absent
    // record (e.g. a log restored from its serialized form) means zeros.
    auto final_or_zero = [n](const std::vector<double>& v) {
        return v.empty() ? std::vector<double>(n - 1, 0.0) : v;
    };
    std::vector<double> t(n - 1, 0.0);
    std::vector<double> yv = final_or_zero(log.final_y);
    std::vector<double> uv = final_or_zero(log.final_u);
    std::vector<double> zv = final_or_zero(log.final_z);
    std::vector<double> rowbuf(n);

    for (int k = n - 1; k >= 1; --k) {
        const int i0 = k - 1;

        // Undo the column shift: row k of R_b occupies positions i0..n-2,
        // with its final element restored from the last-column record.
        for (int j = i0; j <= n - 3; ++j) t[j] = t[j + 1];
        t[n - 2] = log.last_column[k];

        const Rotation& rot_y = log.rotations[3 * i0 + 0];
        const Rotation& rot_u = log.rotations[3 * i0 + 1];
        const Rotation& rot_z = log.rotations[3 * i0 + 2];

        // Invert the second downdate (zbar), then the first (u): the
        // generating position recovers diagonal and carried element from
        // the stored parameters, the rest inverts pairwise.
        const auto undo_downdate = [&](const Rotation& rot, std::vector<double>& xv) {
            const double d = t[i0] / rot.c;
            xv[i0] = rot.s * d;
            t[i0] = d;
            bill(&acc, kRotationCost);
            for (int j = i0 + 1; j <= n - 2; ++j) {
                const auto [rj, xj] = invert_downdate(rot, t[j], xv[j], &acc);
                t[j] = rj;
                xv[j] = xj;
            }
        };
        undo_downdate(rot_z, zv);
        undo_downdate(rot_u, uv);

        // Invert the update (y).
        {
            const double d = t[i0];
            t[i0] = rot_y.c * d;
            yv[i0] = rot_y.s * d;
            bill(&acc, kRotationCost);
            for (int j = i0 + 1; j <= n - 2; ++j) {
                const auto [tj, vj] = invert_plane(rot_y, t[j], yv[j], &acc);
                t[j] = tj;
                yv[j] = vj;
            }
        }

        if (emit) {
            std::copy(t.begin() + i0, t.end(), rowbuf.begin());
            rowbuf[n - 1 - i0] = log.last_column[i0];
            emit(k, std::span<const double>(rowbuf.data(), static_cast<std::size_t>(n - k + 1)));
        }
    }
    bill(tally, acc.mults);
}

}  // namespace toepqr
