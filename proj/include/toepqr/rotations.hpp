#pragma once

// Plane (updating) and mixed (downdating) rotation kernels.
//
// Update: given a diagonal a and a carried element b, a plane rotation with
//   r = sqrt(a^2 + b^2), c = a/r, s = b/r
// maps the pair (t, v) to (c t + s v, c v - s t), growing the diagonal and
// annihilating b at its own position.
//
// Downdate: given a diagonal r_kk and a carried element x_k with
// x_k^2 < r_kk^2, the parameters
//   u_kk = sqrt(r_kk^2 - x_k^2), c = u_kk / r_kk, s = x_k / r_kk
// shrink the diagonal.  Off-diagonal pairs are transformed in *mixed* form:
// the new row element is computed first and then reused for the carried
// element,
//   u_j  = (r_j - s x_j) / c
//   x2_j = c x_j - s u_j
// This ordering is what keeps the transformation mixed forward/backward
// stable; the pure hyperbolic form (x2_j = (x_j - s r_j) / c) is provided
// for experiments but sits outside the stability contract.
//
// Conventions: the caller passes the current diagonal as the first operand,
// so a >= 0 (plane) and r_kk > 0 (downdate); c > 0 and s keeps the sign of
// the carried element.  An exactly zero carried element produces the
// identity rotation (c = 1, s = 0) so that exact-zero structure propagates
// exactly.  Every generation or two-term application bills 4
// multiplication-equivalents (see tally.hpp).

#include <cmath>
#include <cstdint>
#include <utility>

#include "toepqr/errors.hpp"
#include "toepqr/tally.hpp"

namespace toepqr {

enum class RotationKind : std::uint8_t { PlaneUpdate, MixedDowndate };

struct Rotation {
    RotationKind kind;
    double c;
    double s;
};

inline constexpr std::uint64_t kRotationCost = 4;

struct PlaneResult {
    Rotation rot;
    double r;  // new (grown) diagonal
};

struct DowndateResult {
    Rotation rot;
    double u_kk;  // new (shrunk) diagonal
};

inline PlaneResult gen_plane(double a, double b, Tally* tally = nullptr) {
    bill(tally, kRotationCost);
    if (b == 0.0) {
        if (a == 0.0) throw ZeroPivot("gen_plane: both operands are zero");
        return {{RotationKind::PlaneUpdate, 1.0, 0.0}, a};
    }
    if (a == 0.0) {
        return {{RotationKind::PlaneUpdate, 0.0, b > 0.0 ? 1.0 : -1.0}, std::abs(b)};
    }
    const double r = std::sqrt(a * a + b * b);
    return {{RotationKind::PlaneUpdate, a / r, b / r}, r};
}

inline std::pair<double, double> apply_plane(const Rotation& rot, double t, double v,
                                             Tally* tally = nullptr) {
    if (rot.kind != RotationKind::PlaneUpdate) {
        throw KindMismatch("apply_plane: rotation is not a plane update");
    }
    bill(tally, kRotationCost);
    return {rot.c * t + rot.s * v, rot.c * v - rot.s * t};
}

inline DowndateResult gen_downdate(double r_kk, double x_k, Tally* tally = nullptr) {
    bill(tally, kRotationCost);
    if (r_kk <= 0.0) {
        throw ZeroPivot("gen_downdate: diagonal must be positive");
    }
    if (x_k == 0.0) {
        return {{RotationKind::MixedDowndate, 1.0, 0.0}, r_kk};
    }
    const double radicand = r_kk * r_kk - x_k * x_k;
    if (radicand <= 0.0) {
        throw DowndateBreakdown(-1, 0, "|x_k| >= diagonal");
    }
    const double u_kk = std::sqrt(radicand);
    return {{RotationKind::MixedDowndate, u_kk / r_kk, x_k / r_kk}, u_kk};
}

// Mixed form; returns (u_j, x2_j).
inline std::pair<double, double> apply_downdate_mixed(const Rotation& rot, double r_j,
                                                      double x_j, Tally* tally = nullptr) {
    if (rot.kind != RotationKind::MixedDowndate) {
        throw KindMismatch("apply_downdate_mixed: rotation is not a downdate");
    }
    bill(tally, kRotationCost);
    const double u_j = (r_j - rot.s * x_j) / rot.c;
    const double x2_j = rot.c * x_j - rot.s * u_j;
    return {u_j, x2_j};
}

// Pure hyperbolic form; algebraically identical to the mixed form but
// without its stability guarantee.  Returns (u_j, x2_j).
inline std::pair<double, double> apply_downdate_pure(const Rotation& rot, double r_j,
                                                     double x_j, Tally* tally = nullptr) {
    if (rot.kind != RotationKind::MixedDowndate) {
        throw KindMismatch("apply_downdate_pure: rotation is not a downdate");
    }
    bill(tally, kRotationCost);
    const double u_j = (r_j - rot.s * x_j) / rot.c;
    const double x2_j = (x_j - rot.s * r_j) / rot.c;
    return {u_j, x2_j};
}

// Inverse of apply_plane; returns (t, v).
inline std::pair<double, double> invert_plane(const Rotation& rot, double t2, double v2,
                                              Tally* tally = nullptr) {
    if (rot.kind != RotationKind::PlaneUpdate) {
        throw KindMismatch("invert_plane: rotation is not a plane update");
    }
    bill(tally, kRotationCost);
    return {rot.c * t2 - rot.s * v2, rot.s * t2 + rot.c * v2};
}

// Inverse of apply_downdate_mixed, again in mixed order: the carried
// element is recovered first and then reused for the row element.
// Returns (r_j, x_j).
inline std::pair<double, double> invert_downdate(const Rotation& rot, double u_j,
                                                 double x2_j, Tally* tally = nullptr) {
    if (rot.kind != RotationKind::MixedDowndate) {
        throw KindMismatch("invert_downdate: rotation is not a downdate");
    }
    bill(tally, kRotationCost);
    const double x_j = (x2_j + rot.s * u_j) / rot.c;
    const double r_j = rot.c * u_j + rot.s * x_j;
    return {r_j, x_j};
}

}  // namespace toepqr
