#pragma once

#include <stdexcept>
#include <string>

namespace toepqr {

// Base class for all library errors.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Input shapes are inconsistent (m < n, empty column, length mismatch, ...).
struct ShapeError : Error {
    using Error::Error;
};

// A file could not be read/written or its JSON payload is malformed.
struct IoError : Error {
    using Error::Error;
};

// col[0] and row[0] disagree on the shared corner element.
struct MismatchedCorner : Error {
    using Error::Error;
};

// An input value is NaN or infinite.
struct NonFiniteInput : Error {
    using Error::Error;
};

// A rotation was requested from data that admits none (e.g. gen_plane(0, 0))
// or a diagonal element vanished where a positive one is required.
struct ZeroPivot : Error {
    using Error::Error;
};

// A rotation was applied through the wrong entry point for its kind.
struct KindMismatch : Error {
    using Error::Error;
};

// A downdate would need |x_k| >= r_kk; the factorization cannot continue.
// `row` is the 1-based row at which the sweep stopped (-1 when unknown) and
// `pass` tells which downdate failed: 1 = first (u), 2 = second (z-bar),
// 0 = unknown.
struct DowndateBreakdown : Error {
    int row;
    int pass;

    DowndateBreakdown(int row_, int pass_, const std::string& detail)
        : Error(compose(row_, pass_, detail)), row(row_), pass(pass_) {}

  private:
    static std::string compose(int row, int pass, const std::string& detail) {
        std::string msg = "downdate breakdown";
        if (row >= 0) msg += " at row " + std::to_string(row);
        if (pass == 1) msg += " (first downdate)";
        if (pass == 2) msg += " (second downdate)";
        if (!detail.empty()) msg += ": " + detail;
        return msg;
    }
};

// A triangular solve hit an exactly zero diagonal element.
struct SingularTriangular : Error {
    using Error::Error;
};

// Dense Cholesky hit a non-positive pivot. `pivot` is the 0-based index.
struct NotPositiveDefinite : Error {
    int pivot;

    NotPositiveDefinite(int pivot_, const std::string& detail)
        : Error("matrix not positive definite at pivot " + std::to_string(pivot_) +
                (detail.empty() ? "" : ": " + detail)),
          pivot(pivot_) {}
};

// Householder QR met an exactly zero pivot column.
struct RankDeficient : Error {
    using Error::Error;
};

}  // namespace toepqr
