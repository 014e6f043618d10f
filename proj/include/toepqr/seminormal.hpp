#pragma once

// Semi-normal-equation solvers for Toeplitz systems and least-squares
// problems.  With R the computed factor of A^T A + alpha I, a solve is
//   d = A^T b,   R^T w = d,   R x = w,
// which never forms Q.  The factor's columnwise accuracy makes this weakly
// stable: for kappa^2 eps well below 1, errors behave like O(kappa^2 eps)
// and scaled residuals like O(kappa eps); the normal-equation residual
// A^T (A x - b) stays small regardless of conditioning.  Optional iterative
// refinement in working precision removes most of the kappa^2 factor.
//
// Storage modes:
//   Dense           - keep the n(n+1)/2 row elements of R; reference mode.
//   RotationReverse - O(n) words: forward substitution is fused with the
//                     streaming factorization, back substitution with the
//                     rotation-log reverse regeneration.  Regenerated rows
//                     differ from the forward rows at roundoff level.
//   Checkpointed    - O(n log n) words, O(n^2 log n) multiplications: rows
//                     are re-derived in reverse order from saved lattice
//                     states by binary recursion, bitwise identical to the
//                     forward rows, so results match Dense mode bitwise.

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "toepqr/lattice.hpp"
#include "toepqr/tally.hpp"
#include "toepqr/toeplitz.hpp"

namespace toepqr {

enum class StorageMode : std::uint8_t { Dense, RotationReverse, Checkpointed };

struct SolveOptions {
    double alpha = 0.0;
    int refine_steps = 0;
    StorageMode storage_mode = StorageMode::Dense;
    int checkpoint_block = 8;  // base-case width of the checkpointed recursion
    DowndateVariant variant = DowndateVariant::Mixed;
};

struct SolveMetrics {
    std::optional<double> e1;
    std::optional<double> e2;
    std::optional<double> e3;
};

struct SolveReport {
    std::vector<double> x;
    double residual_2norm = 0.0;         // ||A x - b||_2
    double normal_residual_2norm = 0.0;  // ||A^T (A x - b)||_2
    std::uint64_t tally = 0;
    std::optional<double> cond1;         // filled when metrics are requested
    std::optional<SolveMetrics> metrics;
};

// Square nonsingular systems (m == n).
SolveReport solve(const Toeplitz& t, std::span<const double> b,
                  const SolveOptions& opts = {});

// Full-rank least squares (m >= n); for m == n this is the same
// computation as solve.
SolveReport least_squares(const Toeplitz& t, std::span<const double> b,
                          const SolveOptions& opts = {});

// RotationReverse-mode solve with an optional storage audit; solve()
// dispatches here when opts.storage_mode == RotationReverse.
SolveReport solve_streaming(const Toeplitz& t, std::span<const double> b,
                            SolveOptions opts, StorageAudit* audit = nullptr);

// Emits rows n, n-1, ..., 1 of the factor, bitwise identical to the forward
// rows, recomputing forward sweeps from O(n)-word lattice-state checkpoints
// held in a binary recursion: O(n log n) peak words, O(n^2 log n)
// multiplications.  Runs of at most opts.checkpoint_block rows are buffered
// densely as the base case.
void checkpointed_reverse(const Toeplitz& t, const SolveOptions& opts,
                          const RowEmitter& emit, Tally* tally = nullptr,
                          StorageAudit* audit = nullptr);

struct RefineResult {
    std::vector<double> x;
    // ||b - A x||_2 before any correction and after each step
    // (steps + 1 entries); non-increasing until the rounding floor.
    std::vector<double> residual_history;
};

// Working-precision iterative refinement against a retained dense factor:
// each step solves R^T R delta = A^T (b - A x) and adds delta.
RefineResult iterative_refinement(const Toeplitz& t, std::span<const double> b,
                                  std::span<const double> x0, const RFactor& rf,
                                  int steps, Tally* tally = nullptr);

}  // namespace toepqr
