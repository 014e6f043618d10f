#pragma once

// Fast Cholesky factorization of A^T A + alpha I for an m x n Toeplitz
// matrix A (m >= n) in O(mn) + O(n^2) multiplications.
//
// Write R for the upper-triangular Cholesky factor and split it two ways:
//
//     R = [ r_11  u^T ]  =  [ R_t  ubar ]
//         [ 0     R_b ]     [ 0    r_nn ]
//
// Shift invariance of A^T A gives the row-to-row identity
//
//     R_b^T R_b = R_t^T R_t + y y^T - u u^T - zbar zbar^T,
//
// so once row 1 is known (a matrix-vector product against the first
// column), each subsequent row of R follows from the previous one by one
// plane update (with carried vector y) and two mixed downdates (with u and
// then zbar).  Row k of R_b, emitted by step k, is row k+1 of R.
//
// Index conventions used throughout: rows of R are 1-based; step k
// (k = 1 .. n-1) consumes row k of R_t and emits row k of R_b.  The three
// carried vectors live in a shared coordinate space of length n-1; step k
// annihilates position k of each of them (stored as exact zeros), so after
// step k only positions k+1 .. n-1 are live.  Because step k never touches
// column n of R, the forward sweep records the last column separately; the
// reverse sweep needs it.

#include <array>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "toepqr/rotations.hpp"
#include "toepqr/tally.hpp"
#include "toepqr/toeplitz.hpp"

namespace toepqr {

enum class DowndateVariant : std::uint8_t {
    Mixed,           // stability contract holds
    PureHyperbolic,  // experiments only
};

struct FactorOptions {
    double alpha = 0.0;  // ridge term: factor A^T A + alpha I
    DowndateVariant variant = DowndateVariant::Mixed;
    bool keep_dense = true;  // retain the rows of R in the result
};

// Row 1 of R: r_11 = sqrt(a_0^2 + z^T z + alpha) and
// r_11 u = a_0 y + B^T z with B the interior block of A.
struct FirstRow {
    double r11 = 0.0;
    std::vector<double> u;  // (r_12, ..., r_1n), length n-1
};

FirstRow first_row(const Toeplitz& t, double alpha, Tally* tally = nullptr);

// State of the row-to-row recurrence.  `k` is the 1-based index of the next
// step; `t` holds row k of R_t in array positions k-1 .. n-2; the carried
// vectors y, u, zbar occupy the same positions, with everything below
// position k-1 already annihilated to exact zeros.
struct LatticeState {
    int n = 0;
    int k = 1;
    std::vector<double> t;
    std::vector<double> yv;
    std::vector<double> uv;
    std::vector<double> zv;
    Tally tally;
};

LatticeState lattice_init(const Toeplitz& t, const FirstRow& fr);

// The phases of one step, in execution order: the update enlarges the
// diagonal before either downdate shrinks it.
enum class StepPhase : std::uint8_t { UpdateY, DowndateU, DowndateZbar };
inline constexpr std::array<StepPhase, 3> kStepOrder = {
    StepPhase::UpdateY, StepPhase::DowndateU, StepPhase::DowndateZbar};

struct StepResult {
    std::vector<double> rb_row;  // row k of R_b = row k+1 of R, diagonal first
    Rotation rot_y;
    Rotation rot_u;
    Rotation rot_z;
};

// Performs step state.k, advancing the state in place.  Throws
// DowndateBreakdown (annotated with row and pass) if A^T A + alpha I is not
// numerically positive definite at this row.
StepResult lattice_step(LatticeState& state,
                        DowndateVariant variant = DowndateVariant::Mixed);

// Everything the reverse sweep needs to regenerate rows of R from last to
// first: the 3(n-1) rotations in execution order, the carried vectors after
// the final step (exact zeros by construction), and column n of R.
struct RotationLog {
    int n = 0;
    std::vector<Rotation> rotations;   // step k contributes entries 3(k-1)..3(k-1)+2
    std::vector<double> final_y;
    std::vector<double> final_u;
    std::vector<double> final_z;
    std::vector<double> last_column;   // (r_1n, r_2n, ..., r_nn)
};

struct RFactor {
    int n = 0;
    // rows[k-1] holds (r_kk, ..., r_kn); present when keep_dense was set.
    std::vector<std::vector<double>> rows;
    RotationLog log;
    Tally tally;
};

// Callback receiving row `k` of R (1-based) as (r_kk, ..., r_kn).
using RowEmitter = std::function<void(int k, std::span<const double> row)>;

// Full factorization; tally lands in the result (and in `tally` if given).
RFactor factor(const Toeplitz& t, const FactorOptions& opts = {},
               Tally* tally = nullptr);

// Streaming factorization: rows are handed to `emit` in order 1 .. n and
// not retained; working storage is O(n).  Returns the rotation log.
RotationLog factor_streaming(const Toeplitz& t, const FactorOptions& opts,
                             const RowEmitter& emit, Tally* tally = nullptr);

// Regenerates rows n, n-1, ..., 1 from the rotation log by running the
// recorded rotations backwards.  Interior elements are recomputed in
// floating point (and so differ from the forward rows at roundoff level);
// the r_kn element of each row is taken verbatim from log.last_column.
void regenerate_reverse(const RotationLog& log, const RowEmitter& emit,
                        Tally* tally = nullptr);

}  // namespace toepqr
