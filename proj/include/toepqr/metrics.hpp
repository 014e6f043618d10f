#pragma once

// Stability metrics and the reproducible measurement harness.
//
// All metrics are normalized by the unit roundoff u = 2^-53 and by the
// problem's conditioning, so that a weakly stable solver produces values of
// order 1-10 independent of n and kappa:
//
//   e1  = ||R~^T R~ - (A^T A + alpha I)||_1 / (u ||A^T A + alpha I||_1)
//         backward error of the factorization into the normal matrix.
//   e2  = ||x~ - x||_2 / (u kappa1^2 ||x||_2)
//         forward error against the kappa^2-scaled bound of the
//         semi-normal approach.
//   e3  = ||A x~ - b||_2 / (u kappa1 ||A||_1 ||x||_2)
//         scaled residual.
//   e3c = e3 evaluated for the solution of the conventional method
//         (dense Cholesky of A^T A followed by the same two triangular
//         solves), using the same kappa1(R~) normalization so the two
//         residual columns are directly comparable.
//
// kappa1 = ||R~||_1 ||R~^{-1}||_1 is computed exactly (by column solves)
// from the factor the solver actually produced.
//
// The bench harness runs a grid of cells (n, mu/sigma). Cell entries are
// drawn with sigma = 1 and mu = the requested ratio. Each cell runs `count`
// instances from seed substreams and then appends one row of componentwise
// medians (status "median", taken over the instances that completed).
// Instances that abort with a numerical breakdown produce a row with status
// "breakdown" and NaN metrics. Output is CSV or JSON with the fixed column
// set n, mu_sigma, seed, cond1, e1, e2, e3, e3c, tally, status; doubles are
// printed in shortest round-trip form. Runs are single-threaded and
// byte-for-byte reproducible from (grid, count, seed).

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "toepqr/ensemble.hpp"
#include "toepqr/lattice.hpp"
#include "toepqr/toeplitz.hpp"

namespace toepqr::bench {

inline constexpr double kUnitRoundoff = 0x1.0p-53;

// One output row: an instance measurement, a breakdown marker, or a cell
// median.
struct MetricsRow {
    int n = 0;
    double mu_sigma = 0.0;
    std::uint64_t seed = 0;
    double cond1 = 0.0;
    double e1 = 0.0;
    double e2 = 0.0;
    double e3 = 0.0;
    double e3c = 0.0;
    std::uint64_t tally = 0;
    std::string status;  // "ok" | "breakdown" | "median"
};

// Individual metric evaluations (also used by the CLI --metrics path, where
// the truth vector may be absent).
double metric_e1(const Toeplitz& t, double alpha, const RFactor& rf);
double metric_e2(std::span<const double> x, std::span<const double> x_true, double cond1);
double metric_e3(const Toeplitz& t, std::span<const double> b, std::span<const double> x,
                 double x_true_norm2, double cond1);

// Fill the metric fields (cond1, e1, e2, e3, e3c, tally) of a row for one
// solved instance; identity fields (n, mu_sigma, seed, status) are the
// caller's. `rf` must hold the dense factor of the instance matrix.
void compute_metrics(const Toeplitz& t, std::span<const double> x_true,
                     std::span<const double> b, std::span<const double> x,
                     const RFactor& rf, std::uint64_t tally, MetricsRow& row);

struct BenchConfig {
    std::vector<int> n_values;
    std::vector<double> mu_sigma_values;
    int count = 1;
    std::uint64_t seed = 0;
    Family family = Family::Random;
};

struct BenchResult {
    std::vector<MetricsRow> rows;
};

BenchResult run_bench(const BenchConfig& config);

void write_csv(const BenchResult& result, std::ostream& out);
void write_json(const BenchResult& result, std::ostream& out);

}  // namespace toepqr::bench
