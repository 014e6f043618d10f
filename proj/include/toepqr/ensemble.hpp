#pragma once

// Reproducible test-instance generation for the measurement harness.
//
// An instance is a random Toeplitz matrix with i.i.d. Normal(mu, sigma)
// entries down the first column and across the first row (the shared corner
// is drawn once), a known solution x_true with Normal(0, 1) entries, and the
// consistent right-hand side b = T * x_true.
//
// Instance `index` of a run is generated from substream rng::derive(seed,
// index); the draw order within a stream is fixed: column entries a_0, a_-1,
// ..., a_{1-m} first, then row entries a_1, ..., a_{n-1}, then x_true. The
// instance is therefore a pure function of (config, index).
//
// Families:
//   Random      - as drawn.
//   NearSingular - after drawing, the first off-diagonals are overwritten
//                  with the main diagonal value (a_1 = a_-1 = a_0), which
//                  pushes the leading 2x2 minor of T^T T toward singularity
//                  and stresses the downdating passes.

#include <cstdint>
#include <optional>
#include <vector>

#include "toepqr/toeplitz.hpp"

namespace toepqr::bench {

enum class Family { Random, NearSingular };

struct EnsembleConfig {
    int n = 0;
    std::optional<int> m;  // rows; defaults to n (square)
    double mu = 0.0;
    double sigma = 1.0;
    int count = 0;  // instances per run
    std::uint64_t seed = 0;
    Family family = Family::Random;
};

struct Instance {
    Toeplitz t;
    std::vector<double> x_true;
    std::vector<double> b;
};

// Generate instance `index` (0-based, < config.count is not enforced; any
// index is valid and reproducible).
Instance gen_instance(const EnsembleConfig& config, int index);

}  // namespace toepqr::bench
