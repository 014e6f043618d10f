#pragma once

// Deterministic random number generation for the measurement harness.
//
// Everything here is specified bit-for-bit so that ensemble runs are exactly
// reproducible across machines and build configurations:
//
//   - The core generator is SplitMix64: state advances by the 64-bit golden
//     gamma 0x9E3779B97F4A7C15 and each output is the advanced state pushed
//     through the xor-shift-multiply finalizer (0xBF58476D1CE4E5B9,
//     0x94D049BB133111EB).
//   - Unit doubles take the top 53 bits of an output: (x >> 11) * 2^-53,
//     uniform on [0, 1).
//   - Independent streams are derived, never split by skipping: stream k of
//     seed s starts from the state obtained by finalizing s + (k+1)*gamma.
//     Distinct (seed, index) pairs give decorrelated streams.
//   - Normal deviates use the Marsaglia polar method. Each accepted pair
//     (u, v) with w = u^2 + v^2 in (0, 1) yields two deviates u*f and v*f,
//     f = sqrt(-2 ln(w) / w), consumed in that order. Rejection consumes
//     exactly two unit doubles per attempt, so the stream position after any
//     number of draws is a pure function of the seed.
//
// All integer arithmetic is modulo 2^64 (unsigned wraparound).

#include <cmath>
#include <cstdint>

namespace toepqr::rng {

inline constexpr std::uint64_t kGoldenGamma = 0x9E3779B97F4A7C15ULL;

inline std::uint64_t mix64(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

class SplitMix64 {
  public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next_u64() {
        state_ += kGoldenGamma;
        return mix64(state_);
    }

    // Uniform on [0, 1), 53 significant bits.
    double next_unit() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

  private:
    std::uint64_t state_;
};

// Derive the seed of substream `index` (index >= 0) of master seed `seed`.
inline std::uint64_t derive(std::uint64_t seed, std::uint64_t index) {
    return mix64(seed + (index + 1) * kGoldenGamma);
}

// Marsaglia polar sampler over a SplitMix64 stream. Draw order is part of
// the output contract: both members of an accepted pair are returned before
// the next pair is generated.
class NormalSampler {
  public:
    explicit NormalSampler(std::uint64_t seed) : gen_(seed) {}

    double next(double mu = 0.0, double sigma = 1.0) {
        if (have_spare_) {
            have_spare_ = false;
            return mu + sigma * spare_;
        }
        double u = 0.0;
        double v = 0.0;
        double w = 0.0;
        do {
            u = 2.0 * gen_.next_unit() - 1.0;
            v = 2.0 * gen_.next_unit() - 1.0;
            w = u * u + v * v;
        } while (w >= 1.0 || w == 0.0);
        const double f = std::sqrt(-2.0 * std::log(w) / w);
        spare_ = v * f;
        have_spare_ = true;
        return mu + sigma * u * f;
    }

  private:
    SplitMix64 gen_;
    double spare_ = 0.0;
    bool have_spare_ = false;
};

}  // namespace toepqr::rng
