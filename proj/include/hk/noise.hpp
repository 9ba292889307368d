#pragma once

#include <string>

#include "hk/rng.hpp"

namespace hk {

enum class NoiseFamily { Uniform, TruncatedGaussian, ScaledRademacher, Zero };

std::string to_string(NoiseFamily f);
NoiseFamily noise_family_from_string(const std::string& s);

// Bounded, zero-mean, i.i.d. noise with |xi| <= delta almost surely.
// Zero is the degenerate noise-free case (delta = 0) and is the only family
// exempt from the positive-variance requirement.
struct NoiseModel {
    NoiseFamily family = NoiseFamily::Uniform;
    double delta = 0.0;
    double sigma = 0.0;  // TruncatedGaussian: pre-truncation standard deviation
    double atom = 0.0;   // ScaledRademacher: atom magnitude a in (0, delta]

    static NoiseModel uniform(double delta);
    static NoiseModel truncated_gaussian(double delta, double sigma);
    static NoiseModel scaled_rademacher(double delta, double atom);
    static NoiseModel zero();

    void validate() const;  // throws ConfigError

    // One draw; |result| <= delta always. TruncatedGaussian resamples until
    // the draw falls inside [-delta, delta].
    double sample(Rng& rng) const;

    // Witness constants (a, p) with P{xi >= a} >= p and, by symmetry,
    // P{xi <= -a} >= p. These certify the noise has two-sided mass away
    // from zero, which every consensus bound here relies on.
    //   Uniform            -> (delta/2, 1/4)
    //   ScaledRademacher   -> (atom, 1/2)
    //   TruncatedGaussian  -> (delta/2, tail mass of the truncated law)
    struct TailWitness {
        double a = 0.0;
        double p = 0.0;
    };
    TailWitness tail_witness() const;  // throws ConfigError for Zero
};

}  // namespace hk
