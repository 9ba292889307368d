#include "hk/noise.hpp"

#include <cmath>

#include "hk/errors.hpp"

namespace hk {

std::string to_string(NoiseFamily f) {
    switch (f) {
        case NoiseFamily::Uniform: return "uniform";
        case NoiseFamily::TruncatedGaussian: return "tgauss";
        case NoiseFamily::ScaledRademacher: return "rademacher";
        case NoiseFamily::Zero: return "zero";
    }
    return "?";
}

NoiseFamily noise_family_from_string(const std::string& s) {
    if (s == "uniform") return NoiseFamily::Uniform;
    if (s == "tgauss") return NoiseFamily::TruncatedGaussian;
    if (s == "rademacher") return NoiseFamily::ScaledRademacher;
    if (s == "zero") return NoiseFamily::Zero;
    throw ConfigError("unknown noise family '" + s + "'");
}

NoiseModel NoiseModel::uniform(double delta) {
    NoiseModel m;
    m.family = NoiseFamily::Uniform;
    m.delta = delta;
    m.validate();
    return m;
}

NoiseModel NoiseModel::truncated_gaussian(double delta, double sigma) {
    NoiseModel m;
    m.family = NoiseFamily::TruncatedGaussian;
    m.delta = delta;
    m.sigma = sigma;
    m.validate();
    return m;
}

NoiseModel NoiseModel::scaled_rademacher(double delta, double atom) {
    NoiseModel m;
    m.family = NoiseFamily::ScaledRademacher;
    m.delta = delta;
    m.atom = atom;
    m.validate();
    return m;
}

NoiseModel NoiseModel::zero() {
    NoiseModel m;
    m.family = NoiseFamily::Zero;
    m.delta = 0.0;
    return m;
}

void NoiseModel::validate() const {
    if (family == NoiseFamily::Zero) {
        if (delta != 0.0) throw ConfigError("Zero noise requires delta = 0");
        return;
    }
    if (!(delta > 0.0)) {
        throw ConfigError("noise delta must be > 0 for family " + to_string(family) +
                          " (use the zero family for a noise-free run)");
    }
    if (family == NoiseFamily::TruncatedGaussian && !(sigma > 0.0)) {
        throw ConfigError("truncated-gaussian noise requires sigma > 0");
    }
    if (family == NoiseFamily::ScaledRademacher && !(atom > 0.0 && atom <= delta)) {
        throw ConfigError("rademacher atom must lie in (0, delta]");
    }
}

double NoiseModel::sample(Rng& rng) const {
    switch (family) {
        case NoiseFamily::Zero:
            return 0.0;
        case NoiseFamily::Uniform:
            return delta * (2.0 * rng.uniform01() - 1.0);
        case NoiseFamily::ScaledRademacher:
            return rng.coin() ? atom : -atom;
        case NoiseFamily::TruncatedGaussian: {
            for (;;) {
                const double v = sigma * rng.gaussian();
                if (v >= -delta && v <= delta) return v;
            }
        }
    }
    return 0.0;
}

namespace {
// Standard normal upper-tail probability.
double normal_upper_tail(double z) { return 0.5 * std::erfc(z / std::sqrt(2.0)); }
}  // namespace

NoiseModel::TailWitness NoiseModel::tail_witness() const {
    switch (family) {
        case NoiseFamily::Uniform:
            return {delta / 2.0, 0.25};
        case NoiseFamily::ScaledRademacher:
            return {atom, 0.5};
        case NoiseFamily::TruncatedGaussian: {
            // P{xi >= delta/2} for the normal truncated to [-delta, delta].
            const double inside = 1.0 - 2.0 * normal_upper_tail(delta / sigma);
            const double upper = normal_upper_tail(delta / (2.0 * sigma)) -
                                 normal_upper_tail(delta / sigma);
            return {delta / 2.0, upper / inside};
        }
        case NoiseFamily::Zero:
            throw ConfigError("zero noise has no positive tail mass");
    }
    return {};
}

}  // namespace hk
