#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace hk {

// Identifies one replication's random stream. The generator state is a pure
// function of (master_seed, replication_index), so replications can run in
// any order and still reproduce.
struct SeedStream {
    std::uint64_t master_seed = 0;
    std::uint64_t replication_index = 0;
};

// SplitMix64 finalizer (Steele, Lea, Flood 2014).
constexpr std::uint64_t splitmix64(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

// Deterministic per-replication generator. mt19937_64 is bit-specified by
// the standard, so trajectories replay identically across platforms.
class Rng {
  public:
    explicit Rng(SeedStream s)
        : engine_(splitmix64(s.master_seed ^ splitmix64(s.replication_index))) {}

    std::uint64_t next_u64() { return engine_(); }

    // Uniform on [0,1) with 53 random bits.
    double uniform01() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

    bool coin() { return (engine_() >> 63) != 0; }

    // Standard normal via Box-Muller; one value per call, no cached spare,
    // so the draw count per call is fixed.
    double gaussian() {
        double u1 = uniform01();
        while (u1 == 0.0) u1 = uniform01();
        const double u2 = uniform01();
        constexpr double two_pi = 6.283185307179586476925286766559;
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(two_pi * u2);
    }

  private:
    std::mt19937_64 engine_;
};

}  // namespace hk
