#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "hk/noise.hpp"

namespace hk {

enum class Variant {
    PlainNoisy,
    HomoPrejudice,
    HomoStubborn,
    HeteroPrejudice,
    HeteroStubborn,
};

std::string to_string(Variant v);
Variant variant_from_string(const std::string& s);

// Full parameterization of one model instance. Fields irrelevant to the
// chosen variant are ignored (and must stay at their defaults to validate).
struct ModelConfig {
    Variant variant = Variant::PlainNoisy;
    std::size_t n = 0;      // mobile agent count |V|
    double epsilon = 0.0;   // confidence bound, in (0,1]
    NoiseModel noise;

    // Prejudice variants.
    double alpha = 0.0;  // attraction strength, in (0,1]
    double j1 = 0.0;
    double j2 = 0.0;
    std::vector<std::size_t> s1_members;
    std::vector<std::size_t> s2_members;

    // Stubborn variants.
    double b1_value = 0.0;
    double b2_value = 0.0;
    std::size_t b1_count = 0;
    std::size_t b2_count = 0;

    bool is_prejudice_variant() const {
        return variant == Variant::HomoPrejudice || variant == Variant::HeteroPrejudice;
    }
    bool is_stubborn_variant() const {
        return variant == Variant::HomoStubborn || variant == Variant::HeteroStubborn;
    }
    std::size_t stubborn_count() const {
        return is_stubborn_variant() ? b1_count + (variant == Variant::HeteroStubborn ? b2_count : 0)
                                     : 0;
    }

    // Anchor values of the stubborn pool, B1 anchors first.
    std::vector<double> stubborn_values() const;

    // Throws ConfigError listing every violated invariant.
    void validate() const;
};

// System state x(t): mobile opinions plus the (constant) stubborn anchors.
struct OpinionState {
    std::int64_t t = 0;
    std::vector<double> mobile;
    std::vector<double> stubborn;  // matches config.stubborn_values()
};

using Trajectory = std::vector<OpinionState>;

}  // namespace hk
