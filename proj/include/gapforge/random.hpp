#pragma once

#include <cstdint>

#include "gapforge/params.hpp"

namespace gapforge {

// splitmix64: deterministic across platforms, unlike the standard
// distributions.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    int uniform_int(int lo, int hi) {  // inclusive bounds
        return lo + static_cast<int>(next() % static_cast<std::uint64_t>(hi - lo + 1));
    }

private:
    std::uint64_t state_;
};

// Unconstrained draw with every p_ij uniform in [lo, hi].
ParamVector random_param_vector(int n, Rng& rng, double lo = 0.05, double hi = 0.95);

// Constructive regular draw: adjacent pairs uniform in [0.5, 0.95], wider
// pairs uniform above the two one-narrower pairs they dominate.
ParamVector random_regular_param_vector(int n, Rng& rng);

// n draws from [0.2, 1], sorted nonincreasing.
WeightVector random_nonincreasing_weights(int n, Rng& rng);

}  // namespace gapforge
