#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "pmstair/forcing.hpp"

namespace testsupport {

// Seeded instance generator; every property test draws from one of these.
class Gen {
public:
    explicit Gen(std::uint64_t seed) : rng_(seed) {}

    double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng_); }
    int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }
    bool coin() { return integer(0, 1) == 1; }

    std::vector<double> values(std::size_t count, double lo, double hi) {
        std::vector<double> v(count);
        for (double& x : v) x = uniform(lo, hi);
        return v;
    }

    // Affine or step forcing on (0, 1) with O(1) coefficients.
    pmstair::Forcing forcing() {
        if (coin()) return pmstair::Forcing::affine(uniform(-2.0, 2.0), uniform(-1.0, 1.0));
        const int k = integer(1, 3);
        std::vector<pmstair::Jump> jumps;
        double pos = 0.0;
        for (int i = 0; i < k; ++i) {
            pos += uniform(0.05, 0.3);
            double h = uniform(-1.5, 1.5);
            if (h == 0.0) h = 0.5;
            jumps.push_back({pos, h});
        }
        return pmstair::Forcing::step(uniform(-1.0, 1.0), jumps);
    }

private:
    std::mt19937_64 rng_;
};

}  // namespace testsupport
