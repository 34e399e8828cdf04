#pragma once

#include <cmath>
#include <cstdint>
#include <random>

#include "critflow/grid.hpp"

namespace critflow {

// Deterministic Gaussian stream.  mt19937_64 output is pinned by the
// standard; the uniform mapping and Box-Muller below avoid the
// implementation-defined std distributions so fields are bit-identical
// across platforms and runs.
class GaussianRng {
  public:
    explicit GaussianRng(std::uint64_t seed) : gen_(seed) {}

    double next_unit() {  // [0, 1)
        return static_cast<double>(gen_() >> 11) * 0x1.0p-53;
    }

    double next_gaussian() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        double u1 = 1.0 - next_unit();  // (0, 1]
        double u2 = next_unit();
        double rad = std::sqrt(-2.0 * std::log(u1));
        double ang = two_pi * u2;
        spare_ = rad * std::sin(ang);
        have_spare_ = true;
        return rad * std::cos(ang);
    }

  private:
    std::mt19937_64 gen_;
    bool have_spare_ = false;
    double spare_ = 0.0;
};

// Stable per-member seed derivation for ensembles (splitmix64 step).
inline std::uint64_t derive_seed(std::uint64_t base, std::uint64_t index) {
    std::uint64_t z = base + 0x9E3779B97F4A7C15ULL * (index + 1);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

}  // namespace critflow
