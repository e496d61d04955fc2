// random.hpp
// Seeded randomness used by the sampling layers. All draws go through an
// explicit generator value so parallel runs stay reproducible.

#pragma once

#include <cstdint>
#include <random>

#include "quditlab/state.hpp"

namespace quditlab {

// SplitMix64 step; used to derive independent streams from (seed, tags...).
std::uint64_t mix_seed(std::uint64_t seed);
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t tag_a,
                          std::uint64_t tag_b = 0);

class Rng {
  public:
    explicit Rng(std::uint64_t seed) : engine_(mix_seed(seed)) {}

    double uniform();                       // [0, 1)
    double gaussian();                      // standard normal, Box-Muller
    // Poisson draw: inverse transform below mean 1000, rounded normal
    // approximation above (error negligible at that scale).
    long long poisson(double mean);

    std::uint64_t raw() { return engine_(); }

  private:
    std::mt19937_64 engine_;
    bool have_spare_ = false;
    double spare_ = 0.0;
};

// Haar-random pure state of dimension d.
PureState haar_random_state(int d, Rng& rng);

// Haar-ish random unitary via QR of a complex Gaussian matrix.
Mat random_unitary(int d, Rng& rng);

}  // namespace quditlab
