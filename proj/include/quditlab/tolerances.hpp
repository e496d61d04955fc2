// tolerances.hpp
// Central numerical tolerance record. Library code and tests share these
// constants so that structural checks agree everywhere.

#pragma once

namespace quditlab {

struct Tolerances {
    // generic structural checks (commutation, basis completeness, ...)
    double structural = 1e-9;
    // Hermiticity / idempotency / orthogonality of operators
    double operator_check = 1e-10;
    // state normalization after construction
    double normalization = 1e-12;
    // unitarity of assembled mesh networks
    double unitarity = 1e-10;
    // amplitude treated as extinguished by an interferometric elimination
    double elimination = 1e-12;
    // most negative eigenvalue tolerated in a density matrix
    double psd_floor = 1e-9;
    // Born-rule round-off clamp: entries above -clamp are set to zero
    double probability_clamp = 1e-12;
    // eigenvalue clustering when resolving degenerate spectra
    double eigen_cluster = 1e-9;
};

inline const Tolerances& tol() {
    static const Tolerances t{};
    return t;
}

}  // namespace quditlab
