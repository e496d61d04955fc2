// qkd.hpp
// Device-dependent d-level QKD analysis: mutual information, eavesdropper
// models for individual and coherent attacks, secret key rate per
// coincidence, and QBER thresholds.

#pragma once

#include <string>

#include "quditlab/errors.hpp"

namespace quditlab::qkd {

enum class Attack { Individual, Coherent };

Attack attack_from_string(const std::string& name);

// I_AB(F, d) = log2 d + F log2 F + (1-F) log2((1-F)/(d-1)), in bits.
double mutual_information(double fidelity, int d);

// Eve's effective fidelity under the optimal individual (cloning) attack.
double eve_fidelity_individual(double fidelity, int d);

// Eve's information for the chosen attack model.
double eve_information(double fidelity, int d, Attack attack);

struct KeyRateResult {
    int d = 0;
    double fidelity = 0.0;
    double qber = 0.0;
    double i_ab = 0.0;       // bits
    double i_ae = 0.0;       // bits
    double key_rate = 0.0;   // bits per coincidence, sifting included
    Attack attack = Attack::Individual;
};

// Secret key rate per coincidence: (I_AB - I_AE)/2 with the two-basis
// sifting factor; log2(d)/2 at F = 1.
KeyRateResult key_rate(double fidelity, int d, Attack attack);

// Zero-crossing QBER (percent) of the key rate for the attack model.
double qber_threshold(int d, Attack attack);

}  // namespace quditlab::qkd
