#include "quditlab/qkd.hpp"

#include <cmath>

namespace quditlab::qkd {

Attack attack_from_string(const std::string& name) {
    if (name == "individual") return Attack::Individual;
    if (name == "coherent") return Attack::Coherent;
    throw InvalidInput("unknown attack model: " + name);
}

namespace {

void check_inputs(double fidelity, int d) {
    if (d < 2) throw InvalidInput("dimension must be >= 2");
    if (fidelity <= 0.0 || fidelity > 1.0)
        throw InvalidInput("fidelity must lie in (0, 1]");
}

// d-ary conditional entropy of the symmetric channel with fidelity F
double channel_entropy(double fidelity, int d) {
    double h = 0.0;
    if (fidelity > 0.0 && fidelity < 1.0) {
        h -= fidelity * std::log2(fidelity);
        h -= (1.0 - fidelity) * std::log2((1.0 - fidelity) / (d - 1.0));
    }
    return h;
}

}  // namespace

double mutual_information(double fidelity, int d) {
    check_inputs(fidelity, d);
    return std::log2(double(d)) - channel_entropy(fidelity, d);
}

double eve_fidelity_individual(double fidelity, int d) {
    check_inputs(fidelity, d);
    const double disturbance = 1.0 - fidelity;
    return (fidelity + (d - 1.0) * disturbance +
            2.0 * std::sqrt((d - 1.0) * fidelity * disturbance)) /
           d;
}

double eve_information(double fidelity, int d, Attack attack) {
    check_inputs(fidelity, d);
    if (attack == Attack::Individual)
        return mutual_information(eve_fidelity_individual(fidelity, d), d);
    // coherent attacks: Eve is limited only by the channel entropy
    return channel_entropy(fidelity, d);
}

KeyRateResult key_rate(double fidelity, int d, Attack attack) {
    check_inputs(fidelity, d);
    KeyRateResult result;
    result.d = d;
    result.fidelity = fidelity;
    result.qber = 1.0 - fidelity;
    result.attack = attack;
    result.i_ab = mutual_information(fidelity, d);
    result.i_ae = eve_information(fidelity, d, attack);
    // two mutually unbiased bases: half the coincidences survive sifting
    result.key_rate = 0.5 * (result.i_ab - result.i_ae);
    return result;
}

double qber_threshold(int d, Attack attack) {
    if (d < 2) throw InvalidInput("dimension must be >= 2");
    // bisection on the fidelity zero crossing of the unsifted rate
    double lo = 1.0 / d + 1e-12;  // rate negative near the uniform channel
    double hi = 1.0;              // rate positive at perfect correlation
    auto rate = [&](double f) {
        return mutual_information(f, d) - eve_information(f, d, attack);
    };
    if (rate(lo) > 0.0) return (1.0 - lo) * 100.0;
    for (int iter = 0; iter < 200; ++iter) {
        const double mid = 0.5 * (lo + hi);
        (rate(mid) > 0.0 ? hi : lo) = mid;
    }
    return (1.0 - 0.5 * (lo + hi)) * 100.0;
}

}  // namespace quditlab::qkd
