// witness.hpp
// Device-independent lower bounds on local dimension from two-party
// correlations, with the parity-game strategies that certify 4, 8 and 16
// dimensions and the diagonal-correlation scenario for arbitrary d.

#pragma once

#include <string>
#include <vector>

#include "quditlab/basis.hpp"
#include "quditlab/correlations.hpp"

namespace quditlab::witness {

struct WitnessResult {
    double f_value = 0.0;
    double dimension_bound = 0.0;  // 1 / f_value
    int certified_dim = 0;         // ceil of the bound
    int y = 0, y_prime = 0, x = 0;
};

// f = sum_{b,b'} ( sum_a sqrt(p(ab|xy) p(ab'|xy')) )^2 evaluated at fixed
// settings; the certified dimension is ceil(1/f). Settings may coincide.
WitnessResult witness_bound(const corr::CorrelationTable& table, int y,
                            int y_prime, int x);

// Quantum strategy for one of the parity games: shared state, measurement
// bases per setting, and signed answer strings per outcome.
struct GameStrategy {
    PureState state;
    std::vector<MeasurementBasis> alice_bases;
    std::vector<MeasurementBasis> bob_bases;
    // answers[setting][outcome] = string of +/-1 eigenvalues
    std::vector<std::vector<std::vector<int>>> alice_answers;
    std::vector<std::vector<std::vector<int>>> bob_answers;
    std::vector<std::string> alice_setting_names;
    std::vector<std::string> bob_setting_names;
    // indices (into the base lists) used by the dimension witness
    int witness_x = 0, witness_y = 0, witness_y_prime = 0;
};

// 3x3 operator-grid game on two qubits: Alice measures rows, Bob columns,
// shared state is the maximally entangled state of local dimension 4.
// Certifies dimension 4 through f = 1/4 at (y=1, y'=2, x=1).
GameStrategy magic_square_strategy();

// Five-line game on three qubits, built from the two lines the witness
// needs (the all-Z line and the common eigenbasis of ZZZ, ZXX, XZX, XXZ).
// Certifies dimension 8 through f = 1/8.
GameStrategy magic_pentagram_strategy();

// Two parallel copies of the square game on local dimension 16; certifies
// dimension 16 through f = 1/16.
GameStrategy two_copy_square_strategy();

// Maximally entangled state of local dimension d embedded in a host space:
// sum_{k<d} |kk>/sqrt(d) on (C^host)x(C^host).
PureState embed_state(int d, int d_host);

// Exact Born table of a strategy over all its settings (optionally with a
// different shared state, e.g. an embedded lower-dimensional one).
corr::CorrelationTable strategy_table(const GameStrategy& strategy);
corr::CorrelationTable strategy_table(const GameStrategy& strategy,
                                      const PureState& state);

// Witness result of a strategy evaluated on its designated settings.
WitnessResult evaluate_strategy(const GameStrategy& strategy);

// Scenario II: both sides measure the computational basis on |psi_d^+>;
// the diagonal correlation certifies d for any d >= 2.
WitnessResult scenario_two(int d);

}  // namespace quditlab::witness
