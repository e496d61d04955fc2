// steering.hpp
// EPR steering: steered assemblages, the two-setting steering functional
// with its local-hidden-state bound, and one-sided device-independent
// randomness certification through a semidefinite program.

#pragma once

#include <optional>
#include <vector>

#include "quditlab/basis.hpp"
#include "quditlab/correlations.hpp"
#include "quditlab/sdp.hpp"
#include "quditlab/state.hpp"

namespace quditlab::steering {

// Unnormalized conditional states sigma_{a|x} = p(a|x) rho_{a|x} held by
// the characterized party.
class Assemblage {
  public:
    Assemblage(int d, std::vector<std::vector<Mat>> sigma);

    int dim() const { return d_; }
    int settings() const { return static_cast<int>(sigma_.size()); }
    int outcomes() const { return static_cast<int>(sigma_.front().size()); }
    const Mat& sigma(int a, int x) const { return sigma_[x][a]; }

  private:
    int d_;
    std::vector<std::vector<Mat>> sigma_;  // [x][a]
};

// Bob's characterized measurements: setting 0 computational, setting 1 the
// Fourier basis with negated outcome index.
std::vector<MeasurementBasis> steering_bases(int d);

// Alice's default (uncharacterized, simulated) measurements: computational
// and plain Fourier; these maximize the functional on |psi_d^+>.
std::vector<MeasurementBasis> steering_alice_bases(int d);

// sigma_{a|x} = Tr_A[(M_{a|x} (x) I) rho].
Assemblage steered_assemblage(const DensityMatrix& rho,
                              const std::vector<MeasurementBasis>& alice_bases);

struct SteeringResult {
    double beta = 0.0;
    double lhs_bound = 0.0;     // 1 + 1/sqrt(d)
    double quantum_max = 2.0;
    std::optional<double> std;
};

double lhs_bound(int d);

// beta = sum_{x,a} Tr[M_{a|x} sigma_{a|x}] with Bob's canonical bases.
SteeringResult steering_value(const Assemblage& assemblage);

// The same functional from a correlation table whose settings pair Alice's
// measurements with Bob's canonical bases: beta = sum_x P(A = B | x, x).
// Tables with counts carry a bootstrap error bar.
SteeringResult steering_value(const corr::CorrelationTable& table);
double steering_statistic(const corr::CorrelationTable& table);

// Evaluates beta for each separable input state (with the default Alice
// bases) and reports the largest value found and how many exceeded the
// LHS bound plus tolerance.
struct LhsReport {
    double max_beta = 0.0;
    int violations = 0;
};
LhsReport lhs_bound_check(const std::vector<DensityMatrix>& separable_states);

// One-sided device-independent randomness from an observed steering value:
// maximizes Eve's guessing probability over quantum strategies compatible
// with beta_obs, taking the worst case over the guessed setting.
struct RandomnessResult {
    double guessing_probability = 1.0;
    double min_entropy_bits = 0.0;
    sdp::Certificate certificate;
    int worst_setting = 0;
};

struct RandomnessOptions {
    int x_star = -1;            // fixed setting; negative = worst case
    bool allow_large_d = false; // lift the d <= 4 guard
    sdp::SolverOptions solver;
};

RandomnessResult local_randomness(int d, double beta_obs,
                                  const RandomnessOptions& options = {});
RandomnessResult local_randomness(const Assemblage& assemblage, double beta_obs,
                                  const RandomnessOptions& options = {});

}  // namespace quditlab::steering
