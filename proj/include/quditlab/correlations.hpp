// correlations.hpp
// Joint-outcome statistics: exact Born-rule tables, finite photon counting
// with per-mode loss, generalized Fourier correlators, and bootstrap error
// bars for nonlinear statistics.

#pragma once

#include <functional>
#include <vector>

#include "quditlab/basis.hpp"
#include "quditlab/circuit.hpp"
#include "quditlab/random.hpp"
#include "quditlab/state.hpp"

namespace quditlab::corr {

// Joint outcome distribution p(ab|xy) over measurement settings x (Alice)
// and y (Bob), with optional raw counts.
class CorrelationTable {
  public:
    CorrelationTable(int outcomes, int settings_a, int settings_b);

    int outcomes() const { return outcomes_; }
    int settings_a() const { return settings_a_; }
    int settings_b() const { return settings_b_; }

    double prob(int a, int b, int x, int y) const { return joint(x, y)(a, b); }
    const Eigen::MatrixXd& joint(int x, int y) const;
    Eigen::MatrixXd& joint(int x, int y);

    bool has_counts() const { return !counts_.empty(); }
    const Eigen::MatrixXd& count(int x, int y) const;
    Eigen::MatrixXd& count(int x, int y);
    void allocate_counts();

    long long shots_per_setting = 0;

    double marginal_a(int a, int x, int y) const;
    double marginal_b(int b, int x, int y) const;

    // Clamps tiny negative round-off to zero and renormalizes each setting.
    void clamp_and_normalize();

    // Largest marginal discrepancy across partner settings, in units of the
    // Poisson standard error. Requires counts.
    double no_signaling_sigma() const;

  private:
    int outcomes_, settings_a_, settings_b_;
    std::vector<Eigen::MatrixXd> p_;
    std::vector<Eigen::MatrixXd> counts_;
};

// Exact Born-rule table p(ab|xy) = Tr[rho (M_a|x (x) M_b|y)].
CorrelationTable born_probabilities(const DensityMatrix& rho,
                                    const std::vector<MeasurementBasis>& alice,
                                    const std::vector<MeasurementBasis>& bob);

// Pure-state fast path, p(ab|xy) = |<a,b|psi>|^2 style contraction.
CorrelationTable born_probabilities(const PureState& psi,
                                    const std::vector<MeasurementBasis>& alice,
                                    const std::vector<MeasurementBasis>& bob);

// Poisson counting: counts ~ Poisson(shots * p * eta_a * eta_b) per cell,
// empirical probabilities renormalized per setting (coincidence basis).
// Independent settings draw from streams derived from (seed, x, y).
CorrelationTable sample_counts(const CorrelationTable& exact,
                               long long shots_per_setting,
                               const circuit::NoiseModel& noise,
                               std::uint64_t seed);

// Generalized complex correlator <A_x^k B_y^l>.
struct Correlator {
    int k = 0;
    int l = 0;
    cxd value{0.0, 0.0};
};
Correlator generalized_correlator(const CorrelationTable& table, int x, int y,
                                  int k, int l);

// Poisson bootstrap over the table's counts: resamples counts, recomputes
// the statistic, returns (mean, std). Requires counts.
struct BootstrapResult {
    double mean = 0.0;
    double std = 0.0;
};
BootstrapResult bootstrap_errors(
    const CorrelationTable& table,
    const std::function<double(const CorrelationTable&)>& statistic,
    int resamples = 200, std::uint64_t seed = 1);

// Wire formats: JSON object {d, mA, mB, p, counts, shots} and RFC-4180 CSV
// with columns x,y,a,b,p,count.
std::string to_json(const CorrelationTable& table);
CorrelationTable table_from_json(const std::string& text);
std::string to_csv(const CorrelationTable& table);

}  // namespace quditlab::corr
