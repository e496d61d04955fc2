// bell.hpp
// Two-setting Bell functionals for qudits: the correlator-form inequality
// maximized by maximally entangled states, its probability form, CGLMP, and
// the one-parameter qutrit family interpolating between them.

#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "quditlab/basis.hpp"
#include "quditlab/correlations.hpp"

namespace quditlab::bell {

// Coefficients entering the two-setting inequalities.
struct BellCoefficients {
    explicit BellCoefficients(int d);
    int d;
    double theta_x[2] = {0.25, 0.75};  // Alice basis offsets
    double zeta_y[2] = {0.5, 1.0};     // Bob basis offsets
    cxd a_l(int l) const;              // omega^{(2l-d)/8} / sqrt(2)
    double g(double k) const;          // cot(pi (k + 1/4) / d)
    double alpha(int k) const;
    double beta(int k) const;
};

struct BellResult {
    double value = 0.0;
    double classical_bound = 0.0;
    double tsirelson = 0.0;  // quantum maximum, or reference value
    double relative_violation = 0.0;
    std::optional<double> std;
};

// Optimal measurement bases: Alice |a>_x with offsets theta_x, Bob |b>_y
// with offsets zeta_y (outcome index negated on Bob's side).
std::pair<std::vector<MeasurementBasis>, std::vector<MeasurementBasis>>
satwap_bases(int d);

// Correlator-form Bell value with its classical bound
// [3 cot(pi/4d) - cot(3 pi/4d)]/2 - 2 and quantum maximum 2d-2. When the
// table carries counts the bootstrap standard deviation is attached.
BellResult satwap_value(const corr::CorrelationTable& table);
double satwap_statistic(const corr::CorrelationTable& table);
double satwap_classical_bound(int d);
double satwap_tsirelson(int d);

// Probability-form value (alpha_k P_k - beta_k Q_k sums). Affinely related
// to the correlator form; the constants are pinned by a regression test.
double satwap_probability_form(const corr::CorrelationTable& table);

// CGLMP value (coefficients 1 - 2k/(d-1)), classical bound 2. The
// tsirelson field carries the maximally-entangled reference value for
// d = 2..8 and NaN beyond.
BellResult cglmp_value(const corr::CorrelationTable& table);
double cglmp_statistic(const corr::CorrelationTable& table);

// One-parameter qutrit family: value of I_3(xi) on a 2x2-setting qutrit
// table, classical bound {4xi, 3+xi, 2} by regime, reference quantum
// maximum from qutrit_family_max.
BellResult qutrit_family_value(const corr::CorrelationTable& table, double xi);
double qutrit_family_statistic(const corr::CorrelationTable& table, double xi);
double qutrit_family_classical_bound(double xi);

// Optimizing entanglement parameter and family maximum for xi > -1:
// gamma_+ = [sqrt(4 xi^2 + 4 xi + 25) - 2 xi - 1]/(2 sqrt(3)),
// I_max  = [5 - 2 xi + sqrt(25 + 4 (xi+1) xi)]/3.
// Throws TrivialRegime for xi <= -1.
struct QutritFamilyMax {
    double gamma_plus = 0.0;
    double i_max = 0.0;
};
QutritFamilyMax qutrit_family_max(double xi);

// Value of the family functional on |psi_gamma> with the optimal
// measurements, as a closed-form curve in (xi, gamma).
double qutrit_family_curve(double xi, double gamma);

// (value - C)/(Q - C). Throws DegenerateBounds unless Q > C.
double relative_violation(const BellResult& result);

}  // namespace quditlab::bell
