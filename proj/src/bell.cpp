#include "quditlab/bell.hpp"

#include <cmath>
#include <limits>

namespace quditlab::bell {

namespace {

// reference CGLMP values for the maximally entangled state, d = 2..8
constexpr double kCglmpMaxEntangled[] = {2.8284271247461903, 2.8729833462074170,
                                         2.8962886439832502, 2.9105332335871763,
                                         2.9202054549476781, 2.9272409962649354,
                                         2.9325921418574637};

void check_table(const corr::CorrelationTable& table) {
    if (table.settings_a() != 2 || table.settings_b() != 2)
        throw InvalidTable("Bell functionals need exactly two settings per side");
    if (table.outcomes() < 2)
        throw InvalidTable("Bell functionals need at least two outcomes");
}

double cot(double x) { return std::cos(x) / std::sin(x); }

// P(A_x = B_y + k): Alice's outcome exceeds Bob's by k mod d.
double prob_a_eq_b_plus(const corr::CorrelationTable& t, int x, int y, int k) {
    const int d = t.outcomes();
    double sum = 0.0;
    for (int b = 0; b < d; ++b) sum += t.prob((b + k) % d, b, x, y);
    return sum;
}

// P(B_y = A_x + k): Bob's outcome exceeds Alice's by k mod d.
double prob_b_eq_a_plus(const corr::CorrelationTable& t, int x, int y, int k) {
    const int d = t.outcomes();
    double sum = 0.0;
    for (int a = 0; a < d; ++a) sum += t.prob(a, (a + k) % d, x, y);
    return sum;
}

int mod(int v, int d) { return ((v % d) + d) % d; }

// sum_k (alpha_k P_k - beta_k Q_k) with caller-supplied coefficients
double probability_form(const corr::CorrelationTable& t,
                        const std::function<double(int)>& alpha,
                        const std::function<double(int)>& beta) {
    const int d = t.outcomes();
    double value = 0.0;
    for (int k = 0; k < d / 2; ++k) {
        const double p_k = prob_a_eq_b_plus(t, 0, 0, k) +
                           prob_b_eq_a_plus(t, 1, 0, k) +
                           prob_a_eq_b_plus(t, 1, 1, k) +
                           prob_b_eq_a_plus(t, 0, 1, k + 1);
        const double q_k = prob_a_eq_b_plus(t, 0, 0, mod(-k - 1, d)) +
                           prob_b_eq_a_plus(t, 1, 0, mod(-k - 1, d)) +
                           prob_a_eq_b_plus(t, 1, 1, mod(-k - 1, d)) +
                           prob_b_eq_a_plus(t, 0, 1, mod(-k, d));
        value += alpha(k) * p_k - beta(k) * q_k;
    }
    return value;
}

}  // namespace

BellCoefficients::BellCoefficients(int d_) : d(d_) {
    if (d < 2) throw InvalidDimension("dimension must be >= 2");
}

cxd BellCoefficients::a_l(int l) const {
    const double phase = 2.0 * M_PI * (2.0 * l - d) / (8.0 * d);
    return std::polar(1.0 / std::sqrt(2.0), phase);
}

double BellCoefficients::g(double k) const {
    return cot(M_PI * (k + 0.25) / d);
}

double BellCoefficients::alpha(int k) const {
    const double sign = (d % 2 == 0) ? 1.0 : -1.0;
    return (g(k) + sign * std::tan(M_PI / (4.0 * d))) / (2.0 * d);
}

double BellCoefficients::beta(int k) const {
    const double sign = (d % 2 == 0) ? 1.0 : -1.0;
    return (g(k + 0.5) - sign * std::tan(M_PI / (4.0 * d))) / (2.0 * d);
}

std::pair<std::vector<MeasurementBasis>, std::vector<MeasurementBasis>>
satwap_bases(int d) {
    if (d < 2) throw InvalidDimension("dimension must be >= 2");
    const BellCoefficients coeff(d);
    std::vector<MeasurementBasis> alice, bob;
    for (double theta : coeff.theta_x) {
        Mat columns(d, d);
        for (int a = 0; a < d; ++a)
            for (int k = 0; k < d; ++k)
                columns(k, a) = std::polar(1.0 / std::sqrt(double(d)),
                                           2.0 * M_PI * k * (a - theta) / d);
        alice.push_back(MeasurementBasis::from_vectors(columns));
    }
    for (double zeta : coeff.zeta_y) {
        Mat columns(d, d);
        for (int b = 0; b < d; ++b)
            for (int k = 0; k < d; ++k)
                columns(k, b) = std::polar(1.0 / std::sqrt(double(d)),
                                           2.0 * M_PI * k * (-b + zeta) / d);
        bob.push_back(MeasurementBasis::from_vectors(columns));
    }
    return {std::move(alice), std::move(bob)};
}

double satwap_statistic(const corr::CorrelationTable& table) {
    check_table(table);
    const int d = table.outcomes();
    const BellCoefficients coeff(d);
    cxd value(0.0, 0.0);
    for (int l = 1; l < d; ++l) {
        const cxd a = coeff.a_l(l);
        const cxd omega_l = std::polar(1.0, 2.0 * M_PI * l / d);
        value += a * corr::generalized_correlator(table, 0, 0, l, d - l).value;
        value += std::conj(a) * omega_l *
                 corr::generalized_correlator(table, 0, 1, l, d - l).value;
        value += a * corr::generalized_correlator(table, 1, 1, l, d - l).value;
        value +=
            std::conj(a) * corr::generalized_correlator(table, 1, 0, l, d - l).value;
    }
    return value.real();
}

double satwap_classical_bound(int d) {
    return 0.5 * (3.0 * cot(M_PI / (4.0 * d)) - cot(3.0 * M_PI / (4.0 * d))) - 2.0;
}

double satwap_tsirelson(int d) { return 2.0 * (d - 1); }

BellResult satwap_value(const corr::CorrelationTable& table) {
    check_table(table);
    const int d = table.outcomes();
    BellResult result;
    result.value = satwap_statistic(table);
    result.classical_bound = satwap_classical_bound(d);
    result.tsirelson = satwap_tsirelson(d);
    result.relative_violation = (result.value - result.classical_bound) /
                                (result.tsirelson - result.classical_bound);
    if (table.has_counts())
        result.std = corr::bootstrap_errors(table, satwap_statistic).std;
    return result;
}

double satwap_probability_form(const corr::CorrelationTable& table) {
    check_table(table);
    const BellCoefficients coeff(table.outcomes());
    return probability_form(
        table, [&](int k) { return coeff.alpha(k); },
        [&](int k) { return coeff.beta(k); });
}

double cglmp_statistic(const corr::CorrelationTable& table) {
    check_table(table);
    const int d = table.outcomes();
    auto weight = [d](int k) { return 1.0 - 2.0 * k / (d - 1.0); };
    return probability_form(table, weight, weight);
}

BellResult cglmp_value(const corr::CorrelationTable& table) {
    check_table(table);
    const int d = table.outcomes();
    BellResult result;
    result.value = cglmp_statistic(table);
    result.classical_bound = 2.0;
    result.tsirelson = (d >= 2 && d <= 8)
                           ? kCglmpMaxEntangled[d - 2]
                           : std::numeric_limits<double>::quiet_NaN();
    if (result.tsirelson > result.classical_bound)
        result.relative_violation = (result.value - result.classical_bound) /
                                    (result.tsirelson - result.classical_bound);
    if (table.has_counts())
        result.std = corr::bootstrap_errors(table, cglmp_statistic).std;
    return result;
}

double qutrit_family_classical_bound(double xi) {
    // deterministic-strategy envelope, piecewise linear and continuous
    if (xi <= -1.0) return -4.0 * xi;
    if (xi <= 1.0) return 3.0 - xi;
    return 2.0;
}

double qutrit_family_statistic(const corr::CorrelationTable& table, double xi) {
    check_table(table);
    if (table.outcomes() != 3)
        throw InvalidDimension("the xi family is defined for qutrit tables");
    const double positive =
        prob_a_eq_b_plus(table, 0, 0, 0) + prob_a_eq_b_plus(table, 1, 1, 0) +
        prob_b_eq_a_plus(table, 0, 1, 1) + prob_a_eq_b_plus(table, 1, 0, 0);
    const double negative =
        prob_b_eq_a_plus(table, 0, 0, 1) + prob_b_eq_a_plus(table, 1, 1, 1) +
        prob_a_eq_b_plus(table, 0, 1, 0) + prob_a_eq_b_plus(table, 1, 0, 1);
    return positive - xi * negative;
}

BellResult qutrit_family_value(const corr::CorrelationTable& table, double xi) {
    BellResult result;
    result.value = qutrit_family_statistic(table, xi);
    result.classical_bound = qutrit_family_classical_bound(xi);
    result.tsirelson = xi > -1.0 ? qutrit_family_max(xi).i_max
                                 : result.classical_bound;
    if (result.tsirelson > result.classical_bound)
        result.relative_violation = (result.value - result.classical_bound) /
                                    (result.tsirelson - result.classical_bound);
    if (table.has_counts()) {
        auto stat = [xi](const corr::CorrelationTable& t) {
            return qutrit_family_statistic(t, xi);
        };
        result.std = corr::bootstrap_errors(table, stat).std;
    }
    return result;
}

QutritFamilyMax qutrit_family_max(double xi) {
    if (xi <= -1.0)
        throw TrivialRegime("no quantum advantage for xi <= -1");
    QutritFamilyMax out;
    out.gamma_plus = (std::sqrt(4.0 * xi * xi + 4.0 * xi + 25.0) - 2.0 * xi - 1.0) /
                     (2.0 * std::sqrt(3.0));
    out.i_max = (5.0 - 2.0 * xi + std::sqrt(25.0 + 4.0 * (xi + 1.0) * xi)) / 3.0;
    return out;
}

double qutrit_family_curve(double xi, double gamma) {
    return 4.0 * (3.0 + gamma * (2.0 * std::sqrt(3.0) + gamma - xi * gamma)) /
           (3.0 * (2.0 + gamma * gamma));
}

double relative_violation(const BellResult& result) {
    if (!(result.tsirelson > result.classical_bound))
        throw DegenerateBounds("quantum maximum does not exceed the classical bound");
    return (result.value - result.classical_bound) /
           (result.tsirelson - result.classical_bound);
}

}  // namespace quditlab::bell
