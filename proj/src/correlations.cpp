#include "quditlab/correlations.hpp"

#include <cmath>
#include <cstdio>

#include <json.hpp>

namespace quditlab::corr {

CorrelationTable::CorrelationTable(int outcomes, int settings_a, int settings_b)
    : outcomes_(outcomes), settings_a_(settings_a), settings_b_(settings_b) {
    if (outcomes < 1 || settings_a < 1 || settings_b < 1)
        throw InvalidInput("table dimensions must be positive");
    p_.assign(static_cast<size_t>(settings_a) * settings_b,
              Eigen::MatrixXd::Zero(outcomes, outcomes));
}

const Eigen::MatrixXd& CorrelationTable::joint(int x, int y) const {
    if (x < 0 || x >= settings_a_ || y < 0 || y >= settings_b_)
        throw InvalidIndex("setting indices out of range");
    return p_[static_cast<size_t>(x) * settings_b_ + y];
}

Eigen::MatrixXd& CorrelationTable::joint(int x, int y) {
    if (x < 0 || x >= settings_a_ || y < 0 || y >= settings_b_)
        throw InvalidIndex("setting indices out of range");
    return p_[static_cast<size_t>(x) * settings_b_ + y];
}

const Eigen::MatrixXd& CorrelationTable::count(int x, int y) const {
    if (!has_counts()) throw MissingCounts("table carries no counts");
    return counts_[static_cast<size_t>(x) * settings_b_ + y];
}

Eigen::MatrixXd& CorrelationTable::count(int x, int y) {
    if (!has_counts()) throw MissingCounts("table carries no counts");
    return counts_[static_cast<size_t>(x) * settings_b_ + y];
}

void CorrelationTable::allocate_counts() {
    counts_.assign(p_.size(), Eigen::MatrixXd::Zero(outcomes_, outcomes_));
}

double CorrelationTable::marginal_a(int a, int x, int y) const {
    return joint(x, y).row(a).sum();
}

double CorrelationTable::marginal_b(int b, int x, int y) const {
    return joint(x, y).col(b).sum();
}

double CorrelationTable::no_signaling_sigma() const {
    if (!has_counts()) throw MissingCounts("no-signaling check requires counts");
    double worst = 0.0;
    auto deviation = [&](double pa, double pb, double na, double nb) {
        const double se = std::sqrt(pa * (1.0 - pa) / na + pb * (1.0 - pb) / nb);
        return se > 0.0 ? std::abs(pa - pb) / se : 0.0;
    };
    for (int x = 0; x < settings_a_; ++x)
        for (int y = 1; y < settings_b_; ++y) {
            const double na = count(x, 0).sum();
            const double nb = count(x, y).sum();
            if (na <= 0.0 || nb <= 0.0) continue;
            for (int a = 0; a < outcomes_; ++a)
                worst = std::max(worst, deviation(marginal_a(a, x, 0),
                                                  marginal_a(a, x, y), na, nb));
        }
    for (int y = 0; y < settings_b_; ++y)
        for (int x = 1; x < settings_a_; ++x) {
            const double na = count(0, y).sum();
            const double nb = count(x, y).sum();
            if (na <= 0.0 || nb <= 0.0) continue;
            for (int b = 0; b < outcomes_; ++b)
                worst = std::max(worst, deviation(marginal_b(b, 0, y),
                                                  marginal_b(b, x, y), na, nb));
        }
    return worst;
}

void CorrelationTable::clamp_and_normalize() {
    for (auto& m : p_) {
        const double min = m.minCoeff();
        if (min < -tol().psd_floor)
            throw NumericalFailure("probability fell below the round-off clamp");
        m = m.cwiseMax(0.0);
        const double total = m.sum();
        if (total > 0.0) m /= total;
    }
}

namespace {

void check_dims(int d, const std::vector<MeasurementBasis>& alice,
                const std::vector<MeasurementBasis>& bob) {
    if (alice.empty() || bob.empty())
        throw InvalidInput("need at least one measurement basis per side");
    for (const auto& b : alice)
        if (b.dim() != d) throw DimMismatch("Alice basis dimension mismatch");
    for (const auto& b : bob)
        if (b.dim() != d) throw DimMismatch("Bob basis dimension mismatch");
}

int local_dim(int total) {
    const int d = static_cast<int>(std::llround(std::sqrt(double(total))));
    if (d * d != total)
        throw DimMismatch("bipartite dimension is not a perfect square");
    return d;
}

}  // namespace

CorrelationTable born_probabilities(const DensityMatrix& rho,
                                    const std::vector<MeasurementBasis>& alice,
                                    const std::vector<MeasurementBasis>& bob) {
    const int d = local_dim(rho.dim());
    check_dims(d, alice, bob);
    const int outcomes = alice.front().outcomes();
    CorrelationTable table(outcomes, static_cast<int>(alice.size()),
                           static_cast<int>(bob.size()));
    const Mat& m = rho.matrix();
    for (int x = 0; x < table.settings_a(); ++x) {
        for (int a = 0; a < outcomes; ++a) {
            const Mat& ma = alice[x].projector(a);
            // sigma = Tr_A[(M_a (x) I) rho]
            Mat sigma = Mat::Zero(d, d);
            for (int i = 0; i < d; ++i)
                for (int i2 = 0; i2 < d; ++i2) {
                    const cxd w = ma(i, i2);
                    if (std::abs(w) == 0.0) continue;
                    sigma += w * m.block(static_cast<Eigen::Index>(i2) * d,
                                         static_cast<Eigen::Index>(i) * d, d, d);
                }
            for (int y = 0; y < table.settings_b(); ++y)
                for (int b = 0; b < outcomes; ++b)
                    table.joint(x, y)(a, b) =
                        (sigma * bob[y].projector(b)).trace().real();
        }
    }
    table.clamp_and_normalize();
    return table;
}

CorrelationTable born_probabilities(const PureState& psi,
                                    const std::vector<MeasurementBasis>& alice,
                                    const std::vector<MeasurementBasis>& bob) {
    const int d = local_dim(psi.dim());
    check_dims(d, alice, bob);
    const int outcomes = alice.front().outcomes();
    CorrelationTable table(outcomes, static_cast<int>(alice.size()),
                           static_cast<int>(bob.size()));
    Mat amp_matrix(d, d);
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j)
            amp_matrix(i, j) = psi.amplitude(i * d + j);
    for (int x = 0; x < table.settings_a(); ++x) {
        for (int a = 0; a < outcomes; ++a) {
            const Mat k = amp_matrix.adjoint() * alice[x].projector(a) * amp_matrix;
            for (int y = 0; y < table.settings_b(); ++y)
                for (int b = 0; b < outcomes; ++b)
                    table.joint(x, y)(a, b) =
                        (k * bob[y].projector(b).transpose()).trace().real();
        }
    }
    table.clamp_and_normalize();
    return table;
}

CorrelationTable sample_counts(const CorrelationTable& exact,
                               long long shots_per_setting,
                               const circuit::NoiseModel& noise,
                               std::uint64_t seed) {
    if (shots_per_setting <= 0) throw InvalidInput("shots must be positive");
    noise.validate();
    if (!noise.mode_loss.empty() &&
        noise.mode_loss.size() < static_cast<size_t>(exact.outcomes()))
        throw InvalidInput("mode loss vector shorter than outcome count");

    CorrelationTable table = exact;
    table.allocate_counts();
    table.shots_per_setting = shots_per_setting;
    auto eta = [&](int k) {
        return noise.mode_loss.empty() ? 1.0 : noise.mode_loss[k];
    };
    for (int x = 0; x < table.settings_a(); ++x)
        for (int y = 0; y < table.settings_b(); ++y) {
            Rng rng(derive_seed(seed, x, y));
            Eigen::MatrixXd& counts = table.count(x, y);
            for (int a = 0; a < table.outcomes(); ++a)
                for (int b = 0; b < table.outcomes(); ++b) {
                    const double mean = shots_per_setting *
                                        exact.prob(a, b, x, y) * eta(a) * eta(b);
                    counts(a, b) = static_cast<double>(rng.poisson(mean));
                }
            const double total = counts.sum();
            table.joint(x, y) =
                total > 0.0 ? (counts / total).eval()
                            : Eigen::MatrixXd::Zero(table.outcomes(), table.outcomes());
        }
    return table;
}

Correlator generalized_correlator(const CorrelationTable& table, int x, int y,
                                  int k, int l) {
    const int d = table.outcomes();
    if (k < 0 || k >= d || l < 0 || l >= d)
        throw InvalidIndex("correlator powers must lie in 0..d-1");
    Correlator out{k, l, cxd(0.0, 0.0)};
    const Eigen::MatrixXd& p = table.joint(x, y);
    for (int a = 0; a < d; ++a)
        for (int b = 0; b < d; ++b) {
            const double phase = 2.0 * M_PI * (double(a) * k + double(b) * l) / d;
            out.value += std::polar(p(a, b), phase);
        }
    return out;
}

BootstrapResult bootstrap_errors(
    const CorrelationTable& table,
    const std::function<double(const CorrelationTable&)>& statistic,
    int resamples, std::uint64_t seed) {
    if (!table.has_counts()) throw MissingCounts("bootstrap requires counts");
    if (resamples < 2) throw InvalidInput("need at least two resamples");

    std::vector<double> values;
    values.reserve(resamples);
    CorrelationTable resampled = table;
    for (int r = 0; r < resamples; ++r) {
        for (int x = 0; x < table.settings_a(); ++x)
            for (int y = 0; y < table.settings_b(); ++y) {
                Rng rng(derive_seed(seed, (std::uint64_t(r) << 16) ^ x, y));
                Eigen::MatrixXd& counts = resampled.count(x, y);
                for (int a = 0; a < table.outcomes(); ++a)
                    for (int b = 0; b < table.outcomes(); ++b)
                        counts(a, b) = static_cast<double>(
                            rng.poisson(table.count(x, y)(a, b)));
                const double total = counts.sum();
                resampled.joint(x, y) =
                    total > 0.0
                        ? (counts / total).eval()
                        : Eigen::MatrixXd::Zero(table.outcomes(), table.outcomes());
            }
        values.push_back(statistic(resampled));
    }
    BootstrapResult result;
    for (double v : values) result.mean += v;
    result.mean /= values.size();
    double var = 0.0;
    for (double v : values) var += (v - result.mean) * (v - result.mean);
    result.std = std::sqrt(var / (values.size() - 1));
    return result;
}

}  // namespace quditlab::corr

namespace quditlab::corr {

std::string to_json(const CorrelationTable& table) {
    nlohmann::json j;
    j["d"] = table.outcomes();
    j["mA"] = table.settings_a();
    j["mB"] = table.settings_b();
    std::vector<double> p;
    for (int x = 0; x < table.settings_a(); ++x)
        for (int y = 0; y < table.settings_b(); ++y)
            for (int a = 0; a < table.outcomes(); ++a)
                for (int b = 0; b < table.outcomes(); ++b)
                    p.push_back(table.prob(a, b, x, y));
    j["p"] = p;
    if (table.has_counts()) {
        std::vector<double> counts;
        for (int x = 0; x < table.settings_a(); ++x)
            for (int y = 0; y < table.settings_b(); ++y)
                for (int a = 0; a < table.outcomes(); ++a)
                    for (int b = 0; b < table.outcomes(); ++b)
                        counts.push_back(table.count(x, y)(a, b));
        j["counts"] = counts;
    } else {
        j["counts"] = nullptr;
    }
    j["shots"] = table.shots_per_setting;
    return j.dump();
}

CorrelationTable table_from_json(const std::string& text) {
    const auto j = nlohmann::json::parse(text);
    const int d = j.at("d").get<int>();
    const int ma = j.at("mA").get<int>();
    const int mb = j.at("mB").get<int>();
    CorrelationTable table(d, ma, mb);
    const auto p = j.at("p").get<std::vector<double>>();
    if (p.size() != size_t(ma) * mb * d * d)
        throw InvalidInput("probability payload length mismatch");
    size_t idx = 0;
    for (int x = 0; x < ma; ++x)
        for (int y = 0; y < mb; ++y)
            for (int a = 0; a < d; ++a)
                for (int b = 0; b < d; ++b) table.joint(x, y)(a, b) = p[idx++];
    if (j.contains("counts") && !j.at("counts").is_null()) {
        const auto counts = j.at("counts").get<std::vector<double>>();
        if (counts.size() != p.size())
            throw InvalidInput("count payload length mismatch");
        table.allocate_counts();
        idx = 0;
        for (int x = 0; x < ma; ++x)
            for (int y = 0; y < mb; ++y)
                for (int a = 0; a < d; ++a)
                    for (int b = 0; b < d; ++b)
                        table.count(x, y)(a, b) = counts[idx++];
    }
    if (j.contains("shots") && !j.at("shots").is_null())
        table.shots_per_setting = j.at("shots").get<long long>();
    return table;
}

std::string to_csv(const CorrelationTable& table) {
    std::string out = "x,y,a,b,p,count\r\n";
    char line[160];
    for (int x = 0; x < table.settings_a(); ++x)
        for (int y = 0; y < table.settings_b(); ++y)
            for (int a = 0; a < table.outcomes(); ++a)
                for (int b = 0; b < table.outcomes(); ++b) {
                    const double count =
                        table.has_counts() ? table.count(x, y)(a, b) : 0.0;
                    std::snprintf(line, sizeof line, "%d,%d,%d,%d,%.17g,%.0f\r\n",
                                  x, y, a, b, table.prob(a, b, x, y), count);
                    out += line;
                }
    return out;
}

}  // namespace quditlab::corr
