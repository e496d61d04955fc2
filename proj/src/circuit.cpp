#include "quditlab/circuit.hpp"

#include <cmath>

namespace quditlab::circuit {

namespace {

int next_power_of_two(int d) {
    int p = 1;
    while (p < d) p <<= 1;
    return p;
}

int log2_exact(int d) {
    int n = 0;
    while ((1 << n) < d) ++n;
    return n;
}

}  // namespace

int PhaseSettings::mzi_count() const {
    int total = 0;
    for (const auto& layer : theta) total += static_cast<int>(layer.size());
    return total;
}

double NoiseModel::db_to_linear(double loss_db) {
    return std::pow(10.0, -loss_db / 10.0);
}

void NoiseModel::validate() const {
    if (werner_visibility < 0.0 || werner_visibility > 1.0)
        throw InvalidInput("visibility must lie in [0,1]");
    if (phase_jitter_sigma < 0.0)
        throw InvalidInput("jitter sigma must be nonnegative");
    for (double eta : mode_loss)
        if (eta < 0.0 || eta > 1.0)
            throw InvalidInput("mode transmission must lie in [0,1]");
}

Mat phase_shifter(double phi) {
    Mat m = Mat::Identity(2, 2);
    m(1, 1) = std::polar(1.0, phi);
    return m;
}

Mat beam_splitter() {
    Mat m(2, 2);
    const double s = 1.0 / std::sqrt(2.0);
    m << cxd(0, s), cxd(s, 0), cxd(s, 0), cxd(0, s);
    return m;
}

Mat mzi_matrix(double theta) {
    return beam_splitter() * phase_shifter(theta) * beam_splitter();
}

double wrap_phase(double phase) {
    double w = std::fmod(phase, 2.0 * M_PI);
    if (w < 0.0) w += 2.0 * M_PI;
    // fmod can return exactly 2*pi after the negative correction
    if (w >= 2.0 * M_PI) w = 0.0;
    return w;
}

EliminationResult mzi_elimination(Vec& amplitudes, int k_ps, int k_nops,
                                  int k_cross) {
    const int d = static_cast<int>(amplitudes.size());
    if (k_ps < 0 || k_ps >= d || k_nops < 0 || k_nops >= d || k_ps == k_nops)
        throw InvalidIndex("mode indices out of range");
    if (k_cross != k_ps && k_cross != k_nops)
        throw InvalidIndex("k_cross must be one of the coupled modes");
    const cxd a_ps = amplitudes(k_ps);
    const cxd a_nops = amplitudes(k_nops);

    EliminationResult result;
    if (std::abs(a_ps) == 0.0 && std::abs(a_nops) == 0.0) {
        result.degenerate = true;
    } else if (k_cross == k_ps) {
        result.theta = 2.0 * std::atan2(std::abs(a_nops), std::abs(a_ps));
        result.phi = std::arg(a_nops) - std::arg(a_ps);
    } else {
        result.theta = 2.0 * std::atan2(std::abs(a_ps), std::abs(a_nops));
        result.phi = std::arg(a_nops) - std::arg(a_ps) + M_PI;
    }
    result.theta = wrap_phase(result.theta);
    result.phi = wrap_phase(result.phi);

    Eigen::Vector2cd pair;
    pair << a_nops, a_ps;
    pair = (mzi_matrix(result.theta) * phase_shifter(result.phi) * pair).eval();
    amplitudes(k_nops) = pair(0);
    amplitudes(k_ps) = pair(1);
    if (std::abs(amplitudes(k_cross)) < tol().elimination)
        amplitudes(k_cross) = 0.0;
    return result;
}

PhaseSettings triangular_phases(const PureState& psi, const CompileOptions& opts) {
    const int d_in = psi.dim();
    const int dim = next_power_of_two(d_in);
    const int layers = log2_exact(dim);

    PhaseSettings settings;
    settings.dim = dim;
    settings.placement = opts.placement;
    settings.k0 = opts.k0 >= 0 ? opts.k0 : (dim > 1 ? dim / 2 : 0);
    if (settings.k0 >= dim) throw InvalidIndex("detection mode exceeds mesh size");
    settings.input_phases.assign(dim, 0.0);

    Vec amps = Vec::Zero(dim);
    amps.head(d_in) = psi.amplitudes();

    for (int n = 1; n <= layers; ++n) {
        const int block = 1 << n;
        const int half = block / 2;
        const int offset = settings.k0 % half;
        std::vector<double> layer_theta;
        layer_theta.reserve(dim / block);
        for (int i = 1; i <= dim / block; ++i) {
            const int lower = (i - 1) * block + offset;
            const int upper = lower + half;
            // survive on the branch matching k0's bit pattern
            const bool k0_in_upper = (settings.k0 & half) != 0;
            const int k_cross = k0_in_upper ? lower : upper;
            const int k_ps =
                settings.placement == ShifterPlacement::Lower ? lower : upper;
            const int k_nops = k_ps == lower ? upper : lower;

            EliminationResult step = mzi_elimination(amps, k_ps, k_nops, k_cross);
            settings.degenerate = settings.degenerate || step.degenerate;
            layer_theta.push_back(step.theta);

            // push the pre-MZI phase onto the input shifters of the
            // half-block feeding the shifter arm
            const int base = (i - 1) * block + (k_ps == lower ? 0 : half);
            for (int l = base; l < base + half; ++l)
                settings.input_phases[l] =
                    wrap_phase(settings.input_phases[l] + step.phi);
        }
        settings.theta.push_back(std::move(layer_theta));
    }
    return settings;
}

std::pair<int, int> mzi_modes(const PhaseSettings& settings, int layer, int i) {
    const int block = 1 << layer;
    const int half = block / 2;
    const int lower = (i - 1) * block + settings.k0 % half;
    return {lower, lower + half};
}

Mat layer_unitary(const PhaseSettings& settings, int layer) {
    const int d = settings.dim;
    Mat u = Mat::Identity(d, d);
    for (int i = 1; i <= static_cast<int>(settings.theta[layer - 1].size()); ++i) {
        const auto [lower, upper] = mzi_modes(settings, layer, i);
        const Mat block = mzi_matrix(settings.mzi_phase(layer, i));
        // block rows/cols are ordered (no-shifter mode, shifter mode)
        const int ps = settings.placement == ShifterPlacement::Lower ? lower : upper;
        const int nops = ps == lower ? upper : lower;
        u(nops, nops) = block(0, 0);
        u(nops, ps) = block(0, 1);
        u(ps, nops) = block(1, 0);
        u(ps, ps) = block(1, 1);
    }
    return u;
}

Mat network_unitary(const PhaseSettings& settings) {
    const int d = settings.dim;
    Mat u = Mat::Identity(d, d);
    for (int l = 0; l < d; ++l) u(l, l) = std::polar(1.0, settings.input_phases[l]);
    for (int n = 1; n <= settings.layers(); ++n) u = layer_unitary(settings, n) * u;
    return u;
}

Mat projector_from_settings(const PhaseSettings& settings) {
    const Vec v = state_from_settings(settings).amplitudes();
    return v * v.adjoint();
}

PureState state_from_settings(const PhaseSettings& settings) {
    const Mat u = network_unitary(settings);
    Vec v = u.adjoint().col(settings.k0);
    return PureState(std::move(v));
}

namespace {

MeasurementBasis jitter_basis(const MeasurementBasis& basis, double sigma,
                              Rng& rng) {
    std::vector<Mat> projs;
    projs.reserve(basis.outcomes());
    for (int outcome = 0; outcome < basis.outcomes(); ++outcome) {
        PhaseSettings settings = triangular_phases(PureState(basis.vector(outcome)));
        for (auto& layer : settings.theta)
            for (double& th : layer) th = wrap_phase(th + sigma * rng.gaussian());
        for (double& ph : settings.input_phases)
            ph = wrap_phase(ph + sigma * rng.gaussian());
        const Vec v =
            state_from_settings(settings).amplitudes().head(basis.dim()).eval();
        // padded modes are undetectable; renormalize the physical part
        const Vec vn = v / std::max(v.norm(), 1e-300);
        projs.push_back(vn * vn.adjoint());
    }
    return MeasurementBasis::unchecked(std::move(projs));
}

}  // namespace

NoisyExperiment apply_noise(const DensityMatrix& rho, const NoiseModel& noise,
                            const std::vector<MeasurementBasis>& alice_bases,
                            const std::vector<MeasurementBasis>& bob_bases,
                            Rng& rng) {
    noise.validate();
    NoisyExperiment out{werner_mix(rho, noise.werner_visibility), {}, {}};
    const double sigma = noise.phase_jitter_sigma;
    for (const auto& b : alice_bases)
        out.alice_bases.push_back(sigma > 0.0 ? jitter_basis(b, sigma, rng) : b);
    for (const auto& b : bob_bases)
        out.bob_bases.push_back(sigma > 0.0 ? jitter_basis(b, sigma, rng) : b);
    return out;
}

RhomFringe rhom_fringe(double phase, double indistinguishability) {
    if (indistinguishability < 0.0 || indistinguishability > 1.0)
        throw InvalidInput("indistinguishability must lie in [0,1]");
    RhomFringe fringe;
    fringe.classical_rate = 0.5 * (1.0 + std::cos(phase));
    fringe.quantum_rate =
        0.5 * (1.0 + indistinguishability * std::cos(2.0 * phase));
    const double n_max = 0.5 * (1.0 + indistinguishability);
    const double n_min = 0.5 * (1.0 - indistinguishability);
    fringe.visibility = (n_max - n_min) / (n_max + n_min);
    return fringe;
}

double statistical_fidelity(const std::vector<double>& p,
                            const std::vector<double>& q) {
    if (p.size() != q.size()) throw DimMismatch("distribution lengths differ");
    double sum_p = 0.0, sum_q = 0.0;
    for (double x : p) sum_p += x;
    for (double x : q) sum_q += x;
    if (std::abs(sum_p - 1.0) > tol().structural ||
        std::abs(sum_q - 1.0) > tol().structural)
        throw InvalidInput("distributions must be normalized");
    double overlap = 0.0;
    for (size_t i = 0; i < p.size(); ++i) overlap += std::sqrt(p[i] * q[i]);
    return overlap;
}

}  // namespace quditlab::circuit
