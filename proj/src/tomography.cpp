#include "quditlab/tomography.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <map>

#include "quditlab/basis.hpp"
#include "quditlab/circuit.hpp"
#include "quditlab/correlations.hpp"
#include "quditlab/random.hpp"

namespace quditlab::tomo {

namespace {

int local_dim_of(int d_total) {
    const int d = static_cast<int>(std::llround(std::sqrt(double(d_total))));
    if (d < 2 || d * d != d_total)
        throw InvalidDimension("total dimension must be a square d^2 with d >= 2");
    return d;
}

Mat shift_matrix(int d) {
    Mat x = Mat::Zero(d, d);
    for (int k = 0; k < d; ++k) x((k + 1) % d, k) = 1.0;
    return x;
}

Mat clock_matrix(int d) {
    Mat z = Mat::Zero(d, d);
    for (int k = 0; k < d; ++k) z(k, k) = std::polar(1.0, 2.0 * M_PI * k / d);
    return z;
}

Mat local_hw(int d, int p, int q) {
    Mat m = Mat::Identity(d, d);
    const Mat x = shift_matrix(d);
    const Mat z = clock_matrix(d);
    for (int i = 0; i < p; ++i) m = x * m;
    for (int i = 0; i < q; ++i) m = z * m;
    return m;
}

// deterministic orthonormal eigenbasis of a unitary via its commuting
// Hermitian real and imaginary parts, with the eigenvalue per vector
struct UnitaryEigenbasis {
    MeasurementBasis basis;
    std::vector<cxd> eigenvalues;
};

UnitaryEigenbasis unitary_eigenbasis(const Mat& u) {
    const Mat re = 0.5 * (u + u.adjoint());
    const Mat im = cxd(0.0, -0.5) * (u - u.adjoint());
    MeasurementBasis basis = common_eigenbasis({re, im});
    UnitaryEigenbasis out{std::move(basis), {}};
    for (int k = 0; k < out.basis.outcomes(); ++k) {
        const Vec v = out.basis.vector(k);
        out.eigenvalues.push_back((v.adjoint() * u * v)(0, 0));
    }
    return out;
}

MeasurementBasis through_mesh(const MeasurementBasis& basis) {
    std::vector<Mat> projs;
    for (int k = 0; k < basis.outcomes(); ++k) {
        const auto settings =
            circuit::triangular_phases(PureState(basis.vector(k)));
        const Vec v = circuit::state_from_settings(settings)
                          .amplitudes()
                          .head(basis.dim())
                          .eval();
        const Vec vn = v / v.norm();
        projs.push_back(vn * vn.adjoint());
    }
    return MeasurementBasis::unchecked(std::move(projs));
}

struct OperatorSetting {
    UnitaryEigenbasis left;
    UnitaryEigenbasis right;
};

OperatorSetting operator_setting(int d, const HwOperator& op) {
    return {unitary_eigenbasis(local_hw(d, op.p, op.q)),
            unitary_eigenbasis(local_hw(d, op.r, op.s))};
}

}  // namespace

std::vector<HwOperator> operator_basis_labels(int d_total) {
    const int d = local_dim_of(d_total);
    std::vector<HwOperator> labels;
    labels.reserve(size_t(d) * d * d * d);
    for (int p = 0; p < d; ++p)
        for (int q = 0; q < d; ++q)
            for (int r = 0; r < d; ++r)
                for (int s = 0; s < d; ++s) labels.push_back({p, q, r, s});
    return labels;
}

Mat hw_matrix(int d_local, const HwOperator& op) {
    return kron(local_hw(d_local, op.p, op.q), local_hw(d_local, op.r, op.s));
}

std::vector<Mat> operator_basis(int d_total) {
    const int d = local_dim_of(d_total);
    std::vector<Mat> out;
    for (const auto& label : operator_basis_labels(d_total))
        out.push_back(hw_matrix(d, label));
    return out;
}

std::vector<HwOperator> sample_operators(int d_total, int m, std::uint64_t seed) {
    if (m < 1) throw InvalidInput("need at least one operator");
    auto labels = operator_basis_labels(d_total);
    Rng rng(derive_seed(seed, 0x746f6d6fULL));
    // Fisher-Yates prefix shuffle for the without-replacement part
    const int family = static_cast<int>(labels.size());
    for (int i = 0; i < std::min(m, family); ++i) {
        const int j = i + static_cast<int>(rng.raw() % (family - i));
        std::swap(labels[i], labels[j]);
    }
    std::vector<HwOperator> out(labels.begin(),
                                labels.begin() + std::min(m, family));
    while (static_cast<int>(out.size()) < m)
        out.push_back(labels[rng.raw() % family]);
    return out;
}

std::vector<Eigen::MatrixXd> measure_outcome_statistics(
    const DensityMatrix& rho, const std::vector<HwOperator>& operators,
    const MeasureOptions& options) {
    const int d = local_dim_of(rho.dim());
    std::vector<Eigen::MatrixXd> stats;
    stats.reserve(operators.size());
    for (size_t i = 0; i < operators.size(); ++i) {
        const auto setting = operator_setting(d, operators[i]);
        const MeasurementBasis alice = options.simulate_mesh
                                           ? through_mesh(setting.left.basis)
                                           : setting.left.basis;
        const MeasurementBasis bob = options.simulate_mesh
                                         ? through_mesh(setting.right.basis)
                                         : setting.right.basis;
        const auto table = corr::born_probabilities(rho, {alice}, {bob});

        Eigen::MatrixXd p = table.joint(0, 0);
        if (options.shots > 0) {
            Rng rng(derive_seed(options.seed, 0x6d656173ULL, i));
            Eigen::MatrixXd counts(d, d);
            for (int k = 0; k < d; ++k)
                for (int l = 0; l < d; ++l)
                    counts(k, l) = static_cast<double>(
                        rng.poisson(options.shots * p(k, l)));
            const double total = counts.sum();
            p = total > 0.0 ? (counts / total).eval()
                            : Eigen::MatrixXd::Zero(d, d);
        }
        stats.push_back(std::move(p));
    }
    return stats;
}

std::vector<cxd> measure_operators(const DensityMatrix& rho,
                                   const std::vector<HwOperator>& operators,
                                   const MeasureOptions& options) {
    const int d = local_dim_of(rho.dim());
    const auto stats = measure_outcome_statistics(rho, operators, options);
    std::vector<cxd> y;
    y.reserve(operators.size());
    for (size_t i = 0; i < operators.size(); ++i) {
        const auto setting = operator_setting(d, operators[i]);
        cxd expectation(0.0, 0.0);
        for (int k = 0; k < d; ++k)
            for (int l = 0; l < d; ++l)
                expectation += setting.left.eigenvalues[k] *
                               setting.right.eigenvalues[l] * stats[i](k, l);
        y.push_back(expectation);
    }
    return y;
}

TomographyJob make_job(const DensityMatrix& rho,
                       const std::vector<HwOperator>& operators,
                       const MeasureOptions& options, double epsilon) {
    TomographyJob job;
    job.d_local = local_dim_of(rho.dim());
    job.operators = operators;
    job.outcomes = measure_outcome_statistics(rho, operators, options);
    job.epsilon = epsilon;
    return job;
}

double epsilon_heuristic(int m, long long shots, double c) {
    if (shots <= 0) return 0.0;
    return c * std::sqrt(double(m) / double(shots));
}

namespace {

DensityMatrix clip_to_density(Mat x) {
    x = 0.5 * (x + x.adjoint()).eval();
    Eigen::SelfAdjointEigenSolver<Mat> es(x);
    Eigen::VectorXd vals = es.eigenvalues().cwiseMax(0.0);
    const double total = vals.sum();
    if (total <= 0.0) throw NumericalFailure("reconstruction collapsed to zero");
    vals /= total;
    const Mat rho = es.eigenvectors() * vals.asDiagonal() *
                    es.eigenvectors().adjoint();
    return DensityMatrix(rho);
}

void check_job(const TomographyJob& job) {
    if (job.operators.empty() || job.operators.size() != job.outcomes.size())
        throw InvalidInput("job needs matching operator and outcome lists");
    for (const auto& p : job.outcomes)
        if (p.rows() != job.d_local || p.cols() != job.d_local)
            throw InvalidInput("outcome grids must be d_local x d_local");
}

}  // namespace

DensityMatrix cs_reconstruct(const TomographyJob& job,
                             const sdp::SolverOptions& solver) {
    check_job(job);
    const int d = job.d_local;
    const int d_total = d * d;
    const int m = static_cast<int>(job.operators.size());
    const int rows = m * d_total;

    sdp::SdpProblem problem;
    problem.sense = sdp::Sense::Min;
    problem.psd_dims = {d_total};
    problem.objective_psd = {Mat::Identity(d_total, d_total)};
    const bool ball_mode = job.epsilon > 0.0;
    if (ball_mode) {
        problem.soc_dims = {1 + rows};
        problem.objective_soc = {Eigen::VectorXd()};
        auto pin = problem.make_constraint();
        pin.rhs = std::sqrt(job.epsilon);
        pin.soc[0] = Eigen::VectorXd::Zero(1 + rows);
        pin.soc[0](0) = 1.0;
        problem.constraints.push_back(std::move(pin));
    }

    int row = 0;
    for (int i = 0; i < m; ++i) {
        const auto setting = operator_setting(d, job.operators[i]);
        for (int k = 0; k < d; ++k)
            for (int l = 0; l < d; ++l) {
                auto con = problem.make_constraint();
                con.psd[0] = kron(setting.left.basis.projector(k),
                                  setting.right.basis.projector(l));
                con.rhs = job.outcomes[i](k, l);
                if (ball_mode) {
                    con.soc[0] = Eigen::VectorXd::Zero(1 + rows);
                    con.soc[0](1 + row) = -1.0;
                }
                problem.constraints.push_back(std::move(con));
                ++row;
            }
    }

    const auto solution = sdp::solve_sdp(problem, solver);
    if (solution.status == sdp::SolveStatus::Infeasible)
        throw Infeasible("noise ball too small for the measured data");
    if (solution.status != sdp::SolveStatus::Optimal)
        throw NumericalFailure("reconstruction SDP did not converge: gap " +
                               std::to_string(solution.relative_gap));
    return clip_to_density(solution.psd[0]);
}

DensityMatrix linear_inversion(const TomographyJob& job) {
    check_job(job);
    const int d = job.d_local;
    const int d_total = d * d;

    // expectation of each measured operator from its outcome statistics;
    // duplicates average (least squares for an orthogonal design)
    std::map<std::array<int, 4>, std::pair<cxd, int>> grouped;
    for (size_t i = 0; i < job.operators.size(); ++i) {
        const auto& op = job.operators[i];
        const auto setting = operator_setting(d, op);
        cxd expectation(0.0, 0.0);
        for (int k = 0; k < d; ++k)
            for (int l = 0; l < d; ++l)
                expectation += setting.left.eigenvalues[k] *
                               setting.right.eigenvalues[l] *
                               job.outcomes[i](k, l);
        auto& slot = grouped[{op.p, op.q, op.r, op.s}];
        slot.first += expectation;
        slot.second += 1;
    }
    if (grouped.size() < size_t(d_total) * d_total)
        throw IncompleteData("linear inversion needs the complete family");

    Mat x = Mat::Zero(d_total, d_total);
    for (const auto& [label, data] : grouped) {
        const cxd mean = data.first / double(data.second);
        const Mat w = hw_matrix(d, {label[0], label[1], label[2], label[3]});
        x += std::conj(mean) * w;
    }
    x /= double(d_total);
    return clip_to_density(x);
}

}  // namespace quditlab::tomo
