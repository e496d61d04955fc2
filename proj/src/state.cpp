#include "quditlab/state.hpp"

#include <cmath>

namespace quditlab {

namespace {

bool all_finite(const Vec& v) {
    for (Eigen::Index i = 0; i < v.size(); ++i) {
        if (!std::isfinite(v(i).real()) || !std::isfinite(v(i).imag()))
            return false;
    }
    return true;
}

}  // namespace

PureState::PureState(Vec amplitudes) : amps_(std::move(amplitudes)) {
    if (amps_.size() < 1) throw InvalidState("state must have dimension >= 1");
    if (!all_finite(amps_)) throw InvalidState("state has non-finite amplitudes");
    const double norm = amps_.norm();
    if (norm <= 0.0) throw InvalidState("cannot normalize the zero vector");
    amps_ /= norm;
}

DensityMatrix::DensityMatrix(Mat rho) : rho_(std::move(rho)) {
    if (rho_.rows() < 1 || rho_.rows() != rho_.cols())
        throw InvalidState("density matrix must be square with dimension >= 1");
    if ((rho_ - rho_.adjoint()).cwiseAbs().maxCoeff() > 1e-10)
        throw InvalidState("density matrix is not Hermitian");
    if (std::abs(rho_.trace() - cxd(1.0, 0.0)) > 1e-10)
        throw InvalidState("density matrix trace differs from one");
    // symmetrize round-off before the eigenvalue check
    rho_ = 0.5 * (rho_ + rho_.adjoint()).eval();
    Eigen::SelfAdjointEigenSolver<Mat> es(rho_, Eigen::EigenvaluesOnly);
    if (es.eigenvalues().minCoeff() < -tol().psd_floor)
        throw InvalidState("density matrix is not positive semidefinite");
}

DensityMatrix DensityMatrix::maximally_mixed(int dim) {
    if (dim < 1) throw InvalidDimension("dimension must be >= 1");
    return DensityMatrix(Mat::Identity(dim, dim) / static_cast<double>(dim));
}

PureState make_pure_state(const Vec& amplitudes) { return PureState(amplitudes); }

PureState entangled_state(const Vec& c) {
    const int d = static_cast<int>(c.size());
    if (d < 1) throw InvalidState("coefficient vector must be nonempty");
    Vec amps = Vec::Zero(static_cast<Eigen::Index>(d) * d);
    for (int k = 0; k < d; ++k) amps(static_cast<Eigen::Index>(k) * d + k) = c(k);
    return PureState(std::move(amps));
}

PureState max_entangled_state(int d) {
    if (d < 1) throw InvalidDimension("dimension must be >= 1");
    return entangled_state(Vec::Ones(d));
}

PureState fourier_state(int d, int l) {
    if (d < 1) throw InvalidDimension("dimension must be >= 1");
    Vec amps(d);
    for (int k = 0; k < d; ++k) {
        const double phase = 2.0 * M_PI * k * l / d;
        amps(k) = cxd(std::cos(phase), std::sin(phase));
    }
    return PureState(std::move(amps));
}

double fidelity(const DensityMatrix& rho, const PureState& psi) {
    if (rho.dim() != psi.dim())
        throw DimMismatch("state and density matrix dimensions differ");
    const cxd value = psi.amplitudes().adjoint() * rho.matrix() * psi.amplitudes();
    return value.real();
}

DensityMatrix partial_trace(const DensityMatrix& rho, int dim_a, int dim_b,
                            Side traced) {
    if (dim_a < 1 || dim_b < 1 || dim_a * dim_b != rho.dim())
        throw DimMismatch("dimension does not factor as dim_a * dim_b");
    const Mat& m = rho.matrix();
    if (traced == Side::A) {
        Mat out = Mat::Zero(dim_b, dim_b);
        for (int i = 0; i < dim_a; ++i)
            out += m.block(static_cast<Eigen::Index>(i) * dim_b,
                           static_cast<Eigen::Index>(i) * dim_b, dim_b, dim_b);
        return DensityMatrix(std::move(out));
    }
    Mat out = Mat::Zero(dim_a, dim_a);
    for (int i = 0; i < dim_a; ++i)
        for (int j = 0; j < dim_a; ++j) {
            cxd sum = 0.0;
            for (int k = 0; k < dim_b; ++k)
                sum += m(static_cast<Eigen::Index>(i) * dim_b + k,
                         static_cast<Eigen::Index>(j) * dim_b + k);
            out(i, j) = sum;
        }
    return DensityMatrix(std::move(out));
}

DensityMatrix partial_trace(const DensityMatrix& rho, Side traced) {
    const int d = static_cast<int>(std::llround(std::sqrt(double(rho.dim()))));
    if (d * d != rho.dim())
        throw DimMismatch("dimension is not a perfect square");
    return partial_trace(rho, d, d, traced);
}

DensityMatrix werner_mix(const DensityMatrix& rho, double v) {
    if (v < 0.0 || v > 1.0) throw InvalidInput("visibility must lie in [0,1]");
    const int d = rho.dim();
    return DensityMatrix(v * rho.matrix() + (1.0 - v) * Mat::Identity(d, d) / d);
}

Mat kron(const Mat& a, const Mat& b) {
    Mat out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = 0; j < a.cols(); ++j)
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    return out;
}

Vec kron(const Vec& a, const Vec& b) {
    Vec out(a.size() * b.size());
    for (Eigen::Index i = 0; i < a.size(); ++i)
        out.segment(i * b.size(), b.size()) = a(i) * b;
    return out;
}

}  // namespace quditlab
