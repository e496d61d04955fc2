// state.hpp
// Pure states and density matrices of d-level systems, plus the handful of
// linear-algebra operations every other module builds on.

#pragma once

#include <Eigen/Dense>
#include <complex>

#include "quditlab/errors.hpp"
#include "quditlab/tolerances.hpp"

namespace quditlab {

using cxd = std::complex<double>;
using Vec = Eigen::VectorXcd;
using Mat = Eigen::MatrixXcd;

// Normalized amplitude vector over a d-dimensional Hilbert space.
// Immutable after construction.
class PureState {
  public:
    // Normalizes a copy of `amplitudes`; relative phases are preserved.
    // Throws InvalidState on a zero or non-finite vector.
    explicit PureState(Vec amplitudes);

    int dim() const { return static_cast<int>(amps_.size()); }
    const Vec& amplitudes() const { return amps_; }
    cxd amplitude(int k) const { return amps_(k); }

    // |psi><psi| as a dense matrix.
    Mat projector() const { return amps_ * amps_.adjoint(); }

  private:
    Vec amps_;
};

// Hermitian, PSD, trace-one matrix. Immutable after construction.
class DensityMatrix {
  public:
    // Validates Hermiticity (1e-10), unit trace (1e-10) and the PSD floor
    // (min eigenvalue >= -1e-9). Throws InvalidState otherwise.
    explicit DensityMatrix(Mat rho);

    static DensityMatrix from_pure(const PureState& psi) {
        return DensityMatrix(psi.projector());
    }
    static DensityMatrix maximally_mixed(int dim);

    int dim() const { return static_cast<int>(rho_.rows()); }
    const Mat& matrix() const { return rho_; }

  private:
    Mat rho_;
};

// Normalized copy of `amplitudes`. Zero vector or NaN/Inf -> InvalidState.
PureState make_pure_state(const Vec& amplitudes);

// Sum_k c_k |k>|k> normalized, a state on dimension d^2 with amplitude
// c_k/||c|| at index k*d+k and zero elsewhere.
PureState entangled_state(const Vec& c);

// Maximally entangled state of local dimension d (uniform coefficients).
PureState max_entangled_state(int d);

// Computational-basis Fourier state |l> = sum_k e^{2 pi i k l / d} |k> / sqrt(d).
PureState fourier_state(int d, int l);

// <psi|rho|psi>, guaranteed real within 1e-12. Throws DimMismatch.
double fidelity(const DensityMatrix& rho, const PureState& psi);

enum class Side { A, B };

// Partial trace of a state on dim_a * dim_b; `traced` names the subsystem
// that is traced out. Throws DimMismatch when the dimensions do not factor.
DensityMatrix partial_trace(const DensityMatrix& rho, int dim_a, int dim_b,
                            Side traced);

// Convenience overload for symmetric bipartitions (dim = d^2).
DensityMatrix partial_trace(const DensityMatrix& rho, Side traced);

// Werner-type mixture v*rho + (1-v)*I/dim.
DensityMatrix werner_mix(const DensityMatrix& rho, double v);

// Kronecker product helpers.
Mat kron(const Mat& a, const Mat& b);
Vec kron(const Vec& a, const Vec& b);

}  // namespace quditlab
