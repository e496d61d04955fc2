// basis.hpp
// Projective measurement bases: construction from orthonormal vectors,
// standard computational / Fourier bases, and the common eigenbasis of a
// commuting Hermitian family.

#pragma once

#include <optional>
#include <vector>

#include "quditlab/state.hpp"

namespace quditlab {

// Ordered list of rank-one orthogonal projectors resolving the identity.
// Outcome k is the k-th projector. Immutable after construction.
class MeasurementBasis {
  public:
    // Validates each projector (Hermitian, idempotent within 1e-10), mutual
    // orthogonality and completeness. Throws InvalidState otherwise.
    explicit MeasurementBasis(std::vector<Mat> projectors);

    // Basis from the columns of a (numerically) unitary matrix.
    static MeasurementBasis from_vectors(const Mat& columns);

    // Bypasses validation; reserved for perturbed, physically imperfect
    // projector sets produced by the noise model.
    static MeasurementBasis unchecked(std::vector<Mat> projectors);

    int dim() const { return dim_; }
    int outcomes() const { return static_cast<int>(projectors_.size()); }
    const Mat& projector(int outcome) const { return projectors_[outcome]; }
    const std::vector<Mat>& projectors() const { return projectors_; }

    // Principal vector of a rank-one projector, phase-fixed so that its
    // first nonzero entry is real positive.
    Vec vector(int outcome) const;

    // Eigenvalue tuples attached by common_eigenbasis (one per outcome).
    const std::vector<std::vector<double>>& eigenvalue_tuples() const {
        return tuples_;
    }

  private:
    MeasurementBasis() = default;
    int dim_ = 0;
    std::vector<Mat> projectors_;
    std::vector<std::vector<double>> tuples_;
    friend MeasurementBasis common_eigenbasis(const std::vector<Mat>&);
};

// Computational basis {|k><k|}.
MeasurementBasis computational_basis(int d);

// Fourier basis {|l><l|} with |l> = sum_k e^{2 pi i k l/d}|k>/sqrt(d).
// `negate_index` labels outcome l by the state |-l mod d> instead.
MeasurementBasis fourier_basis(int d, bool negate_index = false);

// Simultaneous eigenbasis of a pairwise-commuting Hermitian family.
// Outcome ordering is lexicographically decreasing in the eigenvalue tuple;
// each eigenvector's first nonzero amplitude is made real positive.
// Degeneracies are resolved by diagonalizing a fixed random real linear
// combination and refining per operator. Throws NotCommuting.
MeasurementBasis common_eigenbasis(const std::vector<Mat>& ops);

// Single-qubit Pauli matrices.
Mat pauli_x();
Mat pauli_y();
Mat pauli_z();

// Tensor product of single-qubit operators given as a string over "IXYZ",
// e.g. "ZXX" -> Z (x) X (x) X.
Mat pauli_string(const std::string& ops);

}  // namespace quditlab
