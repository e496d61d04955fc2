// tomography.hpp
// Bipartite qudit state tomography: Heisenberg-Weyl operator family,
// eigenbasis measurement simulation, compressed-sensing reconstruction via
// trace minimization over the measured outcome statistics, and linear
// inversion with cone projection.

#pragma once

#include <cstdint>
#include <vector>

#include "quditlab/sdp.hpp"
#include "quditlab/state.hpp"

namespace quditlab::tomo {

// Label of one sampled operator X^p Z^q (x) X^r Z^s on C^d (x) C^d.
struct HwOperator {
    int p = 0, q = 0, r = 0, s = 0;
    bool operator==(const HwOperator&) const = default;
};

// Full operator family for a bipartite system of total dimension d_total
// (= d_local^2), in deterministic (p,q,r,s) order. The family is
// orthogonal with Tr[w_i^dag w_j] = d_total delta_ij.
std::vector<HwOperator> operator_basis_labels(int d_total);
std::vector<Mat> operator_basis(int d_total);
Mat hw_matrix(int d_local, const HwOperator& op);

// m operators drawn uniformly from the family (without replacement while
// m does not exceed the family size, with replacement beyond).
std::vector<HwOperator> sample_operators(int d_total, int m, std::uint64_t seed);

struct MeasureOptions {
    long long shots = 0;  // 0 = exact probabilities
    std::uint64_t seed = 1;
    bool simulate_mesh = false;  // route eigenbases through the mesh compiler
};

// Per-operator measurement in the tensor-product eigenbasis: the (k,l)
// entry is the joint probability of Alice's k-th and Bob's l-th
// eigenvector outcome.
std::vector<Eigen::MatrixXd> measure_outcome_statistics(
    const DensityMatrix& rho, const std::vector<HwOperator>& operators,
    const MeasureOptions& options = {});

// Complex expectation values <w_i> accumulated from the same eigenbasis
// statistics (eigenvalue-weighted outcome sums).
std::vector<cxd> measure_operators(const DensityMatrix& rho,
                                   const std::vector<HwOperator>& operators,
                                   const MeasureOptions& options = {});

struct TomographyJob {
    int d_local = 0;
    std::vector<HwOperator> operators;
    // outcome statistics per operator, as produced by
    // measure_outcome_statistics
    std::vector<Eigen::MatrixXd> outcomes;
    double epsilon = 0.0;  // noise ball; <= 0 selects exact equality mode
};

// Convenience: sample, measure and package a job.
TomographyJob make_job(const DensityMatrix& rho,
                       const std::vector<HwOperator>& operators,
                       const MeasureOptions& options = {}, double epsilon = 0.0);

// Noise control parameter from Poisson counting statistics.
double epsilon_heuristic(int m, long long shots, double c = 1.0);

// Trace minimization over PSD matrices constrained to the measurement ball
// ||A(X) - y||_2^2 <= epsilon, renormalized to unit trace.
DensityMatrix cs_reconstruct(const TomographyJob& job,
                             const sdp::SolverOptions& solver = {});

// Least-squares inversion of informationally complete data followed by
// projection onto the PSD trace-one cone (nearest in Frobenius norm).
DensityMatrix linear_inversion(const TomographyJob& job);

}  // namespace quditlab::tomo
