// sdp.hpp
// Small dense semidefinite-program solver with certificates: block
// Hermitian PSD variables, optional second-order-cone blocks for norm-ball
// constraints, linear equality constraints, and a Nesterov-Todd scaled
// predictor-corrector interior-point method behind the contract.

#pragma once

#include <string>
#include <vector>

#include "quditlab/state.hpp"

namespace quditlab::sdp {

enum class Sense { Min, Max };

enum class SolveStatus { Optimal, Infeasible, Unbounded, NumericalFailure };

std::string to_string(SolveStatus status);

// Block-structured problem
//   min/max  sum_j <C_j, X_j> + sum_k <c_k, u_k>
//   s.t.     sum_j <A_ij, X_j> + sum_k <a_ik, u_k> = b_i,
//            X_j Hermitian PSD, u_k in a second-order cone.
// Empty coefficient matrices/vectors stand for zero blocks.
struct SdpProblem {
    std::vector<int> psd_dims;
    std::vector<int> soc_dims;
    std::vector<Mat> objective_psd;
    std::vector<Eigen::VectorXd> objective_soc;

    struct Constraint {
        std::vector<Mat> psd;
        std::vector<Eigen::VectorXd> soc;
        double rhs = 0.0;
    };
    std::vector<Constraint> constraints;
    Sense sense = Sense::Min;

    // allocates empty (zero) coefficient slots for every block
    Constraint make_constraint() const;
    void validate() const;
};

struct SdpSolution {
    SolveStatus status = SolveStatus::NumericalFailure;
    std::vector<Mat> psd;  // X_j
    std::vector<Eigen::VectorXd> soc;
    Eigen::VectorXd dual;  // y
    double objective = 0.0;
    double primal_residual = 0.0;
    double dual_residual = 0.0;
    double relative_gap = 0.0;
    int iterations = 0;
};

struct SolverOptions {
    double gap_tol = 1e-7;
    double feas_tol = 1e-9;
    int max_iterations = 200;
    bool verbose = false;
};

// Solves the problem; deterministic for identical inputs. Statuses other
// than Optimal are reported in SdpSolution::status, never thrown.
SdpSolution solve_sdp(const SdpProblem& problem, const SolverOptions& options = {});

// Independent recomputation of feasibility and optimality measures from the
// returned solution (does not reuse any solver state).
struct Certificate {
    double primal_residual = 0.0;
    double dual_residual = 0.0;
    double relative_gap = 0.0;
    double min_psd_eigenvalue = 0.0;
    double min_soc_margin = 0.0;
    // rigorous bound on |objective - true optimum|: the absolute duality
    // gap plus the shadow-price-weighted equality residuals plus the cone
    // violation weighted by the primal trace
    double suboptimality_bound = 0.0;
    bool ok = false;
};
Certificate certify(const SdpSolution& solution, const SdpProblem& problem,
                    double tolerance = 1e-6);

// Debug interchange format (dense JSON); round-trips through from_json.
std::string to_json(const SdpProblem& problem);
SdpProblem problem_from_json(const std::string& text);

}  // namespace quditlab::sdp
