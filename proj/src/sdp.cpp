#include "quditlab/sdp.hpp"

#include <cmath>
#include <cstdio>
#include <limits>

namespace quditlab::sdp {

std::string to_string(SolveStatus status) {
    switch (status) {
        case SolveStatus::Optimal: return "optimal";
        case SolveStatus::Infeasible: return "infeasible";
        case SolveStatus::Unbounded: return "unbounded";
        case SolveStatus::NumericalFailure: return "numerical_failure";
    }
    return "unknown";
}

SdpProblem::Constraint SdpProblem::make_constraint() const {
    Constraint c;
    c.psd.resize(psd_dims.size());
    c.soc.resize(soc_dims.size());
    return c;
}

void SdpProblem::validate() const {
    for (int d : psd_dims)
        if (d < 1) throw InvalidInput("PSD block dimension must be positive");
    for (int d : soc_dims)
        if (d < 2) throw InvalidInput("SOC block dimension must be at least two");
    auto check_mat = [&](const Mat& m, size_t j, const char* what) {
        if (m.size() == 0) return;
        if (m.rows() != psd_dims[j] || m.cols() != psd_dims[j])
            throw InvalidInput(std::string(what) + ": PSD coefficient shape mismatch");
        if ((m - m.adjoint()).cwiseAbs().maxCoeff() > 1e-10)
            throw InvalidInput(std::string(what) + ": PSD coefficient not Hermitian");
    };
    if (objective_psd.size() != psd_dims.size() ||
        objective_soc.size() != soc_dims.size())
        throw InvalidInput("objective block count mismatch");
    for (size_t j = 0; j < psd_dims.size(); ++j)
        check_mat(objective_psd[j], j, "objective");
    for (size_t k = 0; k < soc_dims.size(); ++k)
        if (objective_soc[k].size() != 0 && objective_soc[k].size() != soc_dims[k])
            throw InvalidInput("objective SOC coefficient shape mismatch");
    for (const auto& con : constraints) {
        if (con.psd.size() != psd_dims.size() || con.soc.size() != soc_dims.size())
            throw InvalidInput("constraint block count mismatch");
        for (size_t j = 0; j < psd_dims.size(); ++j)
            check_mat(con.psd[j], j, "constraint");
        for (size_t k = 0; k < soc_dims.size(); ++k)
            if (con.soc[k].size() != 0 && con.soc[k].size() != soc_dims[k])
                throw InvalidInput("constraint SOC coefficient shape mismatch");
    }
}

namespace {

using RMat = Eigen::MatrixXd;
using RVec = Eigen::VectorXd;

// ---------------------------------------------------------------------
// real standard form: min c'x  s.t.  Ax = b,  x in (svec PSD) x SOC cones
// ---------------------------------------------------------------------

struct Block {
    enum Kind { Psd, Soc } kind = Psd;
    int n = 0;        // matrix dimension (Psd) or vector length (Soc)
    int vec_dim = 0;  // n(n+1)/2 for Psd, n for Soc
    int offset = 0;   // position in the concatenated vector
    // mapping back to the complex interface
    bool embedded = false;  // complex Hermitian block embedded as 2n_c real
    int complex_dim = 0;
};

int svec_dim(int n) { return n * (n + 1) / 2; }

RVec svec(const RMat& m) {
    const int n = static_cast<int>(m.rows());
    RVec v(svec_dim(n));
    const double s = std::sqrt(2.0);
    int idx = 0;
    for (int j = 0; j < n; ++j) {
        v(idx++) = m(j, j);
        for (int i = j + 1; i < n; ++i) v(idx++) = s * m(i, j);
    }
    return v;
}

RMat smat(const RVec& v, int n) {
    RMat m(n, n);
    const double s = 1.0 / std::sqrt(2.0);
    int idx = 0;
    for (int j = 0; j < n; ++j) {
        m(j, j) = v(idx++);
        for (int i = j + 1; i < n; ++i) {
            m(i, j) = m(j, i) = s * v(idx++);
        }
    }
    return m;
}

// real embedding of a Hermitian matrix, scaled so inner products carry over
RMat embed(const Mat& h, double scale) {
    const int n = static_cast<int>(h.rows());
    RMat out(2 * n, 2 * n);
    const RMat re = h.real();
    const RMat im = h.imag();
    out.topLeftCorner(n, n) = re;
    out.bottomRightCorner(n, n) = re;
    out.topRightCorner(n, n) = -im;
    out.bottomLeftCorner(n, n) = im;
    return scale * out;
}

Mat extract_hermitian(const RMat& x, int n) {
    Mat out(n, n);
    out.real() = 0.5 * (x.topLeftCorner(n, n) + x.bottomRightCorner(n, n));
    out.imag() = 0.5 * (x.bottomLeftCorner(n, n) - x.topRightCorner(n, n));
    return 0.5 * (out + out.adjoint()).eval();
}

struct RealForm {
    std::vector<Block> blocks;
    RMat a;  // m x n
    RVec b;
    RVec c;
    int n_total = 0;
    double nu = 0.0;  // total cone degree
};

bool block_is_complex(const SdpProblem& p, size_t j) {
    auto has_imag = [](const Mat& m) {
        return m.size() != 0 && m.imag().cwiseAbs().maxCoeff() > 0.0;
    };
    if (has_imag(p.objective_psd[j])) return true;
    for (const auto& con : p.constraints)
        if (has_imag(con.psd[j])) return true;
    return false;
}

RealForm build_real_form(const SdpProblem& p) {
    RealForm rf;
    int offset = 0;
    for (size_t j = 0; j < p.psd_dims.size(); ++j) {
        Block blk;
        blk.kind = Block::Psd;
        blk.embedded = block_is_complex(p, j);
        blk.complex_dim = p.psd_dims[j];
        blk.n = blk.embedded ? 2 * p.psd_dims[j] : p.psd_dims[j];
        blk.vec_dim = svec_dim(blk.n);
        blk.offset = offset;
        offset += blk.vec_dim;
        rf.nu += blk.n;
        rf.blocks.push_back(blk);
    }
    for (size_t k = 0; k < p.soc_dims.size(); ++k) {
        Block blk;
        blk.kind = Block::Soc;
        blk.n = p.soc_dims[k];
        blk.vec_dim = blk.n;
        blk.offset = offset;
        offset += blk.vec_dim;
        rf.nu += 1.0;
        rf.blocks.push_back(blk);
    }
    rf.n_total = offset;

    const double sign = p.sense == Sense::Min ? 1.0 : -1.0;
    rf.c = RVec::Zero(rf.n_total);
    const size_t n_psd = p.psd_dims.size();
    for (size_t j = 0; j < n_psd; ++j) {
        const Block& blk = rf.blocks[j];
        if (p.objective_psd[j].size() == 0) continue;
        const RMat cm = blk.embedded ? embed(p.objective_psd[j], 0.5)
                                     : RMat(p.objective_psd[j].real());
        rf.c.segment(blk.offset, blk.vec_dim) = sign * svec(cm);
    }
    for (size_t k = 0; k < p.soc_dims.size(); ++k) {
        const Block& blk = rf.blocks[n_psd + k];
        if (p.objective_soc[k].size() == 0) continue;
        rf.c.segment(blk.offset, blk.vec_dim) = sign * p.objective_soc[k];
    }

    const int m = static_cast<int>(p.constraints.size());
    rf.a = RMat::Zero(m, rf.n_total);
    rf.b = RVec::Zero(m);
    for (int i = 0; i < m; ++i) {
        const auto& con = p.constraints[i];
        rf.b(i) = con.rhs;
        for (size_t j = 0; j < n_psd; ++j) {
            if (con.psd[j].size() == 0) continue;
            const Block& blk = rf.blocks[j];
            const RMat am = blk.embedded ? embed(con.psd[j], 0.5)
                                         : RMat(con.psd[j].real());
            rf.a.row(i).segment(blk.offset, blk.vec_dim) = svec(am).transpose();
        }
        for (size_t k = 0; k < p.soc_dims.size(); ++k) {
            if (con.soc[k].size() == 0) continue;
            const Block& blk = rf.blocks[n_psd + k];
            rf.a.row(i).segment(blk.offset, blk.vec_dim) = con.soc[k].transpose();
        }
    }
    return rf;
}

// ---------------------------------------------------------------------
// Nesterov-Todd scalings
// ---------------------------------------------------------------------

struct PsdScaling {
    RMat w_half;      // W^(1/2)
    RMat w_half_inv;  // W^(-1/2)
    RMat lambda;      // scaled point, symmetric
};

struct SocScaling {
    double eta = 1.0;
    double a = 1.0;
    RVec q;       // (a, q) is the normalized hyperbolic scaling point
    RVec lambda;  // scaled point
};

struct Scalings {
    std::vector<PsdScaling> psd;
    std::vector<SocScaling> soc;
};

bool sym_eig(const RMat& m, RMat& vectors, RVec& values) {
    Eigen::SelfAdjointEigenSolver<RMat> es(m);
    if (es.info() != Eigen::Success) return false;
    vectors = es.eigenvectors();
    values = es.eigenvalues();
    return true;
}

// W with W S W = X, via S^{-1/2} (S^{1/2} X S^{1/2})^{1/2} S^{-1/2}
bool nt_psd(const RMat& x, const RMat& s, PsdScaling& out) {
    RMat vs;
    RVec ds;
    if (!sym_eig(s, vs, ds)) return false;
    if (ds.minCoeff() <= 0.0) return false;
    const RMat s_half = vs * ds.cwiseSqrt().asDiagonal() * vs.transpose();
    const RMat s_half_inv =
        vs * ds.cwiseSqrt().cwiseInverse().asDiagonal() * vs.transpose();
    RMat vm;
    RVec dm;
    if (!sym_eig(s_half * x * s_half, vm, dm)) return false;
    if (dm.minCoeff() <= 0.0) return false;
    const RMat m_half = vm * dm.cwiseSqrt().asDiagonal() * vm.transpose();
    RMat w = s_half_inv * m_half * s_half_inv;
    w = 0.5 * (w + w.transpose()).eval();
    RMat vw;
    RVec dw;
    if (!sym_eig(w, vw, dw)) return false;
    if (dw.minCoeff() <= 0.0) return false;
    out.w_half = vw * dw.cwiseSqrt().asDiagonal() * vw.transpose();
    out.w_half_inv = vw * dw.cwiseSqrt().cwiseInverse().asDiagonal() * vw.transpose();
    out.lambda = out.w_half * s * out.w_half;
    out.lambda = 0.5 * (out.lambda + out.lambda.transpose()).eval();
    return true;
}

bool nt_soc(const RVec& x, const RVec& s, SocScaling& out) {
    const int n = static_cast<int>(x.size());
    const double res_x = x(0) * x(0) - x.tail(n - 1).squaredNorm();
    const double res_s = s(0) * s(0) - s.tail(n - 1).squaredNorm();
    if (res_x <= 0.0 || res_s <= 0.0 || x(0) <= 0.0 || s(0) <= 0.0) return false;
    const double norm_x = std::sqrt(res_x);
    const double norm_s = std::sqrt(res_s);
    const RVec xb = x / norm_x;
    const RVec sb = s / norm_s;
    const double gamma = std::sqrt(0.5 * (1.0 + xb.dot(sb)));
    out.eta = std::sqrt(norm_x / norm_s);
    out.a = (xb(0) + sb(0)) / (2.0 * gamma);
    out.q = (xb.tail(n - 1) - sb.tail(n - 1)) / (2.0 * gamma);
    // lambda = V s
    out.lambda.resize(n);
    const double zeta = out.q.dot(s.tail(n - 1));
    out.lambda(0) = out.eta * (out.a * s(0) + zeta);
    out.lambda.tail(n - 1) =
        out.eta * (s.tail(n - 1) + (s(0) + zeta / (1.0 + out.a)) * out.q);
    return true;
}

// V z (positive power) or V^{-1} z for a SOC scaling
RVec soc_apply(const SocScaling& sc, const RVec& z, bool inverse) {
    const int n = static_cast<int>(z.size());
    const double sign = inverse ? -1.0 : 1.0;
    const double eta = inverse ? 1.0 / sc.eta : sc.eta;
    const double zeta = sign * sc.q.dot(z.tail(n - 1));
    RVec out(n);
    out(0) = eta * (sc.a * z(0) + zeta);
    out.tail(n - 1) =
        eta * (z.tail(n - 1) + sign * (z(0) + zeta / (1.0 + sc.a)) * sc.q);
    return out;
}

// Applies V^power per block to the concatenated vector (power in {-2,-1,1,2}).
RVec apply_scaling(const RealForm& rf, const Scalings& sc, const RVec& v,
                   int power) {
    RVec out(v.size());
    size_t psd_idx = 0, soc_idx = 0;
    for (const Block& blk : rf.blocks) {
        const auto seg = v.segment(blk.offset, blk.vec_dim);
        if (blk.kind == Block::Psd) {
            const PsdScaling& w = sc.psd[psd_idx++];
            const RMat m = smat(seg, blk.n);
            RMat r;
            switch (power) {
                case 1: r = w.w_half * m * w.w_half; break;
                case -1: r = w.w_half_inv * m * w.w_half_inv; break;
                case 2: {
                    const RMat wfull = w.w_half * w.w_half;
                    r = wfull * m * wfull;
                    break;
                }
                default: {
                    const RMat winv = w.w_half_inv * w.w_half_inv;
                    r = winv * m * winv;
                    break;
                }
            }
            r = 0.5 * (r + r.transpose()).eval();
            out.segment(blk.offset, blk.vec_dim) = svec(r);
        } else {
            const SocScaling& w = sc.soc[soc_idx++];
            RVec r;
            switch (power) {
                case 1: r = soc_apply(w, seg, false); break;
                case -1: r = soc_apply(w, seg, true); break;
                case 2: r = soc_apply(w, soc_apply(w, seg, false), false); break;
                default: r = soc_apply(w, soc_apply(w, seg, true), true); break;
            }
            out.segment(blk.offset, blk.vec_dim) = r;
        }
    }
    return out;
}

// Jordan product u o v per block.
RVec jordan_product(const RealForm& rf, const RVec& u, const RVec& v) {
    RVec out(u.size());
    for (const Block& blk : rf.blocks) {
        const auto us = u.segment(blk.offset, blk.vec_dim);
        const auto vs = v.segment(blk.offset, blk.vec_dim);
        if (blk.kind == Block::Psd) {
            const RMat um = smat(us, blk.n);
            const RMat vm = smat(vs, blk.n);
            const RMat prod = 0.5 * (um * vm + vm * um);
            out.segment(blk.offset, blk.vec_dim) = svec(prod);
        } else {
            const int n = blk.vec_dim;
            RVec r(n);
            r(0) = us.dot(vs);
            r.tail(n - 1) = us(0) * vs.tail(n - 1) + vs(0) * us.tail(n - 1);
            out.segment(blk.offset, blk.vec_dim) = r;
        }
    }
    return out;
}

// Solves L_lambda u = r (the Jordan multiplication operator).
RVec jordan_solve(const RealForm& rf, const Scalings& sc, const RVec& r) {
    RVec out(r.size());
    size_t psd_idx = 0, soc_idx = 0;
    for (const Block& blk : rf.blocks) {
        const auto seg = r.segment(blk.offset, blk.vec_dim);
        if (blk.kind == Block::Psd) {
            const PsdScaling& w = sc.psd[psd_idx++];
            RMat v;
            RVec dvals;
            sym_eig(w.lambda, v, dvals);
            const RMat rp = v.transpose() * smat(seg, blk.n) * v;
            RMat u(blk.n, blk.n);
            for (int i = 0; i < blk.n; ++i)
                for (int j = 0; j < blk.n; ++j)
                    u(i, j) = 2.0 * rp(i, j) / (dvals(i) + dvals(j));
            RMat full = v * u * v.transpose();
            full = 0.5 * (full + full.transpose()).eval();
            out.segment(blk.offset, blk.vec_dim) = svec(full);
        } else {
            const SocScaling& w = sc.soc[soc_idx++];
            const int n = blk.vec_dim;
            const RVec& lam = w.lambda;
            const double det = lam(0) * lam(0) - lam.tail(n - 1).squaredNorm();
            RVec u(n);
            u(0) = (lam(0) * seg(0) - lam.tail(n - 1).dot(seg.tail(n - 1))) / det;
            u.tail(n - 1) = (seg.tail(n - 1) - u(0) * lam.tail(n - 1)) / lam(0);
            out.segment(blk.offset, blk.vec_dim) = u;
        }
    }
    return out;
}

// Identity element of the cone algebra.
RVec identity_element(const RealForm& rf) {
    RVec e = RVec::Zero(rf.n_total);
    for (const Block& blk : rf.blocks) {
        if (blk.kind == Block::Psd) {
            e.segment(blk.offset, blk.vec_dim) = svec(RMat::Identity(blk.n, blk.n));
        } else {
            e(blk.offset) = 1.0;
        }
    }
    return e;
}

// Largest step alpha <= cap with v + alpha dv staying in the cone.
double step_to_boundary(const RealForm& rf, const RVec& v, const RVec& dv,
                        double cap) {
    double alpha = cap;
    for (const Block& blk : rf.blocks) {
        const auto vs = v.segment(blk.offset, blk.vec_dim);
        const auto ds = dv.segment(blk.offset, blk.vec_dim);
        if (blk.kind == Block::Psd) {
            const RMat x = smat(vs, blk.n);
            const RMat d = smat(ds, blk.n);
            Eigen::LLT<RMat> llt(x);
            if (llt.info() != Eigen::Success) return 0.0;
            const RMat l = llt.matrixL();
            const RMat inner = l.triangularView<Eigen::Lower>().solve(
                l.triangularView<Eigen::Lower>()
                    .solve(d)
                    .transpose()
                    .eval())
                                   .transpose();
            Eigen::SelfAdjointEigenSolver<RMat> es(
                0.5 * (inner + inner.transpose()), Eigen::EigenvaluesOnly);
            const double most_negative = es.eigenvalues().minCoeff();
            if (most_negative < 0.0) alpha = std::min(alpha, -1.0 / most_negative);
        } else {
            const int n = blk.vec_dim;
            const double a = ds(0) * ds(0) - ds.tail(n - 1).squaredNorm();
            const double b =
                2.0 * (vs(0) * ds(0) - vs.tail(n - 1).dot(ds.tail(n - 1)));
            const double c = vs(0) * vs(0) - vs.tail(n - 1).squaredNorm();
            // first root of a t^2 + b t + c = 0 along the direction
            double bound = std::numeric_limits<double>::infinity();
            const double disc = b * b - 4.0 * a * c;
            if (std::abs(a) < 1e-300) {
                if (b < 0.0) bound = -c / b;
            } else if (disc >= 0.0) {
                const double sq = std::sqrt(disc);
                // first positive crossing of the cone boundary
                const double r1 = (-b - sq) / (2.0 * a);
                if (r1 > 0.0) bound = r1;
            }
            if (ds(0) < 0.0) bound = std::min(bound, -vs(0) / ds(0));
            alpha = std::min(alpha, bound);
        }
    }
    return alpha;
}

struct StepResult {
    RVec dx, dy, ds;
    bool ok = false;
};

// Solves the scaled Newton system for a given complementarity target d:
//   A dx = rp,  A' dy + ds = rd,  V^{-1} dx + V ds = d
// One round of iterative refinement keeps the Schur solve usable when the
// scaling matrices are nearly singular close to the optimum.
StepResult newton_step(const RealForm& rf, const Scalings& sc,
                       const Eigen::LDLT<RMat>& schur, const RMat& schur_mat,
                       const RVec& rp, const RVec& rd, const RVec& d) {
    StepResult out;
    const RVec vd = apply_scaling(rf, sc, d, 1);
    const RVec v2rd = apply_scaling(rf, sc, rd, 2);
    const RVec rhs = rp - rf.a * vd + rf.a * v2rd;
    out.dy = schur.solve(rhs);
    for (int round = 0; round < 2; ++round) {
        const RVec residual = rhs - schur_mat * out.dy;
        if (residual.cwiseAbs().maxCoeff() <
            1e-14 * (1.0 + rhs.cwiseAbs().maxCoeff()))
            break;
        out.dy += schur.solve(residual);
    }
    out.ds = rd - rf.a.transpose() * out.dy;
    out.dx = vd - apply_scaling(rf, sc, out.ds, 2);
    out.ok = out.dy.allFinite() && out.ds.allFinite() && out.dx.allFinite();
    return out;
}

}  // namespace

SdpSolution solve_sdp(const SdpProblem& problem, const SolverOptions& options) {
    problem.validate();
    RealForm rf = build_real_form(problem);
    const int m = static_cast<int>(rf.b.size());
    const double sense_sign = problem.sense == Sense::Min ? 1.0 : -1.0;

    // row equilibration; the dual is rescaled on the way out
    RVec row_scale = RVec::Ones(m);
    for (int i = 0; i < m; ++i) {
        const double norm = rf.a.row(i).norm();
        if (norm > 1e-300) {
            row_scale(i) = 1.0 / norm;
            rf.a.row(i) *= row_scale(i);
            rf.b(i) *= row_scale(i);
        }
    }

    SdpSolution solution;
    solution.dual = RVec::Zero(m);

    auto finalize = [&](const RVec& x, const RVec& y, const RVec& s,
                        SolveStatus status, int iters) {
        solution.status = status;
        solution.iterations = iters;
        solution.dual = row_scale.asDiagonal() * y;
        solution.objective = sense_sign * rf.c.dot(x);
        solution.primal_residual =
            (rf.b - rf.a * x).cwiseAbs().maxCoeff() / (1.0 + rf.b.cwiseAbs().maxCoeff());
        solution.dual_residual = (rf.c - rf.a.transpose() * y - s).cwiseAbs().maxCoeff() /
                                 (1.0 + rf.c.cwiseAbs().maxCoeff());
        const double pobj = rf.c.dot(x);
        const double dobj = rf.b.dot(y);
        solution.relative_gap =
            std::abs(pobj - dobj) / (1.0 + std::abs(pobj) + std::abs(dobj));
        solution.psd.clear();
        solution.soc.clear();
        size_t psd_idx = 0;
        for (const Block& blk : rf.blocks) {
            if (blk.kind == Block::Psd) {
                const RMat xm = smat(RVec(x.segment(blk.offset, blk.vec_dim)), blk.n);
                if (blk.embedded)
                    solution.psd.push_back(extract_hermitian(xm, blk.complex_dim));
                else
                    solution.psd.push_back(xm.cast<cxd>());
                ++psd_idx;
            } else {
                solution.soc.push_back(x.segment(blk.offset, blk.vec_dim));
            }
        }
    };

    // interior start at a multiple of the cone identity
    const RVec e = identity_element(rf);
    const double init_scale =
        std::max({1.0, std::sqrt(rf.b.cwiseAbs().maxCoeff() + 1e-12),
                  std::sqrt(rf.c.cwiseAbs().maxCoeff() + 1e-12)});
    RVec x = init_scale * e;
    RVec s = init_scale * e;
    RVec y = RVec::Zero(m);

    if (m == 0) {
        // no constraints: the minimum over the cone of a linear functional
        finalize(RVec::Zero(rf.n_total), y, rf.c, SolveStatus::Optimal, 0);
        return solution;
    }

    double best_metric = std::numeric_limits<double>::infinity();
    RVec best_x = x, best_y = y, best_s = s;
    int stalled_iterations = 0;

    const double norm_b = 1.0 + rf.b.norm();
    const double norm_c = 1.0 + rf.c.norm();

    for (int iter = 0; iter < options.max_iterations; ++iter) {
        const RVec rp = rf.b - rf.a * x;
        const RVec rd = rf.c - rf.a.transpose() * y - s;
        const double mu = x.dot(s) / rf.nu;
        const double pinf = rp.norm() / norm_b;
        const double dinf = rd.norm() / norm_c;
        const double pobj = rf.c.dot(x);
        const double dobj = rf.b.dot(y);
        const double gap =
            std::abs(pobj - dobj) / (1.0 + std::abs(pobj) + std::abs(dobj));

        const double metric = pinf + dinf + gap;
        if (metric < 0.9 * best_metric) {
            stalled_iterations = 0;
        } else if (++stalled_iterations > 20) {
            break;  // no further progress to be had in double precision
        }
        if (metric < best_metric) {
            best_metric = metric;
            best_x = x;
            best_y = y;
            best_s = s;
        }
        if (options.verbose)
            std::fprintf(stderr,
                         "iter %3d  mu %.3e  pinf %.3e  dinf %.3e  gap %.3e\n",
                         iter, mu, pinf, dinf, gap);

        if (pinf < options.feas_tol && dinf < options.feas_tol &&
            (gap < options.gap_tol || mu < options.gap_tol * 1e-2)) {
            finalize(x, y, s, SolveStatus::Optimal, iter);
            return solution;
        }

        // infeasibility certificates carried by diverging iterates
        const double by = rf.b.dot(y);
        if (by > 1.0 && (rf.a.transpose() * y + s).norm() / by < 1e-9) {
            finalize(x, y, s, SolveStatus::Infeasible, iter);
            return solution;
        }
        const double cx = rf.c.dot(x);
        if (cx < -1.0 && (rf.a * x).norm() / (-cx) < 1e-9) {
            finalize(x, y, s, SolveStatus::Unbounded, iter);
            return solution;
        }

        Scalings sc;
        bool scaling_ok = true;
        {
            size_t psd_count = 0, soc_count = 0;
            for (const Block& blk : rf.blocks)
                (blk.kind == Block::Psd ? psd_count : soc_count) += 1;
            sc.psd.resize(psd_count);
            sc.soc.resize(soc_count);
            size_t pi = 0, si = 0;
            for (const Block& blk : rf.blocks) {
                if (blk.kind == Block::Psd) {
                    scaling_ok = scaling_ok &&
                                 nt_psd(smat(RVec(x.segment(blk.offset, blk.vec_dim)),
                                             blk.n),
                                        smat(RVec(s.segment(blk.offset, blk.vec_dim)),
                                             blk.n),
                                        sc.psd[pi++]);
                } else {
                    scaling_ok = scaling_ok &&
                                 nt_soc(x.segment(blk.offset, blk.vec_dim),
                                        s.segment(blk.offset, blk.vec_dim),
                                        sc.soc[si++]);
                }
                if (!scaling_ok) break;
            }
        }
        if (!scaling_ok) break;

        // Schur complement M = A V^2 A'
        RMat a_scaled(m, rf.n_total);
        for (int i = 0; i < m; ++i)
            a_scaled.row(i) =
                apply_scaling(rf, sc, rf.a.row(i).transpose(), 1).transpose();
        RMat schur_mat = a_scaled * a_scaled.transpose();
        Eigen::LDLT<RMat> schur(schur_mat);
        if (schur.info() != Eigen::Success ||
            schur.vectorD().minCoeff() < 1e-14 * schur_mat.trace() / m) {
            const double ridge =
                std::max(1e-13, 1e-12 * schur_mat.trace() / m);
            schur_mat += ridge * RMat::Identity(m, m);
            schur.compute(schur_mat);
            if (schur.info() != Eigen::Success) break;
        }

        // scaled complementarity point
        RVec lambda(rf.n_total);
        {
            size_t pi = 0, si = 0;
            for (const Block& blk : rf.blocks) {
                if (blk.kind == Block::Psd)
                    lambda.segment(blk.offset, blk.vec_dim) = svec(sc.psd[pi++].lambda);
                else
                    lambda.segment(blk.offset, blk.vec_dim) = sc.soc[si++].lambda;
            }
        }

        // predictor
        StepResult aff = newton_step(rf, sc, schur, schur_mat, rp, rd,
                                     RVec(-lambda));
        if (!aff.ok) break;
        const double alpha_aff =
            std::min(step_to_boundary(rf, x, aff.dx, 1.0),
                     step_to_boundary(rf, s, aff.ds, 1.0));
        const double mu_aff =
            (x + alpha_aff * aff.dx).dot(s + alpha_aff * aff.ds) / rf.nu;
        double sigma = std::pow(std::max(0.0, mu_aff / mu), 3.0);
        sigma = std::min(1.0, std::max(1e-8, sigma));

        // corrector
        const RVec u_aff = apply_scaling(rf, sc, aff.dx, -1);
        const RVec v_aff = apply_scaling(rf, sc, aff.ds, 1);
        RVec target = sigma * mu * e - jordan_product(rf, lambda, lambda) -
                      jordan_product(rf, u_aff, v_aff);
        const RVec d = jordan_solve(rf, sc, target);
        StepResult step = newton_step(rf, sc, schur, schur_mat, rp, rd, d);
        if (!step.ok) break;

        // a common step length keeps the residuals and the complementarity
        // measure shrinking together
        const double tau = 0.98;
        const double alpha =
            std::min({tau * step_to_boundary(rf, x, step.dx, 1.0 / tau),
                      tau * step_to_boundary(rf, s, step.ds, 1.0 / tau), 1.0});
        if (alpha < 1e-10) break;

        x += alpha * step.dx;
        y += alpha * step.dy;
        s += alpha * step.ds;
        solution.iterations = iter + 1;
    }

    finalize(best_x, best_y, best_s, SolveStatus::NumericalFailure,
             solution.iterations);
    return solution;
}

Certificate certify(const SdpSolution& solution, const SdpProblem& problem,
                    double tolerance) {
    Certificate cert;
    if (solution.status != SolveStatus::Optimal) {
        cert.ok = false;
        return cert;
    }
    problem.validate();
    const double sign = problem.sense == Sense::Min ? 1.0 : -1.0;
    const size_t n_psd = problem.psd_dims.size();
    const size_t n_soc = problem.soc_dims.size();

    double pobj = 0.0;
    for (size_t j = 0; j < n_psd; ++j)
        if (problem.objective_psd[j].size() != 0)
            pobj += (problem.objective_psd[j].adjoint() * solution.psd[j])
                        .trace()
                        .real();
    for (size_t k = 0; k < n_soc; ++k)
        if (problem.objective_soc[k].size() != 0)
            pobj += problem.objective_soc[k].dot(solution.soc[k]);

    double prim = 0.0;
    double weighted_residual = 0.0;
    for (size_t i = 0; i < problem.constraints.size(); ++i) {
        const auto& con = problem.constraints[i];
        double lhs = 0.0;
        for (size_t j = 0; j < n_psd; ++j)
            if (con.psd[j].size() != 0)
                lhs += (con.psd[j].adjoint() * solution.psd[j]).trace().real();
        for (size_t k = 0; k < n_soc; ++k)
            if (con.soc[k].size() != 0) lhs += con.soc[k].dot(solution.soc[k]);
        prim = std::max(prim, std::abs(lhs - con.rhs) / (1.0 + std::abs(con.rhs)));
        weighted_residual += std::abs(solution.dual(i) * (lhs - con.rhs));
    }
    cert.primal_residual = prim;

    // dual slack from scratch: C - sum_i y_i A_i must lie in the dual cone
    double dual_violation = 0.0;
    for (size_t j = 0; j < n_psd; ++j) {
        Mat slack = problem.objective_psd[j].size() != 0
                        ? Mat(sign * problem.objective_psd[j])
                        : Mat(Mat::Zero(problem.psd_dims[j], problem.psd_dims[j]));
        for (size_t i = 0; i < problem.constraints.size(); ++i)
            if (problem.constraints[i].psd[j].size() != 0)
                slack -= solution.dual(i) * problem.constraints[i].psd[j];
        Eigen::SelfAdjointEigenSolver<Mat> es(slack, Eigen::EigenvaluesOnly);
        dual_violation = std::max(dual_violation, -es.eigenvalues().minCoeff());
    }
    for (size_t k = 0; k < n_soc; ++k) {
        RVec slack = problem.objective_soc[k].size() != 0
                         ? RVec(sign * problem.objective_soc[k])
                         : RVec(RVec::Zero(problem.soc_dims[k]));
        for (size_t i = 0; i < problem.constraints.size(); ++i)
            if (problem.constraints[i].soc[k].size() != 0)
                slack -= solution.dual(i) * problem.constraints[i].soc[k];
        dual_violation = std::max(
            dual_violation,
            slack.tail(slack.size() - 1).norm() - slack(0));
    }
    cert.dual_residual = std::max(0.0, dual_violation);

    const double dobj = [&] {
        double v = 0.0;
        for (size_t i = 0; i < problem.constraints.size(); ++i)
            v += solution.dual(i) * problem.constraints[i].rhs;
        return v;
    }();
    const double pobj_minsense = sign * pobj;
    cert.relative_gap = std::abs(pobj_minsense - dobj) /
                        (1.0 + std::abs(pobj_minsense) + std::abs(dobj));

    double min_eig = std::numeric_limits<double>::infinity();
    for (size_t j = 0; j < n_psd; ++j) {
        Eigen::SelfAdjointEigenSolver<Mat> es(solution.psd[j],
                                              Eigen::EigenvaluesOnly);
        min_eig = std::min(min_eig, es.eigenvalues().minCoeff());
    }
    cert.min_psd_eigenvalue = n_psd > 0 ? min_eig : 0.0;

    double soc_margin = std::numeric_limits<double>::infinity();
    for (size_t k = 0; k < n_soc; ++k) {
        const RVec& u = solution.soc[k];
        soc_margin = std::min(soc_margin, u(0) - u.tail(u.size() - 1).norm());
    }
    cert.min_soc_margin = n_soc > 0 ? soc_margin : 0.0;

    double primal_scale = 0.0;
    for (size_t j = 0; j < n_psd; ++j)
        primal_scale += std::abs(solution.psd[j].trace().real());
    for (size_t k = 0; k < n_soc; ++k) primal_scale += std::abs(solution.soc[k](0));
    cert.suboptimality_bound =
        std::abs(pobj_minsense - dobj) + weighted_residual +
        primal_scale * cert.dual_residual;

    cert.ok = cert.primal_residual < tolerance &&
              cert.dual_residual < tolerance && cert.relative_gap < tolerance &&
              cert.min_psd_eigenvalue > -1e-8 &&
              (n_soc == 0 || cert.min_soc_margin > -1e-8);
    return cert;
}

}  // namespace quditlab::sdp
