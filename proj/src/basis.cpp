#include "quditlab/basis.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace quditlab {

namespace {

void validate_projectors(const std::vector<Mat>& projectors) {
    if (projectors.empty()) throw InvalidState("basis needs at least one projector");
    const Eigen::Index d = projectors.front().rows();
    Mat sum = Mat::Zero(d, d);
    const double tol_op = 1e-10;
    for (size_t i = 0; i < projectors.size(); ++i) {
        const Mat& p = projectors[i];
        if (p.rows() != d || p.cols() != d)
            throw InvalidState("projector dimensions are inconsistent");
        if ((p - p.adjoint()).cwiseAbs().maxCoeff() > tol_op)
            throw InvalidState("projector is not Hermitian");
        if ((p * p - p).cwiseAbs().maxCoeff() > tol_op)
            throw InvalidState("projector is not idempotent");
        for (size_t j = 0; j < i; ++j)
            if ((p * projectors[j]).cwiseAbs().maxCoeff() > tol_op)
                throw InvalidState("projectors are not mutually orthogonal");
        sum += p;
    }
    if ((sum - Mat::Identity(d, d)).cwiseAbs().maxCoeff() > tol_op)
        throw InvalidState("projectors do not resolve the identity");
}

Vec phase_fixed(Vec v) {
    for (Eigen::Index i = 0; i < v.size(); ++i) {
        if (std::abs(v(i)) > 1e-9) {
            v *= std::conj(v(i)) / std::abs(v(i));
            break;
        }
    }
    return v;
}

}  // namespace

MeasurementBasis::MeasurementBasis(std::vector<Mat> projectors) {
    validate_projectors(projectors);
    projectors_ = std::move(projectors);
    dim_ = static_cast<int>(projectors_.front().rows());
}

MeasurementBasis MeasurementBasis::from_vectors(const Mat& columns) {
    std::vector<Mat> projs;
    projs.reserve(columns.cols());
    for (Eigen::Index c = 0; c < columns.cols(); ++c) {
        Vec v = columns.col(c);
        projs.push_back(v * v.adjoint());
    }
    return MeasurementBasis(std::move(projs));
}

MeasurementBasis MeasurementBasis::unchecked(std::vector<Mat> projectors) {
    MeasurementBasis b;
    b.projectors_ = std::move(projectors);
    b.dim_ = b.projectors_.empty() ? 0 : static_cast<int>(b.projectors_.front().rows());
    return b;
}

Vec MeasurementBasis::vector(int outcome) const {
    const Mat& p = projectors_.at(outcome);
    Eigen::SelfAdjointEigenSolver<Mat> es(p);
    // largest eigenvalue of a rank-one projector is 1
    Vec v = es.eigenvectors().col(p.rows() - 1);
    return phase_fixed(std::move(v));
}

MeasurementBasis computational_basis(int d) {
    if (d < 1) throw InvalidDimension("dimension must be >= 1");
    std::vector<Mat> projs;
    projs.reserve(d);
    for (int k = 0; k < d; ++k) {
        Mat p = Mat::Zero(d, d);
        p(k, k) = 1.0;
        projs.push_back(std::move(p));
    }
    return MeasurementBasis(std::move(projs));
}

MeasurementBasis fourier_basis(int d, bool negate_index) {
    if (d < 1) throw InvalidDimension("dimension must be >= 1");
    std::vector<Mat> projs;
    projs.reserve(d);
    for (int l = 0; l < d; ++l) {
        const int index = negate_index ? (d - l) % d : l;
        const Vec v = fourier_state(d, index).amplitudes();
        projs.push_back(v * v.adjoint());
    }
    return MeasurementBasis(std::move(projs));
}

MeasurementBasis common_eigenbasis(const std::vector<Mat>& ops) {
    if (ops.empty()) throw InvalidInput("need at least one operator");
    const Eigen::Index d = ops.front().rows();
    for (const Mat& o : ops) {
        if (o.rows() != d || o.cols() != d)
            throw DimMismatch("operators have inconsistent dimensions");
        if ((o - o.adjoint()).cwiseAbs().maxCoeff() > 1e-9)
            throw InvalidInput("operator is not Hermitian");
    }
    for (size_t i = 0; i < ops.size(); ++i)
        for (size_t j = i + 1; j < ops.size(); ++j) {
            const Mat comm = ops[i] * ops[j] - ops[j] * ops[i];
            const double scale =
                std::max(1.0, ops[i].cwiseAbs().maxCoeff() * ops[j].cwiseAbs().maxCoeff());
            if (comm.cwiseAbs().maxCoeff() > 1e-9 * scale)
                throw NotCommuting("operators do not commute");
        }

    // First pass: a fixed random real combination separates the joint
    // eigenspaces almost surely.
    std::mt19937_64 rng(0x9e3779b97f4a7c15ULL);
    std::uniform_real_distribution<double> unif(0.5, 1.5);
    Mat combo = Mat::Zero(d, d);
    for (const Mat& o : ops) combo += unif(rng) * o;
    Eigen::SelfAdjointEigenSolver<Mat> es(combo);
    const Mat& vectors = es.eigenvectors();
    const Eigen::VectorXd& values = es.eigenvalues();

    // Cluster the combination spectrum into candidate subspaces.
    std::vector<Mat> subspaces;
    {
        Eigen::Index start = 0;
        const double cluster = tol().eigen_cluster * std::max(1.0, values.cwiseAbs().maxCoeff());
        for (Eigen::Index i = 1; i <= d; ++i) {
            if (i == d || values(i) - values(i - 1) > cluster) {
                subspaces.push_back(vectors.middleCols(start, i - start));
                start = i;
            }
        }
    }

    // Second pass: refine each subspace per operator so accidental
    // collisions of the combination cannot merge distinct joint eigenspaces.
    for (const Mat& o : ops) {
        std::vector<Mat> refined;
        for (const Mat& q : subspaces) {
            if (q.cols() == 1) {
                refined.push_back(q);
                continue;
            }
            const Mat restricted = q.adjoint() * o * q;
            Eigen::SelfAdjointEigenSolver<Mat> sub(restricted);
            const Eigen::VectorXd& sv = sub.eigenvalues();
            const double cluster =
                tol().eigen_cluster * std::max(1.0, sv.cwiseAbs().maxCoeff());
            Eigen::Index start = 0;
            for (Eigen::Index i = 1; i <= sv.size(); ++i) {
                if (i == sv.size() || sv(i) - sv(i - 1) > cluster) {
                    refined.push_back(q * sub.eigenvectors().middleCols(start, i - start));
                    start = i;
                }
            }
        }
        subspaces = std::move(refined);
    }

    struct Entry {
        Vec vector;
        std::vector<double> tuple;
    };
    std::vector<Entry> entries;
    entries.reserve(d);
    for (const Mat& q : subspaces) {
        // Deterministic orthonormal basis inside a degenerate subspace:
        // Gram-Schmidt on projected computational vectors.
        std::vector<Vec> basis;
        const Mat proj = q * q.adjoint();
        for (Eigen::Index j = 0; j < d && basis.size() < size_t(q.cols()); ++j) {
            Vec cand = proj.col(j);
            for (const Vec& b : basis) cand -= (b.dot(cand)) * b;
            const double n = cand.norm();
            if (n > 1e-7) basis.push_back(cand / n);
        }
        for (Vec& v : basis) {
            Entry e;
            e.vector = phase_fixed(std::move(v));
            for (const Mat& o : ops) {
                const cxd lambda = e.vector.adjoint() * o * e.vector;
                e.tuple.push_back(lambda.real());
            }
            entries.push_back(std::move(e));
        }
    }
    if (entries.size() != size_t(d))
        throw NumericalFailure("eigenbasis construction lost rank");

    std::sort(entries.begin(), entries.end(), [](const Entry& a, const Entry& b) {
        for (size_t i = 0; i < a.tuple.size(); ++i) {
            if (std::abs(a.tuple[i] - b.tuple[i]) > 1e-7) return a.tuple[i] > b.tuple[i];
        }
        return false;
    });

    std::vector<Mat> projs;
    projs.reserve(entries.size());
    std::vector<std::vector<double>> tuples;
    for (const Entry& e : entries) {
        projs.push_back(e.vector * e.vector.adjoint());
        tuples.push_back(e.tuple);
    }
    MeasurementBasis out(std::move(projs));
    out.tuples_ = std::move(tuples);
    return out;
}

Mat pauli_x() {
    Mat m(2, 2);
    m << 0, 1, 1, 0;
    return m;
}

Mat pauli_y() {
    Mat m(2, 2);
    m << cxd(0, 0), cxd(0, -1), cxd(0, 1), cxd(0, 0);
    return m;
}

Mat pauli_z() {
    Mat m(2, 2);
    m << 1, 0, 0, -1;
    return m;
}

Mat pauli_string(const std::string& ops) {
    if (ops.empty()) throw InvalidInput("empty operator string");
    Mat out = Mat::Identity(1, 1);
    for (char c : ops) {
        Mat factor;
        switch (c) {
            case 'I': factor = Mat::Identity(2, 2); break;
            case 'X': factor = pauli_x(); break;
            case 'Y': factor = pauli_y(); break;
            case 'Z': factor = pauli_z(); break;
            default: throw InvalidInput("operator string may contain only IXYZ");
        }
        out = kron(out, factor);
    }
    return out;
}

}  // namespace quditlab
