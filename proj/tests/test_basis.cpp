#include <doctest.h>

#include "quditlab/basis.hpp"
#include "quditlab/json_io.hpp"
#include "quditlab/random.hpp"

using namespace quditlab;

namespace {

void check_basis_invariants(const MeasurementBasis& basis) {
    Mat sum = Mat::Zero(basis.dim(), basis.dim());
    for (int k = 0; k < basis.outcomes(); ++k) {
        const Mat& p = basis.projector(k);
        CHECK((p - p.adjoint()).cwiseAbs().maxCoeff() < 1e-10);
        CHECK((p * p - p).cwiseAbs().maxCoeff() < 1e-10);
        for (int j = 0; j < k; ++j)
            CHECK((p * basis.projector(j)).cwiseAbs().maxCoeff() < 1e-10);
        sum += p;
    }
    CHECK((sum - Mat::Identity(basis.dim(), basis.dim())).cwiseAbs().maxCoeff() <
          1e-10);
}

}  // namespace

TEST_CASE("single Z gives the computational basis in +1, -1 order") {
    const auto basis = common_eigenbasis({pauli_z()});
    check_basis_invariants(basis);
    CHECK(basis.outcomes() == 2);
    CHECK(std::abs(basis.projector(0)(0, 0) - 1.0) < 1e-12);
    CHECK(std::abs(basis.projector(1)(1, 1) - 1.0) < 1e-12);
    CHECK(basis.eigenvalue_tuples()[0][0] == doctest::Approx(1.0));
    CHECK(basis.eigenvalue_tuples()[1][0] == doctest::Approx(-1.0));
}

TEST_CASE("ZZ and XX share the Bell basis") {
    const auto basis = common_eigenbasis({pauli_string("ZZ"), pauli_string("XX")});
    check_basis_invariants(basis);
    CHECK(basis.outcomes() == 4);
    const Mat zz = pauli_string("ZZ");
    const Mat xx = pauli_string("XX");
    for (int k = 0; k < 4; ++k) {
        const Vec v = basis.vector(k);
        const auto tuple = basis.eigenvalue_tuples()[k];
        CHECK((zz * v - tuple[0] * v).norm() < 1e-10);
        CHECK((xx * v - tuple[1] * v).norm() < 1e-10);
        CHECK(std::abs(std::abs(tuple[0]) - 1.0) < 1e-10);
        CHECK(std::abs(std::abs(tuple[1]) - 1.0) < 1e-10);
    }
}

TEST_CASE("the four three-qubit line operators share an eight-element basis") {
    const std::vector<Mat> ops = {pauli_string("ZZZ"), pauli_string("ZXX"),
                                  pauli_string("XZX"), pauli_string("XXZ")};
    const auto basis = common_eigenbasis(ops);
    check_basis_invariants(basis);
    CHECK(basis.outcomes() == 8);
    for (int k = 0; k < 8; ++k) {
        const auto tuple = basis.eigenvalue_tuples()[k];
        double product = 1.0;
        for (double lambda : tuple) {
            CHECK(std::abs(std::abs(lambda) - 1.0) < 1e-9);
            product *= lambda;
        }
        CHECK(product == doctest::Approx(-1.0).epsilon(1e-9));
        const Vec v = basis.vector(k);
        for (size_t i = 0; i < ops.size(); ++i)
            CHECK((ops[i] * v - tuple[i] * v).norm() < 1e-9);
    }
}

TEST_CASE("non-commuting operators are rejected") {
    CHECK_THROWS_AS(common_eigenbasis({pauli_x(), pauli_z()}), NotCommuting);
}

TEST_CASE("random commuting families built as U diag U^dag diagonalize") {
    Rng rng(99);
    for (int trial = 0; trial < 100; ++trial) {
        const int d = 2 + static_cast<int>(rng.raw() % 5);
        const Mat u = random_unitary(d, rng);
        std::vector<Mat> ops;
        const int count = 1 + static_cast<int>(rng.raw() % 3);
        for (int i = 0; i < count; ++i) {
            Eigen::VectorXd diag(d);
            for (int k = 0; k < d; ++k)
                diag(k) = std::round(rng.gaussian() * 2.0);  // degeneracies likely
            ops.push_back(u * diag.cast<cxd>().asDiagonal() * u.adjoint());
        }
        const auto basis = common_eigenbasis(ops);
        check_basis_invariants(basis);
        for (int k = 0; k < basis.outcomes(); ++k) {
            const Vec v = basis.vector(k);
            for (const Mat& o : ops) {
                const cxd lambda = (v.adjoint() * o * v)(0, 0);
                CHECK((o * v - lambda * v).norm() < 1e-8);
            }
        }
    }
}

TEST_CASE("phase convention: first nonzero amplitude is real positive") {
    Rng rng(123);
    const Mat u = random_unitary(4, rng);
    Eigen::VectorXd diag(4);
    diag << 3.0, 2.0, 1.0, 0.0;
    const auto basis =
        common_eigenbasis({u * diag.cast<cxd>().asDiagonal() * u.adjoint()});
    for (int k = 0; k < basis.outcomes(); ++k) {
        const Vec v = basis.vector(k);
        for (int i = 0; i < v.size(); ++i) {
            if (std::abs(v(i)) > 1e-9) {
                CHECK(v(i).imag() == doctest::Approx(0.0).epsilon(1e-10));
                CHECK(v(i).real() > 0.0);
                break;
            }
        }
    }
}

TEST_CASE("fourier basis is mutually unbiased with the computational one") {
    for (int d : {2, 3, 4, 5}) {
        const auto fourier = fourier_basis(d);
        check_basis_invariants(fourier);
        const auto computational = computational_basis(d);
        for (int l = 0; l < d; ++l)
            for (int k = 0; k < d; ++k) {
                const double overlap =
                    (computational.projector(k) * fourier.projector(l))
                        .trace()
                        .real();
                CHECK(overlap == doctest::Approx(1.0 / d).epsilon(1e-10));
            }
    }
}

TEST_CASE("basis JSON round trip") {
    const auto basis = fourier_basis(3);
    const auto back = io::basis_from_json(io::to_json(basis));
    for (int k = 0; k < 3; ++k)
        CHECK((back.projector(k) - basis.projector(k)).cwiseAbs().maxCoeff() <
              1e-12);
}
