#include <doctest.h>

#include <cmath>

#include "quditlab/correlations.hpp"
#include "quditlab/random.hpp"
#include "quditlab/steering.hpp"

using namespace quditlab;
using namespace quditlab::steering;

namespace {

DensityMatrix random_separable(int d, Rng& rng) {
    const int terms = 1 + static_cast<int>(rng.raw() % 4);
    Mat rho = Mat::Zero(d * d, d * d);
    double total = 0.0;
    std::vector<double> weights(terms);
    for (int t = 0; t < terms; ++t) {
        weights[t] = rng.uniform() + 1e-6;
        total += weights[t];
    }
    for (int t = 0; t < terms; ++t) {
        const auto a = haar_random_state(d, rng);
        const auto b = haar_random_state(d, rng);
        rho += (weights[t] / total) * kron(a.projector(), b.projector());
    }
    return DensityMatrix(rho);
}

}  // namespace

TEST_CASE("characterized bases are mutually unbiased") {
    for (int d : {2, 3, 4, 7}) {
        const auto bases = steering_bases(d);
        REQUIRE(bases.size() == 2);
        for (int k = 0; k < d; ++k)
            for (int l = 0; l < d; ++l) {
                const double overlap =
                    (bases[0].projector(k) * bases[1].projector(l)).trace().real();
                CHECK(overlap == doctest::Approx(1.0 / d).epsilon(1e-10));
            }
    }
}

TEST_CASE("two-dimensional second setting is the +/- basis") {
    const auto bases = steering_bases(2);
    Mat plus(2, 2);
    plus.setConstant(0.5);
    CHECK((bases[1].projector(0) - plus).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("second-setting projectors follow the negated-index formula") {
    const int d = 4;
    const auto bases = steering_bases(d);
    for (int l = 0; l < d; ++l) {
        const Vec v = fourier_state(d, (d - l) % d).amplitudes();
        CHECK((bases[1].projector(l) - v * v.adjoint()).cwiseAbs().maxCoeff() <
              1e-12);
    }
}

TEST_CASE("steered assemblage of the maximally entangled state") {
    const int d = 3;
    const auto rho = DensityMatrix::from_pure(max_entangled_state(d));
    const auto assemblage =
        steered_assemblage(rho, {computational_basis(d), fourier_basis(d)});
    for (int a = 0; a < d; ++a) {
        Mat expected = Mat::Zero(d, d);
        expected(a, a) = 1.0 / d;
        CHECK((assemblage.sigma(a, 0) - expected).cwiseAbs().maxCoeff() < 1e-12);
    }
}

TEST_CASE("product states steer into proportional blocks") {
    Rng rng(5);
    const int d = 3;
    const auto a = haar_random_state(d, rng);
    const auto b = haar_random_state(d, rng);
    const auto rho = DensityMatrix(kron(a.projector(), b.projector()));
    const auto assemblage = steered_assemblage(rho, steering_alice_bases(d));
    for (int x = 0; x < 2; ++x)
        for (int outcome = 0; outcome < d; ++outcome) {
            const Mat& sigma = assemblage.sigma(outcome, x);
            const double weight = sigma.trace().real();
            if (weight < 1e-12) continue;
            CHECK((sigma / weight - b.projector()).cwiseAbs().maxCoeff() < 1e-10);
        }
}

TEST_CASE("assemblages interpolate linearly in the visibility") {
    const int d = 2;
    const auto pure = DensityMatrix::from_pure(max_entangled_state(d));
    const auto alice = steering_alice_bases(d);
    const double v = 0.9;
    const auto mixed = steered_assemblage(werner_mix(pure, v), alice);
    const auto top = steered_assemblage(pure, alice);
    const auto flat = steered_assemblage(DensityMatrix::maximally_mixed(d * d), alice);
    for (int x = 0; x < 2; ++x)
        for (int a = 0; a < d; ++a) {
            const Mat expected =
                v * top.sigma(a, x) + (1.0 - v) * flat.sigma(a, x);
            CHECK((mixed.sigma(a, x) - expected).cwiseAbs().maxCoeff() < 1e-12);
        }
}

TEST_CASE("ideal states reach the algebraic maximum for every dimension") {
    for (int d = 2; d <= 15; ++d) {
        const auto rho = DensityMatrix::from_pure(max_entangled_state(d));
        const auto assemblage = steered_assemblage(rho, steering_alice_bases(d));
        const auto result = steering_value(assemblage);
        CHECK(std::abs(result.beta - 2.0) < 1e-9);
        CHECK(result.lhs_bound == doctest::Approx(1.0 + 1.0 / std::sqrt(d)));
        CHECK(result.quantum_max == 2.0);
    }
}

TEST_CASE("published hidden-state bounds match the closed form") {
    const double published[] = {1.707, 1.5, 1.408, 1.354, 1.316, 1.289, 1.267,
                                1.258};
    const int dims[] = {2, 4, 6, 8, 10, 12, 14, 15};
    for (int i = 0; i < 8; ++i)
        CHECK(std::abs(lhs_bound(dims[i]) - published[i]) < 5e-4);
}

TEST_CASE("the maximally mixed state scores 2/d") {
    for (int d : {2, 3, 4}) {
        const auto assemblage = steered_assemblage(
            DensityMatrix::maximally_mixed(d * d), steering_alice_bases(d));
        const auto result = steering_value(assemblage);
        CHECK(result.beta == doctest::Approx(2.0 / d).epsilon(1e-10));
        CHECK(result.beta < result.lhs_bound);
    }
}

TEST_CASE("beta is monotone in the mixing parameter") {
    const int d = 3;
    const auto pure = DensityMatrix::from_pure(max_entangled_state(d));
    double previous = 0.0;
    for (double v : {0.0, 0.25, 0.5, 0.75, 1.0}) {
        const auto assemblage =
            steered_assemblage(werner_mix(pure, v), steering_alice_bases(d));
        const double beta = steering_value(assemblage).beta;
        CHECK(beta >= previous - 1e-12);
        previous = beta;
    }
}

TEST_CASE("separable states never violate the hidden-state bound") {
    Rng rng(19);
    std::vector<DensityMatrix> states;
    for (int trial = 0; trial < 2000; ++trial) states.push_back(random_separable(2, rng));
    const auto report = lhs_bound_check(states);
    CHECK(report.violations == 0);
    CHECK(report.max_beta <= 1.7071 + 1e-9);

    std::vector<DensityMatrix> qutrits;
    for (int trial = 0; trial < 200; ++trial) qutrits.push_back(random_separable(3, rng));
    CHECK(lhs_bound_check(qutrits).violations == 0);
}

TEST_CASE("a computational product state evaluates in closed form") {
    const int d = 3;
    Vec e0 = Vec::Zero(d);
    e0(0) = 1.0;
    const auto rho = DensityMatrix(
        kron(PureState(e0).projector(), PureState(e0).projector()));
    const auto assemblage = steered_assemblage(rho, steering_alice_bases(d));
    const auto result = steering_value(assemblage);
    CHECK(result.beta == doctest::Approx(1.0 + 1.0 / d).epsilon(1e-10));
    CHECK(result.beta <= result.lhs_bound + 1e-12);
}

TEST_CASE("signaling assemblages are rejected") {
    const int d = 2;
    std::vector<std::vector<Mat>> sigma(2);
    Mat p0 = Mat::Zero(d, d);
    p0(0, 0) = 1.0;
    Mat p1 = Mat::Zero(d, d);
    p1(1, 1) = 1.0;
    sigma[0] = {0.5 * p0, 0.5 * p1};
    sigma[1] = {0.9 * p0, 0.1 * p1};  // different reduced state
    CHECK_THROWS_AS(Assemblage(d, std::move(sigma)), InvalidTable);
}

TEST_CASE("guessing probability at the ideal point yields full randomness") {
    const auto result = local_randomness(2, 2.0);
    CHECK(result.guessing_probability == doctest::Approx(0.5).epsilon(1e-3));
    CHECK(result.min_entropy_bits == doctest::Approx(1.0).epsilon(0.01));
    CHECK(result.certificate.primal_residual < 1e-6);
    CHECK(result.certificate.dual_residual < 1e-6);
    CHECK(result.certificate.relative_gap < 1e-6);
}

TEST_CASE("qutrit randomness at the ideal point reaches log2(3) bits") {
    const auto result = local_randomness(3, 2.0);
    CHECK(result.min_entropy_bits ==
          doctest::Approx(std::log2(3.0)).epsilon(0.02 / std::log2(3.0)));
}

TEST_CASE("no randomness survives at the hidden-state bound") {
    for (int d : {2, 3}) {
        const auto result = local_randomness(d, lhs_bound(d));
        CHECK(result.min_entropy_bits == doctest::Approx(0.0).epsilon(0.02));
        CHECK(result.guessing_probability > 0.98);
    }
}

TEST_CASE("certified entropy grows monotonically with the violation") {
    for (int d : {2, 3}) {
        double previous = -1e-9;
        const double lo = lhs_bound(d);
        for (int i = 0; i < 10; ++i) {
            const double beta = lo + (2.0 - lo) * i / 9.0;
            const auto result = local_randomness(d, beta);
            CHECK(result.min_entropy_bits >= previous - 2e-3);
            previous = result.min_entropy_bits;
            CHECK(result.guessing_probability >= 1.0 / d - 1e-6);
        }
    }
}

TEST_CASE("entropy lower-bounds the mixture of extremal strategies") {
    // Eve can mix the hidden-state model (guess always right) with the
    // honest quantum strategy (uniform guessing), so the guessing
    // probability must dominate the straight line between the endpoints
    const int d = 2;
    const double lo = lhs_bound(d);
    for (double lambda : {0.2, 0.5, 0.8}) {
        const double beta = lambda * lo + (1.0 - lambda) * 2.0;
        const double mixture_guess = lambda * 1.0 + (1.0 - lambda) / d;
        const auto result = local_randomness(d, beta);
        CHECK(result.guessing_probability >= mixture_guess - 1e-5);
    }
}

TEST_CASE("observed values beyond the quantum maximum are rejected") {
    CHECK_THROWS_AS(local_randomness(2, 2.5), Infeasible);
    CHECK_THROWS_AS(local_randomness(7, 1.9), InvalidInput);  // size guard
}

TEST_CASE("measured tables reproduce the steering value as a statistic") {
    const int d = 4;
    const auto rho = DensityMatrix::from_pure(max_entangled_state(d));
    const auto table = corr::born_probabilities(rho, steering_alice_bases(d),
                                                steering_bases(d));
    const auto exact = steering_value(table);
    CHECK(exact.beta == doctest::Approx(2.0).epsilon(1e-10));
    CHECK(exact.lhs_bound == doctest::Approx(1.5).epsilon(1e-12));
    CHECK_FALSE(exact.std.has_value());

    const auto sampled = corr::sample_counts(table, 20000, circuit::NoiseModel{}, 8);
    const auto measured = steering_value(sampled);
    CHECK(measured.beta == doctest::Approx(2.0).epsilon(0.05));
    REQUIRE(measured.std.has_value());
    CHECK(*measured.std > 0.0);
    CHECK(*measured.std < 0.05);

    corr::CorrelationTable wrong(3, 1, 1);
    CHECK_THROWS_AS(steering_value(wrong), InvalidTable);
}
