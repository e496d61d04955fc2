#include <doctest.h>

#include "quditlab/circuit.hpp"
#include "quditlab/random.hpp"

using namespace quditlab;
using namespace quditlab::circuit;

TEST_CASE("component matrices are unitary and compose") {
    for (double phase : {0.0, 0.7, M_PI, 4.2}) {
        const Mat ps = phase_shifter(phase);
        CHECK((ps * ps.adjoint() - Mat::Identity(2, 2)).cwiseAbs().maxCoeff() <
              1e-12);
        const Mat mzi = mzi_matrix(phase);
        CHECK((mzi * mzi.adjoint() - Mat::Identity(2, 2)).cwiseAbs().maxCoeff() <
              1e-12);
        const Mat composed = beam_splitter() * phase_shifter(phase) * beam_splitter();
        CHECK((mzi - composed).cwiseAbs().maxCoeff() == 0.0);
    }
    const Mat bs = beam_splitter();
    CHECK((bs * bs.adjoint() - Mat::Identity(2, 2)).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("single elimination: balanced pair gives theta = pi/2") {
    Vec amps(2);
    amps << 1.0 / std::sqrt(2.0), 1.0 / std::sqrt(2.0);
    const auto result = mzi_elimination(amps, /*k_ps=*/0, /*k_nops=*/1,
                                        /*k_cross=*/0);
    CHECK(result.theta == doctest::Approx(M_PI / 2).epsilon(1e-12));
    CHECK(result.phi == doctest::Approx(0.0));
    CHECK(std::abs(amps(0)) < 1e-12);
    CHECK(std::abs(amps(1)) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("single elimination: eliminating an empty mode is a bar/cross pass") {
    Vec amps(2);
    amps << 1.0, 0.0;
    mzi_elimination(amps, /*k_ps=*/1, /*k_nops=*/0, /*k_cross=*/1);
    CHECK(std::abs(amps(1)) < 1e-12);
    CHECK(std::abs(amps(0)) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("single elimination: complex pair verified by the 2x2 oracle") {
    Vec amps(2);
    amps << 0.6, cxd(0.0, 0.8);
    const Vec input = amps;
    const auto result = mzi_elimination(amps, 0, 1, 0);
    // independent oracle: multiply the component matrices directly
    Eigen::Vector2cd pair;
    pair << input(1), input(0);  // (no-shifter, shifter) ordering
    pair = mzi_matrix(result.theta) * phase_shifter(result.phi) * pair;
    CHECK(std::abs(pair(1)) < 1e-12);
    CHECK(std::abs(amps(0)) < 1e-12);
    CHECK(std::abs(std::abs(amps(1)) - 1.0) < 1e-12);
}

TEST_CASE("single elimination: doubly zero pair is flagged") {
    Vec amps(3);
    amps << 1.0, 0.0, 0.0;
    const auto result = mzi_elimination(amps, 1, 2, 1);
    CHECK(result.degenerate);
    CHECK(result.theta == 0.0);
    CHECK(result.phi == 0.0);
}

TEST_CASE("two-mode compilation of the balanced state") {
    Vec amps(2);
    amps << 1.0, 1.0;
    const auto settings = triangular_phases(make_pure_state(amps));
    CHECK(settings.dim == 2);
    CHECK(settings.k0 == 1);
    CHECK(settings.mzi_count() == 1);
    CHECK(settings.mzi_phase(1, 1) == doctest::Approx(M_PI / 2).epsilon(1e-12));
    CHECK(settings.input_phases[0] == doctest::Approx(0.0));
    CHECK(settings.input_phases[1] == doctest::Approx(0.0));

    const Mat u = network_unitary(settings);
    const Vec out = u * make_pure_state(amps).amplitudes();
    CHECK(std::norm(out(settings.k0)) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("compiling the detection mode leaves its magnitude in place") {
    Vec amps = Vec::Zero(2);
    amps(1) = 1.0;  // k0 = 1 for a single layer
    const auto settings = triangular_phases(PureState(amps));
    const Mat u = network_unitary(settings);
    const Vec out = u * amps;
    CHECK(std::norm(out(settings.k0)) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("eight-mode Fourier state compiles to unit detection probability") {
    const auto psi = fourier_state(8, 3);
    const auto settings = triangular_phases(psi);
    CHECK(settings.dim == 8);
    CHECK(settings.k0 == 4);
    CHECK(settings.mzi_count() == 7);
    const Mat u = network_unitary(settings);
    const Vec out = u * psi.amplitudes();
    CHECK(std::norm(out(4)) == doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("layer count and phase counts match the mesh geometry") {
    Rng rng(4);
    for (int d : {2, 4, 8, 16}) {
        const auto settings = triangular_phases(haar_random_state(d, rng));
        CHECK(settings.mzi_count() == d - 1);
        CHECK(static_cast<int>(settings.input_phases.size()) == d);
        int layer = 1;
        for (const auto& thetas : settings.theta) {
            CHECK(static_cast<int>(thetas.size()) == d >> layer);
            for (double th : thetas) {
                CHECK(th >= 0.0);
                CHECK(th < 2.0 * M_PI);
            }
            ++layer;
        }
        for (double ph : settings.input_phases) {
            CHECK(ph >= 0.0);
            CHECK(ph < 2.0 * M_PI);
        }
    }
}

TEST_CASE("network unitary with all-pi phases is unitary") {
    Rng rng(8);
    auto settings = triangular_phases(haar_random_state(8, rng));
    for (auto& layer : settings.theta)
        for (double& th : layer) th = M_PI;
    for (double& ph : settings.input_phases) ph = 0.0;
    const Mat u = network_unitary(settings);
    CHECK((u.adjoint() * u - Mat::Identity(8, 8)).cwiseAbs().maxCoeff() < 1e-10);
}

TEST_CASE("two-mode network reproduces the component matrix") {
    // with the shifter on the upper arm the embedded block is the literal
    // component matrix
    Vec amps(2);
    amps << 1.0, 1.0;
    CompileOptions options;
    options.placement = ShifterPlacement::Upper;
    auto settings = triangular_phases(PureState(amps), options);
    settings.theta[0][0] = M_PI / 2;
    settings.input_phases = {0.0, 0.0};
    const Mat u = network_unitary(settings);
    CHECK((u - mzi_matrix(M_PI / 2)).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("random settings assemble to a unitary on sixteen modes") {
    Rng rng(21);
    auto settings = triangular_phases(haar_random_state(16, rng));
    for (auto& layer : settings.theta)
        for (double& th : layer) th = 2.0 * M_PI * rng.uniform();
    for (double& ph : settings.input_phases) ph = 2.0 * M_PI * rng.uniform();
    const Mat u = network_unitary(settings);
    CHECK((u.adjoint() * u - Mat::Identity(16, 16)).cwiseAbs().maxCoeff() < 1e-10);
}

TEST_CASE("projector round trip recovers the compiled state") {
    Rng rng(31);
    for (int d : {2, 4, 8}) {
        const auto psi = haar_random_state(d, rng);
        const auto settings = triangular_phases(psi);
        const Mat projector = projector_from_settings(settings);
        CHECK((projector - psi.projector()).cwiseAbs().maxCoeff() < 1e-9);
    }
}

TEST_CASE("identity-like settings project onto the detection mode") {
    Vec amps = Vec::Zero(4);
    amps(2) = 1.0;  // k0 = 2 for two layers
    const auto settings = triangular_phases(PureState(amps));
    const Mat projector = projector_from_settings(settings);
    Mat expected = Mat::Zero(4, 4);
    expected(2, 2) = 1.0;
    CHECK((projector - expected).cwiseAbs().maxCoeff() < 1e-10);
}

TEST_CASE("compiled Fourier projector matches the analytic formula") {
    const auto psi = fourier_state(4, 1);
    const auto settings = triangular_phases(psi);
    const Mat projector = projector_from_settings(settings);
    CHECK((projector - psi.projector()).cwiseAbs().maxCoeff() < 1e-10);
}

TEST_CASE("round trip holds for Haar-random states on all mesh sizes") {
    Rng rng(42);
    for (int d : {2, 4, 8, 16}) {
        for (int trial = 0; trial < 50; ++trial) {
            const auto psi = haar_random_state(d, rng);
            const auto settings = triangular_phases(psi);
            const Mat u = network_unitary(settings);
            const Vec out = u * psi.amplitudes();
            CHECK(std::norm(out(settings.k0)) == doctest::Approx(1.0).epsilon(1e-10));
            CHECK((u.adjoint() * u - Mat::Identity(d, d)).cwiseAbs().maxCoeff() <
                  1e-10);
        }
    }
}

TEST_CASE("each layer halves the number of live amplitudes") {
    Rng rng(77);
    const int d = 16;
    const auto psi = haar_random_state(d, rng);
    const auto settings = triangular_phases(psi);
    Vec state = psi.amplitudes();
    for (int l = 0; l < d; ++l)
        state(l) *= std::polar(1.0, settings.input_phases[l]);
    for (int n = 1; n <= settings.layers(); ++n) {
        state = layer_unitary(settings, n) * state;
        int live = 0;
        for (int k = 0; k < d; ++k)
            if (std::abs(state(k)) > 1e-12) ++live;
        CHECK(live == d >> n);
    }
}

TEST_CASE("non-power-of-two states are padded to the next mesh size") {
    Rng rng(13);
    const auto psi = haar_random_state(6, rng);
    const auto settings = triangular_phases(psi);
    CHECK(settings.dim == 8);
    Vec padded = Vec::Zero(8);
    padded.head(6) = psi.amplitudes();
    const Vec out = network_unitary(settings) * padded;
    CHECK(std::norm(out(settings.k0)) == doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("werner noise and jitter behave as specified") {
    const auto bell = max_entangled_state(2);
    const auto rho = DensityMatrix::from_pure(bell);
    const auto bases = std::vector<MeasurementBasis>{computational_basis(2)};

    Rng rng(1);
    NoiseModel clean;
    const auto untouched = apply_noise(rho, clean, bases, bases, rng);
    CHECK((untouched.rho.matrix() - rho.matrix()).cwiseAbs().maxCoeff() < 1e-15);
    CHECK((untouched.alice_bases[0].projector(0) - bases[0].projector(0))
              .cwiseAbs()
              .maxCoeff() < 1e-15);

    NoiseModel depolarized;
    depolarized.werner_visibility = 0.0;
    const auto mixed = apply_noise(rho, depolarized, bases, bases, rng);
    CHECK((mixed.rho.matrix() - Mat::Identity(4, 4) / 4.0).cwiseAbs().maxCoeff() <
          1e-15);

    NoiseModel typical;
    typical.werner_visibility = 0.9;
    const auto noisy = apply_noise(rho, typical, bases, bases, rng);
    CHECK(fidelity(noisy.rho, bell) == doctest::Approx(0.925).epsilon(1e-12));

    NoiseModel jittered;
    jittered.phase_jitter_sigma = 0.05;
    const auto perturbed = apply_noise(rho, jittered, bases, bases, rng);
    const double moved = (perturbed.alice_bases[0].projector(0) -
                          bases[0].projector(0))
                             .cwiseAbs()
                             .maxCoeff();
    CHECK(moved > 0.0);
    CHECK(moved < 0.5);
    // perturbed projectors stay rank-one
    const Mat p = perturbed.alice_bases[0].projector(0);
    CHECK(std::abs(p.trace().real() - 1.0) < 1e-10);
    CHECK((p * p - p).cwiseAbs().maxCoeff() < 1e-10);
}

TEST_CASE("loss conversion from decibels") {
    CHECK(NoiseModel::db_to_linear(10.0) == doctest::Approx(0.1).epsilon(1e-12));
    CHECK(NoiseModel::db_to_linear(0.0) == doctest::Approx(1.0));
}

TEST_CASE("two-photon fringe shows the half-period signature") {
    const auto perfect = rhom_fringe(0.3, 1.0);
    CHECK(perfect.visibility == doctest::Approx(1.0));
    // the quantum fringe repeats at half the classical period
    for (double phase : {0.1, 0.9, 2.2}) {
        const auto a = rhom_fringe(phase, 1.0);
        const auto b = rhom_fringe(phase + M_PI, 1.0);
        CHECK(a.quantum_rate == doctest::Approx(b.quantum_rate).epsilon(1e-12));
        CHECK(std::abs(a.classical_rate + b.classical_rate - 1.0) < 1e-12);
    }

    CHECK(rhom_fringe(0.5, 0.0).visibility == doctest::Approx(0.0));
    CHECK(rhom_fringe(1.1, 0.984).visibility ==
          doctest::Approx(0.984).epsilon(1e-12));
}

TEST_CASE("statistical fidelity of overlapping distributions") {
    const std::vector<double> p = {0.5, 0.3, 0.2};
    CHECK(statistical_fidelity(p, p) == doctest::Approx(1.0).epsilon(1e-12));

    const std::vector<double> uniform(4, 0.25);
    std::vector<double> point = {1.0, 0.0, 0.0, 0.0};
    CHECK(statistical_fidelity(uniform, point) ==
          doctest::Approx(0.5).epsilon(1e-12));

    // direct evaluation: sqrt(0.2) + sqrt(0.12) + sqrt(0.04)
    const std::vector<double> q = {0.4, 0.4, 0.2};
    const double expected = std::sqrt(0.2) + std::sqrt(0.12) + 0.2;
    CHECK(statistical_fidelity(p, q) == doctest::Approx(expected).epsilon(1e-12));
    CHECK(statistical_fidelity(p, q) == doctest::Approx(statistical_fidelity(q, p)));

    CHECK_THROWS_AS(statistical_fidelity(p, uniform), DimMismatch);
    CHECK_THROWS_AS(statistical_fidelity({0.5, 0.2}, {0.5, 0.5}), InvalidInput);
}

TEST_CASE("statistical fidelity reaches one only for identical distributions") {
    Rng rng(17);
    for (int trial = 0; trial < 30; ++trial) {
        std::vector<double> p(5), q(5);
        double sp = 0.0, sq = 0.0;
        for (int i = 0; i < 5; ++i) {
            p[i] = rng.uniform() + 1e-3;
            q[i] = rng.uniform() + 1e-3;
            sp += p[i];
            sq += q[i];
        }
        for (int i = 0; i < 5; ++i) {
            p[i] /= sp;
            q[i] /= sq;
        }
        const double f = statistical_fidelity(p, q);
        CHECK(f <= 1.0 + 1e-12);
        double distance = 0.0;
        for (int i = 0; i < 5; ++i) distance += std::abs(p[i] - q[i]);
        if (f > 1.0 - 1e-9) CHECK(distance < 1e-3);
    }
}
