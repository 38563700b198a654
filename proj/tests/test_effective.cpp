#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "cca/chain.hpp"
#include "cca/dynamics.hpp"
#include "cca/effective.hpp"
#include "cca/errors.hpp"
#include "cca/scenario.hpp"

using namespace cca;

namespace {

ModelParams gate_params(int n, double omega, double delta = 1.0) {
    ScenarioConfig config;
    config.scenario = "evolve";
    config.n = n;
    config.omega = omega;
    config.delta = delta;
    return resolve_gate_params(config);
}

}  // namespace

TEST_CASE("N=5 effective model: coupling -omega^2/(2 delta), matching stark shifts") {
    ModelParams p;
    p.n_cavities = 5;
    p.delta = 1.0;
    p.omega1 = p.omega2 = 0.03;
    const EffectiveModel eff = build_effective(p);
    CHECK(eff.coupling == doctest::Approx(-0.03 * 0.03 / 2.0).epsilon(1e-14));
    CHECK(eff.stark1 == doctest::Approx(0.03 * 0.03 / 2.0).epsilon(1e-14));
    CHECK(eff.stark2 == doctest::Approx(0.03 * 0.03 / 2.0).epsilon(1e-14));
}

TEST_CASE("gate condition makes |coupling| equal both stark shifts") {
    for (int n : {3, 5, 7, 9}) {
        ModelParams p;
        p.n_cavities = n;
        p.delta = 1.4;
        p.omega1 = 0.02;
        p.omega2 = (((n - 1) / 2) % 2 == 0 ? 1.0 : -1.0) * 0.02;
        const EffectiveModel eff = build_effective(p);
        CHECK(std::abs(eff.coupling) == doctest::Approx(eff.stark1).epsilon(1e-13));
        CHECK(eff.stark1 == doctest::Approx(eff.stark2).epsilon(1e-13));
    }
}

TEST_CASE("a silent drive removes its coupling and shift") {
    ModelParams p;
    p.n_cavities = 5;
    p.omega1 = 0.0;
    p.omega2 = 0.04;
    const EffectiveModel eff = build_effective(p);
    CHECK(eff.coupling == 0.0);
    CHECK(eff.stark1 == 0.0);
    CHECK(eff.stark2 > 0.0);
}

TEST_CASE("effective coefficients reduce to the chain spectral sums") {
    for (int n : {3, 5, 4, 6}) {
        ModelParams p;
        p.n_cavities = n;
        p.delta = 2.2;
        p.omega1 = 0.05;
        p.omega2 = 0.03;
        const EffectiveModel eff = build_effective(p);
        const CouplingSums sums =
            coupling_sums(direct_diagonalize({n + 2, 1.0, p.delta, p.delta}));
        CHECK(eff.coupling ==
              doctest::Approx(p.omega1 * p.omega2 * sums.cross).epsilon(1e-10));
        CHECK(eff.stark1 == doctest::Approx(p.omega1 * p.omega1 * sums.local_1).epsilon(1e-10));
        CHECK(eff.stark2 == doctest::Approx(p.omega2 * p.omega2 * sums.local_m).epsilon(1e-10));
    }
}

TEST_CASE("zero detuning and even-chain resonance are rejected") {
    ModelParams p;
    p.n_cavities = 5;
    p.delta = 0.0;
    p.omega1 = p.omega2 = 0.03;
    CHECK_THROWS_AS(build_effective(p), ZeroDetuning);
    p.n_cavities = 4;
    p.delta = 1.0;
    CHECK_THROWS_AS(build_effective(p), EvenChainResonance);
}

TEST_CASE("gate time is pi delta / (2 omega^2), independent of N") {
    ModelParams p;
    p.n_cavities = 5;
    p.delta = 1.0;
    p.omega1 = p.omega2 = 0.03;
    CHECK(gate_time(p) == doctest::Approx(M_PI / 0.0018).epsilon(1e-14));
    CHECK(gate_time(p) == doctest::Approx(1745.3292519943295).epsilon(1e-12));
    p.omega1 = p.omega2 = 0.01;
    CHECK(gate_time(p) == doctest::Approx(15707.963267948966).epsilon(1e-12));
    p.n_cavities = 99;
    CHECK(gate_time(p) == doctest::Approx(15707.963267948966).epsilon(1e-12));
}

TEST_CASE("unbalanced drives violate the gate condition") {
    ModelParams p;
    p.n_cavities = 5;
    p.omega1 = 0.03;
    p.omega2 = 0.02;
    CHECK_THROWS_AS(gate_time(p), ConditionViolated);
}

TEST_CASE("effective evolution: identity at t=0, sqrt(swap) at T, swap at 2T") {
    const ModelParams p = gate_params(5, 0.03);
    const EffectiveModel eff = build_effective(p);
    const double t_gate = gate_time(p);

    const PairAmplitudes start = evolve_effective(eff, Complex(1.0, 0.0), Complex(0.0, 0.0), 0.0);
    CHECK(std::abs(start.amp01 - Complex(1.0, 0.0)) < 1e-14);
    CHECK(std::abs(start.amp10) < 1e-14);

    // |01> -> (1+i)/2 |01> + (1-i)/2 |10> up to a global phase.
    const PairAmplitudes at_t = evolve_effective(eff, Complex(1.0, 0.0), Complex(0.0, 0.0),
                                                 t_gate);
    const Complex overlap = std::conj(Complex(0.5, 0.5)) * at_t.amp01 +
                            std::conj(Complex(0.5, -0.5)) * at_t.amp10;
    CHECK(std::abs(overlap) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(std::abs(at_t.amp01) == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-12));
    // Relative phase between the two amplitudes is +-pi/2.
    const double rel = std::arg(at_t.amp01 / at_t.amp10);
    CHECK(std::abs(std::abs(rel) - M_PI / 2.0) < 1e-12);

    const PairAmplitudes at_2t = evolve_effective(eff, Complex(1.0, 0.0), Complex(0.0, 0.0),
                                                  2.0 * t_gate);
    CHECK(std::abs(at_2t.amp10) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(std::abs(at_2t.amp01) < 1e-12);
}

TEST_CASE("effective evolution conserves the norm") {
    const ModelParams p = gate_params(7, 0.02);
    const EffectiveModel eff = build_effective(p);
    Complex a(0.6, 0.1), b(0.3, -0.2);
    const double norm = std::sqrt(std::norm(a) + std::norm(b));
    a /= norm;
    b /= norm;
    for (double t : {13.0, 517.0, 9000.0}) {
        const PairAmplitudes out = evolve_effective(eff, a, b, t);
        CHECK(std::norm(out.amp01) + std::norm(out.amp10) ==
              doctest::Approx(1.0).epsilon(1e-12));
    }
}

TEST_CASE("ideal sqrt(swap): unitary, fixes |00>, squares to swap") {
    const Eigen::Matrix4cd u = ideal_sqrt_swap();
    CHECK((u * u.adjoint() - Eigen::Matrix4cd::Identity()).cwiseAbs().maxCoeff() < 1e-12);
    CHECK(std::abs(u(0, 0) - Complex(1.0, 0.0)) < 1e-14);
    CHECK(std::abs(u(3, 3) - Complex(1.0, 0.0)) < 1e-14);
    CHECK(std::abs(u(1, 1) - Complex(0.5, 0.5)) < 1e-14);
    CHECK(std::abs(u(2, 1) - Complex(0.5, -0.5)) < 1e-14);
    const Eigen::Matrix4cd sq = u * u;
    CHECK(std::abs(sq(2, 1) - Complex(1.0, 0.0)) < 1e-12);  // U^2 |01> = |10>
    CHECK(std::abs(sq(1, 1)) < 1e-12);
}

TEST_CASE("effective and full sector-1 evolution agree along the whole gate") {
    const ModelParams p = gate_params(3, 0.03);
    const EffectiveModel eff = build_effective(p);
    const double t_gate = gate_time(p);
    const SectorBasis basis = enumerate_sector(3, 1);
    const UnitaryPropagator prop(build_hamiltonian(p, basis));
    const int i01 = basis.index_of(embed_computational_state("01", 3).state);
    const int i10 = basis.index_of(embed_computational_state("10", 3).state);
    Eigen::VectorXcd psi0 = Eigen::VectorXcd::Zero(basis.dimension());
    psi0(i01) = 1.0;
    for (int s = 0; s <= 50; ++s) {
        const double t = 2.0 * t_gate * s / 50.0;
        const Eigen::VectorXcd psi = prop.evolve(psi0, t);
        const PairAmplitudes amps =
            evolve_effective(eff, Complex(1.0, 0.0), Complex(0.0, 0.0), t);
        Eigen::VectorXcd target = Eigen::VectorXcd::Zero(basis.dimension());
        target(i01) = amps.amp01;
        target(i10) = amps.amp10;
        CHECK(state_fidelity(psi, target) > 0.99);
    }
}

TEST_CASE("the fidelity peak sits within 2% of T for several odd N") {
    for (int n : {3, 5, 7, 9}) {
        const ModelParams p = gate_params(n, 0.03);
        const double t_gate = gate_time(p);
        const SectorBasis basis = enumerate_sector(n, 1);
        const UnitaryPropagator prop(build_hamiltonian(p, basis));
        Eigen::VectorXcd psi0 = Eigen::VectorXcd::Zero(basis.dimension());
        psi0(basis.index_of(embed_computational_state("01", n).state)) = 1.0;
        Eigen::VectorXcd target = Eigen::VectorXcd::Zero(basis.dimension());
        target(basis.index_of(embed_computational_state("01", n).state)) = Complex(0.5, 0.5);
        target(basis.index_of(embed_computational_state("10", n).state)) = Complex(0.5, -0.5);
        double best_t = 0.0;
        double best_f = -1.0;
        for (int s = 0; s <= 600; ++s) {
            const double t = 1.2 * t_gate * s / 600.0;
            const double f = state_fidelity(prop.evolve(psi0, t), target);
            if (f > best_f) {
                best_f = f;
                best_t = t;
            }
        }
        CHECK(std::abs(best_t - t_gate) < 0.02 * t_gate);
        CHECK(best_f > 0.99);
    }
}
