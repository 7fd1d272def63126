#include <doctest.h>

#include <cmath>
#include <random>

#include "ptq/quantum.hpp"
#include "ptq/reservoir.hpp"
#include "ptq/scattering.hpp"

using namespace ptq;

TEST_CASE("lattice loss rate") {
    CHECK(lattice_gamma(20.0, 5.0) == 0.625);
    CHECK(lattice_gamma(20.0, 10.0) == 2.5);
    CHECK(lattice_gamma(20.0, 0.0) == 0.0);
    CHECK_THROWS_AS(lattice_gamma(0.0, 1.0), ValidationError);
    CHECK_THROWS_AS(lattice_gamma(-1.0, 1.0), ValidationError);
}

TEST_CASE("golden rule reproduces rho^2 / (2 sigma) for the chain band") {
    std::mt19937_64 rng(17);
    std::uniform_real_distribution<double> sig(0.5, 50.0), r(0.0, 20.0), b(-5.0, 5.0);
    for (int i = 0; i < 100; ++i) {
        const double sigma = sig(rng), rho = r(rng), beta = b(rng);
        const auto coupling = [rho](double) { return rho / std::sqrt(2.0 * kPi); };
        const auto result = golden_rule_gamma(chain_dispersion(beta, sigma), coupling, beta);
        REQUIRE(result.resonances.size() == 2);
        CHECK_FALSE(result.bound_state);
        const double expected = lattice_gamma(sigma, rho);
        CHECK(std::abs(result.gamma - expected) <= 1e-12 * std::max(expected, 1e-300));
    }
}

TEST_CASE("golden rule resonances sit at +-pi/2 at band center") {
    const auto result = golden_rule_gamma(chain_dispersion(0.0, 20.0), [](double) { return 1.0; }, 0.0);
    REQUIRE(result.resonances.size() == 2);
    CHECK(result.resonances[0] == doctest::Approx(-kPi / 2.0).epsilon(1e-14));
    CHECK(result.resonances[1] == doctest::Approx(kPi / 2.0).epsilon(1e-14));
}

TEST_CASE("golden rule with a numerically differentiated dispersion") {
    Dispersion d = chain_dispersion(0.0, 20.0);
    d.slope = nullptr;
    const double rho = 10.0;
    const auto result = golden_rule_gamma(d, [rho](double) { return rho / std::sqrt(2.0 * kPi); }, 7.0);
    // off band center: roots at cos k = 7/40, |beta'| = 2 sigma sin k
    const double expected = 2.0 * kPi * (rho * rho / (2.0 * kPi)) / (40.0 * std::sqrt(1.0 - 0.175 * 0.175));
    CHECK(result.gamma == doctest::Approx(expected).epsilon(1e-9));
}

TEST_CASE("golden rule edge cases") {
    const auto none = golden_rule_gamma(chain_dispersion(0.0, 20.0), [](double) { return 0.0; }, 0.0);
    CHECK(none.gamma == 0.0);
    CHECK_FALSE(none.bound_state);

    const auto outside = golden_rule_gamma(chain_dispersion(0.0, 20.0), [](double) { return 1.0; }, 60.0);
    CHECK(outside.gamma == 0.0);
    CHECK(outside.bound_state);
    CHECK(outside.resonances.empty());
}

TEST_CASE("detuned waveguide keeps a non-decaying fraction") {
    // beta2 = beta_lattice + 3 sigma: no resonance, the coupler modes bind.
    const double sigma = 1.0;
    const auto flag = golden_rule_gamma(chain_dispersion(0.0, sigma), [](double) { return 0.5; }, 3.0 * sigma);
    CHECK(flag.bound_state);

    const LatticePropagator lattice(CouplerParams(3.0, 3.0, 0.2, 0.0), LatticeReservoir(sigma, 0.5, 201));
    for (double z : {10.0, 50.0, 100.0}) {
        const auto s = lattice.scattering(z);
        CHECK(std::norm(s.s12()) + std::norm(s.s22()) > 0.8);
    }
}

TEST_CASE("minimum lattice size") {
    CHECK(min_lattice_size(20.0, 3.0, 2.5) == 310);
    CHECK(min_lattice_size(1.0, 1.0, 1.0) == 12);
    CHECK(min_lattice_size(20.0, 3.0, 5.0) - 10 == 2 * (min_lattice_size(20.0, 3.0, 2.5) - 10));
    CHECK_THROWS_AS(min_lattice_size(1.0, 1.0, 0.5), ValidationError);
}

TEST_CASE("full hamiltonian structure") {
    const CouplerParams p(0.3, -0.2, 1.5, 0.0);
    SUBCASE("single site") {
        const auto h = full_hamiltonian(p, LatticeReservoir(2.0, 0.7, 1, 0.4));
        Eigen::Matrix3d expected;
        expected << 0.3, 1.5, 0.0, 1.5, -0.2, 0.7, 0.0, 0.7, 0.4;
        CHECK(h == expected);
    }
    SUBCASE("decoupled reservoir is block diagonal") {
        const auto h = full_hamiltonian(p, LatticeReservoir(2.0, 0.0, 6));
        CHECK(h.block(0, 2, 2, 6).isZero(0.0));
        CHECK(h.block(2, 0, 6, 2).isZero(0.0));
    }
    SUBCASE("symmetric with nearest-neighbour chain and centered attachment") {
        const LatticeReservoir lat(2.0, 0.7, 9, 0.1);
        const auto h = full_hamiltonian(p, lat);
        CHECK(h == h.transpose());
        CHECK(lat.attached_site() == 4);
        CHECK(h(1, 2 + 4) == 0.7);
        CHECK(h.row(1).tail(9).cwiseAbs().sum() == 0.7);
        for (int j = 2; j < 10; ++j) CHECK(h(j, j + 1) == 2.0);
        for (int j = 2; j < 11; ++j) CHECK(h(j, j) == 0.1);
    }
    SUBCASE("edge attachment couples to site 1") {
        const auto h = full_hamiltonian(p, LatticeReservoir(2.0, 0.7, 9, 0.0, Attachment::Edge));
        CHECK(h(1, 2) == 0.7);
    }
    SUBCASE("intrinsic loss is rejected") {
        CHECK_THROWS_WITH_AS(full_hamiltonian(p.with_gamma(0.1), LatticeReservoir(2.0, 0.7, 3)),
                             "intrinsic loss and explicit reservoir are mutually exclusive", ValidationError);
    }
}

TEST_CASE("lattice reservoir validation") {
    CHECK_THROWS_AS(LatticeReservoir(0.0, 1.0, 3), ValidationError);
    CHECK_THROWS_AS(LatticeReservoir(1.0, -1.0, 3), ValidationError);
    CHECK_THROWS_AS(LatticeReservoir(1.0, 1.0, 0), ValidationError);
}

TEST_CASE("decoupled reservoir gives the unitary coupler propagator") {
    const CouplerParams p(0.4, -0.3, 1.2, 0.0);
    const LatticePropagator lattice(p, LatticeReservoir(3.0, 0.0, 25));
    for (double z : {0.0, 0.3, 1.7, 8.0}) {
        CHECK(lattice.scattering(z).s().max_abs_diff(scattering_matrix(p, z).s()) < 1e-10);
    }
}

TEST_CASE("lattice propagator is the identity at z = 0") {
    const LatticePropagator lattice(CouplerParams::symmetric(1.0, 0.0), LatticeReservoir(20.0, 10.0, 51));
    CHECK(lattice.scattering(0.0).s().max_abs_diff(ComplexMatrix2::identity()) < 1e-13);
    CHECK(nonmarkovian_scattering(CouplerParams::symmetric(1.0, 0.0), LatticeReservoir(20.0, 10.0, 51), 0.0)
              .s()
              .max_abs_diff(ComplexMatrix2::identity()) < 1e-13);
}

TEST_CASE("full-system evolution conserves the norm") {
    const LatticePropagator lattice(CouplerParams(0.1, 0.0, 1.0, 0.0), LatticeReservoir(20.0, 10.0, 120));
    for (int basis : {0, 1, 5}) {
        for (double z : {0.0, 0.5, 2.0, 3.0}) {
            const auto state = lattice.evolve_basis(basis, z);
            CHECK(state.amplitudes.size() == 122);
            CHECK(state.norm() == doctest::Approx(1.0).epsilon(1e-10));
        }
    }
    const auto s = lattice.scattering(1.3);
    const auto col = lattice.evolve_basis(1, 1.3);
    CHECK(std::abs(col.amplitudes(0) - s.s12()) < 1e-12);
    CHECK(std::abs(col.amplitudes(1) - s.s22()) < 1e-12);
}

TEST_CASE("lattice reservoir approaches the Markovian propagator") {
    // sigma = 20 kappa, rho = 10 kappa: gamma = 2.5 kappa.
    const double sigma = 20.0, rho = 10.0;
    const LatticePropagator lattice(CouplerParams::symmetric(1.0, 0.0),
                                    LatticeReservoir(sigma, rho, min_lattice_size(sigma, 3.0)));
    const CouplerParams markov = CouplerParams::symmetric(1.0, lattice_gamma(sigma, rho));
    double worst = 0.0;
    for (double z = 0.0; z <= 3.0; z += 0.01) {
        worst = std::max(worst, lattice.scattering(z).s().max_abs_diff(scattering_matrix(markov, z).s()));
    }
    CHECK(worst < 0.05);
}

TEST_CASE("truncation beyond the causality bound does not matter") {
    const double sigma = 20.0, z_max = 3.0;
    const int n = min_lattice_size(sigma, z_max);
    const CouplerParams p = CouplerParams::symmetric(1.0, 0.0);
    const LatticePropagator small(p, LatticeReservoir(sigma, 10.0, n));
    const LatticePropagator large(p, LatticeReservoir(sigma, 10.0, 2 * n));
    double worst = 0.0;
    for (double z = 0.0; z <= z_max; z += 0.02) {
        worst = std::max(worst, small.scattering(z).s().max_abs_diff(large.scattering(z).s()));
    }
    CHECK(worst < 1e-6);
}

TEST_CASE("edge attachment doubles the effective loss") {
    const double sigma = 20.0, rho = 5.0, z = 1.0;
    const CouplerParams p = CouplerParams::symmetric(1.0, 0.0);
    const int n = min_lattice_size(sigma, 3.0);
    const double center = survival_fermionic(LatticePropagator(p, LatticeReservoir(sigma, rho, n)).scattering(z));
    const double edge =
        survival_fermionic(LatticePropagator(p, LatticeReservoir(sigma, rho, n, 0.0, Attachment::Edge)).scattering(z));
    const double ratio = std::log(edge) / std::log(center);
    CHECK(ratio > 1.7);
    CHECK(ratio < 2.3);
}

TEST_CASE("parallel lattice curve matches the serial reference") {
    const LatticePropagator lattice(CouplerParams::symmetric(1.0, 0.0), LatticeReservoir(5.0, 2.0, 40));
    const PropagationGrid grid(2.0, 123);
    const auto a = lattice.scattering_curve(grid);
    const auto b = lattice.scattering_curve_serial(grid);
    REQUIRE(a.size() == b.size());
    for (std::size_t i = 0; i < a.size(); ++i) CHECK(a[i].s().max_abs_diff(b[i].s()) == 0.0);
}
