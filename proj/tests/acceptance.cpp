// Acceptance suite: one PASS/FAIL line per criterion, non-zero exit if any fails.

#include <chrono>
#include <cmath>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include <fmt/format.h>

#include "oracles.hpp"
#include "ptq/classical.hpp"
#include "ptq/quantum.hpp"
#include "ptq/reservoir.hpp"
#include "ptq/scattering.hpp"

using namespace ptq;

namespace {

struct Outcome {
    bool pass;
    std::string detail;
};

struct Criterion {
    std::string id;
    std::string title;
    double budget_seconds;  // 0: no runtime bound
    std::function<Outcome()> run;
};

Outcome ep_coalescence() {
    const auto gap = [](double g) { return supermodes(CouplerParams::symmetric(1.0, g)).gap(); };
    const double at = gap(2.0), lo = gap(1.8), hi = gap(2.2);
    return {at < 1e-10 && lo > 0.1 && hi > 0.1, fmt::format("gap(2)={:.3g} gap(1.8)={:.3g} gap(2.2)={:.3g}", at, lo, hi)};
}

Outcome determinant_identity() {
    std::mt19937_64 rng(101);
    std::uniform_real_distribution<double> ratio(0.0, 10.0), kz(0.0, 20.0), beta(-1.0, 1.0);
    double worst = 0.0;
    for (int i = 0; i < 1000; ++i) {
        const CouplerParams p(beta(rng), beta(rng), 1.0, ratio(rng));
        const double z = kz(rng);
        const double expected = std::exp(-p.gamma() * z);
        worst = std::max(worst, std::abs(std::abs(scattering_matrix(p, z).determinant()) - expected) / expected);
    }
    return {worst < 1e-10, fmt::format("max relative error {:.3g}", worst)};
}

Outcome fermionic_law() {
    const PropagationGrid grid(10.0, 1001);
    double worst = 0.0;
    for (double gamma : {0.5, 2.0, 10.0}) {
        const auto curve =
            survival_curve(CouplerParams::symmetric(1.0, gamma), PolarizationEntangled(kPi), grid, MarkovianBackend{});
        for (const auto& pt : curve.points()) {
            const double expected = std::exp(-2.0 * gamma * pt.z);
            worst = std::max(worst, std::abs(pt.value - expected) / expected);
        }
    }
    return {worst < 1e-9, fmt::format("max relative error {:.3g}", worst)};
}

Outcome phi_zero_reduction() {
    std::mt19937_64 rng(102);
    std::uniform_real_distribution<double> u(0.0, 1.0), ratio(0.0, 10.0), kz(0.0, 10.0), beta(-1.0, 1.0);
    std::vector<ScatteringMatrix> samples;
    for (int i = 0; i < 1000; ++i) samples.emplace_back(oracle::random_contraction(rng, u(rng)), 0.0);
    for (int i = 0; i < 1000; ++i) samples.push_back(scattering_matrix(CouplerParams(beta(rng), beta(rng), 1.0, ratio(rng)), kz(rng)));
    double worst = 0.0;
    for (const auto& s : samples) worst = std::max(worst, std::abs(survival_entangled(s, 0.0) - survival_indistinguishable(s)));
    return {worst < 1e-12, fmt::format("max difference {:.3g} over {} matrices", worst, samples.size())};
}

Outcome ep_continuity() {
    const PropagationGrid grid(10.0, 2001);
    double worst = 0.0;
    for (int i = 0; i < grid.size(); ++i) {
        const auto at = scattering_matrix(CouplerParams::symmetric(1.0, 2.0), grid[i]).s();
        for (double d : {-1e-8, 1e-8}) {
            worst = std::max(worst, scattering_matrix(CouplerParams::symmetric(1.0, 2.0 + d), grid[i]).s().max_abs_diff(at));
        }
    }
    return {worst < 1e-6, fmt::format("sup-norm difference {:.3g}", worst)};
}

Outcome oracle_equivalence() {
    std::mt19937_64 rng(103);
    std::uniform_real_distribution<double> beta(-1.0, 1.0), kappa(0.3, 2.0), sigma(1.0, 20.0), rho(0.0, 8.0), kz(0.0, 5.0);
    double worst = 0.0;
    int checks = 0;
    for (int n : {5, 15, 30}) {
        for (int draw = 0; draw < 50; ++draw) {
            const CouplerParams p(beta(rng), beta(rng), kappa(rng), 0.0);
            const LatticeReservoir lattice(sigma(rng), rho(rng), n, beta(rng));
            const double z = kz(rng) / p.kappa();
            const auto h = full_hamiltonian(p, lattice);
            const auto s = nonmarkovian_scattering(p, lattice, z);
            for (double phi : {0.0, 2.0 * kPi / 3.0, kPi}) {
                worst = std::max(worst, std::abs(two_photon_oracle(h, PolarizationEntangled(phi), z) - survival_entangled(s, phi)));
                ++checks;
            }
        }
    }
    return {worst < 1e-10, fmt::format("max difference {:.3g} over {} comparisons", worst, checks)};
}

Outcome fig5_panel(double rho) {
    const double sigma = 20.0;
    const double gamma = lattice_gamma(sigma, rho);
    const int n = min_lattice_size(sigma, 3.0);
    const PropagationGrid grid(3.0, 301);
    const auto curve = survival_curve(CouplerParams::symmetric(1.0, 0.0), PolarizationEntangled(kPi), grid,
                                      LatticeBackend{LatticeReservoir(sigma, rho, n)});
    double worst = 0.0, at = 0.0;
    for (const auto& pt : curve.points()) {
        const double dev = std::abs(pt.value / std::exp(-2.0 * gamma * pt.z) - 1.0);
        if (dev > worst) worst = dev, at = pt.z;
    }
    return {n >= 310 && worst < 0.15,
            fmt::format("gamma={:.4g} n_sites={} max relative deviation {:.3g} at kz={:.3g}", gamma, n, worst, at)};
}

Outcome fig4b_contrast() {
    const auto s = scattering_matrix(CouplerParams::symmetric(1.0, 2.5), 3.0);
    const double ratio = survival_entangled(s, 0.0) / survival_entangled(s, kPi);
    return {ratio > 100.0, fmt::format("P(0)/P(pi) = {:.4g}", ratio)};
}

Outcome transparency() {
    const auto power = [](double gamma) {
        return classical_power(scattering_matrix(CouplerParams::symmetric(1.0, gamma), 3.0), ClassicalInput::SingleWaveguide);
    };
    bool ok = power(10.0) > power(2.0);
    std::string values;
    double prev = -1.0;
    for (int i = 0; i < 7; ++i) {
        const double p = power(4.0 + i);
        ok = ok && p > prev;
        prev = p;
        values += fmt::format("{}{:.4g}", i ? "," : "", p);
    }
    return {ok, fmt::format("P(2)={:.4g} P(10)={:.4g} P(4..10)=[{}]", power(2.0), power(10.0), values)};
}

Outcome anomalous_decay() {
    const auto params = CouplerParams::symmetric(1.0, 2.0);
    double lo = 1e300, hi = -1e300;
    for (int i = 0; i <= 1000; ++i) {
        const double z = 10.0 + 10.0 * i / 1000.0;
        const double p = classical_power(scattering_matrix(params, z), ClassicalInput::BalancedOrthogonal);
        const double v = std::log(p * std::exp(2.0 * z)) - 2.0 * std::log(z);
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
    return {hi - lo < 0.02, fmt::format("variation {:.4g}", hi - lo)};
}

Outcome mean_photon_number_law() {
    const PropagationGrid grid(10.0, 1001);
    double worst = 0.0;
    for (double gamma : {0.0, 0.5, 2.0, 2.5, 10.0}) {
        const auto params = CouplerParams::symmetric(1.0, gamma);
        const auto classical = classical_power_curve(params, ClassicalInput::BalancedOrthogonal, grid);
        const auto s = scattering_curve(params, grid);
        for (std::size_t i = 0; i < s.size(); ++i) {
            worst = std::max(worst, std::abs(mean_photon_number(s[i]) / 2.0 - classical[i].value));
        }
    }
    return {worst < 1e-12, fmt::format("max difference {:.3g}", worst)};
}

Outcome markovian_convergence() {
    const PropagationGrid grid(3.0, 301);
    const auto markov = scattering_curve(CouplerParams::symmetric(1.0, 1.0), grid);
    std::vector<double> dev;
    std::string detail;
    for (double sigma : {10.0, 40.0, 160.0}) {
        const LatticeReservoir lattice(sigma, std::sqrt(2.0 * sigma), min_lattice_size(sigma, 3.0));
        const auto exact = LatticePropagator(CouplerParams::symmetric(1.0, 0.0), lattice).scattering_curve(grid);
        double worst = 0.0;
        for (std::size_t i = 0; i < exact.size(); ++i) worst = std::max(worst, exact[i].s().max_abs_diff(markov[i].s()));
        dev.push_back(worst);
        detail += fmt::format("{}sigma={:g} (n={}): {:.3g}", detail.empty() ? "" : ", ", sigma, lattice.n_sites(), worst);
    }
    return {dev[0] > dev[1] && dev[1] > dev[2], detail};
}

}  // namespace

int main() {
    const std::vector<Criterion> criteria{
        {"1", "exceptional-point coalescence", 1.0, ep_coalescence},
        {"2", "determinant identity", 0.0, determinant_identity},
        {"3", "fermionic exponential law", 0.0, fermionic_law},
        {"4", "phi=0 reduction", 0.0, phi_zero_reduction},
        {"5", "propagator continuity at the exceptional point", 0.0, ep_continuity},
        {"6", "two-photon oracle equivalence", 30.0, oracle_equivalence},
        {"7a", "lattice vs Markovian survival, rho=5", 10.0, [] { return fig5_panel(5.0); }},
        {"7b", "lattice vs Markovian survival, rho=10", 10.0, [] { return fig5_panel(10.0); }},
        {"8", "entanglement contrast at kz=3", 0.0, fig4b_contrast},
        {"9", "loss-induced transparency", 0.0, transparency},
        {"10", "anomalous decay at the exceptional point", 0.0, anomalous_decay},
        {"11", "mean photon number follows the classical power", 0.0, mean_photon_number_law},
        {"12", "Markovian convergence", 60.0, markovian_convergence},
    };
    int failures = 0;
    for (const auto& c : criteria) {
        const auto start = std::chrono::steady_clock::now();
        Outcome out;
        try {
            out = c.run();
        } catch (const std::exception& e) {
            out = {false, fmt::format("exception: {}", e.what())};
        }
        const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        const bool in_time = c.budget_seconds == 0.0 || seconds < c.budget_seconds;
        const bool pass = out.pass && in_time;
        failures += pass ? 0 : 1;
        fmt::print("{} [{}] {}: {}; {:.3f}s{}\n", pass ? "PASS" : "FAIL", c.id, c.title, out.detail, seconds,
                   c.budget_seconds > 0.0 ? fmt::format(" (budget {:g}s)", c.budget_seconds) : "");
    }
    fmt::print("{} of {} criteria passed\n", criteria.size() - static_cast<std::size_t>(failures), criteria.size());
    return failures == 0 ? 0 : 1;
}
