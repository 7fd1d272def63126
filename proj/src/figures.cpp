#include "ptq/figures.hpp"

#include <algorithm>
#include <cmath>

#include <fmt/format.h>

#include "ptq/classical.hpp"
#include "ptq/quantum.hpp"
#include "ptq/reservoir.hpp"
#include "ptq/scattering.hpp"
#include "ptq/version.hpp"

namespace ptq {

namespace {

DecayCurve relabel(const DecayCurve& curve, std::string label) { return {std::move(label), curve.points()}; }

std::string join_reals(const std::vector<double>& values) {
    std::string out;
    for (std::size_t i = 0; i < values.size(); ++i) out += (i ? ";" : "") + format_real(values[i]);
    return out;
}

void common_meta(CsvTable& table, const std::string& figure, const CouplerParams& params, const PropagationGrid& grid,
                 const std::string& backend) {
    table.add_meta("figure", figure);
    table.add_meta("version", kVersion);
    table.add_meta("backend", backend);
    table.add_meta("beta1", params.beta1());
    table.add_meta("beta2", params.beta2());
    table.add_meta("kappa", params.kappa());
    table.add_meta("zmax", grid.z_max());
    table.add_meta("points", format_real(grid.size()));
}


}  // namespace

std::string short_number(double value) { return fmt::format("{:.6g}", value); }

std::vector<OutputFile> figure2(const FigureOptions& o) {
    const auto gammas = o.gammas.value_or(std::vector<double>{0.5, 2.0, 10.0});
    const PropagationGrid grid(o.zmax.value_or(10.0), o.points.value_or(501));
    std::vector<OutputFile> files;
    for (double gamma : gammas) {
        const CouplerParams params(o.beta1, o.beta2, o.kappa, gamma);
        CsvTable table = curves_to_table(
            {relabel(classical_power_curve(params, ClassicalInput::BalancedOrthogonal, grid), "balanced_orthogonal"),
             relabel(classical_power_curve(params, ClassicalInput::SingleWaveguide, grid), "single_waveguide")});
        common_meta(table, "2", params, grid, "markovian");
        table.add_meta("gamma", gamma);
        table.add_meta("observable", "normalized_classical_power");
        files.push_back({fmt::format("fig2_gamma_{}.csv", short_number(gamma)), std::move(table)});
    }
    return files;
}

std::vector<OutputFile> figure3(const FigureOptions& o) {
    const auto gammas = o.gammas.value_or(std::vector<double>{0.5, 2.0, 10.0});
    const PropagationGrid grid(o.zmax.value_or(10.0), o.points.value_or(501));
    std::vector<OutputFile> files;
    for (double gamma : gammas) {
        const CouplerParams params(o.beta1, o.beta2, o.kappa, gamma);
        CsvTable table = curves_to_table({relabel(
            survival_curve(params, Indistinguishable{}, grid, MarkovianBackend{}), "survival_indistinguishable")});
        common_meta(table, "3", params, grid, "markovian");
        table.add_meta("gamma", gamma);
        table.add_meta("input", "indistinguishable");
        files.push_back({fmt::format("fig3_gamma_{}.csv", short_number(gamma)), std::move(table)});
    }
    return files;
}

std::vector<OutputFile> figure4(const FigureOptions& o) {
    const auto gammas = o.gammas.value_or(std::vector<double>{0.625, 2.5});
    const auto phis = o.phis.value_or(std::vector<double>{0.0, 2.0 * kPi / 3.0, kPi});
    const PropagationGrid grid(o.zmax.value_or(10.0), o.points.value_or(501));
    std::vector<OutputFile> files;

    for (double gamma : gammas) {
        const CouplerParams params(o.beta1, o.beta2, o.kappa, gamma);
        std::vector<DecayCurve> curves;
        for (double phi : phis) {
            curves.push_back(relabel(survival_curve(params, PolarizationEntangled(phi), grid, MarkovianBackend{}),
                                     "phi_" + short_number(phi)));
        }
        CsvTable table = curves_to_table(curves);
        common_meta(table, "4a", params, grid, "markovian");
        table.add_meta("gamma", gamma);
        table.add_meta("phis", join_reals(phis));
        table.add_meta("input", "polarization_entangled");
        files.push_back({fmt::format("fig4a_gamma_{}.csv", short_number(gamma)), std::move(table)});
    }

    // Panel (b): survival at a fixed distance versus the loss rate.
    if (o.gamma_points < 2 || !(o.gamma_max > 0.0)) throw ValidationError("panel (b) needs gamma_max > 0 and >= 2 points");
    if (!(o.z0 >= 0.0)) throw ValidationError("z0 must be non-negative");
    CsvTable panel_b;
    panel_b.add_meta("figure", "4b");
    panel_b.add_meta("version", kVersion);
    panel_b.add_meta("backend", "markovian");
    panel_b.add_meta("beta1", o.beta1);
    panel_b.add_meta("beta2", o.beta2);
    panel_b.add_meta("kappa", o.kappa);
    panel_b.add_meta("z0", o.z0);
    panel_b.add_meta("z0_interpretation", "kappa*z0 is the dimensionless fixed distance");
    panel_b.add_meta("phis", join_reals(phis));
    panel_b.header.push_back("gamma");
    for (double phi : phis) panel_b.header.push_back("phi_" + short_number(phi));
    const double z0 = o.z0 / o.kappa;
    for (int i = 0; i < o.gamma_points; ++i) {
        const double gamma = (i == o.gamma_points - 1) ? o.gamma_max : o.gamma_max * i / (o.gamma_points - 1);
        const ScatteringMatrix s = scattering_matrix(CouplerParams(o.beta1, o.beta2, o.kappa, gamma), z0);
        std::vector<Cell> row{gamma};
        for (double phi : phis) row.emplace_back(survival_entangled(s, phi));
        panel_b.add_row(row);
    }
    files.push_back({"fig4b.csv", std::move(panel_b)});
    return files;
}

std::vector<OutputFile> figure5(const FigureOptions& o) {
    const auto rhos = o.rhos.value_or(std::vector<double>{5.0, 10.0});
    const double sigma = o.sigma.value_or(20.0);
    const double phi = o.phis && !o.phis->empty() ? o.phis->front() : kPi;
    const PropagationGrid grid(o.zmax.value_or(3.0), o.points.value_or(301));
    const int nsites = o.nsites.value_or(min_lattice_size(sigma, grid.z_max()));
    const CouplerParams lossless(o.beta1, o.beta2, o.kappa, 0.0);
    const PolarizationEntangled input(phi);

    std::vector<OutputFile> files;
    for (double rho : rhos) {
        const LatticeReservoir lattice(sigma, rho, nsites, o.beta2);
        const double gamma = lattice_gamma(sigma, rho);
        const DecayCurve exact = survival_curve(lossless, input, grid, LatticeBackend{lattice});
        const DecayCurve markov = survival_curve(lossless.with_gamma(gamma), input, grid, MarkovianBackend{});
        CsvTable table = curves_to_table({relabel(exact, "lattice_exact"), relabel(markov, "markovian")});
        common_meta(table, "5", lossless, grid, "lattice+markovian");
        table.add_meta("sigma", sigma);
        table.add_meta("rho", rho);
        table.add_meta("gamma", gamma);
        table.add_meta("nsites", format_real(nsites));
        table.add_meta("beta_lattice", o.beta2);
        table.add_meta("attachment", "center");
        table.add_meta("phi", phi);
        files.push_back({fmt::format("fig5_rho_{}.csv", short_number(rho)), std::move(table)});
    }
    return files;
}

}  // namespace ptq
