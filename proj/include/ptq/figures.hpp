// Tabulated reproductions of the coupler figures: power decay (fig2),
// indistinguishable two-photon survival (fig3), entangled survival versus z
// and versus loss (fig4) and the explicit-lattice comparison (fig5).
//
// Each function returns in-memory tables; writing them is the caller's job.

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "ptq/csv.hpp"

namespace ptq {

/// Overrides from the command line. Unset fields take the per-figure defaults.
struct FigureOptions {
    double kappa = 1.0;
    double beta1 = 0.0;
    double beta2 = 0.0;
    std::optional<std::vector<double>> gammas;
    std::optional<std::vector<double>> phis;
    std::optional<std::vector<double>> rhos;
    std::optional<double> sigma;
    std::optional<int> nsites;
    std::optional<int> points;
    std::optional<double> zmax;
    // fig4 panel (b)
    double z0 = 3.0;
    double gamma_max = 5.0;
    int gamma_points = 201;
};

struct OutputFile {
    std::string name;
    CsvTable table;
};

std::vector<OutputFile> figure2(const FigureOptions& options);
std::vector<OutputFile> figure3(const FigureOptions& options);
std::vector<OutputFile> figure4(const FigureOptions& options);
std::vector<OutputFile> figure5(const FigureOptions& options);

/// Short decimal form used in file names and column labels ("0.5", "2", "2.0944").
std::string short_number(double value);

}  // namespace ptq
