// Cartesian parameter sweeps driven by a JSON config.
//
// Schema (every section is a flat object of scalars and arrays):
//
//   {
//     "coupler":  {"beta1": 0, "beta2": 0, "kappa": 1},
//     "backend":  {"type": "markovian"}
//              |  {"type": "lattice", "sigma": 20, "nsites": 310,
//                  "beta_lattice": 0, "attachment": "center" | "edge"},
//     "sweep":    {"gamma": [...]  (markovian only)
//                  "rho":   [...]  (lattice only)
//                  "phi":   [...]  (optional, default [0])
//                  "z":     [...]},
//     "classical_input": "balanced_orthogonal" | "single_waveguide",
//     "observables": ["classical_power", "mean_photon_number", "p_boson",
//                     "p_entangled", "p_fermion", "ep_regime", "eigenvalue_gap"]
//   }
//
// "nsites" may be omitted for the lattice backend; it then defaults to
// min_lattice_size(sigma, max z). "observables" defaults to all of them.

#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "ptq/core.hpp"
#include "ptq/csv.hpp"
#include "ptq/reservoir.hpp"

namespace ptq {

enum class Observable {
    ClassicalPower,
    MeanPhotonNumber,
    PBoson,
    PEntangled,
    PFermion,
    EpRegime,
    EigenvalueGap,
};

std::string to_string(Observable observable);

struct LatticeSweepBackend {
    double sigma;
    std::optional<int> nsites;
    double beta_lattice = 0.0;
    Attachment attachment = Attachment::Center;
};

struct SweepConfig {
    double beta1 = 0.0;
    double beta2 = 0.0;
    double kappa = 1.0;
    std::optional<LatticeSweepBackend> lattice;  // empty: Markovian
    std::vector<double> loss;                    // gamma (Markovian) or rho (lattice)
    std::vector<double> phi{0.0};
    std::vector<double> z;
    ClassicalInput classical_input = ClassicalInput::BalancedOrthogonal;
    std::vector<Observable> observables;
};

/// Validates the document against the schema. Errors name the offending key
/// path, e.g. "sweep.z[2]: expected a number".
SweepConfig parse_sweep_config(const nlohmann::json& document);
SweepConfig load_sweep_config(const std::string& path);

/// One row per (loss, phi, z) tuple in that nesting order. Tuples are
/// evaluated in parallel; rows come out in input order.
CsvTable run_sweep(const SweepConfig& config);

/// Serial reference for run_sweep.
CsvTable run_sweep_serial(const SweepConfig& config);

}  // namespace ptq
