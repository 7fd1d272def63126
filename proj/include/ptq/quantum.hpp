// Two-photon observables built from the coupler scattering matrix.
//
// Under propagation every creation operator is replaced by a combination of
// output creation operators weighted by S (plus reservoir terms), so each
// two-photon probability below is a polynomial in the entries of S.

#pragma once

#include <variant>

#include <Eigen/Dense>

#include "ptq/core.hpp"
#include "ptq/reservoir.hpp"

namespace ptq {

/// Photon-number distribution for one photon injected in each waveguide
/// (same polarization).
struct TwoPhotonOccupations {
    double p20;  // both in W1
    double p02;  // both in W2
    double p11;  // one in each (coincidence)
    double p_lost;
};

TwoPhotonOccupations occupations_indistinguishable(const ScatteringMatrix& s);

/// 2|S11 S12|^2 + 2|S21 S22|^2 + |S11 S22 + S12 S21|^2.
double survival_indistinguishable(const ScatteringMatrix& s);

/// Survival for the polarization-entangled input with phase phi in [0, pi].
double survival_entangled(const ScatteringMatrix& s, double phi);

/// |det S|^2, the phi = pi (fermion-like) survival.
double survival_fermionic(const ScatteringMatrix& s);

/// Mean number of photons left in the coupler when one photon enters each
/// waveguide.
double mean_photon_number(const ScatteringMatrix& s);

/// Survival probability for any supported input.
double survival(const ScatteringMatrix& s, const TwoPhotonInput& input);

// Where the scattering matrices come from.
struct MarkovianBackend {};
struct LatticeBackend {
    LatticeReservoir lattice;
};
using Backend = std::variant<MarkovianBackend, LatticeBackend>;

/// Survival probability along the grid. The lattice backend requires
/// params.gamma() == 0. OpenMP-parallel over the grid.
DecayCurve survival_curve(const CouplerParams& params, const TwoPhotonInput& input, const PropagationGrid& grid,
                          const Backend& backend);

/// Serial reference for survival_curve.
DecayCurve survival_curve_serial(const CouplerParams& params, const TwoPhotonInput& input,
                                 const PropagationGrid& grid, const Backend& backend);

/// Brute-force two-particle evolution used to cross-check the survival
/// formulas. The two-photon amplitude matrix evolves as A -> U A U^T with
/// U = exp(-i H z), computed by Pade scaling-and-squaring (independent of any
/// eigendecomposition). Indices 0 and 1 of H are W1 and W2. H may be the
/// Hermitian lattice Hamiltonian or the non-Hermitian 2x2 coupler matrix.
double two_photon_oracle(const Eigen::MatrixXcd& hamiltonian, const TwoPhotonInput& input, double z);
double two_photon_oracle(const Eigen::MatrixXd& hamiltonian, const TwoPhotonInput& input, double z);

}  // namespace ptq
