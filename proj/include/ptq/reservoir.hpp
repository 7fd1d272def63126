// Explicit tight-binding lattice reservoir attached to the lossy waveguide.
//
// The photon Hamiltonian is quadratic, so its single-excitation matrix
// (coupler modes W1, W2 followed by the lattice sites) determines every
// multi-photon amplitude. The Markovian loss rate follows from the
// golden-rule resonance formula; the exact amplitudes from diagonalizing the
// full Hermitian matrix.

#pragma once

#include <functional>
#include <vector>

#include <Eigen/Dense>

#include "ptq/core.hpp"

namespace ptq {

/// Which chain site W2 couples to. Center realizes a waveguide side-coupled
/// to an infinite array (loss rate rho^2 / (2 sigma)); Edge realizes a
/// semi-infinite array (rho^2 / sigma at band center).
enum class Attachment { Center, Edge };

/// Open chain of n_sites identical waveguides with hopping sigma
/// (band beta_lattice + 2 sigma cos k), coupled to W2 with strength rho.
class LatticeReservoir {
public:
    LatticeReservoir(double sigma, double rho, int n_sites, double beta_lattice = 0.0,
                     Attachment attachment = Attachment::Center);

    double sigma() const noexcept { return sigma_; }
    double rho() const noexcept { return rho_; }
    int n_sites() const noexcept { return n_sites_; }
    double beta_lattice() const noexcept { return beta_lattice_; }
    Attachment attachment() const noexcept { return attachment_; }

    /// Zero-based chain index of the site coupled to W2.
    int attached_site() const noexcept { return attachment_ == Attachment::Edge ? 0 : (n_sites_ - 1) / 2; }

    LatticeReservoir with_sites(int n_sites) const {
        return {sigma_, rho_, n_sites, beta_lattice_, attachment_};
    }

private:
    double sigma_;
    double rho_;
    int n_sites_;
    double beta_lattice_;
    Attachment attachment_;
};

/// Markovian loss rate of the lattice reservoir, rho^2 / (2 sigma).
double lattice_gamma(double sigma, double rho);

/// Reservoir dispersion beta(k) on [-pi, pi). `slope` may be left empty, in
/// which case beta'(k) is estimated by Richardson-extrapolated differences.
struct Dispersion {
    std::function<double(double)> value;
    std::function<double(double)> slope;
};

/// beta_lattice + 2 sigma cos k with its exact derivative.
Dispersion chain_dispersion(double beta_lattice, double sigma);

struct GoldenRuleResult {
    double gamma = 0.0;
    /// No resonance with the band: the mode decays into nothing and the
    /// Markovian description does not apply (bound-state regime).
    bool bound_state = false;
    std::vector<double> resonances;
};

/// Real part of the reservoir-induced rate,
///   gamma = pi * sum_{k0} |g(k0)|^2 / |beta'(k0)|   over beta(k0) = beta2.
/// The Lamb shift (imaginary part) is dropped.
GoldenRuleResult golden_rule_gamma(const Dispersion& dispersion, const std::function<double(double)>& coupling,
                                   double beta2, int scan_points = 4096);

/// Chain length for which waves launched at the attachment site cannot be
/// reflected back before z_max: ceil(safety * 2 sigma * z_max) + 10.
int min_lattice_size(double sigma, double z_max, double safety = 2.5);

/// Real symmetric single-excitation Hamiltonian ordered (W1, W2, site 1..N).
/// The coupler's gamma must be zero: loss comes from the lattice.
Eigen::MatrixXd full_hamiltonian(const CouplerParams& params, const LatticeReservoir& lattice);

/// Amplitudes over (W1, W2, site 1..N) of one propagated basis state.
struct FullSystemState {
    Eigen::VectorXcd amplitudes;
    double norm() const { return amplitudes.norm(); }
};

/// Diagonalizes the full Hamiltonian once; every later evaluation of
/// <n| exp(-i H z) |l> is a pure function of z.
class LatticePropagator {
public:
    LatticePropagator(const CouplerParams& params, const LatticeReservoir& lattice);
    explicit LatticePropagator(const Eigen::MatrixXd& hamiltonian);

    int dimension() const noexcept { return static_cast<int>(energies_.size()); }
    const Eigen::VectorXd& energies() const noexcept { return energies_; }

    /// 2x2 restriction of exp(-i H z) to the coupler modes.
    ScatteringMatrix scattering(double z) const;

    /// exp(-i H z) |basis_index>.
    FullSystemState evolve_basis(int basis_index, double z) const;

    /// OpenMP-parallel over the grid.
    std::vector<ScatteringMatrix> scattering_curve(const PropagationGrid& grid) const;
    std::vector<ScatteringMatrix> scattering_curve_serial(const PropagationGrid& grid) const;

private:
    Eigen::VectorXd energies_;
    Eigen::MatrixXd modes_;  // columns are eigenvectors
    // Overlap weights V(n,k) V(l,k) for the coupler block.
    Eigen::VectorXd w11_, w12_, w22_;
};

/// S_{n,l}(z) = <n| exp(-i H z) |l> for n, l in {W1, W2}. Diagonalizes on
/// every call; use LatticePropagator for curves.
ScatteringMatrix nonmarkovian_scattering(const CouplerParams& params, const LatticeReservoir& lattice, double z);

}  // namespace ptq
