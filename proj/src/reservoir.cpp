#include "ptq/reservoir.hpp"

#include <algorithm>
#include <array>
#include <cmath>

#include <fmt/format.h>

#include "parallel.hpp"

namespace ptq {

namespace {

// Ridders' polynomial extrapolation of central differences.
double ridders_derivative(const std::function<double(double)>& f, double x) {
    constexpr int kTableSize = 10;
    constexpr double kShrink = 1.4;
    constexpr double kShrink2 = kShrink * kShrink;
    std::array<std::array<double, kTableSize>, kTableSize> a{};
    double h = 0.1;
    a[0][0] = (f(x + h) - f(x - h)) / (2.0 * h);
    double best = a[0][0];
    double err = 1e300;
    for (int i = 1; i < kTableSize; ++i) {
        h /= kShrink;
        a[0][i] = (f(x + h) - f(x - h)) / (2.0 * h);
        double fac = kShrink2;
        for (int j = 1; j <= i; ++j) {
            a[j][i] = (a[j - 1][i] * fac - a[j - 1][i - 1]) / (fac - 1.0);
            fac *= kShrink2;
            const double e = std::max(std::abs(a[j][i] - a[j - 1][i]), std::abs(a[j][i] - a[j - 1][i - 1]));
            if (e <= err) {
                err = e;
                best = a[j][i];
            }
        }
        if (std::abs(a[i][i] - a[i - 1][i - 1]) >= 2.0 * err) break;
    }
    return best;
}

double bisect_root(const std::function<double(double)>& f, double lo, double hi) {
    double flo = f(lo);
    for (int iter = 0; iter < 200; ++iter) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;
        const double fmid = f(mid);
        if (fmid == 0.0) return mid;
        if ((fmid < 0.0) == (flo < 0.0)) {
            lo = mid;
            flo = fmid;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

}  // namespace

LatticeReservoir::LatticeReservoir(double sigma, double rho, int n_sites, double beta_lattice, Attachment attachment)
    : sigma_(sigma), rho_(rho), n_sites_(n_sites), beta_lattice_(beta_lattice), attachment_(attachment) {
    if (!std::isfinite(sigma) || !(sigma > 0.0)) throw ValidationError("sigma must be positive");
    if (!std::isfinite(rho) || rho < 0.0) throw ValidationError("rho must be non-negative");
    if (n_sites < 1) throw ValidationError("n_sites must be at least 1");
    if (!std::isfinite(beta_lattice)) throw ValidationError("beta_lattice must be finite");
}

double lattice_gamma(double sigma, double rho) {
    if (!(sigma > 0.0)) throw ValidationError("sigma must be positive");
    if (!(rho >= 0.0)) throw ValidationError("rho must be non-negative");
    return rho * rho / (2.0 * sigma);
}

Dispersion chain_dispersion(double beta_lattice, double sigma) {
    return {[=](double k) { return beta_lattice + 2.0 * sigma * std::cos(k); },
            [=](double k) { return -2.0 * sigma * std::sin(k); }};
}

GoldenRuleResult golden_rule_gamma(const Dispersion& dispersion, const std::function<double(double)>& coupling,
                                   double beta2, int scan_points) {
    if (!dispersion.value) throw ValidationError("dispersion function is required");
    if (scan_points < 2) throw ValidationError("scan_points must be at least 2");

    const auto detuning = [&](double k) { return dispersion.value(k) - beta2; };
    const double step = 2.0 * kPi / scan_points;

    GoldenRuleResult result;
    double k_prev = -kPi;
    double f_prev = detuning(k_prev);
    if (f_prev == 0.0) result.resonances.push_back(k_prev);
    for (int i = 1; i <= scan_points; ++i) {
        // The last sample sits on +pi, which is the same point as -pi.
        const double k = (i == scan_points) ? kPi : -kPi + step * i;
        const double f = detuning(k);
        if (f == 0.0 && i < scan_points) {
            result.resonances.push_back(k);
        } else if (f != 0.0 && f_prev != 0.0 && ((f < 0.0) != (f_prev < 0.0))) {
            result.resonances.push_back(bisect_root(detuning, k_prev, k));
        }
        k_prev = k;
        f_prev = f;
    }

    if (result.resonances.empty()) {
        result.bound_state = true;
        return result;
    }

    double gamma = 0.0;
    for (double k0 : result.resonances) {
        const double slope = dispersion.slope ? dispersion.slope(k0) : ridders_derivative(dispersion.value, k0);
        if (slope == 0.0) {
            throw ValidationError(fmt::format("resonance at k = {} is not simple (zero group velocity)", k0));
        }
        const double g = coupling ? coupling(k0) : 0.0;
        gamma += kPi * g * g / std::abs(slope);
    }
    result.gamma = gamma;
    return result;
}

int min_lattice_size(double sigma, double z_max, double safety) {
    if (!(sigma > 0.0) || !(z_max > 0.0) || !(safety >= 1.0)) {
        throw ValidationError("min_lattice_size requires sigma > 0, z_max > 0 and safety >= 1");
    }
    return static_cast<int>(std::ceil(safety * 2.0 * sigma * z_max)) + 10;
}

Eigen::MatrixXd full_hamiltonian(const CouplerParams& params, const LatticeReservoir& lattice) {
    if (params.gamma() != 0.0) {
        throw ValidationError("intrinsic loss and explicit reservoir are mutually exclusive");
    }
    const int n = lattice.n_sites();
    Eigen::MatrixXd h = Eigen::MatrixXd::Zero(n + 2, n + 2);
    h(0, 0) = params.beta1();
    h(1, 1) = params.beta2();
    h(0, 1) = h(1, 0) = params.kappa();
    const int attach = 2 + lattice.attached_site();
    h(1, attach) = h(attach, 1) = lattice.rho();
    for (int j = 2; j < n + 2; ++j) {
        h(j, j) = lattice.beta_lattice();
        if (j + 1 < n + 2) h(j, j + 1) = h(j + 1, j) = lattice.sigma();
    }
    return h;
}

LatticePropagator::LatticePropagator(const CouplerParams& params, const LatticeReservoir& lattice)
    : LatticePropagator(full_hamiltonian(params, lattice)) {}

LatticePropagator::LatticePropagator(const Eigen::MatrixXd& hamiltonian) {
    if (hamiltonian.rows() != hamiltonian.cols() || hamiltonian.rows() < 2) {
        throw ValidationError("hamiltonian must be square with at least the two coupler modes");
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(hamiltonian);
    if (solver.info() != Eigen::Success) throw std::runtime_error("eigendecomposition of the lattice failed");
    energies_ = solver.eigenvalues();
    modes_ = solver.eigenvectors();
    w11_ = modes_.row(0).array().square();
    w12_ = (modes_.row(0).array() * modes_.row(1).array()).transpose();
    w22_ = modes_.row(1).array().square();
}

ScatteringMatrix LatticePropagator::scattering(double z) const {
    if (!(z >= 0.0) || !std::isfinite(z)) throw ValidationError("z must be finite and non-negative");
    cplx s11{0.0}, s12{0.0}, s22{0.0};
    for (Eigen::Index k = 0; k < energies_.size(); ++k) {
        const cplx phase = std::polar(1.0, -energies_[k] * z);
        s11 += w11_[k] * phase;
        s12 += w12_[k] * phase;
        s22 += w22_[k] * phase;
    }
    return ScatteringMatrix(ComplexMatrix2(s11, s12, s12, s22), z);
}

FullSystemState LatticePropagator::evolve_basis(int basis_index, double z) const {
    if (basis_index < 0 || basis_index >= dimension()) throw ValidationError("basis index out of range");
    const Eigen::VectorXcd coeffs =
        (modes_.row(basis_index).transpose().cast<cplx>().array() *
         (energies_.cast<cplx>() * cplx(0.0, -z)).array().exp())
            .matrix();
    return {modes_.cast<cplx>() * coeffs};
}

std::vector<ScatteringMatrix> LatticePropagator::scattering_curve(const PropagationGrid& grid) const {
    std::vector<ScatteringMatrix> out(static_cast<std::size_t>(grid.size()),
                                      ScatteringMatrix(ComplexMatrix2::identity(), 0.0));
    detail::parallel_for(grid.size(), [&](int i) { out[static_cast<std::size_t>(i)] = scattering(grid[i]); });
    return out;
}

std::vector<ScatteringMatrix> LatticePropagator::scattering_curve_serial(const PropagationGrid& grid) const {
    std::vector<ScatteringMatrix> out;
    out.reserve(static_cast<std::size_t>(grid.size()));
    for (int i = 0; i < grid.size(); ++i) out.push_back(scattering(grid[i]));
    return out;
}

ScatteringMatrix nonmarkovian_scattering(const CouplerParams& params, const LatticeReservoir& lattice, double z) {
    return LatticePropagator(params, lattice).scattering(z);
}

}  // namespace ptq
