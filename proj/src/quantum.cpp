#include "ptq/quantum.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <fmt/format.h>
#include <unsupported/Eigen/MatrixFunctions>

#include "parallel.hpp"
#include "ptq/scattering.hpp"

namespace ptq {

namespace {

// Largest roundoff excursion outside [0, 1] that is silently clamped.
constexpr double kClampSlack = 1e-12;

double clamp_probability(double p, const char* what) {
    if (!(p >= -kClampSlack && p <= 1.0 + kClampSlack)) {
        throw std::logic_error(fmt::format("{} = {:.17g} lies outside [0, 1]", what, p));
    }
    return std::clamp(p, 0.0, 1.0);
}

// |S11 S12|^2 + |S21 S22|^2, |perm S|^2 and |det S|^2. The entangled
// survival is a non-negative combination of the three, which avoids the
// cancellation in the cross term cos(phi) * 2 Re(S11 S22 S12* S21*).
struct SurvivalTerms {
    double bunching;
    double permanent;
    double determinant;
};

SurvivalTerms terms(const ScatteringMatrix& s) {
    return {std::norm(s.s11() * s.s12()) + std::norm(s.s21() * s.s22()),
            std::norm(s.s11() * s.s22() + s.s12() * s.s21()), std::norm(s.determinant())};
}

}  // namespace

TwoPhotonOccupations occupations_indistinguishable(const ScatteringMatrix& s) {
    const double p20 = clamp_probability(2.0 * std::norm(s.s11() * s.s12()), "p20");
    const double p02 = clamp_probability(2.0 * std::norm(s.s21() * s.s22()), "p02");
    const double p11 = clamp_probability(std::norm(s.s11() * s.s22() + s.s12() * s.s21()), "p11");
    const double lost = 1.0 - p20 - p02 - p11;
    if (lost < -kClampSlack) throw std::logic_error(fmt::format("occupations exceed unity by {:.3g}", -lost));
    return {p20, p02, p11, std::max(0.0, lost)};
}

double survival_indistinguishable(const ScatteringMatrix& s) {
    const SurvivalTerms t = terms(s);
    return clamp_probability(2.0 * t.bunching + t.permanent, "survival probability");
}

double survival_entangled(const ScatteringMatrix& s, double phi) {
    if (!(phi >= 0.0 && phi <= kPi)) throw ValidationError("phi must lie in [0, pi]");
    // cos^2(phi/2) and sin^2(phi/2) from cos(phi), which is exactly +-1 at the
    // endpoints, so phi = 0 and phi = pi reproduce the limits bit for bit.
    const double c = std::cos(phi);
    const double symmetric = 0.5 * (1.0 + c);
    const double antisymmetric = 0.5 * (1.0 - c);
    const SurvivalTerms t = terms(s);
    return clamp_probability((1.0 + c) * t.bunching + antisymmetric * t.determinant + symmetric * t.permanent,
                             "survival probability");
}

double survival_fermionic(const ScatteringMatrix& s) {
    return clamp_probability(std::norm(s.determinant()), "survival probability");
}

double mean_photon_number(const ScatteringMatrix& s) {
    const auto& m = s.s();
    return (std::norm(m.m11()) + std::norm(m.m21())) + (std::norm(m.m12()) + std::norm(m.m22()));
}

double survival(const ScatteringMatrix& s, const TwoPhotonInput& input) {
    if (const auto* e = std::get_if<PolarizationEntangled>(&input)) return survival_entangled(s, e->phi());
    return survival_indistinguishable(s);
}

namespace {

template <typename Evaluate>
DecayCurve build_curve(const CouplerParams& params, const TwoPhotonInput& input, const PropagationGrid& grid,
                       const Backend& backend, Evaluate&& evaluate) {
    std::vector<ScatteringMatrix> matrices;
    if (const auto* lat = std::get_if<LatticeBackend>(&backend)) {
        const LatticePropagator propagator(params, lat->lattice);
        matrices = evaluate(
            [&](const PropagationGrid& g) { return propagator.scattering_curve(g); },
            [&](const PropagationGrid& g) { return propagator.scattering_curve_serial(g); }, grid);
    } else {
        matrices = evaluate([&](const PropagationGrid& g) { return scattering_curve(params, g); },
                            [&](const PropagationGrid& g) { return scattering_curve_serial(params, g); }, grid);
    }
    std::vector<CurvePoint> pts(matrices.size());
    for (std::size_t i = 0; i < matrices.size(); ++i) pts[i] = {matrices[i].z(), survival(matrices[i], input)};
    return DecayCurve("survival_" + describe(input), std::move(pts));
}

}  // namespace

DecayCurve survival_curve(const CouplerParams& params, const TwoPhotonInput& input, const PropagationGrid& grid,
                          const Backend& backend) {
    return build_curve(params, input, grid, backend,
                       [](auto&& parallel, auto&&, const PropagationGrid& g) { return parallel(g); });
}

DecayCurve survival_curve_serial(const CouplerParams& params, const TwoPhotonInput& input,
                                 const PropagationGrid& grid, const Backend& backend) {
    return build_curve(params, input, grid, backend,
                       [](auto&&, auto&& serial, const PropagationGrid& g) { return serial(g); });
}

double two_photon_oracle(const Eigen::MatrixXcd& hamiltonian, const TwoPhotonInput& input, double z) {
    if (hamiltonian.rows() != hamiltonian.cols() || hamiltonian.rows() < 2) {
        throw ValidationError("oracle needs a square matrix covering W1 and W2");
    }
    const Eigen::Index dim = hamiltonian.rows();
    const Eigen::MatrixXcd u = (hamiltonian * cplx(0.0, -z)).exp();

    Eigen::MatrixXcd amp = Eigen::MatrixXcd::Zero(dim, dim);
    if (const auto* e = std::get_if<PolarizationEntangled>(&input)) {
        // Row index: H-polarized photon, column index: V-polarized photon.
        amp(0, 1) = 1.0 / std::sqrt(2.0);
        amp(1, 0) = std::polar(1.0 / std::sqrt(2.0), e->phi());
        const Eigen::MatrixXcd out = u * amp * u.transpose();
        return out.topLeftCorner(2, 2).squaredNorm();
    }

    // Single species: state = sum_{nm} A_nm a_n^dag a_m^dag |0> with A symmetric.
    amp(0, 1) = amp(1, 0) = 0.5;
    const Eigen::MatrixXcd out = u * amp * u.transpose();
    return 2.0 * std::norm(out(0, 0)) + 2.0 * std::norm(out(1, 1)) + std::norm(2.0 * out(0, 1));
}

double two_photon_oracle(const Eigen::MatrixXd& hamiltonian, const TwoPhotonInput& input, double z) {
    return two_photon_oracle(Eigen::MatrixXcd(hamiltonian.cast<cplx>()), input, z);
}

}  // namespace ptq
