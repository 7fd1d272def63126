#include "ptq/classical.hpp"

#include <cmath>

#include "parallel.hpp"
#include "ptq/scattering.hpp"

namespace ptq {

std::string to_string(EpRegimeKind kind) {
    switch (kind) {
        case EpRegimeKind::Below: return "below";
        case EpRegimeKind::At: return "at";
        case EpRegimeKind::Above: return "above";
    }
    return "unknown";
}

ComplexMatrix2 coupler_matrix(const CouplerParams& params) {
    return {params.beta1(), params.kappa(), params.kappa(), cplx(params.beta2(), -params.gamma())};
}

SupermodePair supermodes(const CouplerParams& params) {
    const cplx half_trace{0.5 * (params.beta1() + params.beta2()), -0.5 * params.gamma()};
    const cplx half_split{0.5 * (params.beta1() - params.beta2()), 0.5 * params.gamma()};
    const cplx omega = std::sqrt(params.kappa() * params.kappa() + half_split * half_split);

    cplx a = half_trace + omega;
    cplx b = half_trace - omega;
    // Ties in the imaginary part are decided on the real part; the tolerance
    // only absorbs the last-bit noise of the square root.
    const double tie_tol = 1e-14 * (std::abs(a) + std::abs(b) + params.kappa());
    const bool swap = (std::abs(a.imag() - b.imag()) <= tie_tol) ? (a.real() > b.real()) : (a.imag() < b.imag());
    if (swap) std::swap(a, b);
    return {a, b};
}

EpRegime classify_ep(const CouplerParams& params) {
    if (params.beta1() != params.beta2()) {
        throw ValidationError(
            "classify_ep requires beta1 == beta2; use supermodes() for the spectrum of a detuned coupler");
    }
    const double k2 = params.kappa() * params.kappa();
    const double half_gamma = 0.5 * params.gamma();
    const double disc = k2 - half_gamma * half_gamma;
    const double tol = 1e-12 * k2;
    const EpRegimeKind kind = disc > tol ? EpRegimeKind::Below : (disc < -tol ? EpRegimeKind::Above : EpRegimeKind::At);
    return {kind, disc};
}

Amplitudes propagate_classical(const CouplerParams& params, const Amplitudes& c0, double z) {
    return scattering_matrix(params, z).s() * c0;
}

double classical_power(const ScatteringMatrix& s, ClassicalInput input) {
    const auto& m = s.s();
    if (input == ClassicalInput::SingleWaveguide) return std::norm(m.m11()) + std::norm(m.m21());
    // H starts in W1, V in W2, each carrying half the power; they never mix.
    return 0.5 * (std::norm(m.m11()) + std::norm(m.m21())) + 0.5 * (std::norm(m.m12()) + std::norm(m.m22()));
}

DecayCurve classical_power_curve(const CouplerParams& params, ClassicalInput input, const PropagationGrid& grid) {
    std::vector<CurvePoint> pts(static_cast<std::size_t>(grid.size()));
    detail::parallel_for(grid.size(), [&](int i) {
        const double z = grid[i];
        pts[static_cast<std::size_t>(i)] = {z, classical_power(scattering_matrix(params, z), input)};
    });
    return DecayCurve("classical_power_" + to_string(input), std::move(pts));
}

DecayCurve classical_power_curve_serial(const CouplerParams& params, ClassicalInput input,
                                        const PropagationGrid& grid) {
    std::vector<CurvePoint> pts;
    pts.reserve(static_cast<std::size_t>(grid.size()));
    for (int i = 0; i < grid.size(); ++i) {
        const double z = grid[i];
        pts.push_back({z, classical_power(scattering_matrix(params, z), input)});
    }
    return DecayCurve("classical_power_" + to_string(input), std::move(pts));
}

}  // namespace ptq
