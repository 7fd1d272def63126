#include "ptq/scattering.hpp"

#include <cmath>

#include "parallel.hpp"

namespace ptq {

namespace {

constexpr cplx kI{0.0, 1.0};

// Below this |W z| the even functions cos(x) and sin(x)/W are summed as
// series in x^2; four terms leave a truncation error below 1e-32.
constexpr double kSeriesThreshold = 1e-4;

// Beyond this |Im(W z)| cos and sin overflow long before the e^{-gamma z/2}
// prefactor brings them back down, so the exponents are merged first.
constexpr double kMergedExponentThreshold = 30.0;

ScatteringMatrix closed_form(const CouplerParams& p, double z, bool negate_root) {
    if (!(z >= 0.0) || !std::isfinite(z)) throw ValidationError("z must be finite and non-negative");

    const cplx half_trace{0.5 * (p.beta1() + p.beta2()), -0.5 * p.gamma()};
    const cplx half_split{0.5 * (p.beta1() - p.beta2()), 0.5 * p.gamma()};  // M11 - tr(M)/2
    const cplx omega_sq = p.kappa() * p.kappa() + half_split * half_split;
    const cplx x_sq = omega_sq * z * z;

    cplx even_part;  // e^{-i t z} cos(W z)
    cplx odd_part;   // e^{-i t z} sin(W z) / W
    if (std::abs(x_sq) < kSeriesThreshold * kSeriesThreshold) {
        const cplx phase = std::exp(-kI * half_trace * z);
        const cplx c = 1.0 - x_sq / 2.0 * (1.0 - x_sq / 12.0 * (1.0 - x_sq / 30.0));
        const cplx s = z * (1.0 - x_sq / 6.0 * (1.0 - x_sq / 20.0 * (1.0 - x_sq / 42.0)));
        even_part = phase * c;
        odd_part = phase * s;
    } else {
        cplx omega = std::sqrt(omega_sq);
        if (negate_root) omega = -omega;
        const cplx x = omega * z;
        if (std::abs(x.imag()) <= kMergedExponentThreshold) {
            const cplx phase = std::exp(-kI * half_trace * z);
            even_part = phase * std::cos(x);
            odd_part = phase * std::sin(x) / omega;
        } else {
            const cplx up = std::exp(-kI * half_trace * z + kI * x);
            const cplx down = std::exp(-kI * half_trace * z - kI * x);
            even_part = 0.5 * (up + down);
            odd_part = (up - down) / (2.0 * kI * omega);
        }
    }

    const cplx off = -kI * odd_part * p.kappa();
    const cplx shift = kI * odd_part * half_split;
    // det exp(-iMz) = exp(-iz tr M), exact where the entries would cancel.
    const cplx det = std::exp(-2.0 * kI * half_trace * z);
    return ScatteringMatrix(ComplexMatrix2(even_part - shift, off, off, even_part + shift), z, det);
}

}  // namespace

ScatteringMatrix scattering_matrix(const CouplerParams& params, double z) { return closed_form(params, z, false); }

ScatteringMatrix scattering_matrix_on_branch(const CouplerParams& params, double z, bool negate_root) {
    return closed_form(params, z, negate_root);
}

std::vector<ScatteringMatrix> scattering_curve(const CouplerParams& params, const PropagationGrid& grid) {
    const int n = grid.size();
    std::vector<ScatteringMatrix> out(static_cast<std::size_t>(n), ScatteringMatrix(ComplexMatrix2::identity(), 0.0));
    detail::parallel_for(n, [&](int i) { out[static_cast<std::size_t>(i)] = scattering_matrix(params, grid[i]); });
    return out;
}

std::vector<ScatteringMatrix> scattering_curve_serial(const CouplerParams& params, const PropagationGrid& grid) {
    std::vector<ScatteringMatrix> out;
    out.reserve(static_cast<std::size_t>(grid.size()));
    for (int i = 0; i < grid.size(); ++i) out.push_back(scattering_matrix(params, grid[i]));
    return out;
}

}  // namespace ptq
