// Markovian two-mode propagator S(z) = exp(-i M z).

#pragma once

#include <vector>

#include "ptq/core.hpp"

namespace ptq {

/// exp(-i M z) for the coupler matrix M of `params`, z >= 0.
///
/// Evaluated in closed form as
///   e^{-i t z} [cos(W z) I - i sin(W z)/W (M - t I)],  t = tr(M)/2,
///   W^2 = kappa^2 + ((beta1 - beta2 + i gamma)/2)^2,
/// with cos and sin(x)/W expanded in powers of W^2 z^2 when |W z| is small.
/// The expansion depends only on W^2, so the result is continuous through
/// the exceptional point (W = 0) and independent of the square-root branch.
ScatteringMatrix scattering_matrix(const CouplerParams& params, double z);

/// Same closed form, but with the square root of W^2 taken on the branch
/// selected by `negate_root`. Exists so the branch independence can be
/// checked; callers want scattering_matrix().
ScatteringMatrix scattering_matrix_on_branch(const CouplerParams& params, double z, bool negate_root);

/// One independently evaluated S per grid point. OpenMP-parallel over the grid.
std::vector<ScatteringMatrix> scattering_curve(const CouplerParams& params, const PropagationGrid& grid);

/// Serial reference for scattering_curve.
std::vector<ScatteringMatrix> scattering_curve_serial(const CouplerParams& params, const PropagationGrid& grid);

}  // namespace ptq
