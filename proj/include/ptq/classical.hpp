// Classical coupled-mode propagation, supermodes and exceptional-point
// classification.

#pragma once

#include <string>

#include "ptq/core.hpp"

namespace ptq {

/// Complex propagation constants of the two leaky supermodes.
/// lambda1 is the slower-decaying one (larger imaginary part); equal
/// imaginary parts are ordered by ascending real part.
struct SupermodePair {
    cplx lambda1;
    cplx lambda2;

    double gap() const { return std::abs(lambda1 - lambda2); }
};

enum class EpRegimeKind { Below, At, Above };

/// Position relative to the exceptional point at gamma = 2 kappa.
/// discriminant = kappa^2 - (gamma/2)^2; |discriminant| <= 1e-12 kappa^2 counts as At.
struct EpRegime {
    EpRegimeKind kind;
    double discriminant;
};

std::string to_string(EpRegimeKind kind);

/// M = [[beta1, kappa], [kappa, beta2 - i gamma]].
ComplexMatrix2 coupler_matrix(const CouplerParams& params);

SupermodePair supermodes(const CouplerParams& params);

/// Requires beta1 == beta2; the general spectrum is available from supermodes().
EpRegime classify_ep(const CouplerParams& params);

/// (c1(z), c2(z)) = exp(-i M z) c0.
Amplitudes propagate_classical(const CouplerParams& params, const Amplitudes& c0, double z);

/// Total power |c1|^2 + |c2|^2 summed over both polarizations, normalized to
/// the (unit) input power. OpenMP-parallel over the grid.
DecayCurve classical_power_curve(const CouplerParams& params, ClassicalInput input, const PropagationGrid& grid);

/// Serial reference for classical_power_curve.
DecayCurve classical_power_curve_serial(const CouplerParams& params, ClassicalInput input,
                                        const PropagationGrid& grid);

/// Power remaining for a given input, from an already computed S.
double classical_power(const ScatteringMatrix& s, ClassicalInput input);

}  // namespace ptq
