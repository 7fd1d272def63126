// Shared domain types for the passive PT coupler simulator.
//
// All rates and distances are plain doubles. The usual convention is to work
// in units of the coupling constant (kappa = 1), so gamma reads as gamma/kappa
// and z as kappa*z, but nothing enforces a unit system.

#pragma once

#include <array>
#include <complex>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace ptq {

using cplx = std::complex<double>;
using Amplitudes = std::array<cplx, 2>;

inline constexpr double kPi = 3.14159265358979323846;

// Singular values of a passive propagator may exceed 1 by at most this much.
inline constexpr double kPassivityTolerance = 1e-9;

/// Raised when an input violates a documented invariant or precondition.
class ValidationError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Coupled-mode parameters of the two-waveguide coupler.
///
/// beta1/beta2 are the propagation constants of W1/W2, kappa the evanescent
/// coupling, gamma the loss rate of W2. Construction rejects kappa <= 0,
/// gamma < 0 and non-finite fields, so every instance is a valid passive
/// coupler.
class CouplerParams {
public:
    CouplerParams(double beta1, double beta2, double kappa, double gamma);

    /// Symmetric coupler, beta1 = beta2 = beta.
    static CouplerParams symmetric(double kappa, double gamma, double beta = 0.0) {
        return CouplerParams(beta, beta, kappa, gamma);
    }

    double beta1() const noexcept { return beta1_; }
    double beta2() const noexcept { return beta2_; }
    double kappa() const noexcept { return kappa_; }
    double gamma() const noexcept { return gamma_; }

    CouplerParams with_gamma(double gamma) const { return {beta1_, beta2_, kappa_, gamma}; }

    bool operator==(const CouplerParams&) const = default;

private:
    double beta1_;
    double beta2_;
    double kappa_;
    double gamma_;
};

/// Re-checks every CouplerParams invariant and returns the parameters
/// unchanged. Throws ValidationError naming the offending field.
CouplerParams validate(const CouplerParams& params);

/// Dense 2x2 complex matrix with finite entries.
class ComplexMatrix2 {
public:
    ComplexMatrix2() : ComplexMatrix2(0.0, 0.0, 0.0, 0.0) {}
    ComplexMatrix2(cplx m11, cplx m12, cplx m21, cplx m22);

    static ComplexMatrix2 identity() { return {1.0, 0.0, 0.0, 1.0}; }

    cplx m11() const noexcept { return m_[0]; }
    cplx m12() const noexcept { return m_[1]; }
    cplx m21() const noexcept { return m_[2]; }
    cplx m22() const noexcept { return m_[3]; }

    /// Zero-based (row, col) access.
    cplx operator()(int row, int col) const { return m_.at(static_cast<std::size_t>(2 * row + col)); }

    cplx trace() const noexcept { return m_[0] + m_[3]; }
    cplx determinant() const noexcept { return m_[0] * m_[3] - m_[1] * m_[2]; }

    /// Singular values, largest first.
    std::array<double, 2> singular_values() const noexcept;

    ComplexMatrix2 operator*(const ComplexMatrix2& rhs) const;
    Amplitudes operator*(const Amplitudes& v) const noexcept;

    /// Largest absolute entry difference.
    double max_abs_diff(const ComplexMatrix2& other) const noexcept;

private:
    std::array<cplx, 4> m_;
};

/// Propagator restricted to the two coupler modes, S_{n,l}(z).
///
/// Passivity is enforced on construction: no singular value may exceed
/// 1 + kPassivityTolerance.
///
/// The determinant is carried alongside the entries. Far above the
/// exceptional point it is many orders of magnitude smaller than the entry
/// products and S11 S22 - S12 S21 cancels to noise, so producers that know it
/// analytically pass it in; it must agree with the entries to within that
/// cancellation error.
class ScatteringMatrix {
public:
    /// Determinant taken from the entries.
    ScatteringMatrix(ComplexMatrix2 s, double z);
    /// Determinant supplied by the producer.
    ScatteringMatrix(ComplexMatrix2 s, double z, cplx determinant);

    const ComplexMatrix2& s() const noexcept { return s_; }
    double z() const noexcept { return z_; }

    cplx s11() const noexcept { return s_.m11(); }
    cplx s12() const noexcept { return s_.m12(); }
    cplx s21() const noexcept { return s_.m21(); }
    cplx s22() const noexcept { return s_.m22(); }

    cplx determinant() const noexcept { return det_; }

private:
    ComplexMatrix2 s_;
    double z_;
    cplx det_;
};

/// Uniform samples 0, dz, ..., z_max (both endpoints exact).
class PropagationGrid {
public:
    PropagationGrid(double z_max, int num_points);

    double z_max() const noexcept { return z_max_; }
    int size() const noexcept { return num_points_; }
    double operator[](int i) const noexcept {
        if (i == num_points_ - 1) return z_max_;
        return z_max_ * static_cast<double>(i) / static_cast<double>(num_points_ - 1);
    }
    std::vector<double> points() const;

private:
    double z_max_;
    int num_points_;
};

struct CurvePoint {
    double z;
    double value;
    bool operator==(const CurvePoint&) const = default;
};

/// Sampled (z, value) series. z starts at 0 and is strictly increasing;
/// values are non-negative.
class DecayCurve {
public:
    DecayCurve(std::string label, std::vector<CurvePoint> points);

    const std::string& label() const noexcept { return label_; }
    const std::vector<CurvePoint>& points() const noexcept { return points_; }
    std::size_t size() const noexcept { return points_.size(); }
    const CurvePoint& operator[](std::size_t i) const { return points_[i]; }

    bool operator==(const DecayCurve&) const = default;

private:
    std::string label_;
    std::vector<CurvePoint> points_;
};

// Two-photon input states.

/// One photon per waveguide, same polarization: c1^dag c2^dag |0>.
struct Indistinguishable {
    bool operator==(const Indistinguishable&) const = default;
};

/// (c1H^dag c2V^dag + e^{i phi} c1V^dag c2H^dag)|0>/sqrt(2), 0 <= phi <= pi.
/// phi = 0 behaves bosonically, phi = pi fermionically.
class PolarizationEntangled {
public:
    explicit PolarizationEntangled(double phi);
    double phi() const noexcept { return phi_; }
    bool operator==(const PolarizationEntangled&) const = default;

private:
    double phi_;
};

using TwoPhotonInput = std::variant<Indistinguishable, PolarizationEntangled>;

std::string describe(const TwoPhotonInput& input);

/// Classical excitations, both with unit total input power.
enum class ClassicalInput {
    SingleWaveguide,     // all power in W1, one polarization
    BalancedOrthogonal,  // 1/sqrt(2) in W1 (H) and 1/sqrt(2) in W2 (V)
};

std::string to_string(ClassicalInput input);

}  // namespace ptq
