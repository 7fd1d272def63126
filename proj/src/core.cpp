#include "ptq/core.hpp"

#include <algorithm>
#include <cmath>
#include <Eigen/SVD>
#include <fmt/format.h>

namespace ptq {

namespace {

void require_finite(double value, const char* field) {
    if (!std::isfinite(value)) throw ValidationError(std::string(field) + " must be finite");
}

bool is_finite(cplx c) { return std::isfinite(c.real()) && std::isfinite(c.imag()); }

}  // namespace

CouplerParams::CouplerParams(double beta1, double beta2, double kappa, double gamma)
    : beta1_(beta1), beta2_(beta2), kappa_(kappa), gamma_(gamma) {
    require_finite(beta1, "beta1");
    require_finite(beta2, "beta2");
    require_finite(kappa, "kappa");
    require_finite(gamma, "gamma");
    if (!(kappa > 0.0)) throw ValidationError("kappa must be positive");
    if (gamma < 0.0) throw ValidationError("gamma must be non-negative");
}

CouplerParams validate(const CouplerParams& params) {
    return CouplerParams(params.beta1(), params.beta2(), params.kappa(), params.gamma());
}

ComplexMatrix2::ComplexMatrix2(cplx m11, cplx m12, cplx m21, cplx m22) : m_{m11, m12, m21, m22} {
    for (const auto& c : m_) {
        if (!is_finite(c)) throw ValidationError("matrix entries must be finite");
    }
}

std::array<double, 2> ComplexMatrix2::singular_values() const noexcept {
    // Closed-form 2x2 expressions lose half the digits when the two values
    // are close (near-unitary S), so use a backward-stable SVD.
    Eigen::Matrix2cd m;
    m << m_[0], m_[1], m_[2], m_[3];
    const Eigen::Vector2d sv = Eigen::JacobiSVD<Eigen::Matrix2cd>(m).singularValues();
    return {sv(0), sv(1)};
}

ComplexMatrix2 ComplexMatrix2::operator*(const ComplexMatrix2& rhs) const {
    return {m_[0] * rhs.m_[0] + m_[1] * rhs.m_[2], m_[0] * rhs.m_[1] + m_[1] * rhs.m_[3],
            m_[2] * rhs.m_[0] + m_[3] * rhs.m_[2], m_[2] * rhs.m_[1] + m_[3] * rhs.m_[3]};
}

Amplitudes ComplexMatrix2::operator*(const Amplitudes& v) const noexcept {
    return {m_[0] * v[0] + m_[1] * v[1], m_[2] * v[0] + m_[3] * v[1]};
}

double ComplexMatrix2::max_abs_diff(const ComplexMatrix2& other) const noexcept {
    double worst = 0.0;
    for (std::size_t i = 0; i < 4; ++i) worst = std::max(worst, std::abs(m_[i] - other.m_[i]));
    return worst;
}

ScatteringMatrix::ScatteringMatrix(ComplexMatrix2 s, double z) : ScatteringMatrix(s, z, s.determinant()) {}

ScatteringMatrix::ScatteringMatrix(ComplexMatrix2 s, double z, cplx determinant) : s_(s), z_(z), det_(determinant) {
    if (!(z >= 0.0) || !std::isfinite(z)) throw ValidationError("z must be finite and non-negative");
    if (!is_finite(determinant)) throw ValidationError("determinant must be finite");
    const double top = s_.singular_values()[0];
    if (top > 1.0 + kPassivityTolerance) {
        throw ValidationError(fmt::format("scattering matrix is not passive: largest singular value {}", top));
    }
    const double scale = std::abs(s_.m11() * s_.m22()) + std::abs(s_.m12() * s_.m21());
    if (std::abs(det_ - s_.determinant()) > 1e-10 * scale + 1e-300) {
        throw ValidationError("supplied determinant is inconsistent with the matrix entries");
    }
}

PropagationGrid::PropagationGrid(double z_max, int num_points) : z_max_(z_max), num_points_(num_points) {
    if (!(z_max > 0.0) || !std::isfinite(z_max)) throw ValidationError("z_max must be positive and finite");
    if (num_points < 2) throw ValidationError("num_points must be at least 2");
}

std::vector<double> PropagationGrid::points() const {
    std::vector<double> out(static_cast<std::size_t>(num_points_));
    for (int i = 0; i < num_points_; ++i) out[static_cast<std::size_t>(i)] = (*this)[i];
    return out;
}

DecayCurve::DecayCurve(std::string label, std::vector<CurvePoint> points)
    : label_(std::move(label)), points_(std::move(points)) {
    if (points_.empty()) throw ValidationError("curve must contain at least one point");
    if (points_.front().z != 0.0) throw ValidationError("curve must start at z = 0");
    for (std::size_t i = 0; i < points_.size(); ++i) {
        if (i > 0 && !(points_[i].z > points_[i - 1].z)) {
            throw ValidationError("curve z values must be strictly increasing");
        }
        if (!(points_[i].value >= 0.0) || !std::isfinite(points_[i].value)) {
            throw ValidationError(fmt::format("curve '{}' has an invalid value at z = {}", label_, points_[i].z));
        }
    }
}

PolarizationEntangled::PolarizationEntangled(double phi) : phi_(phi) {
    if (!(phi >= 0.0 && phi <= kPi)) throw ValidationError("phi must lie in [0, pi]");
}

std::string describe(const TwoPhotonInput& input) {
    if (const auto* e = std::get_if<PolarizationEntangled>(&input)) {
        return fmt::format("entangled(phi={:.17g})", e->phi());
    }
    return "indistinguishable";
}

std::string to_string(ClassicalInput input) {
    return input == ClassicalInput::SingleWaveguide ? "single_waveguide" : "balanced_orthogonal";
}

}  // namespace ptq
