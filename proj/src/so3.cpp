#include "disclinate/so3.hpp"

#include <cmath>
#include <stdexcept>

namespace disclinate {

namespace {

constexpr double kSmallAngle = 1e-4;

}  // namespace

AxisAngleVector::AxisAngleVector(const Eigen::Vector3d& components) : components_(components) {
    if (!components_.allFinite()) {
        throw std::invalid_argument("AxisAngleVector: components must be finite");
    }
}

AxisAngleVector::AxisAngleVector(double t1, double t2, double t3)
    : AxisAngleVector(Eigen::Vector3d(t1, t2, t3)) {}

double AntisymmetricPair::operator()(int i, int j) const {
    if (i == j) return 0.0;
    // v^{ij} = v_k eps^{kij} with v_k stored in upper_
    double value = 0.0;
    for (int k = 0; k < 3; ++k) value += upper_[k] * levi_civita(k, i, j);
    return value;
}

Eigen::Matrix3d AntisymmetricPair::matrix() const {
    Eigen::Matrix3d m;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) m(i, j) = (*this)(i, j);
    return m;
}

double RotationMatrix::orthogonality_error() const {
    return (entries_ * entries_.transpose() - Eigen::Matrix3d::Identity()).cwiseAbs().maxCoeff();
}

double RotationMatrix::identity_error() const {
    return (entries_ - Eigen::Matrix3d::Identity()).cwiseAbs().maxCoeff();
}

Director::Director(const Eigen::Vector3d& n) {
    const double norm = n.norm();
    if (!std::isfinite(norm) || std::abs(norm - 1.0) > kUnitTolerance) {
        throw std::invalid_argument("Director: vector is not unit length");
    }
    n_ = n / norm;
}

Eigen::Matrix3d generator(const AxisAngleVector& theta) {
    Eigen::Matrix3d m = Eigen::Matrix3d::Zero();
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            for (int k = 0; k < 3; ++k) m(i, j) += theta[k] * levi_civita(k, i, j);
    return m;
}

RotationMatrix rodrigues(const AxisAngleVector& theta) {
    const Eigen::Vector3d& t = theta.components();
    const double angle = t.norm();
    const double angle2 = angle * angle;

    double cos_term;
    double sin_coeff;   // sin(theta) / theta
    double cos_coeff;   // (1 - cos(theta)) / theta^2
    if (angle < kSmallAngle) {
        cos_term = 1.0 - angle2 / 2.0;
        sin_coeff = 1.0 - angle2 / 6.0;
        cos_coeff = 0.5 - angle2 / 24.0;
    } else {
        cos_term = std::cos(angle);
        sin_coeff = std::sin(angle) / angle;
        cos_coeff = (1.0 - cos_term) / angle2;
    }

    Eigen::Matrix3d s = cos_term * Eigen::Matrix3d::Identity() + sin_coeff * generator(theta) +
                        cos_coeff * (t * t.transpose());
    return RotationMatrix(s);
}

AxisAngleVector dualize(const AntisymmetricPair& v) {
    Eigen::Vector3d out = Eigen::Vector3d::Zero();
    for (int k = 0; k < 3; ++k)
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) out[k] += 0.5 * v(i, j) * levi_civita(i, j, k);
    return AxisAngleVector(out);
}

AntisymmetricPair undualize(const AxisAngleVector& v) {
    return AntisymmetricPair(v[0], v[1], v[2]);
}

Director rotate_director(const Director& n0, const AxisAngleVector& theta) {
    const RotationMatrix s = rodrigues(theta);
    // n^i = n0^j S_j^i
    Eigen::Vector3d n = s.entries().transpose() * n0.components();
    return Director(n / n.norm());
}

}  // namespace disclinate
