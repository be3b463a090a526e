#pragma once

#include <Eigen/Dense>

namespace disclinate {

/// Levi-Civita symbol with eps(0,1,2) = +1 (zero-based indices).
constexpr double levi_civita(int i, int j, int k) noexcept {
    return static_cast<double>((i - j) * (j - k) * (k - i)) / 2.0;
}

/// Axis-angle covector theta_k: direction is the rotation axis, length the angle in radians.
class AxisAngleVector {
public:
    AxisAngleVector() = default;
    explicit AxisAngleVector(const Eigen::Vector3d& components);
    AxisAngleVector(double t1, double t2, double t3);

    const Eigen::Vector3d& components() const noexcept { return components_; }
    double operator[](int k) const { return components_[k]; }
    double angle() const noexcept { return components_.norm(); }

private:
    Eigen::Vector3d components_ = Eigen::Vector3d::Zero();
};

/// Antisymmetric 3x3 array v^{ij} = -v^{ji}, stored as its three independent
/// entries (v^{23}, v^{31}, v^{12}).
class AntisymmetricPair {
public:
    AntisymmetricPair() = default;
    AntisymmetricPair(double v23, double v31, double v12) : upper_(v23, v31, v12) {}

    /// Full entry v^{ij}, zero-based indices.
    double operator()(int i, int j) const;
    Eigen::Matrix3d matrix() const;

    const Eigen::Vector3d& independent() const noexcept { return upper_; }

private:
    Eigen::Vector3d upper_ = Eigen::Vector3d::Zero();
};

/// Proper orthogonal 3x3 matrix S_i^j (row index i, column index j).
class RotationMatrix {
public:
    RotationMatrix() = default;
    explicit RotationMatrix(const Eigen::Matrix3d& entries) : entries_(entries) {}

    static RotationMatrix identity() { return RotationMatrix{}; }

    const Eigen::Matrix3d& entries() const noexcept { return entries_; }
    double operator()(int i, int j) const { return entries_(i, j); }

    /// max |S S^T - 1| entrywise
    double orthogonality_error() const;
    double determinant() const { return entries_.determinant(); }
    /// max |S - 1| entrywise
    double identity_error() const;

    friend RotationMatrix operator*(const RotationMatrix& a, const RotationMatrix& b) {
        return RotationMatrix(a.entries_ * b.entries_);
    }

private:
    Eigen::Matrix3d entries_ = Eigen::Matrix3d::Identity();
};

/// Unit vector n^i describing the local spin structure.
class Director {
public:
    static constexpr double kUnitTolerance = 1e-9;

    /// Throws std::invalid_argument if |n| differs from 1 by more than kUnitTolerance.
    /// The stored vector is renormalized.
    explicit Director(const Eigen::Vector3d& n);
    Director(double n1, double n2, double n3) : Director(Eigen::Vector3d(n1, n2, n3)) {}

    const Eigen::Vector3d& components() const noexcept { return n_; }
    double operator[](int i) const { return n_[i]; }

private:
    Eigen::Vector3d n_;
};

/// Matrix (theta eps)_i^j = theta_k eps^k_i^j.
Eigen::Matrix3d generator(const AxisAngleVector& theta);

/// Exponential map S = exp(theta eps) in closed (Rodrigues) form. Angles below
/// 1e-4 use the Taylor expansion of the trigonometric coefficients.
RotationMatrix rodrigues(const AxisAngleVector& theta);

/// v_k = 1/2 v^{ij} eps_{ijk}
AxisAngleVector dualize(const AntisymmetricPair& v);

/// v^{ij} = v_k eps^{kij}
AntisymmetricPair undualize(const AxisAngleVector& v);

/// n^i = n0^j S_j^i(theta), renormalized to unit length.
Director rotate_director(const Director& n0, const AxisAngleVector& theta);

}  // namespace disclinate
