#pragma once

#include <cmath>
#include <complex>
#include <functional>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "disclinate/so3.hpp"

namespace disclinate {

/// Evaluations closer than this to a core raise CoreSingularity.
inline constexpr double kCoreEpsilon = 1e-9;

/// Perpendicular distance below which a point counts as lying on a cut ray.
inline constexpr double kBranchCutTolerance = 1e-12;

struct Point2 {
    double x = 0.0;
    double y = 0.0;

    friend Point2 operator+(Point2 a, Point2 b) { return {a.x + b.x, a.y + b.y}; }
    friend Point2 operator-(Point2 a, Point2 b) { return {a.x - b.x, a.y - b.y}; }
    friend Point2 operator*(double s, Point2 a) { return {s * a.x, s * a.y}; }
    friend bool operator==(Point2 a, Point2 b) = default;
};

inline double norm(Point2 p) { return std::hypot(p.x, p.y); }
inline double dot(Point2 a, Point2 b) { return a.x * b.x + a.y * b.y; }

/// Straight disclination line parallel to x^3, piercing the plane at `position`.
/// Strength A = winding / 2 is derived, never stored.
class DisclinationLine {
public:
    /// Throws std::invalid_argument for winding == 0 or non-finite data.
    DisclinationLine(Point2 position, int winding, double cut_angle = 0.0);

    Point2 position() const noexcept { return position_; }
    int winding() const noexcept { return winding_; }
    double strength() const noexcept { return 0.5 * winding_; }
    /// Direction of the branch-cut ray, measured from +x.
    double cut_angle() const noexcept { return cut_angle_; }

    /// Polar angle about the core on the branch [cut_angle, cut_angle + 2 pi).
    double polar_angle(Point2 p) const;
    bool on_cut(Point2 p) const;

private:
    Point2 position_;
    int winding_;
    double cut_angle_;
};

/// Immutable set of parallel lines plus the reference director n0.
class DisclinationConfig {
public:
    /// Throws std::invalid_argument when two cores are closer than kCoreEpsilon.
    explicit DisclinationConfig(std::vector<DisclinationLine> lines,
                                Director base_director = Director(1.0, 0.0, 0.0));

    std::span<const DisclinationLine> lines() const noexcept { return lines_; }
    const Director& base_director() const noexcept { return base_director_; }
    int total_winding() const;

    /// Throws CoreSingularity if p is within kCoreEpsilon of any core.
    void check_off_core(Point2 p) const;
    double distance_to_nearest_core(Point2 p) const;

private:
    std::vector<DisclinationLine> lines_;
    Director base_director_;
};

/// Dual components of the two in-plane connection 1-form legs: x[k] = w_x^k, y[k] = w_y^k.
struct PlanarConnectionValue {
    Eigen::Vector3d x = Eigen::Vector3d::Zero();
    Eigen::Vector3d y = Eigen::Vector3d::Zero();
};

/// Connection field over the plane, evaluatable pointwise. For disclination
/// configurations only the third internal component is nonzero.
class PlanarConnection {
public:
    using Evaluator = std::function<PlanarConnectionValue(Point2)>;

    explicit PlanarConnection(Evaluator evaluator) : evaluator_(std::move(evaluator)) {}

    static PlanarConnection from_config(const DisclinationConfig& config);

    PlanarConnectionValue operator()(Point2 p) const { return evaluator_(p); }

private:
    Evaluator evaluator_;
};

/// Complex leg w_z^3 and its partner w_zbar^3.
struct ComplexConnection {
    std::complex<double> wz;
    std::complex<double> wzbar;
};

/// (w_x^3, w_y^3) summed over lines, each line contributing
/// w_x = -2A dy / r^2, w_y = 2A dx / r^2.
Eigen::Vector2d connection_at(const DisclinationConfig& config, Point2 p);

/// w_z^3 = -iA / z, w_zbar^3 = iA / zbar per line, in core-shifted coordinates.
ComplexConnection complex_connection_at(const DisclinationConfig& config, Point2 p);

/// Real legs recovered from the complex ones: w_x = w_z + w_zbar, w_y = i (w_z - w_zbar).
Eigen::Vector2d real_components(const ComplexConnection& c);

/// Rotation angle field sum_k n_k phi_k. Throws BranchCutError on a cut ray.
double theta_at(const DisclinationConfig& config, Point2 p);

/// Base director rotated about x^3 by theta_at(p). Single valued, so points on
/// a cut ray are evaluated on the lower edge of the branch instead of rejected.
Director director_at(const DisclinationConfig& config, Point2 p);

}  // namespace disclinate
