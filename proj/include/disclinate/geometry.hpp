#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "disclinate/disclination_field.hpp"
#include "disclinate/grid.hpp"
#include "disclinate/so3.hpp"

namespace disclinate {

/// Closed polyline; the last vertex connects back to the first. Integrals
/// follow vertex order, so a clockwise contour reports negated values.
class Contour {
public:
    /// Throws std::invalid_argument for fewer than 3 vertices or non-finite input.
    explicit Contour(std::vector<Point2> vertices);

    static Contour circle(Point2 center, double radius, std::size_t segments);
    static Contour ellipse(Point2 center, double semi_x, double semi_y, double rotation, std::size_t segments);

    std::span<const Point2> vertices() const noexcept { return vertices_; }
    bool counterclockwise() const noexcept { return signed_area_ > 0.0; }
    double signed_area() const noexcept { return signed_area_; }
    double length() const;
    Contour reversed() const;

    /// Winding number of the contour around p (positive for counterclockwise loops).
    int winding_number(Point2 p) const;
    double distance_to(Point2 p) const;

private:
    std::vector<Point2> vertices_;
    double signed_area_ = 0.0;
};

/// Adaptive per-segment 8-point Gauss-Legendre settings.
struct QuadratureOptions {
    double rel_tol = 1e-10;
    double abs_tol = 1e-13;
    int max_depth = 48;
};

/// Integral of w . dx along the polyline through `points` (closing it if `closed`),
/// one value per internal dual component.
Eigen::Vector3d polyline_integral(const PlanarConnection& field, std::span<const Point2> points, bool closed,
                                  const QuadratureOptions& options = {});

inline Eigen::Vector3d contour_integral(const PlanarConnection& field, const Contour& contour,
                                        const QuadratureOptions& options = {}) {
    return polyline_integral(field, contour.vertices(), true, options);
}

/// Dual curvature R_{xy k} = 2 (d_x w_y^k - d_y w_x^k + eps_{ijk} w_x^i w_y^j) at a point.
struct CurvatureSample {
    Eigen::Vector3d dual = Eigen::Vector3d::Zero();
    /// The R_{xy}^3 component, the only one a disclination field populates.
    double value() const { return dual[2]; }
};

/// Central-difference curvature with O(step^2) error.
CurvatureSample curvature_fd(const PlanarConnection& field, Point2 p, double step);

/// Curvature at interior node (i, j) of a sampled connection. The field holds
/// either 2 components (w_x^3, w_y^3) or 6 (w_x^1..3, w_y^1..3).
CurvatureSample curvature_fd(const GridField& field, std::size_t i, std::size_t j);

/// Flux of R_{xy}^3 through the region bounded by `region`, computed as
/// 2 * closed-line-integral of w^3 by Stokes.
double curvature_flux(const PlanarConnection& field, const Contour& region, const QuadratureOptions& options = {});

/// Sum of windings enclosed by the contour, each weighted by the contour's winding number about its core.
int enclosed_winding(const DisclinationConfig& config, const Contour& contour);

/// Throws CoreSingularity when the contour passes within kCoreEpsilon of a core.
void check_contour_off_cores(const DisclinationConfig& config, const Contour& contour);

/// Frank vector Theta_k from the loop integral of the connection: (0, 0, 2 pi sum n).
AxisAngleVector frank_vector(const DisclinationConfig& config, const Contour& contour);

struct Holonomy {
    RotationMatrix matrix;
    /// Unwrapped sum of per-segment w^3 . dx.
    double accumulated_angle = 0.0;
    /// Unwrapped sum of the per-segment dual vectors.
    Eigen::Vector3d accumulated = Eigen::Vector3d::Zero();
};

/// Ordered product S_1 S_2 ... S_N of rodrigues(integral of w over segment k) along
/// the contour cut into `segments` pieces of equal arc length.
Holonomy holonomy(const PlanarConnection& field, const Contour& contour, std::size_t segments);
Holonomy holonomy(const DisclinationConfig& config, const Contour& contour, std::size_t segments);

/// Rotation angle at `target` obtained by integrating w^3 from `base` through the
/// intermediate `path` vertices.
double reconstruct_theta(const PlanarConnection& field, Point2 base, Point2 target, std::span<const Point2> path,
                         const QuadratureOptions& options = {});

/// Samples (w_x^3, w_y^3) from the closed-form field; core nodes become NaN.
GridField sample_connection(const DisclinationConfig& config, const GridSpec& spec);

/// Cell-centred R - J for a sampled planar connection (w_x^3, w_y^3). R comes from
/// the trapezoidal circulation around each cell, J puts mass 4 pi n into the cell
/// containing each core. Result has dims - 1 cells with origin at the first cell centre.
GridField field_equation_residual(const GridField& omega, const DisclinationConfig& config);

/// Cell index containing `p`, or false if p is outside the cell range.
bool containing_cell(const GridSpec& nodes, Point2 p, std::size_t& ci, std::size_t& cj);

}  // namespace disclinate
