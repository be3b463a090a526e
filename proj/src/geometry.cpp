#include "disclinate/geometry.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "disclinate/errors.hpp"

namespace disclinate {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Gauss-Legendre 8-point rule on [-1, 1].
constexpr std::array<double, 4> kGaussNodes = {0.1834346424956498, 0.5255324099163290, 0.7966664774136267,
                                               0.9602898564975363};
constexpr std::array<double, 4> kGaussWeights = {0.3626837833783620, 0.3137066458778873, 0.2223810344533745,
                                                 0.1012285362903763};

Eigen::Vector3d integrand(const PlanarConnection& field, Point2 p, Point2 d) {
    const PlanarConnectionValue w = field(p);
    return w.x * d.x + w.y * d.y;
}

Eigen::Vector3d gauss_segment(const PlanarConnection& field, Point2 a, Point2 b) {
    const Point2 d = b - a;
    const Point2 mid = 0.5 * (a + b);
    Eigen::Vector3d sum = Eigen::Vector3d::Zero();
    for (std::size_t q = 0; q < kGaussNodes.size(); ++q) {
        const Point2 off = (0.5 * kGaussNodes[q]) * d;
        sum += kGaussWeights[q] * (integrand(field, mid + off, d) + integrand(field, mid - off, d));
    }
    return 0.5 * sum;
}

Eigen::Vector3d adaptive_segment(const PlanarConnection& field, Point2 a, Point2 b, const Eigen::Vector3d& whole,
                                 double tol, int depth, int max_depth) {
    const Point2 mid = 0.5 * (a + b);
    const Eigen::Vector3d left = gauss_segment(field, a, mid);
    const Eigen::Vector3d right = gauss_segment(field, mid, b);
    const Eigen::Vector3d refined = left + right;
    if ((refined - whole).norm() <= tol) return refined;
    if (depth >= max_depth) {
        throw QuadratureFailure("adaptive quadrature did not reach the requested tolerance");
    }
    return adaptive_segment(field, a, mid, left, 0.5 * tol, depth + 1, max_depth) +
           adaptive_segment(field, mid, b, right, 0.5 * tol, depth + 1, max_depth);
}

double segment_distance(Point2 p, Point2 a, Point2 b) {
    const Point2 d = b - a;
    const double len2 = dot(d, d);
    double t = len2 > 0.0 ? dot(p - a, d) / len2 : 0.0;
    t = std::clamp(t, 0.0, 1.0);
    return norm(p - (a + t * d));
}

}  // namespace

Contour::Contour(std::vector<Point2> vertices) : vertices_(std::move(vertices)) {
    if (vertices_.size() < 3) throw std::invalid_argument("Contour: at least 3 vertices required");
    for (const auto& v : vertices_)
        if (!std::isfinite(v.x) || !std::isfinite(v.y)) throw std::invalid_argument("Contour: non-finite vertex");
    double twice_area = 0.0;
    for (std::size_t k = 0; k < vertices_.size(); ++k) {
        const Point2 a = vertices_[k];
        const Point2 b = vertices_[(k + 1) % vertices_.size()];
        twice_area += a.x * b.y - b.x * a.y;
    }
    signed_area_ = 0.5 * twice_area;
}

Contour Contour::circle(Point2 center, double radius, std::size_t segments) {
    return ellipse(center, radius, radius, 0.0, segments);
}

Contour Contour::ellipse(Point2 center, double semi_x, double semi_y, double rotation, std::size_t segments) {
    if (!(semi_x > 0.0) || !(semi_y > 0.0)) throw std::invalid_argument("Contour: radii must be positive");
    std::vector<Point2> v;
    v.reserve(segments);
    const double c = std::cos(rotation);
    const double s = std::sin(rotation);
    for (std::size_t k = 0; k < segments; ++k) {
        const double t = kTwoPi * static_cast<double>(k) / static_cast<double>(segments);
        const double ex = semi_x * std::cos(t);
        const double ey = semi_y * std::sin(t);
        v.push_back({center.x + c * ex - s * ey, center.y + s * ex + c * ey});
    }
    return Contour(std::move(v));
}

double Contour::length() const {
    double total = 0.0;
    for (std::size_t k = 0; k < vertices_.size(); ++k)
        total += norm(vertices_[(k + 1) % vertices_.size()] - vertices_[k]);
    return total;
}

Contour Contour::reversed() const {
    std::vector<Point2> v(vertices_.rbegin(), vertices_.rend());
    return Contour(std::move(v));
}

int Contour::winding_number(Point2 p) const {
    auto is_left = [](Point2 a, Point2 b, Point2 q) { return (b.x - a.x) * (q.y - a.y) - (q.x - a.x) * (b.y - a.y); };
    int wn = 0;
    const std::size_t n = vertices_.size();
    for (std::size_t k = 0; k < n; ++k) {
        const Point2 a = vertices_[k];
        const Point2 b = vertices_[(k + 1) % n];
        if (a.y <= p.y) {
            if (b.y > p.y && is_left(a, b, p) > 0.0) ++wn;
        } else if (b.y <= p.y && is_left(a, b, p) < 0.0) {
            --wn;
        }
    }
    return wn;
}

double Contour::distance_to(Point2 p) const {
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < vertices_.size(); ++k)
        best = std::min(best, segment_distance(p, vertices_[k], vertices_[(k + 1) % vertices_.size()]));
    return best;
}

Eigen::Vector3d polyline_integral(const PlanarConnection& field, std::span<const Point2> points, bool closed,
                                  const QuadratureOptions& options) {
    const std::size_t n = points.size();
    if (n < 2) return Eigen::Vector3d::Zero();
    const std::size_t edges = closed ? n : n - 1;

    std::vector<Eigen::Vector3d> coarse(edges);
    std::vector<double> lengths(edges);
    double scale = 0.0;
    double total_length = 0.0;
    for (std::size_t e = 0; e < edges; ++e) {
        const Point2 a = points[e];
        const Point2 b = points[(e + 1) % n];
        coarse[e] = gauss_segment(field, a, b);
        lengths[e] = norm(b - a);
        scale += coarse[e].norm();
        total_length += lengths[e];
    }
    if (total_length == 0.0) return Eigen::Vector3d::Zero();
    const double tol = std::max(options.rel_tol * scale, options.abs_tol);

    Eigen::Vector3d sum = Eigen::Vector3d::Zero();
    for (std::size_t e = 0; e < edges; ++e) {
        if (lengths[e] == 0.0) continue;
        sum += adaptive_segment(field, points[e], points[(e + 1) % n], coarse[e], tol * lengths[e] / total_length, 0,
                                options.max_depth);
    }
    return sum;
}

CurvatureSample curvature_fd(const PlanarConnection& field, Point2 p, double step) {
    if (!(step > 0.0)) throw std::invalid_argument("curvature_fd: step must be positive");
    const PlanarConnectionValue xp = field({p.x + step, p.y});
    const PlanarConnectionValue xm = field({p.x - step, p.y});
    const PlanarConnectionValue yp = field({p.x, p.y + step});
    const PlanarConnectionValue ym = field({p.x, p.y - step});
    const PlanarConnectionValue c = field(p);
    const Eigen::Vector3d dx_wy = (xp.y - xm.y) / (2.0 * step);
    const Eigen::Vector3d dy_wx = (yp.x - ym.x) / (2.0 * step);
    // eps_{ijk} w_x^i w_y^j is the cross product of the two legs
    return {2.0 * (dx_wy - dy_wx + c.x.cross(c.y))};
}

CurvatureSample curvature_fd(const GridField& field, std::size_t i, std::size_t j) {
    const auto& spec = field.spec();
    if (i == 0 || j == 0 || i + 1 >= spec.dims[0] || j + 1 >= spec.dims[1]) {
        throw std::out_of_range("curvature_fd: node is not interior");
    }
    const std::size_t nc = field.components();
    if (nc != 2 && nc != 6) throw std::invalid_argument("curvature_fd: grid field needs 2 or 6 components");
    auto legs = [&](std::size_t a, std::size_t b) {
        PlanarConnectionValue v;
        if (nc == 2) {
            v.x[2] = field(a, b, 0);
            v.y[2] = field(a, b, 1);
        } else {
            for (int k = 0; k < 3; ++k) {
                v.x[k] = field(a, b, static_cast<std::size_t>(k));
                v.y[k] = field(a, b, static_cast<std::size_t>(k) + 3);
            }
        }
        return v;
    };
    const double h = spec.spacing;
    const auto c = legs(i, j);
    const Eigen::Vector3d dx_wy = (legs(i + 1, j).y - legs(i - 1, j).y) / (2.0 * h);
    const Eigen::Vector3d dy_wx = (legs(i, j + 1).x - legs(i, j - 1).x) / (2.0 * h);
    return {2.0 * (dx_wy - dy_wx + c.x.cross(c.y))};
}

double curvature_flux(const PlanarConnection& field, const Contour& region, const QuadratureOptions& options) {
    return 2.0 * contour_integral(field, region, options)[2];
}

int enclosed_winding(const DisclinationConfig& config, const Contour& contour) {
    int total = 0;
    for (const auto& line : config.lines()) total += line.winding() * contour.winding_number(line.position());
    return total;
}

void check_contour_off_cores(const DisclinationConfig& config, const Contour& contour) {
    for (const auto& line : config.lines()) {
        if (contour.distance_to(line.position()) < kCoreEpsilon) {
            throw CoreSingularity("contour passes through a disclination core");
        }
    }
}

AxisAngleVector frank_vector(const DisclinationConfig& config, const Contour& contour) {
    check_contour_off_cores(config, contour);
    const PlanarConnection field = PlanarConnection::from_config(config);
    // Theta^{ij} = loop integral of w^{ij}; its dual is the loop integral of w_k.
    return AxisAngleVector(contour_integral(field, contour));
}

Holonomy holonomy(const PlanarConnection& field, const Contour& contour, std::size_t segments) {
    if (segments < 16) throw std::invalid_argument("holonomy: at least 16 segments required");
    std::vector<Point2> verts(contour.vertices().begin(), contour.vertices().end());
    verts.push_back(verts.front());
    const std::size_t edges = verts.size() - 1;
    std::vector<double> cum(edges + 1, 0.0);
    for (std::size_t e = 0; e < edges; ++e) cum[e + 1] = cum[e] + norm(verts[e + 1] - verts[e]);
    const double total = cum.back();

    auto point_at = [&](double s) {
        if (s >= total) return verts.back();
        std::size_t e = static_cast<std::size_t>(std::upper_bound(cum.begin(), cum.end(), s) - cum.begin()) - 1;
        e = std::min(e, edges - 1);
        const double len = cum[e + 1] - cum[e];
        const double t = len > 0.0 ? (s - cum[e]) / len : 0.0;
        return verts[e] + t * (verts[e + 1] - verts[e]);
    };

    Holonomy result;
    std::vector<Point2> piece;
    std::size_t next_vertex = 1;
    for (std::size_t k = 0; k < segments; ++k) {
        const double s0 = total * static_cast<double>(k) / static_cast<double>(segments);
        const double s1 = k + 1 == segments ? total : total * static_cast<double>(k + 1) / static_cast<double>(segments);
        piece.clear();
        piece.push_back(point_at(s0));
        while (next_vertex < edges && cum[next_vertex] <= s0) ++next_vertex;
        while (next_vertex < edges && cum[next_vertex] < s1) piece.push_back(verts[next_vertex++]);
        piece.push_back(point_at(s1));

        const Eigen::Vector3d step = polyline_integral(field, piece, false);
        result.accumulated += step;
        result.matrix = result.matrix * rodrigues(AxisAngleVector(step));
    }
    result.accumulated_angle = result.accumulated[2];
    return result;
}

Holonomy holonomy(const DisclinationConfig& config, const Contour& contour, std::size_t segments) {
    check_contour_off_cores(config, contour);
    return holonomy(PlanarConnection::from_config(config), contour, segments);
}

double reconstruct_theta(const PlanarConnection& field, Point2 base, Point2 target, std::span<const Point2> path,
                         const QuadratureOptions& options) {
    std::vector<Point2> points;
    points.reserve(path.size() + 2);
    points.push_back(base);
    points.insert(points.end(), path.begin(), path.end());
    points.push_back(target);
    return polyline_integral(field, points, false, options)[2];
}

GridField sample_connection(const DisclinationConfig& config, const GridSpec& spec) {
    GridField out(spec, 2);
    for (std::size_t j = 0; j < spec.dims[1]; ++j)
        for (std::size_t i = 0; i < spec.dims[0]; ++i) {
            try {
                const Eigen::Vector2d w = connection_at(config, spec.node(i, j));
                out(i, j, 0) = w[0];
                out(i, j, 1) = w[1];
            } catch (const CoreSingularity&) {
                out(i, j, 0) = std::numeric_limits<double>::quiet_NaN();
                out(i, j, 1) = std::numeric_limits<double>::quiet_NaN();
            }
        }
    return out;
}

bool containing_cell(const GridSpec& nodes, Point2 p, std::size_t& ci, std::size_t& cj) {
    const double fx = std::floor((p.x - nodes.origin.x) / nodes.spacing);
    const double fy = std::floor((p.y - nodes.origin.y) / nodes.spacing);
    if (fx < 0.0 || fy < 0.0) return false;
    if (fx >= static_cast<double>(nodes.dims[0] - 1) || fy >= static_cast<double>(nodes.dims[1] - 1)) return false;
    ci = static_cast<std::size_t>(fx);
    cj = static_cast<std::size_t>(fy);
    return true;
}

GridField field_equation_residual(const GridField& omega, const DisclinationConfig& config) {
    if (omega.components() != 2) throw GridMismatch("field_equation_residual: expected (w_x^3, w_y^3) components");
    const GridSpec& nodes = omega.spec();
    const double h = nodes.spacing;
    GridSpec cells{{nodes.origin.x + 0.5 * h, nodes.origin.y + 0.5 * h}, h, {nodes.dims[0] - 1, nodes.dims[1] - 1}};
    if (cells.dims[0] < 2 || cells.dims[1] < 2) throw GridMismatch("field_equation_residual: grid too small");
    GridField residual(cells, 1);

    for (std::size_t j = 0; j + 1 < nodes.dims[1]; ++j)
        for (std::size_t i = 0; i + 1 < nodes.dims[0]; ++i) {
            const double bottom = 0.5 * (omega(i, j, 0) + omega(i + 1, j, 0));
            const double right = 0.5 * (omega(i + 1, j, 1) + omega(i + 1, j + 1, 1));
            const double top = 0.5 * (omega(i, j + 1, 0) + omega(i + 1, j + 1, 0));
            const double left = 0.5 * (omega(i, j, 1) + omega(i, j + 1, 1));
            const double circulation = h * (bottom + right - top - left);
            residual(i, j) = 2.0 * circulation / (h * h);
        }

    for (const auto& line : config.lines()) {
        std::size_t ci = 0;
        std::size_t cj = 0;
        if (containing_cell(nodes, line.position(), ci, cj)) residual(ci, cj) -= 4.0 * std::numbers::pi * line.winding() / (h * h);
    }
    return residual;
}

}  // namespace disclinate
