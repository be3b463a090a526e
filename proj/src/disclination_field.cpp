#include "disclinate/disclination_field.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "disclinate/errors.hpp"

namespace disclinate {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

std::string describe(Point2 p) {
    std::ostringstream os;
    os.precision(17);
    os << '(' << p.x << ", " << p.y << ')';
    return os.str();
}

}  // namespace

DisclinationLine::DisclinationLine(Point2 position, int winding, double cut_angle)
    : position_(position), winding_(winding), cut_angle_(cut_angle) {
    if (winding == 0) {
        throw std::invalid_argument("DisclinationLine: winding must be nonzero (n = 0 is no defect)");
    }
    if (!std::isfinite(position.x) || !std::isfinite(position.y) || !std::isfinite(cut_angle)) {
        throw std::invalid_argument("DisclinationLine: position and cut angle must be finite");
    }
}

double DisclinationLine::polar_angle(Point2 p) const {
    const Point2 d = p - position_;
    double rel = std::fmod(std::atan2(d.y, d.x) - cut_angle_, kTwoPi);
    if (rel < 0.0) rel += kTwoPi;
    if (rel >= kTwoPi) rel = 0.0;
    return cut_angle_ + rel;
}

bool DisclinationLine::on_cut(Point2 p) const {
    const Point2 d = p - position_;
    const Point2 u{std::cos(cut_angle_), std::sin(cut_angle_)};
    const double along = dot(u, d);
    const double perp = u.x * d.y - u.y * d.x;
    return along > 0.0 && std::abs(perp) <= kBranchCutTolerance * std::max(1.0, along);
}

DisclinationConfig::DisclinationConfig(std::vector<DisclinationLine> lines, Director base_director)
    : lines_(std::move(lines)), base_director_(base_director) {
    for (std::size_t a = 0; a < lines_.size(); ++a) {
        for (std::size_t b = a + 1; b < lines_.size(); ++b) {
            if (norm(lines_[a].position() - lines_[b].position()) <= kCoreEpsilon) {
                std::ostringstream os;
                os << "DisclinationConfig: lines " << a << " and " << b << " share position "
                   << describe(lines_[a].position());
                throw std::invalid_argument(os.str());
            }
        }
    }
}

int DisclinationConfig::total_winding() const {
    int total = 0;
    for (const auto& line : lines_) total += line.winding();
    return total;
}

double DisclinationConfig::distance_to_nearest_core(Point2 p) const {
    double best = std::numeric_limits<double>::infinity();
    for (const auto& line : lines_) best = std::min(best, norm(p - line.position()));
    return best;
}

void DisclinationConfig::check_off_core(Point2 p) const {
    for (const auto& line : lines_) {
        if (norm(p - line.position()) < kCoreEpsilon) {
            throw CoreSingularity("point " + describe(p) + " lies inside a disclination core");
        }
    }
}

PlanarConnection PlanarConnection::from_config(const DisclinationConfig& config) {
    return PlanarConnection([config](Point2 p) {
        const Eigen::Vector2d w = connection_at(config, p);
        PlanarConnectionValue v;
        v.x[2] = w[0];
        v.y[2] = w[1];
        return v;
    });
}

Eigen::Vector2d connection_at(const DisclinationConfig& config, Point2 p) {
    config.check_off_core(p);
    Eigen::Vector2d w = Eigen::Vector2d::Zero();
    for (const auto& line : config.lines()) {
        const Point2 d = p - line.position();
        const double r2 = d.x * d.x + d.y * d.y;
        const double two_a = 2.0 * line.strength();
        w[0] += -two_a * d.y / r2;
        w[1] += two_a * d.x / r2;
    }
    return w;
}

ComplexConnection complex_connection_at(const DisclinationConfig& config, Point2 p) {
    config.check_off_core(p);
    using namespace std::complex_literals;
    ComplexConnection c{0.0, 0.0};
    for (const auto& line : config.lines()) {
        const Point2 d = p - line.position();
        const std::complex<double> z(d.x, d.y);
        const double a = line.strength();
        c.wz += -1i * a / z;
        c.wzbar += 1i * a / std::conj(z);
    }
    return c;
}

Eigen::Vector2d real_components(const ComplexConnection& c) {
    using namespace std::complex_literals;
    const std::complex<double> wx = c.wz + c.wzbar;
    const std::complex<double> wy = 1i * c.wz - 1i * c.wzbar;
    return {wx.real(), wy.real()};
}

double theta_at(const DisclinationConfig& config, Point2 p) {
    config.check_off_core(p);
    double theta = 0.0;
    for (const auto& line : config.lines()) {
        if (line.on_cut(p)) {
            throw BranchCutError("point " + describe(p) + " lies on the branch cut of a line");
        }
        theta += line.winding() * line.polar_angle(p);
    }
    return theta;
}

Director director_at(const DisclinationConfig& config, Point2 p) {
    config.check_off_core(p);
    double theta = 0.0;
    for (const auto& line : config.lines()) theta += line.winding() * line.polar_angle(p);
    return rotate_director(config.base_director(), AxisAngleVector(0.0, 0.0, theta));
}

}  // namespace disclinate
