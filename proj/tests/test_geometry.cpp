#include <gtest/gtest.h>

#include <random>

#include "disclinate/errors.hpp"
#include "disclinate/geometry.hpp"
#include "test_support.hpp"

using namespace disclinate;
using namespace disclinate::testing;

namespace {

DisclinationConfig single(int n, Point2 at = {0, 0}) {
    return DisclinationConfig({DisclinationLine(at, n)});
}

std::vector<Point2> as_vector(const Contour& c) { return {c.vertices().begin(), c.vertices().end()}; }

}  // namespace

TEST(ContourTest, OrientationAndWinding) {
    const Contour ccw = Contour::circle({0, 0}, 1.0, 64);
    EXPECT_TRUE(ccw.counterclockwise());
    EXPECT_EQ(ccw.winding_number({0, 0}), 1);
    EXPECT_EQ(ccw.winding_number({2, 0}), 0);
    const Contour cw = ccw.reversed();
    EXPECT_FALSE(cw.counterclockwise());
    EXPECT_EQ(cw.winding_number({0.1, 0.2}), -1);
    EXPECT_THROW(Contour({{0, 0}, {1, 0}}), std::invalid_argument);
}

TEST(CurvatureFd, FlatOffAxis) {
    const auto f = PlanarConnection::from_config(single(1));
    EXPECT_LE(std::abs(curvature_fd(f, {1, 1}, 1e-4).value()), 1e-6);
}

TEST(CurvatureFd, ZeroConnection) {
    const PlanarConnection zero([](Point2) { return PlanarConnectionValue{}; });
    EXPECT_EQ(curvature_fd(zero, {0.3, -2.0}, 1e-3).dual, Eigen::Vector3d::Zero());
}

TEST(CurvatureFd, LinearSyntheticField) {
    // w_y^3 = x, w_x^3 = 0 -> R_xy^3 = 2 (d_x x) = 2
    const PlanarConnection f([](Point2 p) {
        PlanarConnectionValue v;
        v.y[2] = p.x;
        return v;
    });
    EXPECT_NEAR(curvature_fd(f, {0.7, -0.2}, 1e-3).value(), 2.0, 1e-10);
}

TEST(CurvatureFd, QuadraticTermIsRetained) {
    // constant legs w_x = e1, w_y = e2: derivatives vanish, eps_{ij3} w_x^i w_y^j = 1
    const PlanarConnection f([](Point2) {
        PlanarConnectionValue v;
        v.x = Eigen::Vector3d(1, 0, 0);
        v.y = Eigen::Vector3d(0, 1, 0);
        return v;
    });
    const CurvatureSample r = curvature_fd(f, {0, 0}, 1e-2);
    EXPECT_NEAR(r.dual[0], 0.0, 1e-15);
    EXPECT_NEAR(r.dual[1], 0.0, 1e-15);
    EXPECT_NEAR(r.value(), 2.0, 1e-15);
}

TEST(CurvatureFd, StencilOnCoreRaises) {
    const auto f = PlanarConnection::from_config(single(1));
    EXPECT_THROW(curvature_fd(f, {1e-3, 0}, 1e-3), CoreSingularity);
}

TEST(CurvatureFd, SecondOrderConvergence) {
    const auto f = PlanarConnection::from_config(single(1));
    for (Point2 p : {Point2{1, 1}, Point2{-0.6, 0.9}, Point2{0.4, -1.3}}) {
        std::vector<double> steps{1e-2, 1e-3, 1e-4};
        std::vector<double> errors;
        for (double h : steps) errors.push_back(std::abs(curvature_fd(f, p, h).value()));
        double sx = 0, sy = 0, sxx = 0, sxy = 0;
        for (std::size_t k = 0; k < 3; ++k) {
            const double x = std::log(steps[k]);
            const double y = std::log(errors[k]);
            sx += x;
            sy += y;
            sxx += x * x;
            sxy += x * y;
        }
        const double slope = (3 * sxy - sx * sy) / (3 * sxx - sx * sx);
        EXPECT_NEAR(slope, 2.0, 0.2);
    }
}

TEST(CurvatureFd, GridFieldMatchesClosedForm) {
    const GridSpec spec{{-2, -2}, 0.05, {81, 81}};
    const GridField w = sample_connection(single(1, {0.025, 0.025}), spec);
    GridField synthetic(spec, 2);
    for (std::size_t j = 0; j < spec.dims[1]; ++j)
        for (std::size_t i = 0; i < spec.dims[0]; ++i) synthetic(i, j, 1) = spec.node(i, j).x;
    EXPECT_NEAR(curvature_fd(synthetic, 10, 20).value(), 2.0, 1e-12);
    EXPECT_LE(std::abs(curvature_fd(w, 70, 70).value()), 1e-3);
    EXPECT_THROW(curvature_fd(w, 0, 5), std::out_of_range);
}

TEST(CurvatureFlux, UnitCircleAroundSingleCore) {
    const auto cfg = single(1);
    const Contour circle = Contour::circle({0, 0}, 1.0, 128);
    const double flux = curvature_flux(PlanarConnection::from_config(cfg), circle);
    EXPECT_NEAR(flux, 4 * kPi, 1e-8);
    EXPECT_NEAR(2.0 * trapezoid_loop(cfg, as_vector(circle), 1'000'000), 4 * kPi, 1e-8);
}

TEST(CurvatureFlux, EmptyRegion) {
    const auto f = PlanarConnection::from_config(single(1));
    EXPECT_NEAR(curvature_flux(f, Contour::circle({3, 0}, 1.0, 64)), 0.0, 1e-8);
}

TEST(CurvatureFlux, TwoEnclosedLinesAdd) {
    const DisclinationConfig cfg({DisclinationLine({-0.5, 0}, 1), DisclinationLine({0.5, 0.2}, 2)});
    const Contour circle = Contour::circle({0, 0}, 2.0, 128);
    EXPECT_NEAR(curvature_flux(PlanarConnection::from_config(cfg), circle), 12 * kPi, 1e-7);
    EXPECT_NEAR(2.0 * trapezoid_loop(cfg, as_vector(circle), 1'000'000), 12 * kPi, 1e-7);
}

TEST(CurvatureFlux, QuantizedForRandomConfigsAndContours) {
    std::mt19937_64 rng(31);
    std::uniform_real_distribution<double> pos(-1.5, 1.5);
    std::uniform_int_distribution<int> wind(-3, 3);
    for (int trial = 0; trial < 20; ++trial) {
        std::vector<DisclinationLine> lines;
        for (int k = 0; k < 3; ++k) {
            int n = 0;
            while (n == 0) n = wind(rng);
            lines.emplace_back(Point2{pos(rng), pos(rng)}, n);
        }
        const DisclinationConfig cfg(lines);
        const Contour c = random_star_contour(rng, {pos(rng) * 0.3, pos(rng) * 0.3}, 0.5, 2.5, 40);
        if (std::any_of(lines.begin(), lines.end(), [&](const auto& l) { return c.distance_to(l.position()) < 0.02; }))
            continue;
        const double q = curvature_flux(PlanarConnection::from_config(cfg), c) / (4 * kPi);
        EXPECT_NEAR(q, std::round(q), 1e-6);
        EXPECT_EQ(static_cast<int>(std::round(q)), enclosed_winding(cfg, c));
    }
}

TEST(FrankVector, DoubleWinding) {
    const AxisAngleVector f = frank_vector(single(2), Contour::circle({0, 0}, 1.0, 128));
    EXPECT_NEAR(f.angle(), 4 * kPi, 1e-8);
    EXPECT_NEAR(f[2], 4 * kPi, 1e-8);
}

TEST(FrankVector, NothingEnclosed) {
    const AxisAngleVector f = frank_vector(single(2), Contour::circle({5, 5}, 1.0, 128));
    EXPECT_NEAR(f.angle(), 0.0, 1e-9);
}

TEST(FrankVector, EccentricEllipse) {
    const auto cfg = single(1, {0.9, 0.1});
    const Contour ellipse = Contour::ellipse({0, 0}, 1.2, 0.25, 0.1, 400);
    ASSERT_EQ(ellipse.winding_number({0.9, 0.1}), 1);
    const AxisAngleVector f = frank_vector(cfg, ellipse);
    EXPECT_NEAR(f[0], 0.0, 1e-15);
    EXPECT_NEAR(f[1], 0.0, 1e-15);
    EXPECT_NEAR(f[2], kTwoPi, 1e-8);
    EXPECT_NEAR(trapezoid_loop(cfg, as_vector(ellipse), 1'000'000), kTwoPi, 1e-8);
}

TEST(FrankVector, ReversedContourFlipsSign) {
    const Contour c = Contour::circle({0, 0}, 1.0, 64).reversed();
    EXPECT_NEAR(frank_vector(single(1), c)[2], -kTwoPi, 1e-8);
    EXPECT_EQ(enclosed_winding(single(1), c), -1);
}

TEST(FrankVector, DeformationInvariance) {
    std::mt19937_64 rng(32);
    const DisclinationConfig cfg({DisclinationLine({0.2, 0.1}, 1), DisclinationLine({3, 3}, 2)});
    const double reference = frank_vector(cfg, Contour::circle({0, 0}, 1.0, 128))[2];
    for (int k = 0; k < 20; ++k) {
        const Contour c = random_star_contour(rng, {0, 0}, 0.6, 1.8, 60);
        EXPECT_NEAR(frank_vector(cfg, c)[2], reference, 1e-7);
    }
}

TEST(FrankVector, ContourThroughCoreRaises) {
    const Contour square({{-1, 0}, {0, -1}, {1, 0}, {0, 1}});
    EXPECT_THROW(frank_vector(single(1, {0.5, 0.5}), square), CoreSingularity);
}

TEST(HolonomyTest, UnitCircleSingleWinding) {
    const Holonomy h = holonomy(single(1), Contour::circle({0, 0}, 1.0, 4096), 4096);
    EXPECT_LE(h.matrix.identity_error(), 1e-6);
    EXPECT_NEAR(h.accumulated_angle, kTwoPi, 1e-6);
}

TEST(HolonomyTest, NothingEnclosed) {
    const Holonomy h = holonomy(single(1), Contour::circle({4, 0}, 1.0, 64), 64);
    EXPECT_LE(h.matrix.identity_error(), 1e-12);
    EXPECT_NEAR(h.accumulated_angle, 0.0, 1e-12);
}

TEST(HolonomyTest, TripleWindingRadiusTwo) {
    const auto cfg = single(3);
    const Contour c = Contour::circle({0, 0}, 2.0, 256);
    const Holonomy h = holonomy(cfg, c, 1024);
    EXPECT_NEAR(h.accumulated_angle, 6 * kPi, 1e-5);
    EXPECT_NEAR(h.accumulated_angle, frank_vector(cfg, c)[2], 1e-9);
    EXPECT_LE(h.matrix.identity_error(), 1e-6);
}

TEST(HolonomyTest, SegmentsNeedNotMatchVertices) {
    const auto cfg = single(-2, {0.1, 0.0});
    const Contour square({{-1, -1}, {1, -1}, {1, 1}, {-1, 1}});
    for (std::size_t n : {16u, 17u, 1000u}) {
        EXPECT_NEAR(holonomy(cfg, square, n).accumulated_angle, -4 * kPi, 1e-8);
    }
    EXPECT_THROW(holonomy(cfg, square, 8), std::invalid_argument);
}

TEST(HolonomyTest, OrderedProductForNonabelianField) {
    // constant w_x = a e1, w_y = b e2: around a square the ordered product is
    // exp(a e1) exp(b e2) exp(-a e1) exp(-b e2), which is not the identity.
    const double a = 0.3;
    const double b = 0.4;
    const PlanarConnection f([&](Point2) {
        PlanarConnectionValue v;
        v.x = Eigen::Vector3d(a, 0, 0);
        v.y = Eigen::Vector3d(0, b, 0);
        return v;
    });
    const Contour square({{0, 0}, {1, 0}, {1, 1}, {0, 1}});
    const Holonomy h = holonomy(f, square, 16);
    RotationMatrix expected;
    for (int k = 0; k < 4; ++k) expected = expected * rodrigues(AxisAngleVector(a / 4, 0, 0));
    for (int k = 0; k < 4; ++k) expected = expected * rodrigues(AxisAngleVector(0, b / 4, 0));
    for (int k = 0; k < 4; ++k) expected = expected * rodrigues(AxisAngleVector(-a / 4, 0, 0));
    for (int k = 0; k < 4; ++k) expected = expected * rodrigues(AxisAngleVector(0, -b / 4, 0));
    EXPECT_LE((h.matrix.entries() - expected.entries()).cwiseAbs().maxCoeff(), 1e-14);
    EXPECT_GT(h.matrix.identity_error(), 1e-3);
}

TEST(ReconstructTheta, QuarterCircle) {
    const auto f = PlanarConnection::from_config(single(1));
    std::vector<Point2> arc;
    for (int k = 1; k < 32; ++k) {
        const double a = 0.5 * kPi * k / 32.0;
        arc.push_back({std::cos(a), std::sin(a)});
    }
    EXPECT_NEAR(reconstruct_theta(f, {1, 0}, {0, 1}, arc), kPi / 2, 1e-8);
    EXPECT_NEAR(reconstruct_theta(f, {1, 0}, {0, 1}, arc), theta_at(single(1), {0, 1}), 1e-8);
}

TEST(ReconstructTheta, TrivialPath) {
    const auto f = PlanarConnection::from_config(single(1));
    EXPECT_EQ(reconstruct_theta(f, {0.3, 0.2}, {0.3, 0.2}, {}), 0.0);
}

TEST(ReconstructTheta, MonodromyAroundCore) {
    const auto f = PlanarConnection::from_config(single(1));
    const std::vector<Point2> above{{1, 1}, {-1, 1}};
    const std::vector<Point2> below{{1, -1}, {-1, -1}};
    const double up = reconstruct_theta(f, {1, 0}, {-1, 0}, above);
    const double down = reconstruct_theta(f, {1, 0}, {-1, 0}, below);
    EXPECT_NEAR(up - down, kTwoPi, 1e-7);
}

TEST(FieldEquationResidual, ZeroFieldZeroSource) {
    const GridSpec spec{{0, 0}, 0.1, {10, 12}};
    const GridField r = field_equation_residual(GridField(spec, 2), DisclinationConfig({}));
    for (double v : r.values()) EXPECT_EQ(v, 0.0);
    EXPECT_EQ(r.spec().dims[0], 9u);
    EXPECT_EQ(r.spec().dims[1], 11u);
}

TEST(FieldEquationResidual, AnalyticFieldIsSecondOrderAwayFromCores) {
    const Point2 core{0.013, -0.021};
    const auto cfg = single(1, core);
    double previous = 0.0;
    for (double h : {0.05, 0.025}) {
        const auto n = static_cast<std::size_t>(std::round(4.0 / h)) + 1;
        const GridSpec spec{{-2, -2}, h, {n, n}};
        const GridField r = field_equation_residual(sample_connection(cfg, spec), cfg);
        double worst = 0.0;
        for (std::size_t j = 0; j < r.spec().dims[1]; ++j)
            for (std::size_t i = 0; i < r.spec().dims[0]; ++i)
                if (norm(r.spec().node(i, j) - core) > 0.5) worst = std::max(worst, std::abs(r(i, j)));
        if (previous > 0.0) EXPECT_NEAR(std::log2(previous / worst), 2.0, 0.2);
        previous = worst;
        EXPECT_LE(worst, 40.0 * h * h);
    }
}

TEST(FieldEquationResidual, TotalFluxBalances) {
    const Point2 core{0.0123, 0.0071};
    const auto cfg = single(1, core);
    const GridSpec spec{{-2, -2}, 0.02, {201, 201}};
    const GridField r = field_equation_residual(sample_connection(cfg, spec), cfg);
    double total = 0.0;
    for (double v : r.values()) total += v * spec.spacing * spec.spacing;
    EXPECT_NEAR(total, 0.0, 1e-3);
}
