#include "disclinate/equilibrium_solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include <Eigen/IterativeLinearSolvers>
#include <Eigen/Sparse>

#include "disclinate/errors.hpp"

namespace disclinate {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
constexpr double kFourPi = 4.0 * std::numbers::pi;
constexpr int kMinCoreMargin = 8;

double analytic_potential(const DisclinationConfig& sources, Point2 p) {
    double lambda = 0.0;
    for (const auto& line : sources.lines()) lambda += line.winding() * std::log(norm(p - line.position()));
    return lambda;
}

struct Lattice {
    Point2 origin;
    double h;
    std::size_t nx;
    std::size_t ny;
    std::vector<double> values;

    double at(Point2 p) const {
        auto locate = [](double f, std::size_t n, std::size_t& i, double& t) {
            if (f < -1e-9 || f > static_cast<double>(n - 1) + 1e-9) return false;
            i = std::min(static_cast<std::size_t>(std::max(0.0, std::floor(f))), n - 2);
            t = f - static_cast<double>(i);
            return true;
        };
        std::size_t i = 0;
        std::size_t j = 0;
        double tx = 0.0;
        double ty = 0.0;
        if (!locate((p.x - origin.x) / h, nx, i, tx) || !locate((p.y - origin.y) / h, ny, j, ty)) {
            throw std::out_of_range("interpolated_connection: point outside the solved grid");
        }
        auto v = [&](std::size_t a, std::size_t b) { return values[b * nx + a]; };
        return (1 - tx) * (1 - ty) * v(i, j) + tx * (1 - ty) * v(i + 1, j) + (1 - tx) * ty * v(i, j + 1) +
               tx * ty * v(i + 1, j + 1);
    }
};

std::vector<bool> source_support(const GridSpec& grid, const DisclinationConfig& sources) {
    std::vector<bool> support(grid.node_count(), false);
    for (const auto& line : sources.lines())
        for (std::size_t n : source_stencil(grid, line.position()).nodes) support[n] = true;
    return support;
}

double off_source_residual(const GridField& curvature, const GridField& source, const std::vector<bool>& support) {
    double worst = 0.0;
    const auto& spec = curvature.spec();
    for (std::size_t j = 0; j < spec.dims[1]; ++j)
        for (std::size_t i = 0; i < spec.dims[0]; ++i) {
            if (support[j * spec.dims[0] + i]) continue;
            const double r = curvature(i, j) - source(i, j);
            if (std::isfinite(r)) worst = std::max(worst, std::abs(r));
        }
    return worst;
}

}  // namespace

void SolverProblem::validate() const {
    grid.validate();
    const double h = grid.spacing;
    const double xmax = grid.origin.x + h * static_cast<double>(grid.dims[0] - 1);
    const double ymax = grid.origin.y + h * static_cast<double>(grid.dims[1] - 1);
    const double margin = kMinCoreMargin * h * (1.0 - 1e-12);
    std::size_t index = 0;
    for (const auto& line : sources.lines()) {
        const Point2 p = line.position();
        if (p.x - grid.origin.x < margin || xmax - p.x < margin || p.y - grid.origin.y < margin ||
            ymax - p.y < margin) {
            std::ostringstream os;
            os << "solver: disclination " << index << " is closer than " << kMinCoreMargin
               << " cells to the grid boundary";
            throw std::invalid_argument(os.str());
        }
        ++index;
    }
    if (max_iterations <= 0) throw std::invalid_argument("solver: max_iterations must be positive");
    if (!(tolerance > 0.0)) throw std::invalid_argument("solver: tolerance must be positive");
}

SourceStencil source_stencil(const GridSpec& grid, Point2 core) {
    const double fx = (core.x - grid.origin.x) / grid.spacing;
    const double fy = (core.y - grid.origin.y) / grid.spacing;
    auto split = [](double f, std::size_t n, std::size_t& i0, double& t) {
        const double r = std::round(f);
        if (std::abs(f - r) < 1e-12) {
            i0 = static_cast<std::size_t>(std::clamp(r, 0.0, static_cast<double>(n - 1)));
            t = 0.0;
        } else {
            i0 = static_cast<std::size_t>(std::clamp(std::floor(f), 0.0, static_cast<double>(n - 2)));
            t = f - static_cast<double>(i0);
        }
    };
    std::size_t i0 = 0;
    std::size_t j0 = 0;
    double tx = 0.0;
    double ty = 0.0;
    split(fx, grid.dims[0], i0, tx);
    split(fy, grid.dims[1], j0, ty);

    SourceStencil stencil;
    for (int dj = 0; dj < 2; ++dj)
        for (int di = 0; di < 2; ++di) {
            const double w = (di ? tx : 1.0 - tx) * (dj ? ty : 1.0 - ty);
            if (w == 0.0) continue;
            stencil.nodes.push_back((j0 + static_cast<std::size_t>(dj)) * grid.dims[0] + i0 +
                                    static_cast<std::size_t>(di));
            stencil.weights.push_back(w);
        }
    return stencil;
}

GridField rasterized_source(const GridSpec& grid, const DisclinationConfig& sources) {
    GridField density(grid, 1);
    const double area = grid.spacing * grid.spacing;
    for (const auto& line : sources.lines()) {
        const SourceStencil s = source_stencil(grid, line.position());
        for (std::size_t k = 0; k < s.nodes.size(); ++k)
            density.values()[s.nodes[k]] += kFourPi * line.winding() * s.weights[k] / area;
    }
    return density;
}

GridField discrete_curvature(const SolverSolution& solution) {
    const GridField& w = solution.connection;
    const GridSpec& spec = w.spec();
    const double h = spec.spacing;
    GridField r(spec, 1, kNaN);
    for (std::size_t j = 1; j + 1 < spec.dims[1]; ++j)
        for (std::size_t i = 1; i + 1 < spec.dims[0]; ++i) {
            const double curl = (w(i, j, 1) - w(i - 1, j, 1)) / h - (w(i, j, 0) - w(i, j - 1, 0)) / h;
            r(i, j) = 2.0 * curl;
        }
    return r;
}

SolverSolution solve_best_effort(const SolverProblem& problem) {
    problem.validate();
    const GridSpec& grid = problem.grid;
    const std::size_t nx = grid.dims[0];
    const std::size_t ny = grid.dims[1];
    const double h = grid.spacing;

    GridField lambda(grid, 1);
    if (problem.boundary == BoundaryCondition::AnalyticDirichlet && !problem.sources.lines().empty()) {
        for (std::size_t j = 0; j < ny; ++j)
            for (std::size_t i = 0; i < nx; ++i) {
                if (i == 0 || j == 0 || i + 1 == nx || j + 1 == ny)
                    lambda(i, j) = analytic_potential(problem.sources, grid.node(i, j));
            }
    }

    // Interior unknowns; h^2 (-Laplacian) lambda = -h^2 J / 2.
    const std::size_t mx = nx - 2;
    const std::size_t my = ny - 2;
    const std::size_t unknowns = mx * my;
    auto index = [mx](std::size_t i, std::size_t j) { return static_cast<Eigen::Index>((j - 1) * mx + (i - 1)); };

    const GridField source = rasterized_source(grid, problem.sources);
    Eigen::VectorXd rhs(static_cast<Eigen::Index>(unknowns));
    std::vector<Eigen::Triplet<double>> triplets;
    triplets.reserve(unknowns * 5);
    for (std::size_t j = 1; j + 1 < ny; ++j)
        for (std::size_t i = 1; i + 1 < nx; ++i) {
            const Eigen::Index row = index(i, j);
            double b = -0.5 * h * h * source(i, j);
            triplets.emplace_back(row, row, 4.0);
            const std::size_t ni[4] = {i - 1, i + 1, i, i};
            const std::size_t nj[4] = {j, j, j - 1, j + 1};
            for (int k = 0; k < 4; ++k) {
                const bool boundary = ni[k] == 0 || nj[k] == 0 || ni[k] + 1 == nx || nj[k] + 1 == ny;
                if (boundary)
                    b += lambda(ni[k], nj[k]);
                else
                    triplets.emplace_back(row, index(ni[k], nj[k]), -1.0);
            }
            rhs[row] = b;
        }

    Eigen::SparseMatrix<double> a(static_cast<Eigen::Index>(unknowns), static_cast<Eigen::Index>(unknowns));
    a.setFromTriplets(triplets.begin(), triplets.end());

    Eigen::ConjugateGradient<Eigen::SparseMatrix<double>, Eigen::Lower | Eigen::Upper,
                             Eigen::IncompleteCholesky<double>>
        cg;
    cg.setMaxIterations(problem.max_iterations);
    cg.setTolerance(problem.tolerance);
    cg.compute(a);
    const Eigen::VectorXd x = cg.solve(rhs);

    SolverSolution solution{lambda, GridField(grid, 2, kNaN)};
    for (std::size_t j = 1; j + 1 < ny; ++j)
        for (std::size_t i = 1; i + 1 < nx; ++i) solution.potential(i, j) = x[index(i, j)];

    const double rhs_norm = rhs.norm();
    solution.relative_residual = rhs_norm > 0.0 ? (a * x - rhs).norm() / rhs_norm : 0.0;
    solution.iterations = static_cast<int>(cg.iterations());
    solution.converged = solution.relative_residual <= problem.tolerance;

    const GridField& p = solution.potential;
    for (std::size_t j = 0; j < ny; ++j)
        for (std::size_t i = 0; i < nx; ++i) {
            if (j + 1 < ny) solution.connection(i, j, 0) = -(p(i, j + 1) - p(i, j)) / h;
            if (i + 1 < nx) solution.connection(i, j, 1) = (p(i + 1, j) - p(i, j)) / h;
        }

    solution.residual_norm =
        off_source_residual(discrete_curvature(solution), source, source_support(grid, problem.sources));
    return solution;
}

SolverSolution solve(const SolverProblem& problem) {
    SolverSolution solution = solve_best_effort(problem);
    if (!solution.converged) {
        throw NonConvergence("equilibrium solve did not reach the requested tolerance", solution.relative_residual,
                             solution.iterations);
    }
    return solution;
}

GridField node_connection(const SolverSolution& solution) {
    const GridField& p = solution.potential;
    const GridSpec& spec = p.spec();
    const double h = spec.spacing;
    GridField out(spec, 2, kNaN);
    for (std::size_t j = 1; j + 1 < spec.dims[1]; ++j)
        for (std::size_t i = 1; i + 1 < spec.dims[0]; ++i) {
            out(i, j, 0) = -(p(i, j + 1) - p(i, j - 1)) / (2.0 * h);
            out(i, j, 1) = (p(i + 1, j) - p(i - 1, j)) / (2.0 * h);
        }
    return out;
}

PlanarConnection interpolated_connection(const SolverSolution& solution) {
    const GridField& w = solution.connection;
    const GridSpec& spec = w.spec();
    const double h = spec.spacing;
    const std::size_t nx = spec.dims[0];
    const std::size_t ny = spec.dims[1];

    Lattice wx{{spec.origin.x, spec.origin.y + 0.5 * h}, h, nx, ny - 1, {}};
    Lattice wy{{spec.origin.x + 0.5 * h, spec.origin.y}, h, nx - 1, ny, {}};
    wx.values.reserve(nx * (ny - 1));
    wy.values.reserve((nx - 1) * ny);
    for (std::size_t j = 0; j + 1 < ny; ++j)
        for (std::size_t i = 0; i < nx; ++i) wx.values.push_back(w(i, j, 0));
    for (std::size_t j = 0; j < ny; ++j)
        for (std::size_t i = 0; i + 1 < nx; ++i) wy.values.push_back(w(i, j, 1));

    return PlanarConnection([wx = std::move(wx), wy = std::move(wy)](Point2 p) {
        PlanarConnectionValue v;
        v.x[2] = wx.at(p);
        v.y[2] = wy.at(p);
        return v;
    });
}

VerificationReport verify(const SolverSolution& solution, const SolverProblem& problem, double exclusion_radius) {
    const GridSpec& grid = problem.grid;
    if (!(solution.connection.spec() == grid) || solution.connection.components() != 2) {
        throw GridMismatch("verify: solution does not match the problem grid");
    }
    const double h = grid.spacing;
    VerificationReport report{0.0, {}, {}, 0.0, 0.0, 0.0, GridField(grid, 1, kNaN)};
    report.exclusion_radius = exclusion_radius > 0.0 ? exclusion_radius : 5.0 * h;

    const GridField curvature = discrete_curvature(solution);
    const GridField source = rasterized_source(grid, problem.sources);
    for (std::size_t n = 0; n < grid.node_count(); ++n)
        report.residual.values()[n] = curvature.values()[n] - source.values()[n];
    report.residual_max_norm = off_source_residual(curvature, source, source_support(grid, problem.sources));

    for (const auto& line : problem.sources.lines()) {
        const SourceStencil s = source_stencil(grid, line.position());
        double flux = 0.0;
        for (std::size_t n : s.nodes) flux += curvature.values()[n] * h * h;
        const double mass = kFourPi * line.winding();
        report.core_flux.push_back(flux);
        report.core_flux_rel_error.push_back(std::abs(flux - mass) / std::abs(mass));
    }

    auto compare = [&](Point2 p, double numeric, int component) {
        if (!std::isfinite(numeric)) return;
        if (problem.sources.distance_to_nearest_core(p) < report.exclusion_radius) return;
        const Eigen::Vector2d exact = connection_at(problem.sources, p);
        const double err = std::abs(numeric - exact[component]);
        report.max_abs_error_vs_analytic = std::max(report.max_abs_error_vs_analytic, err);
        const double magnitude = exact.norm();
        const double rel = magnitude > 0.0 ? err / magnitude : err;
        report.max_rel_error_vs_analytic = std::max(report.max_rel_error_vs_analytic, rel);
    };
    const GridField& w = solution.connection;
    for (std::size_t j = 0; j < grid.dims[1]; ++j)
        for (std::size_t i = 0; i < grid.dims[0]; ++i) {
            const Point2 node = grid.node(i, j);
            compare({node.x, node.y + 0.5 * h}, w(i, j, 0), 0);
            compare({node.x + 0.5 * h, node.y}, w(i, j, 1), 1);
        }
    return report;
}

GridSpec refined(const GridSpec& grid, int level) {
    if (level < 0) throw std::invalid_argument("refined: level must be non-negative");
    const std::size_t factor = std::size_t{1} << level;
    return GridSpec{grid.origin, grid.spacing / static_cast<double>(factor),
                    {(grid.dims[0] - 1) * factor + 1, (grid.dims[1] - 1) * factor + 1}};
}

double convergence_order(const std::vector<double>& spacings, const std::vector<double>& errors) {
    if (spacings.size() != errors.size() || spacings.size() < 2) {
        throw std::invalid_argument("convergence_order: need at least two (spacing, error) pairs");
    }
    const auto n = static_cast<double>(spacings.size());
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    for (std::size_t k = 0; k < spacings.size(); ++k) {
        const double x = std::log(spacings[k]);
        const double y = std::log(errors[k]);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

}  // namespace disclinate
