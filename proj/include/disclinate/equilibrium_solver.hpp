#pragma once

#include <cstddef>
#include <vector>

#include "disclinate/disclination_field.hpp"
#include "disclinate/grid.hpp"

namespace disclinate {

enum class BoundaryCondition {
    AnalyticDirichlet,  ///< lambda = sum n_k ln r_k on the boundary
    ZeroDirichlet,
};

struct SolverProblem {
    GridSpec grid;
    DisclinationConfig sources;
    BoundaryCondition boundary = BoundaryCondition::AnalyticDirichlet;
    int max_iterations = 20000;
    double tolerance = 1e-10;

    /// Throws std::invalid_argument unless every core sits at least 8 cells inside the grid.
    void validate() const;
};

/// Solution of the curl equation through the potential lambda, w = (-d_y lambda, d_x lambda).
///
/// The connection is staggered: component 0 holds w_x at (x_i, y_j + h/2) and
/// component 1 holds w_y at (x_i + h/2, y_j), each a forward difference of lambda.
/// Entries past the last node in the differenced direction are NaN.
struct SolverSolution {
    GridField potential;
    GridField connection;
    double residual_norm = 0.0;      ///< max |R - J| over nodes outside source supports
    double relative_residual = 0.0;  ///< linear-system ||r|| / ||b||
    int iterations = 0;
    bool converged = false;
};

/// Node weights of a rasterized core: bilinear (area) weights onto the
/// surrounding nodes, a single node when the core sits on one.
struct SourceStencil {
    std::vector<std::size_t> nodes;  ///< flattened node indices j * nx + i
    std::vector<double> weights;
};

SourceStencil source_stencil(const GridSpec& grid, Point2 core);

/// Node-centred R = 2 (backward curl of the staggered connection); the dual-cell
/// flux R h^2 equals the 5-point Laplacian of lambda times 2 h^2 exactly.
GridField discrete_curvature(const SolverSolution& solution);

/// Rasterized J: mass 4 pi n per core spread by source_stencil, stored as density.
GridField rasterized_source(const GridSpec& grid, const DisclinationConfig& sources);

/// Runs the solve without throwing on non-convergence; check `converged`.
SolverSolution solve_best_effort(const SolverProblem& problem);

/// Throws NonConvergence if the relative residual does not reach problem.tolerance.
SolverSolution solve(const SolverProblem& problem);

/// Central-difference connection at nodes (NaN on the boundary), for plotting.
GridField node_connection(const SolverSolution& solution);

/// Bilinear interpolation of the two staggered component lattices.
PlanarConnection interpolated_connection(const SolverSolution& solution);

struct VerificationReport {
    double residual_max_norm = 0.0;
    std::vector<double> core_flux;             ///< discrete flux through each core's support
    std::vector<double> core_flux_rel_error;   ///< |flux - 4 pi n| / |4 pi n|
    double max_abs_error_vs_analytic = 0.0;
    double max_rel_error_vs_analytic = 0.0;
    double exclusion_radius = 0.0;
    GridField residual;                        ///< node-wise R - J
};

/// Recomputes the discrete curvature of `solution` and compares it with the
/// rasterized source and the closed-form field. Comparison points closer than
/// `exclusion_radius` to a core are skipped; a non-positive radius means 5 h.
VerificationReport verify(const SolverSolution& solution, const SolverProblem& problem,
                          double exclusion_radius = 0.0);

/// Grid with spacing h / 2^level over the same extent.
GridSpec refined(const GridSpec& grid, int level);

/// Least-squares slope of log(error) against log(spacing).
double convergence_order(const std::vector<double>& spacings, const std::vector<double>& errors);

}  // namespace disclinate
