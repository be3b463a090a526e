#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "disclinate/disclination_field.hpp"
#include "disclinate/equilibrium_solver.hpp"
#include "disclinate/grid.hpp"

namespace disclinate::cli {

/// Validation failure; the message starts with the offending field path.
class ConfigError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

struct LineEntry {
    double x = 0.0;
    double y = 0.0;
    int winding = 1;
    double cut_angle = 0.0;
    bool operator==(const LineEntry&) const = default;
};

struct ContourEntry {
    Point2 center;
    double radius = 1.0;
    std::size_t segments = 256;
    bool operator==(const ContourEntry&) const = default;
};

struct SolverEntry {
    BoundaryCondition boundary = BoundaryCondition::AnalyticDirichlet;
    int max_iterations = 20000;
    double tolerance = 1e-10;
    bool operator==(const SolverEntry&) const = default;
};

struct RunConfig {
    static constexpr int kSchema = 1;

    std::vector<LineEntry> disclinations;
    std::array<double, 3> base_director{1.0, 0.0, 0.0};
    std::optional<GridSpec> grid;
    std::optional<ContourEntry> contour;
    SolverEntry solver;

    DisclinationConfig disclination_config() const;
    bool operator==(const RunConfig&) const = default;
};

/// Parses and validates a JSON config; unknown keys are rejected. Throws ConfigError.
RunConfig parse_run_config(const std::string& text);

/// Canonical JSON form; parse_run_config(dump_run_config(c)) == c.
std::string dump_run_config(const RunConfig& config);

}  // namespace disclinate::cli
