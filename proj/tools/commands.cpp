#include "commands.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <functional>
#include <iostream>
#include <iterator>
#include <numbers>
#include <sstream>

#include "CLI11.hpp"
#include "disclinate/errors.hpp"
#include "disclinate/geometry.hpp"
#include "json_writer.hpp"

namespace disclinate::cli {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kFourPi = 4.0 * std::numbers::pi;

// Segments for holonomy products and the monodromy path.
constexpr std::size_t kHolonomySegments = 4096;

int with_output(const std::string& path, std::ostream& out, std::ostream& err,
                const std::function<void(std::ostream&)>& write) {
    if (path.empty()) {
        write(out);
        out.flush();
        return out ? kExitOk : kExitIoError;
    }
    std::ofstream file(path, std::ios::binary);
    if (!file) {
        err << "error: cannot open output file '" << path << "'\n";
        return kExitIoError;
    }
    write(file);
    file.flush();
    if (!file) {
        err << "error: failed writing '" << path << "'\n";
        return kExitIoError;
    }
    return kExitOk;
}

const GridSpec& require_grid(const RunConfig& config, const char* command) {
    if (!config.grid) throw ConfigError(std::string("grid: required by '") + command + "'");
    config.grid->validate();
    return *config.grid;
}

bool on_any_cut(const DisclinationConfig& cfg, Point2 p) {
    for (const auto& line : cfg.lines())
        if (line.on_cut(p)) return true;
    return false;
}

Json report_json(const SolverSolution& sol, const VerificationReport& rep, const GridSpec& grid) {
    Json j;
    j["spacing"] = grid.spacing;
    j["dims"] = grid.dims;
    j["converged"] = sol.converged;
    j["iterations"] = sol.iterations;
    j["relative_residual"] = sol.relative_residual;
    j["residual_max_norm"] = rep.residual_max_norm;
    j["core_flux"] = rep.core_flux;
    j["core_flux_rel_error"] = rep.core_flux_rel_error;
    j["max_abs_error_vs_analytic"] = rep.max_abs_error_vs_analytic;
    j["max_rel_error_vs_analytic"] = rep.max_rel_error_vs_analytic;
    j["exclusion_radius"] = rep.exclusion_radius;
    return j;
}

struct InvariantResult {
    std::string name;
    double measured = 0.0;
    double tolerance = 0.0;
    std::size_t samples = 0;
    bool passed() const { return std::isfinite(measured) && measured <= tolerance; }
};

/// Deterministic probe points at least `clearance` from every core.
std::vector<Point2> probe_points(const DisclinationConfig& cfg, double clearance) {
    std::vector<Point2> centers;
    for (const auto& line : cfg.lines()) centers.push_back(line.position());
    if (centers.empty()) centers.push_back({0.0, 0.0});
    std::vector<Point2> points;
    constexpr int kAngles = 16;
    for (const Point2 c : centers)
        for (const double r : {1.0, 1.5, 2.0})
            for (int k = 0; k < kAngles; ++k) {
                const double a = kTwoPi * (k + 0.5) / kAngles + 0.1;
                const Point2 p{c.x + r * std::cos(a), c.y + r * std::sin(a)};
                if (cfg.lines().empty() || cfg.distance_to_nearest_core(p) >= clearance) points.push_back(p);
            }
    return points;
}

/// Radius of a circle around core k that encloses no other core.
double isolating_radius(const DisclinationConfig& cfg, std::size_t k) {
    double nearest = INFINITY;
    const auto lines = cfg.lines();
    for (std::size_t m = 0; m < lines.size(); ++m)
        if (m != k) nearest = std::min(nearest, norm(lines[m].position() - lines[k].position()));
    return std::min(0.5, 0.4 * nearest);
}

double wrap_angle(double a) { return std::remainder(a, kTwoPi); }

std::vector<InvariantResult> run_invariants(const DisclinationConfig& cfg) {
    const PlanarConnection field = PlanarConnection::from_config(cfg);
    const auto lines = cfg.lines();
    std::vector<InvariantResult> results;

    const std::vector<Point2> points = probe_points(cfg, 1.0);

    InvariantResult flat{"flatness", 0.0, 1e-6, points.size()};
    for (const Point2 p : points) flat.measured = std::max(flat.measured, curvature_fd(field, p, 1e-4).dual.norm());
    results.push_back(flat);

    // loops: one isolating circle per core plus one around everything
    std::vector<std::pair<Contour, int>> loops;
    Point2 centroid{0.0, 0.0};
    for (std::size_t k = 0; k < lines.size(); ++k) {
        loops.emplace_back(Contour::circle(lines[k].position(), isolating_radius(cfg, k), 256), lines[k].winding());
        centroid = centroid + (1.0 / static_cast<double>(lines.size())) * lines[k].position();
    }
    double reach = 0.0;
    for (const auto& line : lines) reach = std::max(reach, norm(line.position() - centroid));
    loops.emplace_back(Contour::circle(centroid, reach + 1.0, 256), cfg.total_winding());

    InvariantResult frank{"frank_quantization", 0.0, 1e-6, loops.size()};
    InvariantResult flux{"flux_quantization", 0.0, 1e-6, loops.size()};
    for (const auto& [loop, n] : loops) {
        frank.measured = std::max(frank.measured, std::abs(frank_vector(cfg, loop)[2] / kTwoPi - n));
        flux.measured = std::max(flux.measured, std::abs(curvature_flux(field, loop) / kFourPi - n));
    }
    results.push_back(frank);
    results.push_back(flux);

    InvariantResult hol{"holonomy", 0.0, 1e-6, loops.size()};
    InvariantResult mono{"theta_monodromy", 0.0, 1e-7, loops.size()};
    for (const auto& [loop, n] : loops) {
        const Holonomy h = holonomy(field, loop, kHolonomySegments);
        hol.measured = std::max({hol.measured, h.matrix.identity_error(), std::abs(h.accumulated_angle - kTwoPi * n)});
        const auto v = loop.vertices();
        const std::vector<Point2> path(v.begin() + 1, v.end());
        mono.measured = std::max(mono.measured, std::abs(reconstruct_theta(field, v[0], v[0], path) - kTwoPi * n));
    }
    results.push_back(hol);
    results.push_back(mono);

    InvariantResult grad{"theta_gradient", 0.0, 1e-6, points.size()};
    constexpr double kStep = 1e-5;
    for (const Point2 p : points) {
        // wrapped differences are insensitive to a cut between the stencil points
        const double dx = wrap_angle(theta_at(cfg, p + Point2{kStep, 0}) - theta_at(cfg, p - Point2{kStep, 0}));
        const double dy = wrap_angle(theta_at(cfg, p + Point2{0, kStep}) - theta_at(cfg, p - Point2{0, kStep}));
        const Eigen::Vector2d w = connection_at(cfg, p);
        grad.measured = std::max({grad.measured, std::abs(dx / (2 * kStep) - w[0]), std::abs(dy / (2 * kStep) - w[1])});
    }
    results.push_back(grad);

    InvariantResult cont{"director_continuity", 0.0, 1e-4, 0};
    constexpr double kHalfGap = 5e-7;
    for (const auto& line : lines) {
        const Point2 dir{std::cos(line.cut_angle()), std::sin(line.cut_angle())};
        const Point2 perp{-dir.y, dir.x};
        const Point2 q = line.position() + dir;
        if (cfg.distance_to_nearest_core(q) < 0.5) continue;
        const Director a = director_at(cfg, q + kHalfGap * perp);
        const Director b = director_at(cfg, q - kHalfGap * perp);
        cont.measured = std::max(cont.measured, (a.components() - b.components()).norm());
        ++cont.samples;
    }
    results.push_back(cont);
    return results;
}

}  // namespace

int cmd_field(const RunConfig& config, const CommandOptions& options, std::ostream& out, std::ostream& err) {
    const GridSpec& grid = require_grid(config, "field");
    const DisclinationConfig cfg = config.disclination_config();
    const std::string& kind = options.kind;
    if (kind != "connection" && kind != "theta" && kind != "director")
        throw ConfigError("kind: must be one of connection, theta, director");

    std::size_t cores = 0;
    std::size_t cuts = 0;
    const int code = with_output(options.out_path, out, err, [&](std::ostream& os) {
        os << "x,y,"
           << (kind == "connection" ? "wx,wy" : kind == "theta" ? "theta" : "nx,ny,nz") << '\n';
        const std::size_t width = kind == "connection" ? 2 : kind == "theta" ? 1 : 3;
        for (std::size_t j = 0; j < grid.dims[1]; ++j)
            for (std::size_t i = 0; i < grid.dims[0]; ++i) {
                const Point2 p = grid.node(i, j);
                os << format_number(p.x) << ',' << format_number(p.y);
                std::vector<double> v(width, NAN);
                const bool core = !cfg.lines().empty() && cfg.distance_to_nearest_core(p) < kCoreEpsilon;
                if (core) {
                    ++cores;
                } else if (kind == "connection") {
                    const Eigen::Vector2d w = connection_at(cfg, p);
                    v = {w[0], w[1]};
                } else if (kind == "theta") {
                    if (on_any_cut(cfg, p)) ++cuts;
                    else v = {theta_at(cfg, p)};
                } else {
                    const Eigen::Vector3d n = director_at(cfg, p).components();
                    v = {n[0], n[1], n[2]};
                }
                for (double x : v) os << ',' << format_number(x);
                os << '\n';
            }
    });
    err << "field: kind=" << kind << " nodes=" << grid.node_count() << " nan=" << cores + cuts << " (core " << cores
        << ", cut " << cuts << ")\n";
    return code;
}

int cmd_frank(const RunConfig& config, const CommandOptions& options, std::ostream& out, std::ostream& err) {
    if (!config.contour) throw ConfigError("contour: required by 'frank'");
    const ContourEntry& c = *config.contour;
    const DisclinationConfig cfg = config.disclination_config();
    const Contour contour = Contour::circle(c.center, c.radius, c.segments);
    try {
        check_contour_off_cores(cfg, contour);
    } catch (const CoreSingularity& e) {
        err << "error: contour: " << e.what() << '\n';
        return kExitContourOnCore;
    }
    const PlanarConnection field = PlanarConnection::from_config(cfg);
    const AxisAngleVector frank = frank_vector(cfg, contour);
    const double flux = curvature_flux(field, contour);
    const Holonomy hol = holonomy(field, contour, std::max(kHolonomySegments, c.segments));

    Json report;
    report["frank_vector"] = {frank[0], frank[1], frank[2]};
    report["winding_sum"] = enclosed_winding(cfg, contour);
    report["flux"] = flux;
    report["flux_over_4pi"] = flux / kFourPi;
    report["holonomy_identity_error"] = hol.matrix.identity_error();
    report["holonomy_angle"] = hol.accumulated_angle;
    return with_output(options.out_path, out, err, [&](std::ostream& os) { write_json(os, report); });
}

int cmd_solve(const RunConfig& config, const CommandOptions& options, std::ostream& out, std::ostream& err) {
    const GridSpec& base = require_grid(config, "solve");
    const DisclinationConfig cfg = config.disclination_config();
    const int levels = std::max(1, options.refine);
    // refinement study: exclusion disk fixed in physical units; the order is fitted to the
    // max abs error since the pointwise relative error is ill-conditioned where w vanishes
    const double exclusion = options.refine > 0 ? 5.0 * base.spacing : 0.0;

    Json reports = Json::array();
    std::vector<double> spacings;
    std::vector<double> errors;
    bool converged = true;
    std::optional<SolverSolution> finest;
    for (int level = 0; level < levels; ++level) {
        SolverProblem problem{refined(base, level), cfg, config.solver.boundary, config.solver.max_iterations,
                              config.solver.tolerance};
        problem.validate();
        SolverSolution sol = solve_best_effort(problem);
        const VerificationReport rep = verify(sol, problem, exclusion);
        reports.push_back(report_json(sol, rep, problem.grid));
        spacings.push_back(problem.grid.spacing);
        errors.push_back(rep.max_abs_error_vs_analytic);
        converged = converged && sol.converged;
        err << "solve: level " << level << " h=" << format_number(problem.grid.spacing)
            << " iterations=" << sol.iterations << (sol.converged ? "" : " (not converged)") << '\n';
        finest = std::move(sol);
    }

    Json report;
    if (options.refine > 0) {
        report["levels"] = reports;
        const bool measurable = levels >= 2 && std::all_of(errors.begin(), errors.end(), [](double e) { return e > 0; });
        report["convergence_order"] = measurable ? convergence_order(spacings, errors) : NAN;
    } else {
        report = reports[0];
    }

    if (!options.out_path.empty()) {
        const GridField w = node_connection(*finest);
        const GridSpec& g = w.spec();
        const int code = with_output(options.out_path, out, err, [&](std::ostream& os) {
            os << "x,y,wx,wy\n";
            for (std::size_t j = 0; j < g.dims[1]; ++j)
                for (std::size_t i = 0; i < g.dims[0]; ++i) {
                    const Point2 p = g.node(i, j);
                    os << format_number(p.x) << ',' << format_number(p.y) << ',' << format_number(w(i, j, 0)) << ','
                       << format_number(w(i, j, 1)) << '\n';
                }
        });
        if (code != kExitOk) return code;
    }
    write_json(out, report);
    if (!converged) {
        err << "error: solver did not reach tolerance " << format_number(config.solver.tolerance) << '\n';
        return kExitNonConvergence;
    }
    return kExitOk;
}

int cmd_check(const RunConfig& config, const CommandOptions& options, std::ostream& out, std::ostream& err) {
    const DisclinationConfig cfg = config.disclination_config();
    const std::vector<InvariantResult> results = run_invariants(cfg);
    const bool all = std::all_of(results.begin(), results.end(), [](const auto& r) { return r.passed(); });
    const int code = with_output(options.out_path, out, err, [&](std::ostream& os) {
        if (options.json) {
            Json list = Json::array();
            for (const auto& r : results)
                list.push_back(Json{{"name", r.name},
                                    {"passed", r.passed()},
                                    {"measured", r.measured},
                                    {"tolerance", r.tolerance},
                                    {"samples", r.samples}});
            write_json(os, Json{{"invariants", list}, {"passed", all}});
            return;
        }
        for (const auto& r : results)
            os << (r.passed() ? "PASS " : "FAIL ") << r.name << " measured=" << format_number(r.measured)
               << " tolerance=" << format_number(r.tolerance) << " samples=" << r.samples << '\n';
    });
    if (code != kExitOk) return code;
    return all ? kExitOk : kExitCheckFailed;
}

int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err) {
    CLI::App app{"Disclination field evaluation, verification and solving", "disclinate"};
    std::string config_path;
    CommandOptions options;
    bool dump = false;
    app.add_option("--config", config_path, "JSON config file (default: standard input)");
    app.add_option("--out", options.out_path, "Output file (default: standard output)");
    app.add_option("--kind", options.kind, "Field kind for 'field'")
        ->check(CLI::IsMember({"connection", "theta", "director"}));
    app.add_option("--refine", options.refine, "Refinement levels for 'solve'")->check(CLI::Range(0, 6));
    app.add_flag("--json", options.json, "Machine-readable report for 'check'");
    app.add_flag("--dump-config", dump, "Print the validated config and exit");
    app.require_subcommand(0, 1);
    CLI::App* field = app.add_subcommand("field", "Sample the closed-form field on the grid as CSV")->fallthrough();
    CLI::App* frank = app.add_subcommand("frank", "Frank vector, flux and holonomy around the contour")->fallthrough();
    CLI::App* solve = app.add_subcommand("solve", "Solve the field equation on the grid and verify it")->fallthrough();
    CLI::App* check = app.add_subcommand("check", "Run the invariant suite")->fallthrough();

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitInvalidConfig;
    }
    if (!dump && app.get_subcommands().empty()) {
        err << "error: a command is required (field, frank, solve, check)\n" << app.help();
        return kExitInvalidConfig;
    }

    std::string text;
    if (config_path.empty()) {
        text.assign(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
    } else {
        std::ifstream file(config_path, std::ios::binary);
        if (!file) {
            err << "error: cannot read config file '" << config_path << "'\n";
            return kExitIoError;
        }
        std::ostringstream buf;
        buf << file.rdbuf();
        text = buf.str();
    }

    try {
        const RunConfig config = parse_run_config(text);
        config.disclination_config();  // full domain validation up front
        if (dump) {
            out << dump_run_config(config);
            return kExitOk;
        }
        if (field->parsed()) return cmd_field(config, options, out, err);
        if (frank->parsed()) return cmd_frank(config, options, out, err);
        if (solve->parsed()) return cmd_solve(config, options, out, err);
        if (check->parsed()) return cmd_check(config, options, out, err);
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << '\n';
        return kExitInvalidConfig;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kExitCheckFailed;
    }
    return kExitOk;
}

}  // namespace disclinate::cli
