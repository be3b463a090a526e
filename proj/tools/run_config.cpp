#include "run_config.hpp"

#include <cmath>
#include <set>
#include <sstream>

#include "json_writer.hpp"

namespace disclinate::cli {

namespace {

[[noreturn]] void fail(const std::string& path, const std::string& what) { throw ConfigError(path + ": " + what); }

void reject_unknown(const Json& obj, const std::string& path, const std::set<std::string>& allowed) {
    if (!obj.is_object()) fail(path, "must be an object");
    for (const auto& [key, _] : obj.items())
        if (!allowed.contains(key)) fail(path.empty() ? key : path + "." + key, "unknown key");
}

const Json& required(const Json& obj, const std::string& key, const std::string& path) {
    if (!obj.contains(key)) fail(path, "missing required key '" + key + "'");
    return obj.at(key);
}

double number(const Json& v, const std::string& path) {
    if (!v.is_number()) fail(path, "must be a number");
    const double d = v.get<double>();
    if (!std::isfinite(d)) fail(path, "must be finite");
    return d;
}

long long integer(const Json& v, const std::string& path) {
    if (!v.is_number_integer()) fail(path, "must be an integer");
    return v.get<long long>();
}

template <std::size_t N>
std::array<double, N> numbers(const Json& v, const std::string& path) {
    if (!v.is_array() || v.size() != N) fail(path, "must be an array of " + std::to_string(N) + " numbers");
    std::array<double, N> out{};
    for (std::size_t i = 0; i < N; ++i) out[i] = number(v[i], path + "[" + std::to_string(i) + "]");
    return out;
}

std::string join(const std::string& path, const std::string& key) { return path + "." + key; }

LineEntry parse_line(const Json& v, const std::string& path) {
    reject_unknown(v, path, {"x", "y", "winding", "cut_angle"});
    LineEntry line;
    line.x = number(required(v, "x", path), join(path, "x"));
    line.y = number(required(v, "y", path), join(path, "y"));
    const long long w = integer(required(v, "winding", path), join(path, "winding"));
    if (w == 0) fail(join(path, "winding"), "must be nonzero (winding 0 means no defect)");
    if (w > 1000000 || w < -1000000) fail(join(path, "winding"), "out of range");
    line.winding = static_cast<int>(w);
    if (v.contains("cut_angle")) line.cut_angle = number(v.at("cut_angle"), join(path, "cut_angle"));
    return line;
}

GridSpec parse_grid(const Json& v) {
    const std::string path = "grid";
    reject_unknown(v, path, {"origin", "spacing", "dims"});
    GridSpec g;
    const auto o = numbers<2>(required(v, "origin", path), join(path, "origin"));
    g.origin = {o[0], o[1]};
    g.spacing = number(required(v, "spacing", path), join(path, "spacing"));
    if (g.spacing <= 0.0) fail(join(path, "spacing"), "must be positive");
    const Json& dims = required(v, "dims", path);
    if (!dims.is_array() || dims.size() != 2) fail(join(path, "dims"), "must be an array of 2 integers");
    for (std::size_t i = 0; i < 2; ++i) {
        const std::string p = join(path, "dims") + "[" + std::to_string(i) + "]";
        const long long d = integer(dims[i], p);
        if (d < 2 || d > 100000) fail(p, "must be between 2 and 100000");
        g.dims[i] = static_cast<std::size_t>(d);
    }
    return g;
}

ContourEntry parse_contour(const Json& v) {
    const std::string path = "contour";
    reject_unknown(v, path, {"center", "radius", "segments"});
    ContourEntry c;
    const auto ctr = numbers<2>(required(v, "center", path), join(path, "center"));
    c.center = {ctr[0], ctr[1]};
    c.radius = number(required(v, "radius", path), join(path, "radius"));
    if (c.radius <= 0.0) fail(join(path, "radius"), "must be positive");
    if (v.contains("segments")) {
        const long long s = integer(v.at("segments"), join(path, "segments"));
        if (s < 16 || s > 10000000) fail(join(path, "segments"), "must be between 16 and 10000000");
        c.segments = static_cast<std::size_t>(s);
    }
    return c;
}

SolverEntry parse_solver(const Json& v) {
    const std::string path = "solver";
    reject_unknown(v, path, {"boundary", "max_iterations", "tolerance"});
    SolverEntry s;
    if (v.contains("boundary")) {
        const Json& b = v.at("boundary");
        if (b == "analytic") s.boundary = BoundaryCondition::AnalyticDirichlet;
        else if (b == "zero") s.boundary = BoundaryCondition::ZeroDirichlet;
        else fail(join(path, "boundary"), "must be \"analytic\" or \"zero\"");
    }
    if (v.contains("max_iterations")) {
        const long long m = integer(v.at("max_iterations"), join(path, "max_iterations"));
        if (m < 1 || m > 100000000) fail(join(path, "max_iterations"), "must be between 1 and 100000000");
        s.max_iterations = static_cast<int>(m);
    }
    if (v.contains("tolerance")) {
        s.tolerance = number(v.at("tolerance"), join(path, "tolerance"));
        if (s.tolerance <= 0.0) fail(join(path, "tolerance"), "must be positive");
    }
    return s;
}

}  // namespace

DisclinationConfig RunConfig::disclination_config() const {
    std::vector<DisclinationLine> lines;
    lines.reserve(disclinations.size());
    for (const auto& l : disclinations) lines.emplace_back(Point2{l.x, l.y}, l.winding, l.cut_angle);
    return DisclinationConfig(std::move(lines), Director(base_director[0], base_director[1], base_director[2]));
}

RunConfig parse_run_config(const std::string& text) {
    Json root;
    try {
        root = Json::parse(text);
    } catch (const Json::parse_error& e) {
        throw ConfigError(std::string("config: invalid JSON: ") + e.what());
    }
    if (!root.is_object()) fail("config", "must be a JSON object");
    reject_unknown(root, "", {"schema", "disclinations", "base_director", "grid", "contour", "solver"});

    const long long schema = integer(required(root, "schema", "config"), "schema");
    if (schema != RunConfig::kSchema) fail("schema", "unsupported version " + std::to_string(schema) + " (expected 1)");

    RunConfig cfg;
    if (root.contains("disclinations")) {
        const Json& list = root.at("disclinations");
        if (!list.is_array()) fail("disclinations", "must be an array");
        for (std::size_t i = 0; i < list.size(); ++i) {
            const std::string path = "disclinations[" + std::to_string(i) + "]";
            const LineEntry line = parse_line(list[i], path);
            for (std::size_t k = 0; k < cfg.disclinations.size(); ++k) {
                const auto& other = cfg.disclinations[k];
                if (std::hypot(line.x - other.x, line.y - other.y) < kCoreEpsilon)
                    fail(path, "duplicate core position (coincides with disclinations[" + std::to_string(k) + "])");
            }
            cfg.disclinations.push_back(line);
        }
    }
    if (root.contains("base_director")) {
        cfg.base_director = numbers<3>(root.at("base_director"), "base_director");
        const double len = std::sqrt(cfg.base_director[0] * cfg.base_director[0] +
                                     cfg.base_director[1] * cfg.base_director[1] +
                                     cfg.base_director[2] * cfg.base_director[2]);
        if (std::abs(len - 1.0) > 1e-9) fail("base_director", "must be a unit vector");
    }
    if (root.contains("grid")) cfg.grid = parse_grid(root.at("grid"));
    if (root.contains("contour")) cfg.contour = parse_contour(root.at("contour"));
    if (root.contains("solver")) cfg.solver = parse_solver(root.at("solver"));
    return cfg;
}

std::string dump_run_config(const RunConfig& config) {
    Json root;
    root["schema"] = RunConfig::kSchema;
    Json lines = Json::array();
    for (const auto& l : config.disclinations)
        lines.push_back(Json{{"x", l.x}, {"y", l.y}, {"winding", l.winding}, {"cut_angle", l.cut_angle}});
    root["disclinations"] = lines;
    root["base_director"] = config.base_director;
    if (config.grid) {
        const GridSpec& g = *config.grid;
        root["grid"] = Json{{"origin", {g.origin.x, g.origin.y}}, {"spacing", g.spacing}, {"dims", g.dims}};
    }
    if (config.contour) {
        const ContourEntry& c = *config.contour;
        root["contour"] = Json{{"center", {c.center.x, c.center.y}}, {"radius", c.radius}, {"segments", c.segments}};
    }
    const SolverEntry& s = config.solver;
    root["solver"] = Json{{"boundary", s.boundary == BoundaryCondition::ZeroDirichlet ? "zero" : "analytic"},
                          {"max_iterations", s.max_iterations},
                          {"tolerance", s.tolerance}};
    std::ostringstream out;
    write_json(out, root);
    return out.str();
}

}  // namespace disclinate::cli
