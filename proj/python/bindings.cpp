#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <cmath>
#include <tuple>
#include <vector>

#include "disclinate/chern_simons.hpp"
#include "disclinate/disclination_field.hpp"
#include "disclinate/equilibrium_solver.hpp"
#include "disclinate/errors.hpp"
#include "disclinate/geometry.hpp"
#include "disclinate/so3.hpp"

namespace py = pybind11;
using namespace disclinate;

namespace {

using RowMatrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

DisclinationLine make_line(const py::handle& item) {
    const auto t = item.cast<py::sequence>();
    if (t.size() < 3 || t.size() > 4) throw py::value_error("line must be (x, y, winding[, cut_angle])");
    const double cut = t.size() == 4 ? t[3].cast<double>() : 0.0;
    return DisclinationLine({t[0].cast<double>(), t[1].cast<double>()}, t[2].cast<int>(), cut);
}

DisclinationConfig make_config(const py::sequence& lines, const Eigen::Vector3d& base) {
    std::vector<DisclinationLine> out;
    for (const auto& item : lines) out.push_back(make_line(item));
    return DisclinationConfig(std::move(out), Director(base));
}

AntisymmetricPair pair_from_matrix(const Eigen::Matrix3d& m) {
    const double scale = std::max(1.0, m.cwiseAbs().maxCoeff());
    if ((m + m.transpose()).cwiseAbs().maxCoeff() > 1e-12 * scale) throw py::value_error("matrix is not antisymmetric");
    return AntisymmetricPair(m(1, 2), m(2, 0), m(0, 1));
}

/// Field component c of a GridField as an (ny, nx) array.
RowMatrix plane(const GridField& f, std::size_t c) {
    const auto& d = f.spec().dims;
    RowMatrix out(d[1], d[0]);
    for (std::size_t j = 0; j < d[1]; ++j)
        for (std::size_t i = 0; i < d[0]; ++i) out(j, i) = f(i, j, c);
    return out;
}

BoundaryCondition boundary_from(const std::string& name) {
    if (name == "analytic") return BoundaryCondition::AnalyticDirichlet;
    if (name == "zero") return BoundaryCondition::ZeroDirichlet;
    throw py::value_error("boundary must be 'analytic' or 'zero'");
}

}  // namespace

PYBIND11_MODULE(_disclinate, m) {
    m.doc() = "Disclination connection fields, SO(3) kernel, loop invariants and field-equation solver.";

    py::register_exception<CoreSingularity>(m, "CoreSingularity", PyExc_ValueError);
    py::register_exception<BranchCutError>(m, "BranchCutError", PyExc_ValueError);
    py::register_exception<NonConvergence>(m, "NonConvergence", PyExc_RuntimeError);

    m.attr("CORE_EPSILON") = kCoreEpsilon;

    m.def(
        "rodrigues", [](const Eigen::Vector3d& theta) { return rodrigues(AxisAngleVector(theta)).entries(); },
        py::arg("theta"), "Rotation matrix exp(theta . eps).");
    m.def(
        "dualize", [](const Eigen::Matrix3d& v) { return dualize(pair_from_matrix(v)).components(); },
        py::arg("matrix"), "Axial vector v_k = 1/2 v^{ij} eps_{ijk} of an antisymmetric matrix.");
    m.def(
        "undualize", [](const Eigen::Vector3d& v) { return undualize(AxisAngleVector(v)).matrix(); }, py::arg("vector"),
        "Antisymmetric matrix v^{ij} = v_k eps^{kij}.");
    m.def(
        "rotate_director",
        [](const Eigen::Vector3d& n0, const Eigen::Vector3d& theta) {
            return rotate_director(Director(n0), AxisAngleVector(theta)).components();
        },
        py::arg("n0"), py::arg("theta"));

    py::class_<DisclinationConfig>(m, "DisclinationConfig")
        .def(py::init(&make_config), py::arg("lines"), py::arg("base_director") = Eigen::Vector3d(1.0, 0.0, 0.0),
             "lines: sequence of (x, y, winding[, cut_angle]).")
        .def_property_readonly("total_winding", &DisclinationConfig::total_winding)
        .def_property_readonly("lines",
                               [](const DisclinationConfig& c) {
                                   std::vector<std::tuple<double, double, int, double>> out;
                                   for (const auto& l : c.lines())
                                       out.emplace_back(l.position().x, l.position().y, l.winding(), l.cut_angle());
                                   return out;
                               })
        .def(
            "connection", [](const DisclinationConfig& c, double x, double y) { return connection_at(c, {x, y}); },
            py::arg("x"), py::arg("y"), "(w_x^3, w_y^3) at a point.")
        .def(
            "complex_connection",
            [](const DisclinationConfig& c, double x, double y) {
                const ComplexConnection z = complex_connection_at(c, {x, y});
                return std::make_pair(z.wz, z.wzbar);
            },
            py::arg("x"), py::arg("y"))
        .def(
            "theta", [](const DisclinationConfig& c, double x, double y) { return theta_at(c, {x, y}); }, py::arg("x"),
            py::arg("y"))
        .def(
            "director",
            [](const DisclinationConfig& c, double x, double y) { return director_at(c, {x, y}).components(); },
            py::arg("x"), py::arg("y"));

    m.def(
        "frank_vector",
        [](const DisclinationConfig& c, std::pair<double, double> center, double radius, std::size_t segments) {
            return frank_vector(c, Contour::circle({center.first, center.second}, radius, segments)).components();
        },
        py::arg("config"), py::arg("center"), py::arg("radius"), py::arg("segments") = 256,
        "Frank vector around a circular contour.");
    m.def(
        "enclosed_winding",
        [](const DisclinationConfig& c, std::pair<double, double> center, double radius, std::size_t segments) {
            return enclosed_winding(c, Contour::circle({center.first, center.second}, radius, segments));
        },
        py::arg("config"), py::arg("center"), py::arg("radius"), py::arg("segments") = 256);
    m.def(
        "curvature_flux",
        [](const DisclinationConfig& c, std::pair<double, double> center, double radius, std::size_t segments) {
            const Contour loop = Contour::circle({center.first, center.second}, radius, segments);
            check_contour_off_cores(c, loop);
            return curvature_flux(PlanarConnection::from_config(c), loop);
        },
        py::arg("config"), py::arg("center"), py::arg("radius"), py::arg("segments") = 256);
    m.def(
        "curvature_fd",
        [](const DisclinationConfig& c, double x, double y, double step) {
            return curvature_fd(PlanarConnection::from_config(c), {x, y}, step).dual;
        },
        py::arg("config"), py::arg("x"), py::arg("y"), py::arg("step") = 1e-4);
    m.def(
        "holonomy",
        [](const DisclinationConfig& c, std::pair<double, double> center, double radius, std::size_t segments) {
            const Holonomy h = holonomy(c, Contour::circle({center.first, center.second}, radius, 256), segments);
            return std::make_pair(h.matrix.entries(), h.accumulated_angle);
        },
        py::arg("config"), py::arg("center"), py::arg("radius"), py::arg("segments") = 4096,
        "(ordered rotation product, accumulated angle) around a circle.");

    m.def(
        "solve",
        [](const DisclinationConfig& c, std::pair<double, double> origin, double spacing,
           std::pair<std::size_t, std::size_t> dims, const std::string& boundary, int max_iterations,
           double tolerance, double exclusion_radius) {
            const SolverProblem problem{GridSpec{{origin.first, origin.second}, spacing, {dims.first, dims.second}}, c,
                                        boundary_from(boundary), max_iterations, tolerance};
            const SolverSolution sol = solve(problem);
            const VerificationReport rep = verify(sol, problem, exclusion_radius);
            const GridField w = node_connection(sol);
            py::dict out;
            out["potential"] = plane(sol.potential, 0);
            out["wx"] = plane(w, 0);
            out["wy"] = plane(w, 1);
            out["iterations"] = sol.iterations;
            out["relative_residual"] = sol.relative_residual;
            out["residual_max_norm"] = rep.residual_max_norm;
            out["core_flux"] = rep.core_flux;
            out["core_flux_rel_error"] = rep.core_flux_rel_error;
            out["max_abs_error_vs_analytic"] = rep.max_abs_error_vs_analytic;
            out["max_rel_error_vs_analytic"] = rep.max_rel_error_vs_analytic;
            out["exclusion_radius"] = rep.exclusion_radius;
            return out;
        },
        py::arg("config"), py::arg("origin"), py::arg("spacing"), py::arg("dims"), py::arg("boundary") = "analytic",
        py::arg("max_iterations") = 20000, py::arg("tolerance") = 1e-10, py::arg("exclusion_radius") = 0.0,
        "Solve the discrete field equation and verify it against the closed form. Arrays are (ny, nx).");
}
