#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "hktlab/checks.hpp"
#include "hktlab/connection.hpp"
#include "hktlab/zoo.hpp"

namespace py = pybind11;
using namespace hktlab;

namespace {

SampleConfig make_config(int points, uint64_t seed, std::optional<double> tol, int jet_order,
                         int threads) {
    SampleConfig cfg;
    cfg.points = points;
    cfg.seed = seed;
    cfg.tolerance = tol;
    cfg.jet_order = jet_order;
    cfg.threads = threads;
    return cfg;
}

} // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "residual checks for hypercomplex geometries with torsion";

    py::register_exception<ConfigError>(m, "ConfigError");
    py::register_exception<PreconditionError>(m, "PreconditionError");
    py::register_exception<NotLchkError>(m, "NotLchkError");
    py::register_exception<NotHktError>(m, "NotHktError");

    m.def("list_suites", &list_suites);

    m.def("list_checks", [] {
        py::list out;
        for (const auto& info : list_checks()) {
            py::dict d;
            d["id"] = info.id;
            d["anchor"] = info.anchor;
            d["default_tolerance"] = info.default_tolerance;
            d["suites"] = info.suites;
            out.append(std::move(d));
        }
        return out;
    });

    m.def(
        "run_suite_json",
        [](const std::string& geometry, const std::string& suite, int points, uint64_t seed,
           std::optional<double> tol, int jet_order, int threads) {
            const auto geom = parse_geometry_spec(geometry);
            return run_suite(geom, suite, make_config(points, seed, tol, jet_order, threads))
                .to_json();
        },
        py::arg("geometry"), py::arg("suite") = "paper-all", py::arg("points") = 100,
        py::arg("seed") = 42, py::arg("tolerance") = py::none(), py::arg("jet_order") = 3,
        py::arg("threads") = 1);

    m.def(
        "run_check_json",
        [](const std::string& geometry, const std::string& check, int points, uint64_t seed,
           std::optional<double> tol, int jet_order, int threads) {
            const auto geom = parse_geometry_spec(geometry);
            return run_check(geom, check, make_config(points, seed, tol, jet_order, threads))
                .to_json();
        },
        py::arg("geometry"), py::arg("check"), py::arg("points") = 100, py::arg("seed") = 42,
        py::arg("tolerance") = py::none(), py::arg("jet_order") = 3, py::arg("threads") = 1);

    m.def("normalized_lambda", &normalized_lambda, py::arg("m"),
          "positive root of lambda (2m - 1 + lambda^2) = 1");

    m.def(
        "deck_invariance_residual",
        [](const std::string& geometry, const std::vector<double>& coords) {
            const auto geom = parse_geometry_spec(geometry);
            return deck_invariance_residual(geom, Point(coords));
        },
        py::arg("geometry"), py::arg("point"));
}
