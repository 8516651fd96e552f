// Python bindings for the main lab operations. Domains travel as JSON specs,
// points as lists of (re, im) pairs, reports as plain dicts round-tripped
// through the JSON serializers.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <nlohmann/json.hpp>

#include "kobalab/criteria.hpp"
#include "kobalab/dynamics.hpp"
#include "kobalab/reports.hpp"
#include "kobalab/visibility.hpp"

namespace py = pybind11;
using namespace kobalab;
using json = nlohmann::json;

namespace {

Point to_point(const std::vector<std::pair<double, double>>& v) {
    Point p;
    p.reserve(v.size());
    for (const auto& [re, im] : v) p.emplace_back(re, im);
    return p;
}

std::vector<std::pair<double, double>> from_point(const Point& p) {
    std::vector<std::pair<double, double>> v;
    v.reserve(p.size());
    for (const auto& c : p) v.emplace_back(c.real(), c.imag());
    return v;
}

py::object json_to_py(const json& j) {
    py::module_ pyjson = py::module_::import("json");
    return pyjson.attr("loads")(j.dump());
}

}  // namespace

PYBIND11_MODULE(_kobalab, m) {
    m.doc() = "numerical probes for Kobayashi distance geometry";

    py::class_<Domain>(m, "Domain")
        .def_property_readonly("dim", [](const Domain& d) { return d.dim; })
        .def_property_readonly("kind", [](const Domain& d) { return kind_name(d.kind); })
        .def_property_readonly("convex", [](const Domain& d) { return d.convex; })
        .def_property_readonly("enclosing_radius",
                               [](const Domain& d) { return d.enclosing_radius; })
        .def_property_readonly("base_point",
                               [](const Domain& d) { return from_point(d.base_point); })
        .def("spec", [](const Domain& d) { return json_to_py(domain_spec_json(d)); });

    m.def("domain", [](const std::string& spec) { return domain_from_json_text(spec); },
          py::arg("spec"), "build a domain from a JSON spec string");

    m.def("contains",
          [](const Domain& d, const std::vector<std::pair<double, double>>& z) {
              return contains(d, to_point(z));
          });
    m.def("boundary_distance",
          [](const Domain& d, const std::vector<std::pair<double, double>>& z) {
              return boundary_distance(d, to_point(z));
          });
    m.def("line_radius",
          [](const Domain& d, const std::vector<std::pair<double, double>>& z,
             const std::vector<std::pair<double, double>>& v) {
              return line_radius(d, to_point(z), to_point(v));
          });
    m.def("metric_bounds",
          [](const Domain& d, const std::vector<std::pair<double, double>>& z,
             const std::vector<std::pair<double, double>>& v) {
              return json_to_py(to_json(metric_bounds(d, to_point(z), to_point(v))));
          });
    m.def(
        "estimate_distance",
        [](const Domain& d, const std::vector<std::pair<double, double>>& z,
           const std::vector<std::pair<double, double>>& w, int iterations,
           std::uint64_t seed) {
            DistanceBudget b;
            b.iterations = iterations;
            b.seed = seed;
            return json_to_py(to_json(estimate_distance(d, to_point(z), to_point(w), b)));
        },
        py::arg("domain"), py::arg("z"), py::arg("w"), py::arg("iterations") = 1500,
        py::arg("seed") = 1);
    m.def(
        "almost_geodesic_between",
        [](const Domain& d, const std::vector<std::pair<double, double>>& z,
           const std::vector<std::pair<double, double>>& w, double kappa, int iterations,
           std::uint64_t seed) {
            DistanceBudget b;
            b.iterations = iterations;
            b.seed = seed;
            ReparamResult r = almost_geodesic_between(d, to_point(z), to_point(w), kappa, b);
            py::dict out;
            out["certificate"] = json_to_py(to_json(r.cert));
            py::list pts;
            for (std::size_t i = 0; i < r.path.size(); ++i) {
                py::dict row;
                row["t"] = r.path.grid[i];
                row["z"] = from_point(r.path.points[i]);
                pts.append(row);
            }
            out["path"] = pts;
            return out;
        },
        py::arg("domain"), py::arg("z"), py::arg("w"), py::arg("kappa") = 0.01,
        py::arg("iterations") = 1500, py::arg("seed") = 1);
    m.def(
        "gromov_product",
        [](const Domain& d, const std::vector<std::pair<double, double>>& o,
           const std::vector<std::pair<double, double>>& x,
           const std::vector<std::pair<double, double>>& y) {
            Interval g = gromov_product(d, to_point(o), to_point(x), to_point(y));
            return std::make_pair(g.lower, g.upper);
        });
    m.def(
        "visibility_probe",
        [](const Domain& d, const std::vector<std::pair<double, double>>& p,
           const std::vector<std::pair<double, double>>& q, double kappa, int trials) {
            return json_to_py(to_json(visibility_probe(d, to_point(p), to_point(q), kappa,
                                                       trials)));
        },
        py::arg("domain"), py::arg("p"), py::arg("q"), py::arg("kappa") = 0.05,
        py::arg("trials") = 10);
    m.def(
        "goldilocks_check",
        [](const Domain& d, double eps0, int shell_points, std::uint64_t seed) {
            GoldilocksBudget b;
            b.shell.points = shell_points;
            b.shell.seed = seed;
            return json_to_py(to_json(goldilocks_check(d, eps0, {}, b)));
        },
        py::arg("domain"), py::arg("eps0"), py::arg("shell_points") = 96, py::arg("seed") = 1);
    m.def(
        "example_claims_check",
        [](int which, double tol, std::uint64_t seed) {
            Domain dom = which == 51 ? make_example51({}) : make_example52({});
            ExampleClaimsBudget b;
            b.tol = tol;
            b.goldilocks.shell.seed = seed;
            return json_to_py(to_json(example_claims_check(which, dom, b)));
        },
        py::arg("which"), py::arg("tol") = 0.1, py::arg("seed") = 1);
    m.def(
        "classify_wolff_denjoy",
        [](const Domain& d, const std::string& map_spec, int seeds, int N, std::uint64_t seed) {
            HoloMap F = parse_map(map_spec, d.dim);
            std::vector<Point> pts;
            pts.push_back(d.base_point);
            for (int k = 1; k < seeds; ++k)
                pts.push_back(random_interior_point(d, seed, static_cast<std::uint64_t>(k)));
            return json_to_py(to_json(classify_wolff_denjoy(d, F, pts, N)));
        },
        py::arg("domain"), py::arg("map_spec"), py::arg("seeds") = 3, py::arg("N") = 200,
        py::arg("seed") = 1);
    m.def(
        "limit_constancy_probe",
        [](const Domain& d, const std::string& map_spec, int grid, int N) {
            HoloMap F = parse_map(map_spec, d.dim);
            return json_to_py(to_json(limit_constancy_probe(d, F, grid, N)));
        },
        py::arg("domain"), py::arg("map_spec"), py::arg("grid") = 20, py::arg("N") = 200);

    py::register_exception<ParamError>(m, "ParamError", PyExc_ValueError);
    py::register_exception<InputError>(m, "InputError", PyExc_ValueError);
    py::register_exception<DomainError>(m, "DomainError", PyExc_ValueError);
    py::register_exception<SearchError>(m, "SearchError", PyExc_RuntimeError);
    py::register_exception<SamplingError>(m, "SamplingError", PyExc_RuntimeError);
}
