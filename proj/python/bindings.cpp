// Thin Python surface over scribe_core. Polytopes cross the boundary as
// opaque objects; reports and documents cross as JSON text.

#include "scribe/caps.hpp"
#include "scribe/combinatorics.hpp"
#include "scribe/constructions.hpp"
#include "scribe/io.hpp"
#include "scribe/polytope.hpp"
#include "scribe/scribability.hpp"

#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

namespace py = pybind11;
using namespace scribe;

namespace {

Mode parse_mode(const std::string& s) {
    if (s == "strong") return Mode::Strong;
    if (s == "weak") return Mode::Weak;
    throw py::value_error("mode must be 'strong' or 'weak'");
}

std::vector<std::vector<int>> faces_as_indices(const Polytope& P, int rank) {
    std::vector<std::vector<int>> out;
    for (Mask F : P.lattice.faces(rank)) out.push_back(indices(F));
    return out;
}

} // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Scribability of polytopes";

    py::register_exception<GeometryError>(m, "GeometryError", PyExc_ValueError);
    py::register_exception<FormatError>(m, "FormatError", PyExc_ValueError);

    py::class_<Polytope>(m, "Polytope")
        .def_readonly("dim", &Polytope::dim)
        .def_property_readonly("form", [](const Polytope& P) { return std::string(to_string(P.form)); })
        .def_readonly("vertices", &Polytope::vertices)
        .def_readonly("facet_normals", &Polytope::facet_normals)
        .def_property_readonly("n_vertices", &Polytope::n_vertices)
        .def("faces", &faces_as_indices, py::arg("rank"))
        .def("f_vector", [](const Polytope& P) {
            std::vector<int> f;
            for (int r = 0; r < P.dim; ++r) f.push_back(static_cast<int>(P.lattice.faces(r).size()));
            return f;
        })
        .def("to_json", [](const Polytope& P) { return polytope_to_json(P).dump(); })
        .def("__repr__", [](const Polytope& P) {
            return "<Polytope dim=" + std::to_string(P.dim) + " vertices=" + std::to_string(P.n_vertices()) + ">";
        });

    m.def("hull", [](const std::vector<Vec>& pts, double tol) { return hull(pts, Form::Euclidean, tol); },
          py::arg("points"), py::arg("tol") = kDefaultTol);
    m.def("from_json", [](const std::string& text, bool trust) { return polytope_from_json(Json::parse(text), trust); },
          py::arg("text"), py::arg("trust_lattice") = false);
    m.def("cube", &cube, py::arg("d"), py::arg("half_edge") = 1.0);
    m.def("regular_simplex", &regular_simplex, py::arg("d"), py::arg("circumradius") = 1.0);
    m.def("polar_dual", [](const Polytope& P) { return polar_dual(P); });
    m.def("cyclic", [](int d, int n) { return cyclic_realization(d, n); }, py::arg("d"), py::arg("n"));
    m.def("fixture", &named_fixture, py::arg("name"));
    m.def("fixture_names", &fixture_names);

    m.def("ridge_stacked_path", [](int d, int nodes) { return ridge_scribed_stacked(StackingTree::path(d, nodes)); },
          py::arg("d"), py::arg("nodes"));
    m.def("odd_cyclic", [](int d, int n) { return odd_cyclic_scribed(d, n).polytope; }, py::arg("d"), py::arg("n"));

    m.def("verdict",
          [](const Polytope& P, int i, int j, const std::string& mode, double tol) {
              return std::string(to_string(scribed_verdict(P, i, j, parse_mode(mode), tol)));
          },
          py::arg("polytope"), py::arg("i"), py::arg("j"), py::arg("mode") = "strong", py::arg("tol") = kDefaultTol);
    m.def("report",
          [](const Polytope& P, int i, int j, const std::string& mode, double tol) {
              return report_to_json(scribed_report(P, i, j, parse_mode(mode), tol)).dump();
          },
          py::arg("polytope"), py::arg("i"), py::arg("j"), py::arg("mode") = "strong", py::arg("tol") = kDefaultTol);

    m.def("is_k_ply",
          [](const std::vector<Vec>& points, int k) {
              std::vector<SphericalCap> caps;
              for (const Vec& x : points) caps.push_back(cap_from_point(x));
              return is_k_ply(caps, k).holds;
          },
          py::arg("points"), py::arg("k"));
    m.def("thresholds", [](int d) {
        Thresholds t = thresholds(d);
        return py::dict(py::arg("c_d") = t.c_d, py::arg("even_bound") = t.even_bound, py::arg("odd_bound") = t.odd_bound);
    });
}
