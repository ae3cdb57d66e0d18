#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>
#include <string>

#include "dessinmetric/dessin.hpp"
#include "dessinmetric/error.hpp"
#include "dessinmetric/finite_groups.hpp"
#include "dessinmetric/metrics.hpp"
#include "dessinmetric/schwarz_christoffel.hpp"
#include "dessinmetric/verify.hpp"

namespace py = pybind11;
using namespace dessinmetric;
using moebius::Complex;
using moebius::MoebiusTransform;
using moebius::SpherePoint;

namespace {

// Points on the sphere cross the boundary as complex numbers, with None for ∞.
using PyPoint = std::optional<Complex>;

SpherePoint to_point(const PyPoint& p) { return p ? SpherePoint(*p) : SpherePoint::infinity(); }
PyPoint from_point(const SpherePoint& p) { return p.is_infinite() ? PyPoint{} : PyPoint{p.value()}; }

GroupType tag_or_throw(const std::string& tag) {
  const auto t = parse_group_tag(tag);
  if (!t) throw Error(Errc::UnsupportedType, "unknown group tag " + tag);
  return *t;
}

py::dict passport_dict(const dessin::Passport& p) {
  py::dict d;
  d["degree"] = p.degree;
  d["white"] = p.white_degrees;
  d["black"] = p.black_degrees;
  d["faces"] = p.face_half_degrees;
  return d;
}

}  // namespace

PYBIND11_MODULE(_dessinmetric, m) {
  m.doc() = "Dessins d'enfants, finite Moebius groups and canonical metrics on the sphere";

  static py::exception<Error> error_type(m, "DessinMetricError", PyExc_RuntimeError);
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      const auto cls = py::reinterpret_borrow<py::object>(error_type.ptr());
      py::object instance = cls(e.what());
      instance.attr("code") = std::string(errc_name(e.code()));
      PyErr_SetObject(error_type.ptr(), instance.ptr());
    }
  });

  // Dessins.
  py::class_<dessin::Dessin>(m, "Dessin")
      .def(py::init<dessin::Permutation, dessin::Permutation>(), py::arg("sigma_white"), py::arg("sigma_black"),
           "Zero-based permutation arrays.")
      .def_property_readonly("dart_count", &dessin::Dessin::dart_count)
      .def_property_readonly("sigma_white", &dessin::Dessin::sigma_white)
      .def_property_readonly("sigma_black", &dessin::Dessin::sigma_black)
      .def("face_permutation", &dessin::Dessin::face_permutation)
      .def("to_json", [](const dessin::Dessin& d) { return dessin::to_json(d); });
  m.def("parse_dessin", [](const std::string& text) { return dessin::parse_dessin(text); }, py::arg("text"));
  m.def("genus", &dessin::genus);
  m.def("passport", [](const dessin::Dessin& d) { return passport_dict(dessin::passport(d)); });
  m.def("triangle_counts", [](const dessin::Dessin& d) {
    const auto t = dessin::triangulate(d);
    return py::make_tuple(t.triangle_count, t.butterfly_count);
  });
  m.def("automorphisms", [](const dessin::Dessin& d) { return dessin::automorphisms(d).elements; },
        "Automorphisms as zero-based permutations, identity first.");
  m.def("automorphism_type", [](const dessin::Dessin& d) {
    return dessin::classify_perm_group(dessin::automorphisms(d)).tag();
  });

  // Moebius transformations.
  py::class_<MoebiusTransform>(m, "MoebiusTransform")
      .def(py::init<>())
      .def(py::init<Complex, Complex, Complex, Complex>(), py::arg("a"), py::arg("b"), py::arg("c"), py::arg("d"))
      .def_property_readonly("a", &MoebiusTransform::a)
      .def_property_readonly("b", &MoebiusTransform::b)
      .def_property_readonly("c", &MoebiusTransform::c)
      .def_property_readonly("d", &MoebiusTransform::d)
      .def("__call__", [](const MoebiusTransform& t, const PyPoint& p) { return from_point(t(to_point(p))); },
           py::arg("point").none(true))
      .def("__matmul__", [](const MoebiusTransform& l, const MoebiusTransform& r) { return moebius::compose(l, r); })
      .def("inverse", [](const MoebiusTransform& t) { return moebius::inverse(t); })
      .def("derivative", [](const MoebiusTransform& t, Complex z) { return moebius::derivative(t, z); })
      .def("order", [](const MoebiusTransform& t, int cap) { return moebius::element_order(t, cap); },
           py::arg("cap") = moebius::kDefaultOrderCap)
      .def("fixed_points",
           [](const MoebiusTransform& t) -> py::object {
             const auto f = moebius::fixed_points(t);
             if (std::holds_alternative<moebius::AllPoints>(f)) return py::str("all");
             py::list out;
             for (const auto& p : std::get<std::vector<SpherePoint>>(f)) out.append(py::cast(from_point(p)));
             return out;
           })
      .def("is_identity", [](const MoebiusTransform& t) { return t.is_identity(); })
      .def("__eq__", [](const MoebiusTransform& l, const MoebiusTransform& r) { return l == r; })
      .def("to_json", [](const MoebiusTransform& t) { return moebius::to_json(t); })
      .def("__repr__", [](const MoebiusTransform& t) { return "MoebiusTransform(" + moebius::to_json(t) + ")"; });
  m.def("from_triple",
        [](const PyPoint& a, const PyPoint& b, const PyPoint& c) {
          return moebius::from_triple(to_point(a), to_point(b), to_point(c));
        },
        py::arg("a").none(true), py::arg("b").none(true), py::arg("c").none(true));
  m.def("standard_generators", [](const std::string& tag) { return moebius::standard_generators(tag_or_throw(tag)); });

  // Finite groups.
  py::class_<groups::FiniteMoebiusGroup>(m, "FiniteMoebiusGroup")
      .def_property_readonly("order", &groups::FiniteMoebiusGroup::order)
      .def_property_readonly("type", [](const groups::FiniteMoebiusGroup& g) { return g.type().tag(); })
      .def_property_readonly("elements", &groups::FiniteMoebiusGroup::elements)
      .def("conjugated_by", &groups::FiniteMoebiusGroup::conjugated_by);
  m.def("closure", &groups::closure, py::arg("generators"), py::arg("cap") = groups::kDefaultClosureCap);
  m.def("standard_group", [](const std::string& tag) { return groups::standard_group(tag_or_throw(tag)); });
  m.def("unitarize", [](const groups::FiniteMoebiusGroup& g) { return groups::unitarize(g).phi; });
  m.def("is_in_SO3", &groups::is_in_SO3, py::arg("group"), py::arg("tol") = 1e-8);
  m.def("orbit_sizes", [](const groups::FiniteMoebiusGroup& g) {
    std::vector<std::pair<int, int>> out;
    for (const auto& o : groups::orbit_analysis(g).orbits) {
      out.emplace_back(static_cast<int>(o.points.size()), o.stabilizer_order);
    }
    return out;
  }, "List of (orbit size, stabilizer order), largest orbit first.");

  // Metrics.
  py::class_<metrics::ConformalMetric>(m, "ConformalMetric")
      .def("rho", &metrics::ConformalMetric::rho, py::arg("z"))
      .def("rho_at_infinity", &metrics::ConformalMetric::rho_at_infinity, py::arg("u"))
      .def_property_readonly("provenance", &metrics::ConformalMetric::provenance);
  m.def("round_metric", &metrics::round_metric);
  m.def("averaged_metric", &metrics::averaged_metric);
  m.def("conjugated_metric", &metrics::conjugated_metric);
  m.def("hermitian_metric", &metrics::hermitian_metric);
  m.def("orbit_triple_metric", [](const groups::FiniteMoebiusGroup& g) { return metrics::orbit_triple_metric(g); });
  m.def("pullback", &metrics::pullback, py::arg("m"), py::arg("metric"));
  m.def("curvature", &metrics::curvature, py::arg("metric"), py::arg("z"),
        py::arg("h") = metrics::kDefaultCurvatureStep);
  m.def("curvature_range",
        [](const metrics::ConformalMetric& g, int grid, double h) {
          const auto r = metrics::curvature_report(g, metrics::pole_avoiding_grid(g, grid), h);
          return py::make_tuple(r.min(), r.max());
        },
        py::arg("metric"), py::arg("grid") = metrics::kDefaultGridSize, py::arg("h") = metrics::kDefaultCurvatureStep,
        "(min, max) of the Richardson curvature estimate on the pole-avoiding grid.");
  m.def("invariance_defect", &metrics::invariance_defect, py::arg("metric"), py::arg("group"),
        py::arg("samples") = 200, py::arg("workers") = 1);
  m.def("metric_distance", &metrics::metric_distance, py::arg("g1"), py::arg("g2"), py::arg("samples") = 200);
  m.def("conjugator_well_defined", &metrics::conjugator_well_defined, py::arg("group"), py::arg("trials") = 3,
        py::arg("seed") = 0);

  // Schwarz-Christoffel triangle map.
  m.def("sc_forward", &sc::sc_forward, py::arg("z"));
  m.def("sc_inverse", &sc::sc_inverse, py::arg("w"));
  m.def("triangle_vertices", [] { return sc::triangle_map().vertices; });
  m.def("butterfly_belyi", [](Complex p) { return from_point(sc::butterfly_belyi(p)); }, py::arg("p"));

  m.def("run_checks",
        [](const std::string& scope, bool perturb) {
          std::vector<py::tuple> out;
          for (const auto& r : verify::run_checks(scope, perturb)) {
            out.push_back(py::make_tuple(r.scope, r.name, r.passed, r.detail));
          }
          return out;
        },
        py::arg("scope") = "all", py::arg("perturb") = false);
}
