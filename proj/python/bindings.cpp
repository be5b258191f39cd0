#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "krlip/atomic.hpp"
#include "krlip/besov.hpp"
#include "krlip/error.hpp"
#include "krlip/generate.hpp"
#include "krlip/io.hpp"
#include "krlip/lipschitz.hpp"
#include "krlip/metric.hpp"
#include "krlip/transport.hpp"

namespace py = pybind11;
using namespace krlip;

namespace {

py::dict kr_dict(const KRResult& r) {
  py::list plan;
  for (const Arc& a : r.plan.arcs) plan.append(py::make_tuple(a.from, a.to, a.mass));
  py::dict d;
  d["primal"] = r.primal_value;
  d["dual"] = r.dual_value;
  d["gap"] = r.gap;
  d["plan"] = plan;
  d["residual"] = r.residual.mass;
  d["potential"] = r.potential.value;
  return d;
}

py::dict atom_dict(const WeightedAtom& w) {
  py::dict d;
  d["gamma"] = w.gamma;
  if (w.atom.kind == Atom::Kind::Dipole) {
    d["kind"] = "dipole";
    d["x"] = w.atom.x;
    d["y"] = w.atom.y;
  } else {
    d["kind"] = "dirac";
    d["z"] = w.atom.z;
    d["sign"] = w.atom.sign;
  }
  return d;
}

std::vector<double> values_on(const FiniteMetricSpace& space, std::vector<double> v) {
  if (v.size() != space.size()) {
    throw Error(ErrorCode::SizeMismatch, "expected " + std::to_string(space.size()) + " values, got " +
                                             std::to_string(v.size()));
  }
  return v;
}

}  // namespace

PYBIND11_MODULE(_krlip, m) {
  m.doc() = "Kantorovich-Rubinstein norms, Hölder-Lipschitz seminorms and Besov/Hajłasz energies on finite metric spaces";

  // The module keeps the only reference the translator needs.
  static PyObject* error_type = py::exception<Error>(m, "KrlipError", PyExc_ValueError).ptr();
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      py::object exc = py::reinterpret_borrow<py::object>(error_type)(e.what());
      exc.attr("code") = std::string(to_string(e.code()));
      exc.attr("detail") = e.detail();
      PyErr_SetObject(error_type, exc.ptr());
    }
  });

  py::class_<FiniteMetricSpace>(m, "MetricSpace")
      .def(py::init([](const std::vector<std::vector<double>>& dist, std::vector<std::string> ids) {
             return FiniteMetricSpace::validate(dist, std::move(ids));
           }),
           py::arg("dist"), py::arg("ids") = std::vector<std::string>{})
      .def_static("euclidean", &FiniteMetricSpace::euclidean, py::arg("coords"),
                  py::arg("ids") = std::vector<std::string>{})
      .def("__len__", &FiniteMetricSpace::size)
      .def("__call__", [](const FiniteMetricSpace& s, std::size_t i, std::size_t j) {
        if (i >= s.size() || j >= s.size()) throw py::index_error("point index out of range");
        return s(i, j);
      })
      .def_property_readonly("diam", &FiniteMetricSpace::diam)
      .def_property_readonly("ids", &FiniteMetricSpace::ids)
      .def("matrix", &FiniteMetricSpace::matrix)
      .def("realized_distances", &FiniteMetricSpace::realized_distances)
      .def("snowflake", [](const FiniteMetricSpace& s, double alpha) { return snowflake(s, alpha); },
           py::arg("alpha"));

  py::class_<MetricMeasureSpace>(m, "MeasureSpace")
      .def(py::init<FiniteMetricSpace, std::vector<double>>(), py::arg("space"), py::arg("weight"))
      .def_static("uniform", &MetricMeasureSpace::uniform, py::arg("space"))
      .def_property_readonly("space", &MetricMeasureSpace::space)
      .def_property_readonly("weight", &MetricMeasureSpace::weight)
      .def("__len__", &MetricMeasureSpace::size)
      .def("total_mass", &MetricMeasureSpace::total_mass)
      .def("ball_mass", &MetricMeasureSpace::ball_mass, py::arg("x"), py::arg("r"));

  m.def("kr_norm", [](const FiniteMetricSpace& s, std::vector<double> mass) {
    return kr_dict(kr_norm(s, SignedMeasure(values_on(s, std::move(mass)))));
  }, py::arg("space"), py::arg("mass"));
  m.def("kr0_norm", [](const FiniteMetricSpace& s, std::vector<double> mass) {
    return kr_dict(kr0_norm(s, SignedMeasure(values_on(s, std::move(mass)))));
  }, py::arg("space"), py::arg("mass"));

  m.def("holder_seminorm", [](const FiniteMetricSpace& s, std::vector<double> f, double alpha) {
    return holder_seminorm(s, ScalarField(values_on(s, std::move(f))), alpha);
  }, py::arg("space"), py::arg("f"), py::arg("alpha") = 1.0);
  m.def("holder_norm", [](const FiniteMetricSpace& s, std::vector<double> f, double alpha) {
    return holder_norm(s, ScalarField(values_on(s, std::move(f))), alpha);
  }, py::arg("space"), py::arg("f"), py::arg("alpha") = 1.0);
  m.def("lip_modulus", [](const FiniteMetricSpace& s, std::vector<double> f, double alpha, double delta) {
    return lip_modulus(s, ScalarField(values_on(s, std::move(f))), alpha, delta);
  }, py::arg("space"), py::arg("f"), py::arg("alpha"), py::arg("delta"));
  m.def("dist_to_little_lip",
        [](const FiniteMetricSpace& s, std::vector<double> f, double alpha, std::vector<double> schedule) {
          const auto r = dist_to_little_lip(s, ScalarField(values_on(s, std::move(f))), alpha, schedule);
          return py::make_tuple(r.deltas, r.omega, r.estimate());
        },
        py::arg("space"), py::arg("f"), py::arg("alpha"), py::arg("schedule"));
  m.def("operator_sup", [](const FiniteMetricSpace& s, std::vector<double> f) {
    return operator_sup(s, ScalarField(values_on(s, std::move(f))));
  }, py::arg("space"), py::arg("f"));
  m.def("extend_lipschitz",
        [](const FiniteMetricSpace& s, std::vector<std::size_t> subset, std::vector<double> values, double L) {
          return extend_lipschitz(s, subset, values, L).value;
        },
        py::arg("space"), py::arg("subset"), py::arg("values"), py::arg("L"));
  m.def("restricted_lipschitz_constant",
        [](const FiniteMetricSpace& s, std::vector<double> f, std::vector<std::size_t> subset) {
          return restricted_lipschitz_constant(s, ScalarField(values_on(s, std::move(f))), subset);
        },
        py::arg("space"), py::arg("f"), py::arg("subset"));

  m.def("decompose", [](const FiniteMetricSpace& s, std::vector<double> mass, double alpha) {
    const SignedMeasure mu(values_on(s, std::move(mass)));
    const auto dec = decompose(s, mu, alpha);
    const auto bounds = verify_bounds(s, mu, dec, alpha);
    py::list atoms;
    for (const auto& w : dec.atoms) atoms.append(atom_dict(w));
    py::dict d;
    d["alpha"] = dec.alpha;
    d["atoms"] = atoms;
    d["gamma_sum"] = bounds.gamma_sum;
    d["norm"] = bounds.norm;
    d["realized_c"] = bounds.realized_c;
    d["reconstruction_error"] = bounds.reconstruction_error;
    d["reconstructed"] = reconstruct(s, dec).mass;
    return d;
  }, py::arg("space"), py::arg("mass"), py::arg("alpha"));

  m.def("besov_seminorm", [](const MetricMeasureSpace& mm, std::vector<double> f, double s, double p) {
    return besov_seminorm(mm, ScalarField(values_on(mm.space(), std::move(f))), BesovParams{s, p});
  }, py::arg("mm"), py::arg("f"), py::arg("s") = 0.5, py::arg("p") = 2.0);
  m.def("besov_norm", [](const MetricMeasureSpace& mm, std::vector<double> f, double s, double p) {
    return besov_norm(mm, ScalarField(values_on(mm.space(), std::move(f))), BesovParams{s, p});
  }, py::arg("mm"), py::arg("f"), py::arg("s") = 0.5, py::arg("p") = 2.0);
  m.def("hajlasz_seminorm", [](const MetricMeasureSpace& mm, std::vector<double> f, double s, double p) {
    const ScalarField field(values_on(mm.space(), std::move(f)));
    const auto r = p == 1.0 ? hajlasz_seminorm_p1(mm, field, s) : hajlasz_upper_bound(mm, field, s, p);
    py::dict d;
    d["seminorm"] = r.seminorm;
    d["gradient"] = r.gradient.value;
    d["p"] = r.p;
    d["upper_bound"] = r.upper_bound;
    return d;
  }, py::arg("mm"), py::arg("f"), py::arg("s"), py::arg("p") = 1.0);

  m.def("generate_space", [](const std::string& kind, int n, std::uint64_t seed, std::optional<double> alpha) {
    auto g = generate_space(parse_space_kind(kind), n, seed, alpha);
    return py::make_tuple(g.coords, g.mm);
  }, py::arg("kind"), py::arg("n"), py::arg("seed") = 0, py::arg("alpha") = std::nullopt);
  m.def("build_net_hierarchy", [](const FiniteMetricSpace& s, int depth, double r0) {
    const auto h = build_net_hierarchy(s, depth, r0);
    return py::make_tuple(h.levels, h.radii);
  }, py::arg("space"), py::arg("depth"), py::arg("r0"));
  m.def("estimate_doubling_constant", &estimate_doubling_constant, py::arg("space"));
  m.def("fit_lower_mass_bound", [](const MetricMeasureSpace& mm) {
    const auto b = fit_lower_mass_bound(mm);
    return py::make_tuple(b.C, b.Q);
  }, py::arg("mm"));

  m.def("load_space", [](const std::string& text) { return io::parse_space(io::json::parse(text)); },
        py::arg("text"));
  m.def("dump_space", [](const MetricMeasureSpace& mm) { return io::dump(io::space_to_json(mm)); },
        py::arg("mm"));
}
