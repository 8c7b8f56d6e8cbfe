// Python bindings for the main operations. Rationals cross the boundary as
// fractions.Fraction, trees as their canonical code strings, series as
// {code: Fraction} dicts.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <map>
#include <string>
#include <vector>

#include "prelie/errors.hpp"
#include "prelie/group.hpp"
#include "prelie/quotients.hpp"
#include "prelie/serialize.hpp"
#include "prelie/series.hpp"
#include "prelie/trees.hpp"
#include "prelie/vectorfields.hpp"

namespace py = pybind11;
using namespace prelie;

namespace {

py::object fraction_type() {
  return py::module_::import("fractions").attr("Fraction");
}

py::object to_fraction(const Rational& q) {
  return fraction_type()(
      py::str(q.get_num().get_str() + "/" + q.get_den().get_str()));
}

Rational from_py(py::handle h) {
  py::object frac = fraction_type()(h);
  const std::string num = py::str(frac.attr("numerator"));
  const std::string den = py::str(frac.attr("denominator"));
  Rational q{Integer(num), Integer(den)};
  q.canonicalize();
  return q;
}

py::dict series_to_dict(const TreeSeries& s) {
  py::dict d;
  for (const auto& [t, c] : s.terms())
    d[py::str(s.table().format_code(t))] = to_fraction(c);
  return d;
}

TreeSeries series_from_dict(const TreeTable& tt, int order, py::dict terms) {
  TreeSeries s(tt, order);
  for (auto item : terms) {
    TreeId t = tt.parse_code(py::cast<std::string>(py::str(item.first)));
    s.add_term(t, from_py(item.second));
  }
  return s;
}

py::list jet_to_list(const FlowJet& jet) {
  py::list out;
  for (const auto& ck : jet.coeffs) {
    py::list row;
    for (const Rational& c : ck) row.append(to_fraction(c));
    out.append(std::move(row));
  }
  return out;
}

PolyVectorField field_from_dicts(const std::vector<std::map<std::vector<int>, py::object>>& comps,
                                 int dim, int cap) {
  PolyVectorField F(dim, cap);
  for (int i = 0; i < static_cast<int>(comps.size()); ++i)
    for (const auto& [m, c] : comps[i]) F.add_term(i, m, from_py(c));
  return F;
}

py::list field_to_lists(const PolyVectorField& F) {
  py::list comps;
  for (int i = 0; i < F.dim(); ++i) {
    py::list terms;
    for (const auto& [m, c] : F.component(i).terms()) {
      py::tuple t(2);
      t[0] = py::cast(m);
      t[1] = to_fraction(c);
      terms.append(std::move(t));
    }
    comps.append(std::move(terms));
  }
  return comps;
}

}  // namespace

PYBIND11_MODULE(prelie, m) {
  m.doc() =
      "Exact engine for the substitution group of rooted-tree series and "
      "Taylor flows of polynomial vector fields";

  py::register_exception<input_error>(m, "InputError", PyExc_ValueError);
  py::register_exception<math_error>(m, "MathError", PyExc_ArithmeticError);

  py::class_<TreeTable>(m, "TreeTable")
      .def(py::init<int>(), py::arg("max_order"))
      .def(py::init<int, int>(), py::arg("max_order"), py::arg("cap"))
      .def_property_readonly("max_order", &TreeTable::max_order)
      .def("__len__", &TreeTable::size)
      .def("trees_of_order",
           [](const TreeTable& tt, int n) {
             std::vector<std::string> out;
             for (TreeId t : tt.trees_of_order(n)) out.push_back(tt.format_code(t));
             return out;
           })
      .def("nodes", [](const TreeTable& tt, const std::string& c) { return tt.nodes(tt.parse_code(c)); })
      .def("depth", [](const TreeTable& tt, const std::string& c) { return tt.depth(tt.parse_code(c)); })
      .def("symmetry_factor",
           [](const TreeTable& tt, const std::string& c) {
             return tt.symmetry_factor(tt.parse_code(c));
           })
      .def("is_linear",
           [](const TreeTable& tt, const std::string& c) { return tt.is_linear(tt.parse_code(c)); })
      .def("is_corolla",
           [](const TreeTable& tt, const std::string& c) { return tt.is_corolla(tt.parse_code(c)); })
      .def("canonical_code",
           [](const TreeTable& tt, const std::string& c) { return tt.format_code(tt.parse_code(c)); })
      .def("graft",
           [](const TreeTable& tt, const std::string& t, const std::string& s, int v) {
             return tt.format_code(tt.graft(tt.parse_code(t), tt.parse_code(s), v));
           })
      .def("chain", [](const TreeTable& tt, int n) { return tt.format_code(tt.chain(n)); })
      .def("corolla", [](const TreeTable& tt, int n) { return tt.format_code(tt.corolla(n)); });

  m.def("exp_star",
        [](const TreeTable& tt, int order) { return series_to_dict(exp_star(tt, order)); },
        py::arg("table"), py::arg("order"));
  m.def("log_star",
        [](const TreeTable& tt, int order) { return series_to_dict(log_star(tt, order)); },
        py::arg("table"), py::arg("order"));
  m.def("compose",
        [](const TreeTable& tt, int order, py::dict x, py::dict y) {
          return series_to_dict(
              compose(series_from_dict(tt, order, x), series_from_dict(tt, order, y)));
        },
        py::arg("table"), py::arg("order"), py::arg("x"), py::arg("y"));
  m.def("invert",
        [](const TreeTable& tt, int order, py::dict y) {
          return series_to_dict(invert(series_from_dict(tt, order, y)));
        },
        py::arg("table"), py::arg("order"), py::arg("y"));
  m.def("graft_product",
        [](const TreeTable& tt, int order, py::dict x, py::dict y) {
          return series_to_dict(graft_product(series_from_dict(tt, order, x),
                                              series_from_dict(tt, order, y)));
        });
  m.def("insertion",
        [](const TreeTable& tt, int order, py::dict x, py::dict y) {
          return series_to_dict(
              insertion(series_from_dict(tt, order, x), series_from_dict(tt, order, y)));
        });
  m.def("lie_bracket",
        [](const TreeTable& tt, int order, py::dict x, py::dict y) {
          return series_to_dict(
              lie_bracket(series_from_dict(tt, order, x), series_from_dict(tt, order, y)));
        });

  m.def("phi",
        [](const TreeTable& tt, int order, py::dict x) {
          PowerSeriesComp f = phi(series_from_dict(tt, order, x));
          py::list out;
          for (const Rational& c : f.a) out.append(to_fraction(c));
          return out;
        },
        "Chain coefficients a_1..a_N of the composition power series image");
  m.def("psi",
        [](const TreeTable& tt, int order, py::dict x) {
          MuElement a = psi(series_from_dict(tt, order, x));
          py::list fs;
          for (const Rational& c : a.f) fs.append(to_fraction(c));
          return py::make_tuple(to_fraction(a.lambda), fs, a.invertible);
        },
        "(lambda, [f_0..f_{N-1}], invertible)");
  m.def("bernoulli", [](int n) { return to_fraction(bernoulli(n)); });

  m.def("parse_field",
        [](const std::string& text, int dim, int cap) {
          return field_to_lists(parse_field(text, dim, cap));
        },
        py::arg("text"), py::arg("dim"), py::arg("degree_cap"),
        "Parse a ';'-separated field expression; returns per-component "
        "[(exponents, Fraction)] term lists");
  m.def("flow_taylor",
        [](const std::string& field, int dim, const std::string& point, int terms) {
          PolyVectorField F =
              parse_field(field, dim, std::numeric_limits<int>::max());
          return jet_to_list(flow_taylor(F, parse_point(point, dim), terms));
        },
        py::arg("field"), py::arg("dim"), py::arg("point"), py::arg("terms"),
        "Jet coefficients c_1..c_K of the flow through the given point");
  m.def("recover_field",
        [](const TreeTable& tt, const std::string& field, int dim, int degree) {
          PolyVectorField G = parse_field(field, dim, degree);
          return field_to_lists(recover_field(tt, G, degree));
        },
        py::arg("table"), py::arg("field"), py::arg("dim"), py::arg("degree"));

  m.def("series_json",
        [](const TreeTable& tt, int order, py::dict x) {
          return series_to_json(series_from_dict(tt, order, x)).dump(2);
        },
        "Serialize a series dict to the shared JSON schema");
  m.def("series_from_json",
        [](const TreeTable& tt, const std::string& text) {
          return series_to_dict(series_from_json(tt, nlohmann::json::parse(text)));
        });
}
