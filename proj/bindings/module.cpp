#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "schemelab/report.hpp"

namespace py = pybind11;
using namespace schemelab;

namespace {

py::object json_to_py(const Json& j) {
  switch (j.type()) {
    case Json::value_t::null: return py::none();
    case Json::value_t::boolean: return py::bool_(j.get<bool>());
    case Json::value_t::number_integer: return py::int_(j.get<long long>());
    case Json::value_t::number_unsigned: return py::int_(j.get<unsigned long long>());
    case Json::value_t::number_float: return py::float_(j.get<double>());
    case Json::value_t::string: return py::str(j.get<std::string>());
    case Json::value_t::array: {
      py::list out;
      for (const auto& item : j) out.append(json_to_py(item));
      return out;
    }
    case Json::value_t::object: {
      py::dict out;
      for (auto it = j.begin(); it != j.end(); ++it)
        out[py::str(it.key())] = json_to_py(it.value());
      return out;
    }
    default: return py::none();
  }
}

py::list matrix_to_py(const Matrix& m) {
  py::list rows;
  for (int r = 0; r < m.rows(); ++r) {
    py::list row;
    for (int c = 0; c < m.cols(); ++c) row.append(m(r, c));
    rows.append(row);
  }
  return rows;
}

py::dict module_to_py(const TModuleSummary& m) {
  py::dict d;
  d["dim"] = m.dim;
  d["endpoint"] = m.endpoint;
  d["diameter"] = m.diameter;
  d["dual_endpoint"] = m.dual_endpoint;
  d["dual_diameter"] = m.dual_diameter;
  d["thin"] = m.thin;
  d["dual_thin"] = m.dual_thin;
  d["e_profile"] = std::vector<bool>(m.e_profile.begin(), m.e_profile.end());
  d["e_star_profile"] = std::vector<bool>(m.e_star_profile.begin(), m.e_star_profile.end());
  d["basis"] = matrix_to_py(m.basis);
  return d;
}

}  // namespace

PYBIND11_MODULE(_schemelab, m) {
  m.doc() = "association scheme eigenstructure and Terwilliger module toolkit";
  m.attr("__version__") = kToolVersion;

  py::register_exception<SchemeError>(m, "SchemeError");

  py::class_<Scheme>(m, "Scheme")
      .def_property_readonly("n", &Scheme::n)
      .def_property_readonly("D", &Scheme::D)
      .def_property_readonly("label", &Scheme::label)
      .def_property_readonly("valencies", &Scheme::valencies)
      .def("cls", &Scheme::cls, py::arg("x"), py::arg("y"))
      .def("class_table", &Scheme::class_table)
      .def("intersection_number",
           [](const Scheme& s, int k, int i, int j) { return s.intersection_numbers().p(k, i, j); },
           py::arg("k"), py::arg("i"), py::arg("j"))
      .def("__repr__", [](const Scheme& s) {
        return "<Scheme " + s.label() + " n=" + std::to_string(s.n()) +
               " D=" + std::to_string(s.D()) + ">";
      });

  m.def("from_class_matrix", &Scheme::from_class_matrix, py::arg("labels"),
        py::arg("label") = "scheme");
  m.def("complete_graph", &complete_graph, py::arg("n"));
  m.def("cycle", &cycle, py::arg("m"));
  m.def("hamming", &hamming, py::arg("d"), py::arg("q"),
        py::arg("vertex_cap") = kDefaultVertexCap);
  m.def("johnson", &johnson, py::arg("v"), py::arg("k"),
        py::arg("vertex_cap") = kDefaultVertexCap);
  m.def("read_scheme_file", &read_scheme_file, py::arg("path"));
  m.def("write_scheme_file", &write_scheme_file, py::arg("scheme"), py::arg("path"));

  py::class_<EigenData>(m, "EigenData")
      .def_property_readonly("n", [](const EigenData& e) { return e.n; })
      .def_property_readonly("D", [](const EigenData& e) { return e.D; })
      .def_property_readonly("multiplicities", [](const EigenData& e) { return e.multiplicities; })
      .def_property_readonly("valencies", [](const EigenData& e) { return e.valencies; })
      .def_property_readonly("P", [](const EigenData& e) { return matrix_to_py(e.P); })
      .def_property_readonly("Q", [](const EigenData& e) { return matrix_to_py(e.Q); })
      .def("idempotent", [](const EigenData& e, int i) { return matrix_to_py(e.idempotents.at(i)); },
           py::arg("i"));

  m.def("eigensystem", [](const Scheme& s) { return eigensystem(s); }, py::arg("scheme"));

  m.def("krein_parameters", [](const EigenData& e) {
    const KreinTensor kr = krein_parameters(e);
    py::list out;
    for (int k = 0; k <= e.D; ++k) {
      py::list mk;
      for (int i = 0; i <= e.D; ++i) {
        py::list row;
        for (int j = 0; j <= e.D; ++j) row.append(kr.q(k, i, j));
        mk.append(row);
      }
      out.append(mk);
    }
    return out;
  }, py::arg("eigen"));

  m.def("q_polynomial_orderings", [](const EigenData& e) {
    py::list out;
    for (const QStructure& q : q_polynomial_orderings(e)) {
      py::dict d;
      d["ordering"] = q.ordering;
      d["dual_a"] = q.dual_a;
      d["dual_b"] = q.dual_b;
      d["dual_c"] = q.dual_c;
      d["multiplicities"] = q.multiplicities;
      out.append(d);
    }
    return out;
  }, py::arg("eigen"));

  m.def("p_polynomial_orderings", [](const Scheme& s) {
    py::list out;
    for (const PStructure& p : p_polynomial_orderings(s)) {
      py::dict d;
      d["ordering"] = p.ordering;
      d["a"] = p.a;
      d["b"] = p.b;
      d["c"] = p.c;
      d["valencies"] = p.valencies;
      out.append(d);
    }
    return out;
  }, py::arg("scheme"));

  m.def("decompose", [](const Scheme& s, const EigenData& e, int x, std::uint64_t seed) {
    TOptions opts;
    opts.seed = seed;
    const Decomposition dec = decompose(s, e, x, opts);
    py::dict d;
    d["base_point"] = dec.base_point;
    d["residual"] = dec.residual;
    py::list mods;
    for (const TModuleSummary& mod : dec.modules) mods.append(module_to_py(mod));
    d["modules"] = mods;
    return d;
  }, py::arg("scheme"), py::arg("eigen"), py::arg("x"), py::arg("seed") = 0);

  m.def("is_dual_thin", [](const Scheme& s, const EigenData& e, bool sample) {
    const DualThinReport rep = is_dual_thin(
        s, e, sample ? BasePointPolicy::kSampleRepresentative : BasePointPolicy::kAll);
    py::dict d;
    d["dual_thin"] = rep.dual_thin;
    if (rep.witness) {
      py::dict w;
      w["base_point"] = rep.witness->base_point;
      w["module"] = rep.witness->module_index;
      w["eigen_index"] = rep.witness->eigen_index;
      w["rank"] = rep.witness->rank;
      d["witness"] = w;
    } else {
      d["witness"] = py::none();
    }
    return d;
  }, py::arg("scheme"), py::arg("eigen"), py::arg("sample") = false);

  m.def("check_suite", [](const Scheme& s) {
    const SuiteResult suite = run_suite({s});
    py::list reports;
    for (const CheckReport& r : suite.reports) reports.append(json_to_py(report_json(r)));
    py::list errors;
    for (const SuiteError& e : suite.errors) {
      py::dict d;
      d["scheme"] = e.scheme_label;
      d["code"] = err_name(e.code);
      d["message"] = e.message;
      errors.append(d);
    }
    py::dict out;
    out["reports"] = reports;
    out["errors"] = errors;
    return out;
  }, py::arg("scheme"));

  m.def("johnson_cstar", [](int k) { return json_to_py(report_json(johnson_dual_c_inequality(k))); },
        py::arg("k"));

  m.def("johnson_parameters", [](int v, int k) {
    const SchemeParameters sp = johnson_parameters(v, k);
    const RationalMatrix q = second_eigenmatrix(sp);
    py::dict d;
    d["label"] = sp.label;
    d["D"] = sp.D;
    d["n"] = sp.n.str();
    py::list prow, qrow;
    for (int i = 0; i <= sp.D; ++i) {
      py::list pr, qr;
      for (int j = 0; j <= sp.D; ++j) {
        pr.append(rational_string(sp.P(i, j)));
        qr.append(rational_string(q(i, j)));
      }
      prow.append(pr);
      qrow.append(qr);
    }
    d["P"] = prow;
    d["Q"] = qrow;
    return d;
  }, py::arg("v"), py::arg("k"));
}
