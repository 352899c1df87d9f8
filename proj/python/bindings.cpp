#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <string>

#include "fimalg/closure_calculus.hpp"
#include "fimalg/expression_parser.hpp"
#include "fimalg/presented_monoid.hpp"
#include "fimalg/rational_series.hpp"
#include "fimalg/suites.hpp"

namespace py = pybind11;
using namespace fimalg;

namespace {

py::dict rank_dict(const std::string& expr, long T) {
  auto r = vn_rank(eval(parse_expression(expr), T));
  py::dict d;
  d["T"] = r.T;
  d["ranks"] = r.ranks;
  d["partial"] = r.partial.str();
  d["tail"] = r.tail_bound.str();
  d["exact"] = r.exact ? py::object(py::str(r.exact->str())) : py::object(py::none());
  return d;
}

}  // namespace

PYBIND11_MODULE(_fimalg, m) {
  m.doc() = "Exact computations in the algebra generated by s, s* and its closures";

  py::register_exception<ParseError>(m, "ParseError", PyExc_ValueError);

  m.def("vn_rank", &rank_dict, py::arg("expr"), py::arg("T") = 64,
        "Rank sequence, enclosure and detected exact value of an expression.");
  m.def("normalize", [](const std::string& expr) { return parse_expression(expr).str(); }, py::arg("expr"));

  m.def("canonical_form", [](const std::string& word) { return canonicalize_M(MWord::from_json(word)).str(); },
        py::arg("word"), "Canonical form of a word given as [[\"x\",0,1],...].");
  m.def("monoid_equal",
        [](const std::string& a, const std::string& b) { return equals_M(MWord::from_json(a), MWord::from_json(b)); },
        py::arg("a"), py::arg("b"));

  m.def("hadamard",
        [](const std::string& a, const std::string& b) {
          return hadamard(RationalSeries::parse(a), RationalSeries::parse(b)).str();
        },
        py::arg("a"), py::arg("b"));
  m.def("coefficients",
        [](const std::string& a, std::size_t count) {
          std::vector<std::string> out;
          for (const auto& c : RationalSeries::parse(a).coeffs(count)) out.push_back(c.str());
          return out;
        },
        py::arg("series"), py::arg("count"));
  m.def("zero_set",
        [](const std::string& a, std::size_t period_bound) {
          auto z = zero_set(RationalSeries::parse(a), period_bound);
          py::dict d;
          d["set"] = z.set.str();
          d["start"] = z.set.start;
          d["period"] = z.set.period;
          d["residues"] = std::vector<std::size_t>(z.set.residues.begin(), z.set.residues.end());
          d["finite"] = std::vector<std::size_t>(z.set.finite.begin(), z.set.finite.end());
          d["certified"] = z.fully_certified();
          return d;
        },
        py::arg("series"), py::arg("period_bound") = 64);

  m.def("suite_names", &suite_names);
  m.def("run_suite",
        [](const std::string& name, long T) {
          SuiteOptions opts;
          opts.T = T;
          return run_suite(name, opts).to_json();
        },
        py::arg("name"), py::arg("T") = 64, py::call_guard<py::gil_scoped_release>(),
        "JSON report of a named suite.");
}
