// Python bindings for the main operations: ordinal arithmetic, chain-group
// ranks, orbit trees, the expression calculus distilled to strings.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "orbitrank/errors.hpp"
#include "orbitrank/spec_dsl.hpp"
#include "orbitrank/symrank.hpp"
#include "orbitrank/verify.hpp"

namespace py = pybind11;
using namespace orbitrank;

namespace {

Ordinal ord(const std::string& text) { return Ordinal::parse(text); }

std::vector<std::string> chain_rho_table(const ChainGroup& g) {
  std::vector<std::string> out;
  for (int k = 0; k < g.levels(); ++k) out.push_back(rho_k(g, k).str());
  return out;
}

}  // namespace

PYBIND11_MODULE(_orbitrank, m) {
  m.doc() = "orbit-tree ranks for subgroup chains and symbolic groups";

  py::register_exception<Error>(m, "OrbitrankError");

  m.def("ord_str", [](const std::string& a) { return ord(a).str(); });
  m.def("ord_cmp", [](const std::string& a, const std::string& b) {
    return compare(ord(a), ord(b));
  });
  m.def("ord_add", [](const std::string& a, const std::string& b) {
    return add(ord(a), ord(b)).str();
  });
  m.def("ord_mul_omega", [](const std::string& a) { return mul_omega(ord(a)).str(); });
  m.def("ord_limit_part", [](const std::string& a) { return limit_part(ord(a)).str(); });
  m.def("ord_kind", [](const std::string& a) {
    switch (successor_kind(ord(a))) {
      case OrdinalKind::zero: return "zero";
      case OrdinalKind::successor: return "successor";
      default: return "limit";
    }
  });

  py::class_<ChainGroup>(m, "ChainGroup")
      .def_property_readonly("degree", &ChainGroup::degree)
      .def_property_readonly("levels", &ChainGroup::levels)
      .def("order", &ChainGroup::order)
      .def("rho_k", [](const ChainGroup& g, int k) { return rho_k(g, k).str(); })
      .def("rho", [](const ChainGroup& g) { return rho(g).str(); })
      .def("rho_table", &chain_rho_table)
      .def("tree_json",
           [](const ChainGroup& g, int k) {
             return orbit_tree(coset_eqseq(g, k)).tree.to_json_text();
           })
      .def("tree_dot", [](const ChainGroup& g, int k) {
        return orbit_tree(coset_eqseq(g, k)).tree.to_dot();
      });

  py::class_<SpecFile>(m, "SpecFile")
      .def_static("parse", [](const std::string& text) { return SpecFile::parse(text); })
      .def_property_readonly("chain_names", &SpecFile::chain_names)
      .def_property_readonly("group_names", &SpecFile::group_names)
      .def("chain", &SpecFile::chain, py::return_value_policy::copy)
      .def("classify",
           [](const SpecFile& spec, const std::string& name) {
             Classification c = classify(*spec.group(name));
             return py::make_tuple(c.rank.str(), c.tight);
           })
      .def("is_alpha_cli",
           [](const SpecFile& spec, const std::string& name,
              const std::string& alpha) {
             return is_alpha_cli(*spec.group(name), ord(alpha));
           })
      .def("is_L_alpha_cli",
           [](const SpecFile& spec, const std::string& name,
              const std::string& alpha) {
             return is_L_alpha_cli(*spec.group(name), ord(alpha));
           })
      .def("truncate",
           [](const SpecFile& spec, const std::string& name, int depth,
              int breadth) {
             return truncate(*spec.group(name), depth, breadth);
           })
      .def("print", &SpecFile::print);

  m.def("build_example", [](const std::string& kind, const std::string& alpha) {
    ExprPtr e = build_example(kind == "G" ? ExampleKind::G : ExampleKind::H,
                              ord(alpha));
    Classification c = classify(*e);
    return py::make_tuple(e->str(), c.rank.str(), c.tight);
  });

  m.def("verify_suite", [](std::uint64_t seed, int trials) {
    std::ostringstream report;
    bool ok = true;
    for (const auto& r : verify::run_all(seed, trials)) {
      report << (r.passed() ? "ok   " : "FAIL ") << r.name << " ("
             << r.trials << " trials)\n";
      ok = ok && r.passed();
    }
    return py::make_tuple(ok, report.str());
  });
}
