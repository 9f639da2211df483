#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <fmt/format.h>

#include "gimforge/classify.hpp"
#include "gimforge/error.hpp"
#include "gimforge/liealg.hpp"

namespace py = pybind11;
using namespace gimforge;

namespace {

using Rows = std::vector<std::vector<long>>;

Gim to_gim(const Rows& rows) { return validate_gim_rows(rows); }

py::object json_loads(const std::string& s) { return py::module_::import("json").attr("loads")(s); }

std::vector<std::vector<std::size_t>> moves_list(const MoveSequence& s) {
  std::vector<std::vector<std::size_t>> out;
  for (const auto& mv : s.moves) out.push_back({mv.i + 1, mv.j + 1});
  return out;
}

GradedPresentation pres(const Rows& m, const std::string& relations, std::size_t degree, std::size_t depth,
                        std::size_t max_nodes) {
  return presentation(to_gim(m), parse_relation_kind(relations), {depth, max_nodes}, degree);
}

}  // namespace

PYBIND11_MODULE(_gimforge, m) {
  m.doc() = "Generalized intersection matrices, braid classification and presented Lie algebras";

  static py::exception<Error> gim_error(m, "GimError");
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      gim_error(fmt::format("{}: {}", errc_name(e.code()), e.what()).c_str());
    }
  });

  m.def("validate", [](const Rows& rows) { return to_long_rows(to_gim(rows).matrix()); },
        "Return the matrix if it satisfies the GIM axioms, raise GimError otherwise.");
  m.def("symmetrizer", [](const Rows& rows) {
    std::vector<long> s;
    for (const auto& x : symmetrizer(to_gim(rows)).s) s.push_back(x.get_si());
    return s;
  });
  m.def("definiteness", [](const Rows& rows) {
    auto g = gram(to_gim(rows));
    return py::make_tuple(definiteness_name(g.definiteness), g.corank);
  }, "(definiteness name, corank) of the symmetrized form.");
  m.def("classify", [](const Rows& rows) { return json_loads(report_json(classify(to_gim(rows)))); },
        "Classification report as a dict.");
  m.def("reduce_positive", [](const Rows& rows) {
    auto r = reduce_positive(to_gim(rows));
    return py::make_tuple(to_long_rows(r.gim.matrix()), moves_list(r.certificate));
  });
  m.def("template", [](const std::string& label) {
    return to_long_rows(make_template(ModifiedDynkinType::parse(label)).gim.matrix());
  });
  m.def("diagram_dot", [](const std::string& label) { return diagram_dot(ModifiedDynkinType::parse(label)); });
  m.def("gim_from_toroidal", [](const Rows& rows, std::size_t nu) {
    return to_long_rows(gim_from_toroidal(to_gim(rows), nu).matrix());
  }, py::arg("cartan"), py::arg("copies") = 1);
  m.def("enumerate", [](const Rows& rows, std::size_t depth, std::size_t max_nodes) {
    auto en = enumerate_equivalents(PrimeBasis::standard(make_space(to_gim(rows))), {depth, max_nodes});
    py::list gims;
    for (auto k : dedup_by_gim(en)) gims.append(to_long_rows(gim_of(en.bases[k]).matrix()));
    py::dict d;
    d["bases"] = en.bases.size();
    d["complete"] = en.complete;
    d["distinct_gims"] = gims;
    return d;
  }, py::arg("matrix"), py::arg("depth") = 8, py::arg("max_nodes") = 100000);
  m.def("graded_dims", [](const Rows& rows, const std::string& relations, std::size_t degree, std::size_t depth,
                          std::size_t max_nodes) {
    Truncation t;
    {
      py::gil_scoped_release nogil;
      t = Truncation::build(pres(rows, relations, degree, depth, max_nodes), degree);
    }
    py::dict d;
    for (const auto& [deg, k] : t.root_dims()) d[py::tuple(py::cast(deg))] = k;
    return py::make_tuple(d, t.complete());
  }, py::arg("matrix"), py::arg("relations") = "gim", py::arg("degree") = 6, py::arg("depth") = 8,
     py::arg("max_nodes") = 100000,
     "({Gamma-degree: dimension}, complete) for the truncation at the given height.");
  m.def("bracket_eval", [](const Rows& rows, const std::string& expr, const std::string& relations,
                           std::size_t depth, std::size_t max_nodes) {
    auto gens = ef_generators(rows.size());
    auto e = LieExpr::parse(expr, gens);
    auto t = Truncation::build(pres(rows, relations, e.height(), depth, max_nodes), e.height());
    auto ev = t.eval(e);
    std::vector<std::string> coords;
    for (const auto& x : ev.coords) coords.push_back(rational_str(x));
    py::dict d;
    d["zero"] = ev.is_zero;
    d["coordinates"] = coords;
    d["complete"] = t.complete();
    return d;
  }, py::arg("matrix"), py::arg("expr"), py::arg("relations") = "gim", py::arg("depth") = 8,
     py::arg("max_nodes") = 100000);
  m.def("coset_obstruction", [](const Rows& rows, const std::vector<long>& target) {
    auto w = coset_obstruction(to_gim(rows), target);
    py::object pair = py::none();
    if (w.pair) pair = py::make_tuple(w.pair->first + 1, w.pair->second + 1);
    return py::make_tuple(w.obstructed, pair);
  });
}
