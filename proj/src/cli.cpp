#include "gimforge/cli.hpp"

#include <CLI11.hpp>
#include <fmt/format.h>
#include <json.hpp>

#include <fstream>
#include <random>
#include <sstream>
#include <thread>

#include "gimforge/classify.hpp"
#include "gimforge/error.hpp"
#include "gimforge/liealg.hpp"
#include "gimforge/matrix_io.hpp"

namespace gimforge::cli {

namespace {

using ojson = nlohmann::ordered_json;

struct Options {
  std::string path;
  std::string format = "text";
  std::size_t degree = 6;
  std::size_t depth = 8;
  std::size_t max_nodes = 100000;
  std::string relations = "gim";
  std::uint64_t seed = 1;
  std::string expr;
  std::string target;
  std::string label;
  std::string expected;
  std::size_t copies = 1;
  std::size_t trials = 0;
};

int exit_code(Errc c) {
  switch (c) {
    case Errc::NotSquare:
    case Errc::InvalidGim: return 2;
    case Errc::ParseError: return 3;
    case Errc::Indefinite: return 4;
    case Errc::Decomposable: return 5;
    default: return 1;
  }
}

std::string read_text(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw Error(Errc::ParseError, "cannot open " + path);
  std::stringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

ojson matrix_json(const IntMatrix& m) {
  ojson rows = ojson::array();
  for (const auto& r : to_long_rows(m)) rows.push_back(r);
  return rows;
}

EnumBounds bounds_of(const Options& o) {
  if (o.depth == 0 || o.max_nodes == 0) throw Error(Errc::InvalidArgument, "--depth and --max-nodes must be positive");
  return {o.depth, o.max_nodes};
}

TruncationOptions truncation_options() {
  TruncationOptions t;
  t.threads = std::max(1u, std::thread::hardware_concurrency());
  return t;
}

void need_format(const Options& o, std::initializer_list<const char*> allowed) {
  for (const char* a : allowed)
    if (o.format == a) return;
  throw Error(Errc::InvalidArgument, "format '" + o.format + "' is not available for this command");
}

// ------------------------------------------------------------ validate

int cmd_validate(const Options& o, std::ostream& out) {
  need_format(o, {"text", "json"});
  const IntMatrix raw = read_matrix_file(o.path);
  ojson j;
  std::optional<Gim> g;
  try {
    g = validate_gim(raw);
  } catch (const Error& e) {
    if (e.code() != Errc::InvalidGim && e.code() != Errc::NotSquare) throw;
    if (o.format == "json") {
      j["valid"] = false;
      j["error"] = errc_name(e.code());
      ojson v = ojson::array();
      for (const auto& x : e.violations()) v.push_back(x.str());
      j["violations"] = v;
      out << j.dump(2) << "\n";
    } else {
      out << "invalid GIM: " << e.what() << "\n";
      for (const auto& x : e.violations()) out << "  " << x.str() << "\n";
    }
    return 2;
  }
  const std::size_t n = g->size();
  j["valid"] = true;
  j["size"] = n;
  j["indecomposable"] = is_indecomposable(*g);
  std::string text = fmt::format("valid GIM ({}x{})\n", n, n);
  text += fmt::format("indecomposable: {}\n", is_indecomposable(*g) ? "yes" : "no");
  try {
    const Symmetrizer s = symmetrizer(*g);
    const GramMatrix gm = gram(*g, s);
    std::vector<std::string> sv;
    for (const auto& x : s.s) sv.push_back(x.get_str());
    j["symmetrizer"] = sv;
    j["definiteness"] = definiteness_name(gm.definiteness);
    j["corank"] = gm.corank;
    text += fmt::format("symmetrizer: diag({})\n", fmt::join(sv, ","));
    text += fmt::format("definiteness: {}\ncorank: {}\n", definiteness_name(gm.definiteness), gm.corank);
  } catch (const Error& e) {
    if (e.code() != Errc::NotSymmetrizable) throw;
    j["symmetrizer"] = nullptr;
    j["error"] = errc_name(e.code());
    text += fmt::format("symmetrizer: none ({})\n", e.what());
  }
  out << (o.format == "json" ? j.dump(2) + "\n" : text);
  return 0;
}

// ------------------------------------------------------------ classify

int cmd_classify(const Options& o, std::ostream& out, std::ostream& err) {
  need_format(o, {"text", "json", "dot"});
  const Gim g = validate_gim(read_matrix_file(o.path));
  ClassificationReport rep = [&] {
    try {
      return classify(g);
    } catch (const Error& e) {
      if (e.code() == Errc::Decomposable)
        for (const auto& b : e.blocks()) {
          std::vector<std::size_t> one;
          for (auto x : b) one.push_back(x + 1);
          err << fmt::format("block: {}\n", fmt::join(one, " "));
        }
      throw;
    }
  }();
  if (o.format == "json") out << report_json(rep);
  else if (o.format == "dot") out << diagram_dot(rep.type);
  else out << report_text(rep);
  return 0;
}

// ------------------------------------------------------------ dims / eval

struct Built {
  GradedPresentation pres;
  std::string family;
};

Built load_presentation(const Options& o) {
  const std::string text = read_text(o.path);
  const auto first = text.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && text[first] == '{') {
    nlohmann::json probe;
    try {
      probe = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
      throw Error(Errc::ParseError, std::string("invalid JSON: ") + e.what());
    }
    if (probe.contains("generators")) return {presentation_from_json(text), "custom"};
  }
  const Gim g = validate_gim(parse_matrix(text));
  return {presentation(g, parse_relation_kind(o.relations), bounds_of(o), o.degree), o.relations};
}

int cmd_dims(const Options& o, std::ostream& out, std::ostream& err) {
  need_format(o, {"text", "json"});
  if (o.degree < 1) throw Error(Errc::InvalidArgument, "--degree must be at least 1");
  const Built b = load_presentation(o);
  const Truncation t = Truncation::build(b.pres, o.degree, truncation_options());
  for (const auto& w : t.warnings()) err << "warning: " << w << "\n";
  const auto dims = t.root_dims();
  const auto pos = t.positive_dims_by_height();
  if (o.format == "json") {
    ojson j;
    j["relations"] = b.family;
    j["degree"] = o.degree;
    j["complete"] = t.complete();
    ojson d = ojson::object();
    for (const auto& [deg, k] : dims) d[degree_str(deg)] = k;
    j["dims"] = d;
    j["positive_by_height"] = pos;
    j["warnings"] = t.warnings();
    out << j.dump(2) << "\n";
    return 0;
  }
  out << fmt::format("relations: {}, height cap {}, complete: {}\n", b.family, o.degree, t.complete() ? "yes" : "no");
  std::size_t w = 6;
  for (const auto& [deg, k] : dims) w = std::max(w, degree_str(deg).size());
  out << fmt::format("{:<{}}  dim\n", "degree", w);
  for (const auto& [deg, k] : dims) out << fmt::format("{:<{}}  {}\n", degree_str(deg), w, k);
  out << fmt::format("positive part by height: {}\n", fmt::join(pos, " "));
  return 0;
}

int cmd_eval(const Options& o, std::ostream& out, std::ostream& err) {
  need_format(o, {"text", "json"});
  Built b = load_presentation(o);
  const LieExpr e = LieExpr::parse(o.expr, b.pres.generators);
  const std::size_t d = e.height();
  if (d != o.degree && b.family == "pra") {
    // Constraints were pruned for the wrong height; rebuild for this one.
    Options again = o;
    again.degree = d;
    b = load_presentation(again);
  }
  const Truncation t = Truncation::build(b.pres, d, truncation_options());
  for (const auto& w : t.warnings()) err << "warning: " << w << "\n";
  const auto ev = t.eval(e);
  std::vector<std::string> coords;
  for (const auto& x : ev.coords) coords.push_back(rational_str(x));
  if (o.format == "json") {
    ojson j;
    j["expression"] = e.str(b.pres.generators);
    j["relations"] = b.family;
    j["degree"] = degree_str(t.degree_of(ev.multidegree));
    j["zero"] = ev.is_zero;
    j["coordinates"] = coords;
    j["complete"] = t.complete();
    out << j.dump(2) << "\n";
  } else {
    out << fmt::format("{} in degree {}: {}\n", e.str(b.pres.generators), degree_str(t.degree_of(ev.multidegree)),
                       ev.is_zero ? "zero" : "nonzero");
    out << fmt::format("component dimension {}, coordinates [{}]\n", ev.coords.size(), fmt::join(coords, ", "));
    if (!t.complete()) out << "note: braid enumeration was truncated; zero results are sound, nonzero ones provisional\n";
  }
  return 0;
}

// ------------------------------------------------------------ coset

Degree parse_degree(const std::string& s) {
  Degree d;
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    try {
      std::size_t used = 0;
      long v = std::stol(tok, &used);
      if (tok.find_first_not_of(" \t", used) != std::string::npos) throw std::invalid_argument(tok);
      d.push_back(v);
    } catch (const std::exception&) {
      throw Error(Errc::ParseError, "target must be a comma-separated list of integers, got '" + s + "'");
    }
  }
  return d;
}

int cmd_coset(const Options& o, std::ostream& out) {
  need_format(o, {"text", "json"});
  const Gim g = validate_gim(read_matrix_file(o.path));
  const CosetWitness w = coset_obstruction(g, parse_degree(o.target));
  if (o.format == "json") {
    ojson j;
    j["obstructed"] = w.obstructed;
    j["target_parity"] = w.target_parity;
    if (w.pair) j["pair"] = {w.pair->first + 1, w.pair->second + 1};
    else j["pair"] = nullptr;
    out << j.dump(2) << "\n";
  } else if (w.obstructed) {
    out << fmt::format("obstructed: parity ({}) is no alpha_i + alpha_j mod 2\n", fmt::join(w.target_parity, ","));
  } else {
    out << fmt::format("not obstructed: parity ({}) equals alpha_{} + alpha_{} mod 2\n", fmt::join(w.target_parity, ","),
                       w.pair->first + 1, w.pair->second + 1);
  }
  return 0;
}

// ------------------------------------------------------------ template / toroidal / enumerate

int cmd_template(const Options& o, std::ostream& out) {
  const auto t = ModifiedDynkinType::parse(o.label);
  if (o.format == "dot") {
    out << diagram_dot(t);
    return 0;
  }
  need_format(o, {"text", "json"});
  const Template tm = make_template(t);
  if (o.format == "json") {
    ojson j;
    j["label"] = t.label();
    j["matrix"] = matrix_json(tm.gim.matrix());
    ojson nodes = ojson::array();
    for (auto k : tm.node) nodes.push_back(k + 1);
    j["node"] = nodes;
    out << j.dump(2) << "\n";
  } else {
    out << "# " << t.label() << "\n" << format_matrix_text(tm.gim.matrix());
  }
  return 0;
}

int cmd_toroidal(const Options& o, std::ostream& out) {
  need_format(o, {"text", "json"});
  const Gim c = validate_gim(read_matrix_file(o.path));
  const Gim g = gim_from_toroidal(c, o.copies);
  if (o.format == "json") out << ojson{{"matrix", matrix_json(g.matrix())}}.dump(2) << "\n";
  else out << format_matrix_text(g.matrix());
  return 0;
}

int cmd_enumerate(const Options& o, std::ostream& out) {
  need_format(o, {"text", "json"});
  const Gim g = validate_gim(read_matrix_file(o.path));
  const auto en = enumerate_equivalents(PrimeBasis::standard(make_space(g)), bounds_of(o));
  const auto reps = dedup_by_gim(en);
  if (o.format == "json") {
    ojson j;
    j["bases"] = en.bases.size();
    j["complete"] = en.complete;
    ojson arr = ojson::array();
    for (auto k : reps) {
      ojson moves = ojson::array();
      for (const auto& mv : en.paths[k].moves) moves.push_back({mv.i + 1, mv.j + 1});
      arr.push_back({{"gim", matrix_json(gim_of(en.bases[k]).matrix())}, {"path", moves}});
    }
    j["distinct_gims"] = arr;
    out << j.dump(2) << "\n";
    return 0;
  }
  out << fmt::format("{} bases, {} distinct matrices up to permutation, complete: {}\n", en.bases.size(), reps.size(),
                     en.complete ? "yes" : "no");
  for (auto k : reps) {
    out << fmt::format("after {} moves:\n", en.paths[k].size());
    out << format_matrix_text(gim_of(en.bases[k]).matrix());
  }
  return 0;
}

// ------------------------------------------------------------ verify-examples

struct Check {
  std::string name;
  std::string field;
  std::string got;
};

std::vector<Check> example_checks(std::size_t trials, std::uint64_t seed) {
  std::vector<Check> c;
  const Gim ex1 = validate_gim_rows({{2, -1, 1}, {-1, 2, -1}, {1, -1, 2}});
  const Gim ex2 = validate_gim_rows({{2, -1, 2}, {-1, 2, -1}, {2, -1, 2}});
  const Gim ex3 = validate_gim_rows({{2, 2, 2, 2}, {2, 2, 2, 2}, {2, 2, 2, 2}, {2, 2, 2, 2}});
  const Gim n1 = validate_gim_rows({{2, -1, -1}, {-1, 2, 0}, {-1, 0, 2}});

  const auto r1 = classify(ex1);
  c.push_back({"example1", "label", r1.type.label()});
  c.push_back({"example1", "reduced_matches_N", find_isomorphism(r1.reduced_gim.matrix(), n1.matrix()) ? "yes" : "no"});
  const auto start1 = PrimeBasis::standard(make_space(ex1));
  c.push_back({"example1", "certificate_replays", gim_of(replay(start1, r1.certificate)) == r1.reduced_gim ? "yes" : "no"});

  const auto r2 = classify(ex2);
  c.push_back({"example2", "label", r2.type.label()});
  c.push_back({"example2", "corank", std::to_string(r2.corank)});
  c.push_back({"example2", "affine_type", r2.affine ? r2.affine->type : "none"});
  c.push_back({"example2", "affine_gim", r2.affine ? matrix_str(r2.affine->gim.matrix()) : "none"});

  const auto r3 = classify(ex3);
  c.push_back({"example3", "label", r3.type.label()});
  c.push_back({"example3", "corank", std::to_string(r3.corank)});
  const auto gens = ef_generators(4);
  const LieExpr w = LieExpr::parse("[e1,[e2,[e3,f4]]]", gens);
  const auto tg = Truncation::build(presentation(ex3, RelationKind::Gim), 4);
  c.push_back({"example3", "gim_bracket", tg.eval(w).is_zero ? "zero" : "nonzero"});
  const auto ti = Truncation::build(presentation(ex3, RelationKind::Im), 4);
  c.push_back({"example3", "im_bracket", ti.eval(w).is_zero ? "zero" : "nonzero"});
  c.push_back({"example3", "coset_obstruction", coset_obstruction(ex3, {1, 1, 1, -1}).obstructed ? "true" : "false"});

  const Gim a8 = validate_gim_rows({{2, 0, 0, 0, 0, -2, -2, -2},
                                    {0, 2, 0, 0, -2, 0, -2, -2},
                                    {0, 0, 2, 0, -2, -2, 0, -2},
                                    {0, 0, 0, 2, -2, -2, -2, 0},
                                    {0, -2, -2, -2, 2, 0, 0, 0},
                                    {-2, 0, -2, -2, 0, 2, 0, 0},
                                    {-2, -2, 0, -2, 0, 0, 2, 0},
                                    {-2, -2, -2, 0, 0, 0, 0, 2}});
  const auto km = kac_moody_positive(a8);
  const auto tk = Truncation::build(km, 4);
  c.push_back({"km8", "km_bracket", tk.eval(LieExpr::parse("[x1,[x2,[x3,x8]]]", km.generators)).is_zero ? "zero" : "nonzero"});

  if (trials) {
    std::mt19937_64 rng(seed);
    const auto labels = all_labels(5, 3);
    std::size_t ok = 0;
    for (std::size_t k = 0; k < trials; ++k) {
      const auto& t = labels[rng() % labels.size()];
      const auto start = PrimeBasis::standard(make_space(make_template(t).gim));
      const auto seq = random_moves(start, 6, rng);
      if (classify(gim_of(replay(start, seq))).type == t) ++ok;
    }
    c.push_back({"random_templates", "recovered", fmt::format("{}/{}", ok, trials)});
  }
  return c;
}

std::map<std::string, std::map<std::string, std::string>> golden(std::size_t trials) {
  std::map<std::string, std::map<std::string, std::string>> g;
  g["example1"] = {{"label", "A_3(1)"}, {"reduced_matches_N", "yes"}, {"certificate_replays", "yes"}};
  g["example2"] = {{"label", "A_2(2)"},
                   {"corank", "1"},
                   {"affine_type", "A_2^(1)"},
                   {"affine_gim", "[[2,-1,-1],[-1,2,-1],[-1,-1,2]]"}};
  g["example3"] = {{"label", "A_1(4)"},
                   {"corank", "3"},
                   {"gim_bracket", "nonzero"},
                   {"im_bracket", "zero"},
                   {"coset_obstruction", "true"}};
  g["km8"] = {{"km_bracket", "nonzero"}};
  if (trials) g["random_templates"] = {{"recovered", fmt::format("{}/{}", trials, trials)}};
  return g;
}

int cmd_verify(const Options& o, std::ostream& out) {
  need_format(o, {"text", "json"});
  auto expect = golden(o.trials);
  if (!o.expected.empty()) {
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(read_text(o.expected));
    } catch (const nlohmann::json::exception& e) {
      throw Error(Errc::ParseError, std::string("expected table: ") + e.what());
    }
    for (const auto& [name, fields] : j.items())
      for (const auto& [field, value] : fields.items())
        expect[name][field] = value.is_string() ? value.get<std::string>() : value.dump();
  }
  const auto checks = example_checks(o.trials, o.seed);
  std::size_t failed = 0;
  ojson results = ojson::array();
  for (const auto& ch : checks) {
    std::string want = "(missing)";
    if (auto it = expect.find(ch.name); it != expect.end())
      if (auto f = it->second.find(ch.field); f != it->second.end()) want = f->second;
    const bool pass = want == ch.got;
    if (!pass) ++failed;
    if (o.format == "json") {
      results.push_back({{"check", ch.name + "." + ch.field}, {"pass", pass}, {"expected", want}, {"got", ch.got}});
    } else if (pass) {
      out << fmt::format("PASS {}.{} = {}\n", ch.name, ch.field, ch.got);
    } else {
      out << fmt::format("FAIL {}.{}\n  - expected: {}\n  + got:      {}\n", ch.name, ch.field, want, ch.got);
    }
  }
  if (o.format == "json") out << ojson{{"failed", failed}, {"checks", results}}.dump(2) << "\n";
  else out << fmt::format("{} checks, {} failed\n", checks.size(), failed);
  return failed ? 1 : 0;
}

}  // namespace

int run(int argc, char** argv, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Generalized intersection matrices: validation, braid classification and presented Lie algebras",
               "gimforge"};
  app.set_config("--config", "", "key=value file; command-line flags take precedence");
  app.require_subcommand(1);
  app.fallthrough();
  app.add_option("--degree", o.degree, "height cap D for Lie algebra truncations")->capture_default_str();
  app.add_option("--depth", o.depth, "braid enumeration depth bound")->capture_default_str();
  app.add_option("--max-nodes", o.max_nodes, "braid enumeration node bound")->capture_default_str();
  app.add_option("--format", o.format, "output format")
      ->check(CLI::IsMember({"text", "json", "dot"}))
      ->capture_default_str();
  app.add_option("--relations", o.relations, "relation family")
      ->check(CLI::IsMember({"gim", "im", "pra"}))
      ->capture_default_str();
  app.add_option("--seed", o.seed, "seed for randomized runs")->capture_default_str();

  auto* validate = app.add_subcommand("validate", "check the GIM axioms and report symmetrizer and definiteness");
  validate->add_option("path", o.path, "matrix file")->required();
  auto* cls = app.add_subcommand("classify", "reduce a semi-positive GIM to a template by braid moves");
  cls->add_option("path", o.path, "matrix file")->required();
  auto* dims = app.add_subcommand("dims", "graded dimensions of a truncated presented Lie algebra");
  dims->add_option("path", o.path, "matrix file or presentation JSON")->required();
  auto* ev = app.add_subcommand("eval", "evaluate a bracket expression in a truncation");
  ev->add_option("path", o.path, "matrix file or presentation JSON")->required();
  ev->add_option("expr", o.expr, "bracket expression, e.g. [e1,[e2,f3]]")->required();
  auto* coset = app.add_subcommand("coset", "parity obstruction for a target degree");
  coset->add_option("path", o.path, "matrix file")->required();
  coset->add_option("target", o.target, "comma-separated coefficients, e.g. 1,1,1,-1")->required();
  auto* tmpl = app.add_subcommand("template", "matrix or diagram of a modified Dynkin label");
  tmpl->add_option("label", o.label, "label such as B_3(2,1)")->required();
  auto* tor = app.add_subcommand("toroidal", "GIM from a finite-type Cartan matrix with repeated first root");
  tor->add_option("path", o.path, "Cartan matrix file")->required();
  tor->add_option("--copies", o.copies, "number of copies of the first root")->capture_default_str();
  auto* en = app.add_subcommand("enumerate", "breadth-first enumeration of braid-equivalent bases");
  en->add_option("path", o.path, "matrix file")->required();
  auto* ver = app.add_subcommand("verify-examples", "run the built-in golden checks");
  ver->add_option("--expected", o.expected, "JSON overriding expected values");
  ver->add_option("--trials", o.trials, "additional random template trials")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 1;
  }

  try {
    if (*validate) return cmd_validate(o, out);
    if (*cls) return cmd_classify(o, out, err);
    if (*dims) return cmd_dims(o, out, err);
    if (*ev) return cmd_eval(o, out, err);
    if (*coset) return cmd_coset(o, out);
    if (*tmpl) return cmd_template(o, out);
    if (*tor) return cmd_toroidal(o, out);
    if (*en) return cmd_enumerate(o, out);
    if (*ver) return cmd_verify(o, out);
  } catch (const Error& e) {
    err << "error: " << errc_name(e.code()) << ": " << e.what() << "\n";
    return exit_code(e.code());
  }
  return 1;
}

}  // namespace gimforge::cli
