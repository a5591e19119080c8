// Command-line front end. Exit codes: 0 ok, 1 property violated or formula
// invalid, 2 usage or input error, 3 guardrail exceeded.

#include <filesystem>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "pqml/axioms.hpp"
#include "pqml/breakdown.hpp"
#include "pqml/checks.hpp"
#include "pqml/diversity.hpp"
#include "pqml/errors.hpp"
#include "pqml/frame_io.hpp"
#include "pqml/gallery.hpp"
#include "pqml/kernels.hpp"
#include "pqml/parser.hpp"
#include "pqml/semantics.hpp"

using namespace pqml;
using nlohmann::json;

namespace {

struct Violated {};

struct Common {
  std::string frame;
  std::string formula;
  std::vector<std::string> vals;
  std::string at;
  bool json_out = false;
  bool dot = false;
  std::size_t max_worlds = 20;
  bool oracle = false;
};

GalleryEntry load_frame(const std::string& ref) {
  if (ref.empty()) throw PreconditionError("--frame is required");
  if (ref.ends_with(".json") || std::filesystem::exists(ref)) return GalleryEntry{ref, load_frame_file(ref), ""};
  return gallery_entry(ref);
}

Formula load_formula(const std::string& text) {
  if (text.empty()) throw PreconditionError("--formula is required");
  if (text[0] != '@') return parse(text);
  static const std::map<std::string, std::string> alias{{"At", "at"},   {"R", "r"}, {"Bc", "bc"}, {"5", "5"},
                                                        {"T", "t"},     {"M", "m"}, {"E", "e"},   {"Qvb", "qvb"},
                                                        {"Alt", "alt"}, {"Trs", "trs"}, {"K", "k"}, {"Q", "q"}};
  std::string body = text.substr(1);
  std::optional<int> n;
  if (auto colon = body.find(':'); colon != std::string::npos) {
    n = std::stoi(body.substr(colon + 1));
    body = body.substr(0, colon);
  }
  const auto it = alias.find(body);
  return axiom_by_name(it == alias.end() ? body : it->second, n).formula;
}

Var parse_var(const std::string& s) {
  if (s.size() < 2 || s[0] != 'p' || s.find_first_not_of("0123456789", 1) != std::string::npos)
    throw PreconditionError("valuation variables are written p<digits>, got '" + s + "'");
  return Var{static_cast<std::uint32_t>(std::stoul(s.substr(1)))};
}

Valuation load_valuation(const KripkeFrame& f, const std::vector<std::string>& vals) {
  Valuation v;
  for (const auto& item : vals) {
    const auto eq = item.find('=');
    if (eq == std::string::npos) throw PreconditionError("--val expects p<k>=<worlds>, got '" + item + "'");
    v.set(parse_var(item.substr(0, eq)), parse_set(f, item.substr(eq + 1)));
  }
  return v;
}

std::size_t load_world(const KripkeFrame& f, const std::string& name) {
  if (auto w = f.find(name)) return *w;
  throw PreconditionError("unknown world '" + name + "'");
}

EvalOptions eval_options(const Common& c) {
  EvalOptions o;
  o.max_worlds = c.max_worlds;
  return o;
}

json valuation_json(const KripkeFrame& f, const Valuation& v) {
  json j = json::object();
  for (const auto& [p, x] : v.entries()) {
    json names = json::array();
    x.for_each([&](std::size_t w) { names.push_back(f.name(w)); });
    j[p.name()] = names;
  }
  return j;
}

json set_json(const KripkeFrame& f, WorldSet x) {
  json names = json::array();
  x.for_each([&](std::size_t w) { names.push_back(f.name(w)); });
  return names;
}

void add_frame_options(CLI::App* cmd, Common& c) {
  cmd->add_option("--frame", c.frame, "gallery id (e.g. cyclic:5) or JSON file");
}

void add_formula_options(CLI::App* cmd, Common& c) {
  cmd->add_option("--formula", c.formula, "formula text or @macro (e.g. @At:1)");
  cmd->add_option("--val", c.vals, "valuation entry p<k>=<world,...>; repeatable");
}

int cmd_parse(const Common& c) {
  const Formula f = load_formula(c.formula);
  if (c.json_out) {
    json fv = json::array();
    for (Var p : f.free_vars()) fv.push_back(p.name());
    std::cout << json{{"formula", print(f)}, {"free_vars", fv}, {"quantifier_depth", f.quantifier_depth()},
                      {"modal_depth", f.modal_depth()}, {"size", f.size()}}
                     .dump(2)
              << "\n";
  } else {
    std::cout << print(f) << "\n";
  }
  return 0;
}

int cmd_eval(const Common& c, bool fast) {
  const GalleryEntry e = load_frame(c.frame);
  const KripkeFrame& base = e.frame.base();
  const Formula f = load_formula(c.formula);
  const Valuation v = load_valuation(base, c.vals);
  WorldSet ext;
  if (fast || c.oracle) {
    if (!e.frame.admissible().is_powerset()) throw PreconditionError("the breakdown path needs the full powerset");
    BreakdownOptions bo;
    bo.brute_force_witnesses = c.oracle;
    ext = fast_extension(f, base, v, duplicate_structure(base), bo);
  } else {
    ext = extension(f, e.frame, v, eval_options(c));
  }
  if (!c.at.empty()) {
    const bool holds = ext.contains(load_world(base, c.at));
    if (c.json_out)
      std::cout << json{{"world", c.at}, {"holds", holds}}.dump() << "\n";
    else
      std::cout << (holds ? "true" : "false") << "\n";
  } else if (c.json_out) {
    std::cout << json{{"extension", set_json(base, ext)}}.dump() << "\n";
  } else {
    std::cout << format_set(base, ext) << "\n";
  }
  return 0;
}

int cmd_valid(const Common& c) {
  const GalleryEntry e = load_frame(c.frame);
  const Formula f = load_formula(c.formula);
  const auto rep = valid_on_general(f, e.frame, eval_options(c));
  const KripkeFrame& base = e.frame.base();
  if (c.json_out) {
    json j{{"valid", rep.valid}};
    if (!rep.valid) {
      j["valuation"] = valuation_json(base, *rep.counter_valuation);
      j["world"] = base.name(*rep.counter_world);
    }
    std::cout << j.dump() << "\n";
  } else if (rep.valid) {
    std::cout << "valid\n";
  } else {
    std::cout << "invalid: fails at " << base.name(*rep.counter_world);
    for (const auto& [p, x] : rep.counter_valuation->entries()) std::cout << " " << p.name() << "=" << format_set(base, x);
    std::cout << "\n";
  }
  return rep.valid ? 0 : 1;
}

int cmd_diversity(const Common& c, bool generated) {
  const GalleryEntry e = load_frame(c.frame);
  const KripkeFrame& f = e.frame.base();
  const std::size_t d = generated ? diversity_generated(f) : diversity(f);
  if (c.json_out)
    std::cout << json{{generated ? "diversity_generated" : "diversity", d}}.dump() << "\n";
  else
    std::cout << d << "\n";
  return 0;
}

int cmd_classes(const Common& c) {
  const GalleryEntry e = load_frame(c.frame);
  const KripkeFrame& f = e.frame.base();
  const auto ds = duplicate_structure(f);
  if (c.dot) {
    std::cout << quotient_to_dot(ds, f);
    return 0;
  }
  if (c.json_out) {
    json classes = json::array();
    for (std::size_t i = 0; i < ds.size(); ++i) {
      json succ = json::array();
      for (std::size_t j = 0; j < ds.size(); ++j)
        if (ds.quotient_related(i, j)) succ.push_back(j);
      classes.push_back({{"members", set_json(f, ds.classes[i])}, {"kind", to_string(ds.kinds[i])}, {"successors", succ}});
    }
    std::cout << json{{"classes", classes}}.dump(2) << "\n";
    return 0;
  }
  for (std::size_t i = 0; i < ds.size(); ++i) {
    std::cout << i << " " << format_set(f, ds.classes[i]) << " " << to_string(ds.kinds[i]) << " ->";
    for (std::size_t j = 0; j < ds.size(); ++j)
      if (ds.quotient_related(i, j)) std::cout << " " << j;
    std::cout << "\n";
  }
  return 0;
}

int cmd_breakdown(const Common& c) {
  const GalleryEntry e = load_frame(c.frame);
  const KripkeFrame& base = e.frame.base();
  const Formula f = load_formula(c.formula);
  const Valuation v = load_valuation(base, c.vals);
  BreakdownOptions bo;
  bo.brute_force_witnesses = c.oracle;
  Breakdown bd(base, bo);
  const auto fs = bd.all_classes(f, v);
  const auto& ds = bd.duplicates();
  if (c.json_out) {
    json out = json::array();
    for (std::size_t i = 0; i < fs.size(); ++i)
      out.push_back({{"class", set_json(base, ds.classes[i])}, {"kind", to_string(ds.kinds[i])}, {"formula", print(fs[i])}});
    std::cout << json{{"breakdown", out}, {"extension", set_json(base, bd.fast_extension(f, v))}}.dump(2) << "\n";
  } else {
    for (std::size_t i = 0; i < fs.size(); ++i)
      std::cout << format_set(base, ds.classes[i]) << " " << to_string(ds.kinds[i]) << ": " << print(fs[i]) << "\n";
  }
  return 0;
}

int cmd_invariant(const Common& c, const std::vector<std::string>& formulas) {
  const GalleryEntry e = load_frame(c.frame);
  std::vector<Formula> fs;
  if (!c.formula.empty()) fs.push_back(load_formula(c.formula));
  for (const auto& t : formulas) fs.push_back(load_formula(t));
  if (fs.empty()) throw PreconditionError("give at least one --formula");
  const auto rep = invariant_subdomain_check(e.frame, fs, eval_options(c));
  const KripkeFrame& base = e.frame.base();
  if (c.json_out) {
    json j{{"passed_corpus", rep.passed_corpus}, {"pairs_checked", rep.pairs_checked}};
    if (!rep.passed_corpus) {
      j["formula"] = print(*rep.formula);
      j["valuation"] = valuation_json(base, *rep.valuation);
      j["world"] = base.name(*rep.world);
      j["family_extension"] = set_json(base, rep.family_extension);
      j["powerset_extension"] = set_json(base, rep.powerset_extension);
    }
    std::cout << j.dump(2) << "\n";
  } else if (rep.passed_corpus) {
    std::cout << "passed corpus (" << rep.pairs_checked << " formula/valuation pairs; not a proof of invariance)\n";
  } else {
    std::cout << "failed on " << print(*rep.formula) << " at " << base.name(*rep.world) << ": family gives "
              << format_set(base, rep.family_extension) << ", powerset gives " << format_set(base, rep.powerset_extension);
    for (const auto& [p, x] : rep.valuation->entries()) std::cout << " with " << p.name() << "=" << format_set(base, x);
    std::cout << "\n";
  }
  return rep.passed_corpus ? 0 : 1;
}

int cmd_axiom(const std::string& name, std::optional<int> n, const std::string& phi, bool json_out) {
  std::optional<Formula> f;
  if (!phi.empty()) f = load_formula(phi);
  const SchemaInstance s = axiom_by_name(name, n, f);
  if (json_out) {
    json j{{"name", s.name}, {"formula", print(s.formula)}, {"notes", s.notes}};
    if (s.n) j["n"] = *s.n;
    if (s.phi) j["phi"] = print(*s.phi);
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << print(s.formula) << "\n";
    for (const auto& note : s.notes) std::cout << "# " << note << "\n";
  }
  return 0;
}

int cmd_sahlqvist(const Common& c) {
  const Formula f = load_formula(c.formula);
  const auto r = sahlqvist_check(f);
  if (c.json_out) {
    std::cout << json{{"sahlqvist", r.is_sahlqvist}, {"trace", r.trace}}.dump(2) << "\n";
  } else {
    std::cout << (r.is_sahlqvist ? "sahlqvist" : "not sahlqvist") << "\n";
    for (const auto& line : r.trace) std::cout << "  " << line << "\n";
  }
  return 0;
}

int cmd_truncate(const Common& c, std::size_t depth) {
  const GalleryEntry e = load_frame(c.frame);
  const KripkeFrame& base = e.frame.base();
  if (c.at.empty()) throw PreconditionError("--at is required");
  const Model m(e.frame, load_valuation(base, c.vals));
  const SubModel t = truncated_submodel(m, load_world(base, c.at), depth);
  if (c.dot) {
    std::cout << frame_to_dot(t.model.frame().base(), "truncation");
    return 0;
  }
  json j = frame_to_json(t.model.frame());
  if (!t.model.valuation().empty()) j["valuation"] = valuation_json(t.model.frame().base(), t.model.valuation());
  std::cout << j.dump(c.json_out ? 2 : -1) << "\n";
  return 0;
}

int cmd_gallery(const std::string& id, const Common& c) {
  if (id.empty()) {
    for (const auto& g : gallery_ids()) std::cout << g << "\n";
    return 0;
  }
  const GalleryEntry e = gallery_entry(id);
  if (c.dot) {
    std::cout << frame_to_dot(e.frame.base(), "gallery");
    return 0;
  }
  if (c.json_out) {
    json j = frame_to_json(e.frame);
    j["id"] = e.id;
    j["note"] = e.note;
    std::cout << j.dump(2) << "\n";
    return 0;
  }
  std::cout << "# " << e.note << "\n" << frame_to_json_text(e.frame) << "\n";
  return 0;
}

int cmd_selfcheck(bool quick, std::uint64_t seed, bool json_out) {
  checks::Options o;
  o.quick = quick;
  o.seed = seed;
  bool ok = true;
  json out = json::array();
  for (const auto& r : checks::run_all(o)) {
    ok = ok && r.passed;
    if (json_out)
      out.push_back({{"id", r.id}, {"name", r.name}, {"passed", r.passed}, {"detail", r.detail}, {"seconds", r.seconds}});
    else
      std::cout << (r.passed ? "PASS" : "FAIL") << " [" << r.id << "] " << r.name << ": " << r.detail << "\n";
  }
  if (json_out) std::cout << out.dump(2) << "\n";
  return ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Propositionally quantified modal logic over finite frames"};
  app.require_subcommand(1);
  Common c;

  auto* parse_cmd = app.add_subcommand("parse", "parse and print a formula");
  add_formula_options(parse_cmd, c);

  bool fast = false;
  auto* eval_cmd = app.add_subcommand("eval", "extension of a formula, or its truth at --at");
  add_frame_options(eval_cmd, c);
  add_formula_options(eval_cmd, c);
  eval_cmd->add_option("--at", c.at, "world name");
  eval_cmd->add_flag("--fast", fast, "evaluate through the Boolean breakdown");
  eval_cmd->add_flag("--oracle", c.oracle, "breakdown with all witnesses enumerated");

  auto* valid_cmd = app.add_subcommand("valid", "validity on the frame's admissible family");
  add_frame_options(valid_cmd, c);
  add_formula_options(valid_cmd, c);

  bool generated = false;
  auto* div_cmd = app.add_subcommand("diversity", "number of duplicate classes");
  add_frame_options(div_cmd, c);
  div_cmd->add_flag("--generated", generated, "maximum over point-generated subframes");

  auto* classes_cmd = app.add_subcommand("classes", "duplicate classes, kinds and quotient relation");
  add_frame_options(classes_cmd, c);
  classes_cmd->add_flag("--dot", c.dot, "Graphviz output");

  auto* bd_cmd = app.add_subcommand("breakdown", "per-class Boolean breakdown");
  add_frame_options(bd_cmd, c);
  add_formula_options(bd_cmd, c);
  bd_cmd->add_flag("--oracle", c.oracle, "enumerate every witness set");

  std::vector<std::string> extra;
  auto* inv_cmd = app.add_subcommand("invariant-check", "compare family and powerset semantics on formulas");
  add_frame_options(inv_cmd, c);
  inv_cmd->add_option("--formula", extra, "formula text or @macro; repeatable");

  std::string axiom_name, phi;
  std::optional<int> axiom_n;
  auto* ax_cmd = app.add_subcommand("axiom", "print an axiom instance");
  ax_cmd->add_option("name", axiom_name, "axiom name")->required();
  ax_cmd->add_option("--n", axiom_n, "depth or arity parameter");
  ax_cmd->add_option("--phi", phi, "formula parameter");

  auto* sq_cmd = app.add_subcommand("sahlqvist", "syntactic Sahlqvist test with a trace");
  sq_cmd->add_option("--formula", c.formula, "formula text or @macro");

  std::size_t depth = 0;
  auto* tr_cmd = app.add_subcommand("truncate", "depth-n submodel generated from a world");
  add_frame_options(tr_cmd, c);
  tr_cmd->add_option("--at", c.at, "world name");
  tr_cmd->add_option("--depth", depth, "number of steps")->required();
  tr_cmd->add_option("--val", c.vals, "valuation entry p<k>=<world,...>; repeatable");
  tr_cmd->add_flag("--dot", c.dot, "Graphviz output");

  std::string gallery_id;
  auto* gal_cmd = app.add_subcommand("gallery", "list gallery ids or print one frame");
  gal_cmd->add_option("id", gallery_id, "gallery id");
  gal_cmd->add_flag("--dot", c.dot, "Graphviz output");

  bool quick = false;
  std::uint64_t seed = checks::Options{}.seed;
  auto* self_cmd = app.add_subcommand("selfcheck", "run the acceptance checks");
  self_cmd->add_flag("--quick", quick, "reduced sample sizes");
  self_cmd->add_option("--seed", seed, "random seed");

  for (auto* sub : {parse_cmd, eval_cmd, valid_cmd, div_cmd, classes_cmd, bd_cmd, inv_cmd, ax_cmd, sq_cmd, tr_cmd,
                    gal_cmd, self_cmd}) {
    sub->add_flag("--json", c.json_out, "JSON output");
    sub->add_option("--max-worlds", c.max_worlds, "powerset quantification limit (default 20)");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    if (*parse_cmd) return cmd_parse(c);
    if (*eval_cmd) return cmd_eval(c, fast);
    if (*valid_cmd) return cmd_valid(c);
    if (*div_cmd) return cmd_diversity(c, generated);
    if (*classes_cmd) return cmd_classes(c);
    if (*bd_cmd) return cmd_breakdown(c);
    if (*inv_cmd) return cmd_invariant(c, extra);
    if (*ax_cmd) return cmd_axiom(axiom_name, axiom_n, phi, c.json_out);
    if (*sq_cmd) return cmd_sahlqvist(c);
    if (*tr_cmd) return cmd_truncate(c, depth);
    if (*gal_cmd) return cmd_gallery(gallery_id, c);
    if (*self_cmd) return cmd_selfcheck(quick, seed, c.json_out);
  } catch (const GuardrailError& e) {
    std::cerr << "guardrail: " << e.what() << "\n";
    return 3;
  } catch (const SyntaxError& e) {
    std::cerr << "syntax error: " << e.what() << "\n";
    return 2;
  } catch (const std::logic_error& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
