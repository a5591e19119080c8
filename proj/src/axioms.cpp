#include "pqml/axioms.hpp"

#include <algorithm>

#include "pqml/errors.hpp"
#include "pqml/parser.hpp"

namespace pqml {

namespace axioms {

namespace {

Formula P(std::uint32_t i) { return Formula::atom(Var{i}); }
using F = Formula;

void check_n(int n) {
  if (n < 0) throw PreconditionError("parameter must be non-negative");
}

}  // namespace

Formula k() {
  return F::implies(F::box(F::implies(P(0), P(1))), F::implies(F::box(P(0)), F::box(P(1))));
}

Formula dual() { return F::iff(F::dia(P(0)), F::negate(F::box(F::negate(P(0))))); }

Formula bc(Var p, const Formula& phi) { return F::implies(F::dia(F::exists(p, phi)), F::exists(p, F::dia(phi))); }

Formula q_n(int n, const Formula& phi) {
  check_n(n);
  const auto& fv = phi.free_vars();
  Var p{0};
  while (std::binary_search(fv.begin(), fv.end(), p)) ++p.index;
  const Formula a = F::atom(p);
  return F::conj(dia_le(n, phi),
                 F::forall(p, F::disj(box_le(n, F::implies(phi, a)), box_le(n, F::implies(phi, F::negate(a))))));
}

Formula at_n(int n) {
  check_n(n);
  const Var q{0}, p{1};
  return F::forall(q, F::implies(dia_le(n, F::atom(q)),
                                 F::exists(p, F::conj(q_n(n, F::atom(p)), box_le(n, F::implies(F::atom(p), F::atom(q)))))));
}

Formula r_n(int n) {
  check_n(n);
  const Var p{0}, q{1}, r{2};
  const Formula inner =
      F::forall(r, F::implies(box_le(n, F::implies(F::atom(p), F::box(F::atom(r)))),
                              box_le(n, F::implies(F::atom(q), F::atom(r)))));
  return F::forall(p, F::exists(q, F::conj(box_le(n, F::implies(F::atom(p), F::box(F::atom(q)))), inner)));
}

Formula five() { return F::implies(F::dia(P(0)), F::box(F::dia(P(0)))); }
Formula t() { return F::implies(F::box(P(0)), P(0)); }
Formula t_dia() { return F::implies(P(0), F::dia(P(0))); }
Formula m_ax() { return F::implies(F::box(F::dia(P(0))), F::dia(F::box(P(0)))); }
Formula m_dia() { return F::disj(F::dia(F::box(F::negate(P(0)))), F::dia(F::box(P(0)))); }

Formula e_ax() {
  return F::implies(F::dia(F::conj(F::dia(P(0)), F::box(P(1)))), F::box(F::disj(F::dia(P(0)), F::box(P(1)))));
}

Formula q_vb() {
  return F::implies(F::conj(F::dia(P(0)), F::box(F::implies(P(0), F::box(P(0))))), P(0));
}

namespace {

Formula alt_with(int n, bool diamonds) {
  check_n(n);
  std::vector<Formula> premises, pairs;
  for (int i = 0; i <= n; ++i) premises.push_back(diamonds ? F::dia(P(i)) : P(i));
  for (int i = 0; i <= n; ++i)
    for (int j = i + 1; j <= n; ++j) pairs.push_back(F::dia(F::conj(P(i), P(j))));
  return F::implies(big_conj(premises), big_disj(pairs));
}

}  // namespace

Formula alt_n(int n) { return alt_with(n, false); }
Formula alt_bounded(int n) { return alt_with(n, true); }

Formula trs_m(int m) {
  check_n(m);
  return F::implies(dia_le(m, P(0)), dia_le(m + 1, P(0)));
}

Formula d45() {
  return F::conj(F::conj(F::implies(F::box(P(0)), F::dia(P(0))), F::implies(F::dia(F::dia(P(0))), F::dia(P(0)))),
                 five());
}

Formula diamond_collapse(int n) {
  check_n(n);
  return F::implies(dia_iter(n + 1, P(0)), dia_le(n, P(0)));
}

Formula successor_formula() {
  const Var p{0}, q{1};
  return F::exists(p, F::conj(F::box(F::atom(p)),
                               F::forall(q, F::implies(F::box(F::atom(q)),
                                                       box_iter(2, F::implies(F::atom(p), F::atom(q)))))));
}

Formula world_proposition(int n) {
  check_n(n);
  return F::exists(Var{0}, F::conj(P(0), q_n(n, P(0))));
}

Formula phi1() { return F::box(five()); }
Formula phi2() { return F::implies(F::dia(F::dia(P(0))), F::box(F::dia(P(0)))); }

}  // namespace axioms

std::vector<std::string> axiom_names() {
  return {"k",         "dual", "bc",          "q",   "at",  "r",        "5",         "t",
          "t_dia",     "m",    "m_dia",       "e",   "qvb", "alt",      "alt_bounded", "trs",
          "d45",       "collapse", "successor", "world_prop", "phi1", "phi2"};
}

SchemaInstance axiom_by_name(const std::string& name, std::optional<int> n, std::optional<Formula> phi) {
  const int k = n.value_or(1);
  if (k < 0) throw PreconditionError("parameter must be non-negative");
  SchemaInstance s{name, std::nullopt, std::nullopt, Formula::top(), {}};
  auto with_n = [&](Formula f) {
    s.n = k;
    return f;
  };
  if (name == "k") s.formula = axioms::k();
  else if (name == "dual") s.formula = axioms::dual();
  else if (name == "bc") {
    s.phi = phi.value_or(Formula::atom(Var{0}));
    s.formula = axioms::bc(Var{0}, *s.phi);
    s.notes.push_back("quantified variable is p0");
  } else if (name == "q") {
    s.phi = phi.value_or(Formula::atom(Var{0}));
    s.formula = with_n(axioms::q_n(k, *s.phi));
  } else if (name == "at") {
    s.formula = with_n(axioms::at_n(k));
    s.notes.push_back("Q^{<=n}(p) is read as Q^n(p)");
  } else if (name == "r") {
    s.formula = with_n(axioms::r_n(k));
    s.notes.push_back("closing parenthesis placed after the inner universal");
  } else if (name == "5") s.formula = axioms::five();
  else if (name == "t") s.formula = axioms::t();
  else if (name == "t_dia") {
    s.formula = axioms::t_dia();
    s.notes.push_back("diamond form of T; t is the box form");
  } else if (name == "m") s.formula = axioms::m_ax();
  else if (name == "m_dia") {
    s.formula = axioms::m_dia();
    s.notes.push_back("disjunctive form of M; m is the implication form");
  } else if (name == "e") s.formula = axioms::e_ax();
  else if (name == "qvb") s.formula = axioms::q_vb();
  else if (name == "alt") {
    s.formula = with_n(axioms::alt_n(k));
    s.notes.push_back("literal form; alt_bounded bounds the number of successors");
  } else if (name == "alt_bounded") s.formula = with_n(axioms::alt_bounded(k));
  else if (name == "trs") {
    s.formula = with_n(axioms::trs_m(k));
    s.notes.push_back("literal form, valid on every frame; collapse bounds depth");
  } else if (name == "d45") s.formula = axioms::d45();
  else if (name == "collapse") s.formula = with_n(axioms::diamond_collapse(k));
  else if (name == "successor") s.formula = axioms::successor_formula();
  else if (name == "world_prop") s.formula = with_n(axioms::world_proposition(k));
  else if (name == "phi1") s.formula = axioms::phi1();
  else if (name == "phi2") s.formula = axioms::phi2();
  else throw PreconditionError("unknown axiom '" + name + "'");
  return s;
}

namespace {

void polarity(const Formula& f, Var p, bool positive, Polarity& out) {
  switch (f.op()) {
    case Op::Top:
    case Op::Bottom:
      return;
    case Op::Atom:
      if (f.var() == p) (positive ? out.positive : out.negative) = true;
      return;
    case Op::Not:
      return polarity(f.child(), p, !positive, out);
    case Op::Or:
      polarity(f.lhs(), p, positive, out);
      return polarity(f.rhs(), p, positive, out);
    case Op::Dia:
      return polarity(f.child(), p, positive, out);
    case Op::Exists:
      if (f.var() == p) return;
      return polarity(f.child(), p, positive, out);
  }
}

bool all_polarity(const Formula& f, bool want_positive) {
  for (Var p : f.free_vars()) {
    const Polarity pol = positive_negative_occurrence(f, p);
    if (want_positive ? pol.negative : pol.positive) return false;
  }
  return true;
}

// ~<>~a
const Formula* box_body(const Formula& f) {
  if (f.op() == Op::Not && f.child().op() == Op::Dia && f.child().child().op() == Op::Not)
    return &f.child().child().child();
  return nullptr;
}

// ~(~a | ~b)
bool and_parts(const Formula& f, const Formula*& a, const Formula*& b) {
  if (f.op() != Op::Not || f.child().op() != Op::Or) return false;
  const Formula& o = f.child();
  if (o.lhs().op() != Op::Not || o.rhs().op() != Op::Not) return false;
  a = &o.lhs().child();
  b = &o.rhs().child();
  return true;
}

bool boxed_atom(const Formula& f) {
  const Formula* g = &f;
  while (const Formula* b = box_body(*g)) g = b;
  return g->op() == Op::Atom;
}

void flatten_or(const Formula& f, std::vector<const Formula*>& out) {
  if (f.op() == Op::Or) {
    flatten_or(f.lhs(), out);
    flatten_or(f.rhs(), out);
  } else {
    out.push_back(&f);
  }
}

class Classifier {
 public:
  std::vector<std::string> trace;

  bool antecedent(const Formula& f, int depth) {
    auto note = [&](const std::string& what, bool ok) {
      log(depth, print(f) + ": " + what + (ok ? "" : " (rejected)"));
      return ok;
    };
    if (f.op() == Op::Top || f.op() == Op::Bottom) return note("constant antecedent", true);
    if (boxed_atom(f)) return note("boxed atom", true);
    if (is_negative(f)) return note("negative antecedent", true);
    const Formula *a, *b;
    if (and_parts(f, a, b)) {
      note("conjunction of antecedents", true);
      return antecedent(*a, depth + 1) && antecedent(*b, depth + 1);
    }
    if (f.op() == Op::Or) {
      note("disjunction of antecedents", true);
      return antecedent(f.lhs(), depth + 1) && antecedent(f.rhs(), depth + 1);
    }
    if (f.op() == Op::Dia) {
      note("diamond of an antecedent", true);
      return antecedent(f.child(), depth + 1);
    }
    return note("not an antecedent", false);
  }

  bool sahlqvist(const Formula& f, int depth) {
    if (is_positive(f)) {
      log(depth, print(f) + ": positive");
      return true;
    }
    if (const Formula* b = box_body(f)) {
      log(depth, print(f) + ": box of");
      if (sahlqvist(*b, depth + 1)) return true;
    }
    const Formula *a, *c;
    if (and_parts(f, a, c)) {
      log(depth, print(f) + ": conjunction of");
      if (sahlqvist(*a, depth + 1) && sahlqvist(*c, depth + 1)) return true;
    }
    if (f.op() == Op::Or) {
      log(depth, print(f) + ": implication");
      std::vector<const Formula*> parts;
      flatten_or(f, parts);
      for (const Formula* d : parts) {
        if (is_positive(*d)) {
          log(depth + 1, print(*d) + ": positive consequent");
          continue;
        }
        if (d->op() == Op::Not) {
          log(depth + 1, "antecedent " + print(d->child()));
          if (antecedent(d->child(), depth + 2)) continue;
        } else {
          log(depth + 1, print(*d) + ": neither positive nor a negated antecedent (rejected)");
        }
        return false;
      }
      return true;
    }
    if (f.op() == Op::Not) {
      log(depth, print(f) + ": negated antecedent");
      return antecedent(f.child(), depth + 1);
    }
    log(depth, print(f) + ": no rule applies (rejected)");
    return false;
  }

 private:
  void log(int depth, const std::string& s) { trace.push_back(std::string(2 * depth, ' ') + s); }
};

}  // namespace

Polarity positive_negative_occurrence(const Formula& f, Var p) {
  Polarity out;
  polarity(f, p, true, out);
  return out;
}

bool is_positive(const Formula& f) { return all_polarity(f, true); }
bool is_negative(const Formula& f) { return all_polarity(f, false); }

SahlqvistResult sahlqvist_check(const Formula& f) {
  if (!is_quantifier_free(f)) throw PreconditionError("sahlqvist_check needs a quantifier-free formula");
  Classifier c;
  SahlqvistResult r;
  r.is_sahlqvist = c.sahlqvist(f, 0);
  r.trace = std::move(c.trace);
  return r;
}

}  // namespace pqml
