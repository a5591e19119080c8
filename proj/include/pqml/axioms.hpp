#pragma once

// Axiom and scheme generators, and a syntactic Sahlqvist classifier.
//
// Variables are chosen least index first: one-variable axioms use p0, two
// use p0 and p1, and so on, so regenerating an instance is deterministic.
//
// Sahlqvist grammar implemented by sahlqvist_check (quantifier-free input):
//
//   boxed atom   := []^k p, k >= 0
//   antecedent   := true | false | boxed atom | negative formula
//                 | antecedent & antecedent | antecedent | antecedent
//                 | <> antecedent
//   implication  := antecedent -> positive formula
//   sahlqvist    := implication | positive formula | [] sahlqvist
//                 | sahlqvist & sahlqvist | ~antecedent
//
// A positive (negative) formula has every variable occurrence under an
// even (odd) number of negations, counted on the primitive form. An
// implication may be written as any disjunction whose disjuncts are each
// positive or the negation of an antecedent.

#include <optional>
#include <string>
#include <vector>

#include "pqml/formula.hpp"

namespace pqml {

namespace axioms {

/// [](p0 -> p1) -> ([]p0 -> []p1)
Formula k();
/// <>p0 <-> ~[]~p0
Formula dual();
/// <>E p. phi -> E p. <>phi
Formula bc(Var p, const Formula& phi);
/// <>^{<=n}phi & A p. ([]^{<=n}(phi -> p) | []^{<=n}(phi -> ~p)), p the least
/// variable not free in phi.
Formula q_n(int n, const Formula& phi);
/// A p0. (<>^{<=n}p0 -> E p1. (Q^n(p1) & []^{<=n}(p1 -> p0))).
Formula at_n(int n);
/// A p0. E p1. ([]^{<=n}(p0 -> []p1) & A p2. ([]^{<=n}(p0 -> []p2) -> []^{<=n}(p1 -> p2))).
Formula r_n(int n);
/// <>p0 -> []<>p0
Formula five();
/// []p0 -> p0
Formula t();
/// p0 -> <>p0
Formula t_dia();
/// []<>p0 -> <>[]p0
Formula m_ax();
/// <>[]~p0 | <>[]p0
Formula m_dia();
/// <>(<>p0 & []p1) -> [](<>p0 | []p1)
Formula e_ax();
/// (<>p0 & [](p0 -> []p0)) -> p0
Formula q_vb();
/// p0 & ... & pn -> disjunction of <>(pi & pj) over i < j, as literally printed.
Formula alt_n(int n);
/// <>p0 & ... & <>pn -> disjunction of <>(pi & pj): at most n successors.
Formula alt_bounded(int n);
/// <>^{<=m}p0 -> <>^{<=m+1}p0, as literally printed.
Formula trs_m(int m);
/// ([]p0 -> <>p0) & (<><>p0 -> <>p0) & (<>p0 -> []<>p0)
Formula d45();
/// <>^{n+1}p0 -> <>^{<=n}p0
Formula diamond_collapse(int n);
/// E p0. ([]p0 & A p1. ([]p1 -> [][](p0 -> p1)))
Formula successor_formula();
/// E p0. (p0 & Q^n(p0))
Formula world_proposition(int n);
/// [](<>p0 -> []<>p0)
Formula phi1();
/// <><>p0 -> []<>p0
Formula phi2();

}  // namespace axioms

struct SchemaInstance {
  std::string name;
  std::optional<int> n;
  std::optional<Formula> phi;
  Formula formula;
  /// Reading choices made where the source notation is ambiguous.
  std::vector<std::string> notes;
};

/// Names: k, dual, bc, q, at, r, 5, t, t_dia, m, m_dia, e, qvb, alt,
/// alt_bounded, trs, d45, collapse, successor, world_prop, phi1, phi2.
/// `n` defaults to 1; `phi` defaults to p0. Throws PreconditionError for an
/// unknown name or a negative n.
SchemaInstance axiom_by_name(const std::string& name, std::optional<int> n = std::nullopt,
                             std::optional<Formula> phi = std::nullopt);
std::vector<std::string> axiom_names();

struct Polarity {
  bool positive = false;
  bool negative = false;
};

/// Polarity of the free occurrences of p, counting negations.
Polarity positive_negative_occurrence(const Formula& f, Var p);
bool is_positive(const Formula& f);
bool is_negative(const Formula& f);

struct SahlqvistResult {
  bool is_sahlqvist = false;
  std::vector<std::string> trace;
};

/// Throws PreconditionError on quantified input.
SahlqvistResult sahlqvist_check(const Formula& f);

}  // namespace pqml
