#pragma once

// Formula representation for propositionally quantified modal logic.
//
// The primitive connectives are negation, disjunction, diamond and the
// existential quantifier, plus the constants true/false. Every other
// connective (and, implies, iff, box, forall) is sugar that expands to
// primitives at construction time, so two formulas built from the same
// sugar are structurally equal.

#include <compare>
#include <cstddef>
#include <cstdint>
#include <map>
#include <memory>
#include <set>
#include <string>
#include <vector>

namespace pqml {

/// Propositional variable p<index>. Variables are totally ordered by index.
struct Var {
  std::uint32_t index = 0;

  friend constexpr auto operator<=>(Var, Var) = default;
  std::string name() const { return "p" + std::to_string(index); }
};

enum class Op : std::uint8_t { Top, Bottom, Atom, Not, Or, Dia, Exists };

class Formula;

namespace detail {
struct FormulaNode;
}

/// Immutable, cheaply copyable formula handle. Subtrees are shared.
class Formula {
 public:
  /// The constant true.
  Formula();

  static Formula top();
  static Formula bottom();
  static Formula atom(Var v);
  static Formula negate(Formula a);
  static Formula disj(Formula a, Formula b);
  static Formula dia(Formula a);
  static Formula exists(Var v, Formula body);

  // Sugar, expanded to primitives.
  static Formula conj(Formula a, Formula b);       // ~(~a | ~b)
  static Formula implies(Formula a, Formula b);    // ~a | b
  static Formula iff(Formula a, Formula b);        // (a -> b) & (b -> a)
  static Formula box(Formula a);                   // ~<>~a
  static Formula forall(Var v, Formula body);      // ~E v. ~body

  Op op() const;
  /// Variable of an Atom or the bound variable of an Exists.
  Var var() const;
  /// Sole child of Not/Dia/Exists, or left child of Or.
  const Formula& child() const;
  const Formula& lhs() const { return child(); }
  const Formula& rhs() const;

  /// Sorted free variables (cached).
  const std::vector<Var>& free_vars() const;
  int quantifier_depth() const;
  int modal_depth() const;
  std::size_t size() const;
  std::size_t hash() const;
  /// Stable address identifying this shared node.
  const void* id() const { return node_.get(); }

  friend bool operator==(const Formula& a, const Formula& b);

 private:
  friend struct detail::FormulaNode;
  explicit Formula(std::shared_ptr<const detail::FormulaNode> n) : node_(std::move(n)) {}
  std::shared_ptr<const detail::FormulaNode> node_;
};

struct FormulaHash {
  std::size_t operator()(const Formula& f) const noexcept { return f.hash(); }
};

const std::vector<Var>& free_vars(const Formula& f);
int quantifier_depth(const Formula& f);
int modal_depth(const Formula& f);
/// Every variable occurring in `f`, free or bound.
std::set<Var> used_vars(const Formula& f);
/// Least-index variable not in `used`.
Var first_unused(const std::set<Var>& used);
/// No Dia and no Exists.
bool is_boolean(const Formula& f);
bool is_quantifier_free(const Formula& f);

/// Equality up to renaming of bound variables.
bool alpha_equivalent(const Formula& a, const Formula& b);

// Iterated modalities: dia_iter(0, f) = f, dia_iter(n+1, f) = <>dia_iter(n, f);
// dia_le(0, f) = f, dia_le(n+1, f) = dia_le(n, f) | dia_iter(n+1, f).
Formula dia_iter(int n, const Formula& f);
Formula dia_le(int n, const Formula& f);
Formula box_iter(int n, const Formula& f);
Formula box_le(int n, const Formula& f);

/// Left-nested conjunction; true for an empty list.
Formula big_conj(const std::vector<Formula>& fs);
/// Left-nested disjunction; false for an empty list.
Formula big_disj(const std::vector<Formula>& fs);

/// All 2^k conjunctions of literals over `vars`, positive literal before
/// negative, first variable most significant. `{}` yields `{true}`.
std::vector<Formula> atoms_over(const std::vector<Var>& vars);

/// Finite map from variables to formulas; identity elsewhere.
class Substitution {
 public:
  Substitution() = default;
  static Substitution identity() { return {}; }
  static Substitution single(Var p, Formula f);

  Substitution& set(Var p, Formula f);
  /// sigma(p), which is the atom p outside the explicit domain.
  Formula operator()(Var p) const;
  const std::map<Var, Formula>& entries() const { return map_; }

 private:
  std::map<Var, Formula> map_;
};

/// Applies `sigma` to `f`, renaming a bound variable exactly when it would
/// capture a variable of some substituted formula. The replacement is the
/// least-index variable used neither in the quantified subformula nor in the
/// images of its free variables.
Formula substitute(const Substitution& sigma, const Formula& f);

}  // namespace pqml
