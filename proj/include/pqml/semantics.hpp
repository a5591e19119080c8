#pragma once

// Set-valued semantics over finite general frames.
//
// The quantifier clause unions the body's extension over every member of
// the admissible family; over a Kripke frame that family is the streamed
// powerset. Extensions of quantified subformulas are memoized on
// (subformula, values of its free variables), which is sound because an
// extension depends only on the free variables.

#include <cstdint>
#include <optional>
#include <unordered_map>
#include <vector>

#include "pqml/formula.hpp"
#include "pqml/frame.hpp"
#include "pqml/valuation.hpp"

namespace pqml {

struct EvalOptions {
  /// Largest world count for which quantifiers may range over the powerset.
  std::size_t max_worlds = 20;
  /// Ignore max_worlds.
  bool force = false;
  /// Largest number of valuations a validity check may enumerate.
  std::uint64_t max_valuations = std::uint64_t{1} << 22;
  bool memoize = true;
};

/// Evaluates formulas against one general frame; keeps its memo table
/// between calls. The frame must outlive the evaluator.
class Evaluator {
 public:
  explicit Evaluator(const GeneralFrame& frame, EvalOptions opts = {});

  /// [[f]](v). Throws EvalError when a free variable is unbound or a value
  /// is not admissible, GuardrailError when the powerset is too large.
  WorldSet extension(const Formula& f, const Valuation& v);

  const GeneralFrame& frame() const { return frame_; }
  std::size_t memo_size() const { return memo_.size(); }
  void clear_memo() { memo_.clear(); }

 private:
  struct KeyHash {
    std::size_t operator()(const std::vector<std::uint64_t>& k) const noexcept;
  };

  WorldSet eval(const Formula& f);
  WorldSet lookup(Var p) const;

  const GeneralFrame& frame_;
  EvalOptions opts_;
  WorldSet universe_;
  std::vector<std::pair<Var, WorldSet>> env_;
  struct MemoEntry {
    Formula node;  // keeps the keyed address alive
    WorldSet value;
  };
  std::unordered_map<std::vector<std::uint64_t>, MemoEntry, KeyHash> memo_;
};

WorldSet extension(const Formula& f, const GeneralFrame& g, const Valuation& v, EvalOptions opts = {});
/// Extension over the Kripke frame, quantifiers ranging over the powerset.
WorldSet extension_full(const Formula& f, const KripkeFrame& frame, const Valuation& v, EvalOptions opts = {});
bool holds_at(const Formula& f, const Model& m, std::size_t w, EvalOptions opts = {});

/// Value of a quantifier- and modality-free formula.
WorldSet eval_boolean(const Formula& f, const Valuation& v, WorldSet universe);

struct ValidityReport {
  bool valid = true;
  /// Lexicographically least failing valuation (first variable most significant).
  std::optional<Valuation> counter_valuation;
  /// Least world outside the extension under counter_valuation.
  std::optional<std::size_t> counter_world;
};

/// Exhaustive over valuations of Fv(f) drawn from the admissible family.
ValidityReport valid_on_general(const Formula& f, const GeneralFrame& g, EvalOptions opts = {});
ValidityReport valid_on_kripke(const Formula& f, const KripkeFrame& frame, EvalOptions opts = {});

/// Checks [[f]](sigma*v) == [[sigma(f)]](v), where sigma*v maps each free
/// variable p of f to [[sigma(p)]](v). Requires a closure-certified frame.
bool check_substitution_lemma(const Formula& f, const Substitution& sigma, const GeneralFrame& g,
                              const Valuation& v, EvalOptions opts = {});

/// Visits every valuation of `vars` over the family in lexicographic order
/// (first variable most significant). Stops early when `visit` returns false.
template <class Visit>
void for_each_valuation(const std::vector<Var>& vars, const AdmissibleFamily& family, Visit&& visit);

}  // namespace pqml

#include "pqml/detail/valuation_enum.hpp"
