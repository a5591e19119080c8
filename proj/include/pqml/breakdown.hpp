#pragma once

// Quantifier elimination over a fixed finite Kripke frame.
//
// Worlds are grouped into cells: the extension of an atom (a conjunction
// of literals over the valuation's variables) intersected with a duplicate
// class. Two valuations are n-equivalent when every cell has the same size
// under both, or at least 2^n under both. The breakdown f(phi, v, D) is a
// Boolean formula agreeing with phi on class D under v, and it is constant
// on n-equivalence classes of v for n = qd(phi) + 1. The quantifier case
// therefore needs only one witness per capped cell profile.

#include <cstdint>
#include <optional>
#include <unordered_map>
#include <vector>

#include "pqml/diversity.hpp"
#include "pqml/formula.hpp"
#include "pqml/frame.hpp"
#include "pqml/semantics.hpp"
#include "pqml/valuation.hpp"

namespace pqml {

/// Cells in atom-major, class-minor order; atoms follow atoms_over(vars).
std::vector<WorldSet> cells(const Valuation& v, const std::vector<Var>& vars, const DuplicateStructure& ds);

struct CardinalityProfile {
  std::uint64_t cap = 1;
  /// Per cell, min(|cell|, cap); a value equal to cap means "at least cap".
  std::vector<std::uint64_t> counts;

  friend bool operator==(const CardinalityProfile&, const CardinalityProfile&) = default;
};

/// Cell sizes of `v` capped at 2^n (n <= 62).
CardinalityProfile cardinality_profile(const Valuation& v, const std::vector<Var>& vars,
                                       const DuplicateStructure& ds, unsigned n);

bool approx_equiv(const Valuation& u, const Valuation& v, unsigned n, const std::vector<Var>& vars,
                  const DuplicateStructure& ds);

/// Given u and v n-equivalent over their common domain and X, returns Y with
/// u[X/p] and v[Y/p] (n-1)-equivalent. Elements are taken least index first.
/// Throws PreconditionError when n == 0, p is bound, the domains differ, or
/// u and v are not n-equivalent.
WorldSet extend_witness(const Valuation& u, const Valuation& v, unsigned n, Var p, WorldSet x,
                        const DuplicateStructure& ds);

struct BreakdownOptions {
  /// Union over every subset of W in the quantifier case instead of one
  /// canonical witness per cell profile.
  bool brute_force_witnesses = false;
};

class Breakdown {
 public:
  explicit Breakdown(const KripkeFrame& frame, BreakdownOptions opts = {});
  Breakdown(const KripkeFrame& frame, DuplicateStructure ds, BreakdownOptions opts = {});

  /// f(phi, v, D) for every class D, in class order. Requires Fv(phi) bound in v.
  std::vector<Formula> all_classes(const Formula& phi, const Valuation& v);
  Formula at(const Formula& phi, const Valuation& v, std::size_t cls);
  /// Union over classes D of [[f(phi, v, D)]](v) & D.
  WorldSet fast_extension(const Formula& phi, const Valuation& v);

  const KripkeFrame& frame() const { return frame_; }
  const DuplicateStructure& duplicates() const { return ds_; }
  std::size_t memo_size() const { return memo_.size(); }

 private:
  struct KeyHash {
    std::size_t operator()(const std::vector<std::uint64_t>& k) const noexcept;
  };
  struct MemoEntry {
    Formula node;
    std::vector<Formula> value;
  };

  std::vector<Formula> compute(const Formula& phi, const Valuation& v);
  std::vector<Formula> compute_exists(const Formula& phi, const Valuation& v);
  std::vector<Formula> compute_dia(const Formula& phi, const Valuation& v);

  KripkeFrame frame_;
  DuplicateStructure ds_;
  BreakdownOptions opts_;
  std::unordered_map<std::vector<std::uint64_t>, MemoEntry, KeyHash> memo_;
};

Formula breakdown(const Formula& phi, const Valuation& v, std::size_t cls, const KripkeFrame& frame,
                  const DuplicateStructure& ds, BreakdownOptions opts = {});
WorldSet fast_extension(const Formula& phi, const KripkeFrame& frame, const Valuation& v,
                        const DuplicateStructure& ds, BreakdownOptions opts = {});

struct InvariantReport {
  /// Every (formula, valuation) pair agreed. A corpus-bounded test only.
  bool passed_corpus = true;
  std::size_t pairs_checked = 0;
  std::optional<std::size_t> formula_index;
  std::optional<Formula> formula;
  std::optional<Valuation> valuation;
  /// Least world where the two extensions differ.
  std::optional<std::size_t> world;
  WorldSet family_extension;
  WorldSet powerset_extension;
};

/// Compares evaluation over the admissible family with evaluation over the
/// powerset, for every formula and every valuation of its free variables
/// drawn from the family. Stops at the first disagreement.
InvariantReport invariant_subdomain_check(const GeneralFrame& g, const std::vector<Formula>& corpus,
                                          EvalOptions opts = {});

/// Y with v[X/p] n-equivalent to v[Y/p] and w in X iff w in Y, built cell by
/// cell: a cell whose part inside or outside X is smaller than 2^n keeps
/// X's part; otherwise 2^n elements are moved so that w's side is kept.
/// The postcondition is checked and a violation throws std::logic_error.
WorldSet build_invariant_Y(const GeneralFrame& g, const Valuation& v, Var p, WorldSet x, std::size_t w,
                           unsigned n, const DuplicateStructure& ds);

}  // namespace pqml
