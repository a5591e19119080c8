#pragma once

// Deterministic generators for frames, formulas and valuations used by the
// property suites. All randomness flows from a caller-provided engine.

#include <cstdint>
#include <functional>
#include <random>
#include <vector>

#include "pqml/formula.hpp"
#include "pqml/frame.hpp"
#include "pqml/valuation.hpp"

namespace pqml::corpus {

using Rng = std::mt19937_64;

/// Each ordered pair (loops included) is an edge with probability `density`.
KripkeFrame random_frame(Rng& rng, std::size_t n, double density = 0.35);

/// Calls visit for each of the 2^(n*n) relations on n worlds, n <= 4.
void for_each_frame(std::size_t n, const std::function<void(const KripkeFrame&)>& visit);

struct FormulaShape {
  std::uint32_t vars = 2;
  int max_md = 2;
  int max_qd = 1;
  /// Upper bound on the node count.
  std::size_t max_size = 8;
};

/// Random formula within the shape. Quantifiers bind variables from the
/// same pool, so bound and free occurrences mix.
Formula random_formula(Rng& rng, const FormulaShape& shape);

/// Every formula over atoms p0..p(vars-1), ~, |, <>, E and true/false with
/// at most max_size nodes and within the depth bounds, in size order.
std::vector<Formula> enumerate_formulas(const FormulaShape& shape, bool constants = false);

/// Independent uniformly random subsets of the universe.
Valuation random_valuation(Rng& rng, const std::vector<Var>& vars, std::size_t worlds);
/// Uniform choices from the admissible family.
Valuation random_valuation(Rng& rng, const std::vector<Var>& vars, const AdmissibleFamily& family);

/// Closure of a few random generator sets; certified closed.
GeneralFrame random_quantifiable_frame(Rng& rng, std::size_t n, std::size_t generators = 2, double density = 0.35);
/// Random pd-frame: a random non-empty family, not closed in general.
GeneralFrame random_pd_frame(Rng& rng, std::size_t n, std::size_t members = 4, double density = 0.35);

}  // namespace pqml::corpus
