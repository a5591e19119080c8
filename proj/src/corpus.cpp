#include "pqml/corpus.hpp"

#include "pqml/errors.hpp"

namespace pqml::corpus {

KripkeFrame random_frame(Rng& rng, std::size_t n, double density) {
  std::bernoulli_distribution edge(density);
  std::vector<Edge> e;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (edge(rng)) e.push_back({i, j});
  return KripkeFrame(n, e);
}

void for_each_frame(std::size_t n, const std::function<void(const KripkeFrame&)>& visit) {
  if (n == 0 || n > 4) throw PreconditionError("for_each_frame supports 1..4 worlds");
  const std::uint64_t total = std::uint64_t{1} << (n * n);
  const std::uint64_t row_mask = (std::uint64_t{1} << n) - 1;
  std::vector<std::string> names;
  for (std::size_t i = 0; i < n; ++i) names.push_back(std::to_string(i));
  for (std::uint64_t r = 0; r < total; ++r) {
    std::vector<std::uint64_t> rows(n);
    for (std::size_t i = 0; i < n; ++i) rows[i] = (r >> (i * n)) & row_mask;
    visit(KripkeFrame::from_rows(names, rows));
  }
}

namespace {

Formula gen(Rng& rng, const FormulaShape& s, std::size_t budget, int md, int qd) {
  auto var = [&] { return Var{static_cast<std::uint32_t>(std::uniform_int_distribution<std::uint32_t>(0, s.vars - 1)(rng))}; };
  if (budget <= 1) return Formula::atom(var());
  std::vector<int> ops{0, 1};  // atom, not
  if (budget >= 3) ops.push_back(2);
  if (md > 0) ops.push_back(3);
  if (qd > 0) ops.push_back(4);
  if (budget >= 3) ops.push_back(2);
  switch (ops[std::uniform_int_distribution<std::size_t>(0, ops.size() - 1)(rng)]) {
    case 0:
      return Formula::atom(var());
    case 1:
      return Formula::negate(gen(rng, s, budget - 1, md, qd));
    case 2: {
      const std::size_t left = std::uniform_int_distribution<std::size_t>(1, budget - 2)(rng);
      Formula a = gen(rng, s, left, md, qd);
      return Formula::disj(a, gen(rng, s, budget - 1 - left, md, qd));
    }
    case 3:
      return Formula::dia(gen(rng, s, budget - 1, md - 1, qd));
    default: {
      const Var p = var();
      return Formula::exists(p, gen(rng, s, budget - 1, md, qd - 1));
    }
  }
}

}  // namespace

Formula random_formula(Rng& rng, const FormulaShape& shape) {
  if (shape.vars == 0) throw PreconditionError("formula shape needs at least one variable");
  const std::size_t budget = std::uniform_int_distribution<std::size_t>(1, std::max<std::size_t>(shape.max_size, 1))(rng);
  return gen(rng, shape, budget, shape.max_md, shape.max_qd);
}

std::vector<Formula> enumerate_formulas(const FormulaShape& shape, bool constants) {
  std::vector<std::vector<Formula>> by_size(shape.max_size + 1);
  auto keep = [&](const Formula& f) { return f.modal_depth() <= shape.max_md && f.quantifier_depth() <= shape.max_qd; };
  if (shape.max_size >= 1) {
    for (std::uint32_t i = 0; i < shape.vars; ++i) by_size[1].push_back(Formula::atom(Var{i}));
    if (constants) {
      by_size[1].push_back(Formula::top());
      by_size[1].push_back(Formula::bottom());
    }
  }
  for (std::size_t s = 2; s <= shape.max_size; ++s) {
    auto& out = by_size[s];
    for (const Formula& c : by_size[s - 1]) {
      out.push_back(Formula::negate(c));
      if (keep(Formula::dia(c))) out.push_back(Formula::dia(c));
      for (std::uint32_t i = 0; i < shape.vars; ++i) {
        Formula q = Formula::exists(Var{i}, c);
        if (keep(q)) out.push_back(q);
      }
    }
    for (std::size_t l = 1; l + 1 < s; ++l)
      for (const Formula& a : by_size[l])
        for (const Formula& b : by_size[s - 1 - l]) {
          Formula o = Formula::disj(a, b);
          if (keep(o)) out.push_back(o);
        }
  }
  std::vector<Formula> all;
  for (auto& level : by_size) all.insert(all.end(), level.begin(), level.end());
  return all;
}

Valuation random_valuation(Rng& rng, const std::vector<Var>& vars, std::size_t worlds) {
  const std::uint64_t mask = WorldSet::full(worlds).bits();
  Valuation v;
  for (Var p : vars) v.set(p, WorldSet(rng() & mask));
  return v;
}

Valuation random_valuation(Rng& rng, const std::vector<Var>& vars, const AdmissibleFamily& family) {
  if (family.is_powerset()) return random_valuation(rng, vars, family.world_count());
  const auto& sets = family.sets();
  std::uniform_int_distribution<std::size_t> pick(0, sets.size() - 1);
  Valuation v;
  for (Var p : vars) v.set(p, sets[pick(rng)]);
  return v;
}

GeneralFrame random_quantifiable_frame(Rng& rng, std::size_t n, std::size_t generators, double density) {
  KripkeFrame f = random_frame(rng, n, density);
  const std::uint64_t mask = WorldSet::full(n).bits();
  std::vector<WorldSet> gens;
  for (std::size_t i = 0; i < generators; ++i) gens.push_back(WorldSet(rng() & mask));
  AdmissibleFamily closed = close_family(f, AdmissibleFamily::of(n, gens));
  return GeneralFrame::certified(std::move(f), std::move(closed));
}

GeneralFrame random_pd_frame(Rng& rng, std::size_t n, std::size_t members, double density) {
  KripkeFrame f = random_frame(rng, n, density);
  const std::uint64_t mask = WorldSet::full(n).bits();
  std::vector<WorldSet> sets;
  for (std::size_t i = 0; i < std::max<std::size_t>(members, 1); ++i) sets.push_back(WorldSet(rng() & mask));
  return GeneralFrame(std::move(f), AdmissibleFamily::of(n, sets));
}

}  // namespace pqml::corpus
