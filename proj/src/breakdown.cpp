#include "pqml/breakdown.hpp"

#include <algorithm>

#include "pqml/errors.hpp"

namespace pqml {

namespace {

// Counts never exceed 64, so any cap above 64 behaves like 2^n.
std::uint64_t cap_for(unsigned n) { return n >= 7 ? 128 : std::uint64_t{1} << n; }

std::vector<WorldSet> atom_masks(const Valuation& v, const std::vector<Var>& vars, WorldSet universe) {
  const std::size_t k = vars.size();
  if (k > 16) throw GuardrailError("too many variables for atom enumeration");
  std::vector<WorldSet> vals;
  vals.reserve(k);
  for (Var p : vars) vals.push_back(v.at(p));
  std::vector<WorldSet> out(std::size_t{1} << k);
  for (std::size_t a = 0; a < out.size(); ++a) {
    WorldSet m = universe;
    for (std::size_t i = 0; i < k; ++i) {
      const bool negative = (a >> (k - 1 - i)) & 1u;
      m = negative ? m - vals[i] : m & vals[i];
    }
    out[a] = m;
  }
  return out;
}

WorldSet universe_of(const DuplicateStructure& ds) { return WorldSet::full(ds.class_of.size()); }

std::vector<Var> with_var(std::vector<Var> vars, Var p) {
  auto it = std::lower_bound(vars.begin(), vars.end(), p);
  if (it == vars.end() || *it != p) vars.insert(it, p);
  return vars;
}

}  // namespace

std::vector<WorldSet> cells(const Valuation& v, const std::vector<Var>& vars, const DuplicateStructure& ds) {
  const auto atoms = atom_masks(v, vars, universe_of(ds));
  std::vector<WorldSet> out;
  out.reserve(atoms.size() * ds.size());
  for (WorldSet a : atoms)
    for (WorldSet d : ds.classes) out.push_back(a & d);
  return out;
}

CardinalityProfile cardinality_profile(const Valuation& v, const std::vector<Var>& vars,
                                       const DuplicateStructure& ds, unsigned n) {
  CardinalityProfile prof;
  prof.cap = cap_for(n);
  for (WorldSet c : cells(v, vars, ds)) prof.counts.push_back(std::min<std::uint64_t>(c.count(), prof.cap));
  return prof;
}

bool approx_equiv(const Valuation& u, const Valuation& v, unsigned n, const std::vector<Var>& vars,
                  const DuplicateStructure& ds) {
  return cardinality_profile(u, vars, ds, n) == cardinality_profile(v, vars, ds, n);
}

WorldSet extend_witness(const Valuation& u, const Valuation& v, unsigned n, Var p, WorldSet x,
                        const DuplicateStructure& ds) {
  if (n == 0) throw PreconditionError("extend_witness needs n >= 1");
  if (u.binds(p) || v.binds(p)) throw PreconditionError("extend_witness: " + p.name() + " is already bound");
  if (u.domain() != v.domain()) throw PreconditionError("extend_witness: valuation domains differ");
  const std::vector<Var> vars = u.domain();
  if (!approx_equiv(u, v, n, vars, ds)) throw PreconditionError("extend_witness: valuations are not equivalent");

  const auto cu = cells(u, vars, ds);
  const auto cv = cells(v, vars, ds);
  const std::size_t h = cap_for(n - 1);
  WorldSet y;
  for (std::size_t i = 0; i < cu.size(); ++i) {
    const std::size_t inside = (cu[i] & x).count();
    const std::size_t outside = (cu[i] - x).count();
    if (inside < h)
      y |= cv[i].least(inside);
    else if (outside < h)
      y |= cv[i].least(cv[i].count() - outside);
    else
      y |= cv[i].least(h);
  }
  if (!approx_equiv(u.with(p, x), v.with(p, y), n - 1, with_var(vars, p), ds))
    throw std::logic_error("extend_witness postcondition failed");
  return y;
}

std::size_t Breakdown::KeyHash::operator()(const std::vector<std::uint64_t>& k) const noexcept {
  std::uint64_t h = 0x84222325cbf29ce4ull;
  for (std::uint64_t x : k) h = (h ^ x) * 0x100000001b3ull + (h >> 29);
  return static_cast<std::size_t>(h);
}

Breakdown::Breakdown(const KripkeFrame& frame, BreakdownOptions opts)
    : Breakdown(frame, duplicate_structure(frame), opts) {}

Breakdown::Breakdown(const KripkeFrame& frame, DuplicateStructure ds, BreakdownOptions opts)
    : frame_(frame), ds_(std::move(ds)), opts_(opts) {
  if (ds_.class_of.size() != frame_.size()) throw PreconditionError("duplicate structure belongs to another frame");
}

std::vector<Formula> Breakdown::all_classes(const Formula& phi, const Valuation& v) {
  const WorldSet u = frame_.universe();
  for (Var p : phi.free_vars())
    if (!v.at(p).subset_of(u)) throw EvalError("value of " + p.name() + " leaves the universe");
  return compute(phi, v);
}

Formula Breakdown::at(const Formula& phi, const Valuation& v, std::size_t cls) {
  if (cls >= ds_.size()) throw PreconditionError("class index out of range");
  return all_classes(phi, v)[cls];
}

WorldSet Breakdown::fast_extension(const Formula& phi, const Valuation& v) {
  const auto fs = all_classes(phi, v);
  const WorldSet u = frame_.universe();
  WorldSet out;
  for (std::size_t d = 0; d < fs.size(); ++d) out |= eval_boolean(fs[d], v, u) & ds_.classes[d];
  return out;
}

std::vector<Formula> Breakdown::compute(const Formula& phi, const Valuation& v) {
  const std::size_t nc = ds_.size();
  switch (phi.op()) {
    case Op::Top:
    case Op::Bottom:
    case Op::Atom:
      return std::vector<Formula>(nc, phi);
    case Op::Not: {
      auto out = compute(phi.child(), v);
      for (auto& f : out) f = Formula::negate(f);
      return out;
    }
    case Op::Or: {
      auto a = compute(phi.lhs(), v);
      auto b = compute(phi.rhs(), v);
      for (std::size_t d = 0; d < nc; ++d) a[d] = Formula::disj(a[d], b[d]);
      return a;
    }
    case Op::Dia:
    case Op::Exists:
      break;
  }

  std::vector<std::uint64_t> key;
  key.push_back(reinterpret_cast<std::uintptr_t>(phi.id()));
  for (Var p : phi.free_vars()) key.push_back(v.at(p).bits());
  if (auto it = memo_.find(key); it != memo_.end()) return it->second.value;
  auto out = phi.op() == Op::Dia ? compute_dia(phi, v) : compute_exists(phi, v);
  memo_.emplace(std::move(key), MemoEntry{phi, out});
  return out;
}

std::vector<Formula> Breakdown::compute_dia(const Formula& phi, const Valuation& v) {
  const auto inner = compute(phi.child(), v);
  const WorldSet u = frame_.universe();
  WorldSet x;
  for (std::size_t d = 0; d < inner.size(); ++d) x |= eval_boolean(inner[d], v, u) & ds_.classes[d];

  std::vector<Formula> out;
  out.reserve(inner.size());
  for (std::size_t d = 0; d < inner.size(); ++d) {
    const bool external = ds_.external_successors(d).intersects(x);
    const std::size_t here = (x & ds_.classes[d]).count();
    switch (ds_.kinds[d]) {
      case LocalKind::Full:
      case LocalKind::Empty: {
        const bool hit = external || (ds_.quotient_related(d, d) && here > 0);
        out.push_back(hit ? Formula::top() : Formula::bottom());
        break;
      }
      case LocalKind::Coidentity:
        if (external || here >= 2)
          out.push_back(Formula::top());
        else if (here == 1)
          out.push_back(Formula::negate(inner[d]));
        else
          out.push_back(Formula::bottom());
        break;
      case LocalKind::Identity:
        out.push_back(external ? Formula::top() : inner[d]);
        break;
    }
  }
  return out;
}

std::vector<Formula> Breakdown::compute_exists(const Formula& phi, const Valuation& v) {
  const Formula& body = phi.child();
  const Var p = phi.var();
  const std::vector<Var>& vars = phi.free_vars();
  const std::size_t nc = ds_.size();
  const WorldSet u = frame_.universe();
  const auto atoms = atom_masks(v, vars, u);

  std::vector<WorldSet> reach(nc);
  auto absorb = [&](WorldSet x) {
    const Valuation vx = v.with(p, x);
    const auto inner = compute(body, vx);
    bool saturated = true;
    for (std::size_t d = 0; d < nc; ++d) {
      reach[d] |= eval_boolean(inner[d], vx, u) & ds_.classes[d];
      saturated = saturated && reach[d] == ds_.classes[d];
    }
    return !saturated;
  };

  const auto& bfv = body.free_vars();
  if (!std::binary_search(bfv.begin(), bfv.end(), p)) {
    absorb(WorldSet{});
  } else if (opts_.brute_force_witnesses) {
    if (frame_.size() > 24) throw GuardrailError("brute-force witnesses above 24 worlds");
    const std::uint64_t end = std::uint64_t{1} << frame_.size();
    for (std::uint64_t m = 0; m < end; ++m)
      if (!absorb(WorldSet(m))) break;
  } else {
    // One canonical witness per capped (inside, outside) count pair per cell.
    const std::size_t k = std::min<std::uint64_t>(cap_for(static_cast<unsigned>(body.quantifier_depth()) + 1), 64);
    std::vector<std::vector<WorldSet>> choices;
    for (WorldSet a : atoms)
      for (WorldSet d : ds_.classes) {
        const WorldSet c = a & d;
        if (c.empty()) continue;
        const std::size_t s = c.count();
        std::vector<WorldSet> opts;
        std::pair<std::size_t, std::size_t> last{SIZE_MAX, SIZE_MAX};
        for (std::size_t i = 0; i <= s; ++i) {
          const std::pair<std::size_t, std::size_t> key{std::min(i, k), std::min(s - i, k)};
          if (key == last) continue;
          last = key;
          opts.push_back(c.least(i));
        }
        choices.push_back(std::move(opts));
      }
    std::vector<std::size_t> digit(choices.size(), 0);
    for (;;) {
      WorldSet x;
      for (std::size_t i = 0; i < choices.size(); ++i) x |= choices[i][digit[i]];
      if (!absorb(x)) break;
      std::size_t i = choices.size();
      while (i > 0 && ++digit[i - 1] == choices[i - 1].size()) digit[--i] = 0;
      if (i == 0) break;
    }
  }

  const auto names = atoms_over(vars);
  std::vector<Formula> out;
  out.reserve(nc);
  for (std::size_t d = 0; d < nc; ++d) {
    std::vector<Formula> disjuncts;
    for (std::size_t a = 0; a < atoms.size(); ++a)
      if (atoms[a].intersects(reach[d])) disjuncts.push_back(names[a]);
    out.push_back(big_disj(disjuncts));
  }
  return out;
}

Formula breakdown(const Formula& phi, const Valuation& v, std::size_t cls, const KripkeFrame& frame,
                  const DuplicateStructure& ds, BreakdownOptions opts) {
  return Breakdown(frame, ds, opts).at(phi, v, cls);
}

WorldSet fast_extension(const Formula& phi, const KripkeFrame& frame, const Valuation& v,
                        const DuplicateStructure& ds, BreakdownOptions opts) {
  return Breakdown(frame, ds, opts).fast_extension(phi, v);
}

InvariantReport invariant_subdomain_check(const GeneralFrame& g, const std::vector<Formula>& corpus,
                                          EvalOptions opts) {
  const GeneralFrame full = GeneralFrame::full(g.base());
  Evaluator restricted(g, opts);
  Evaluator unrestricted(full, opts);
  InvariantReport rep;
  for (std::size_t i = 0; i < corpus.size() && rep.passed_corpus; ++i) {
    const Formula& f = corpus[i];
    for_each_valuation(f.free_vars(), g.admissible(), [&](const Valuation& v) {
      ++rep.pairs_checked;
      const WorldSet a = restricted.extension(f, v);
      const WorldSet b = unrestricted.extension(f, v);
      if (a == b) return true;
      rep.passed_corpus = false;
      rep.formula_index = i;
      rep.formula = f;
      rep.valuation = v;
      rep.world = (a ^ b).first();
      rep.family_extension = a;
      rep.powerset_extension = b;
      return false;
    });
  }
  return rep;
}

WorldSet build_invariant_Y(const GeneralFrame& g, const Valuation& v, Var p, WorldSet x, std::size_t w,
                           unsigned n, const DuplicateStructure& ds) {
  if (ds.class_of.size() != g.size()) throw PreconditionError("duplicate structure belongs to another frame");
  if (w >= g.size()) throw PreconditionError("world index out of range");
  std::vector<Var> vars = v.domain();
  vars.erase(std::remove(vars.begin(), vars.end(), p), vars.end());
  const Valuation base = v.restricted(vars);
  const std::size_t cap = cap_for(n);
  WorldSet y;
  for (WorldSet c : cells(base, vars, ds)) {
    const WorldSet in = c & x;
    const WorldSet out = c - x;
    if (in.count() < cap || out.count() < cap)
      y |= in;
    else if (in.contains(w))
      y |= c - out.least(cap);
    else
      y |= in.least(cap);
  }
  if (x.contains(w) != y.contains(w) ||
      !approx_equiv(base.with(p, x), base.with(p, y), n, with_var(vars, p), ds))
    throw std::logic_error("build_invariant_Y postcondition failed");
  return y;
}

}  // namespace pqml
