#include "pqml/semantics.hpp"

#include <algorithm>
#include <bit>

#include "pqml/errors.hpp"

namespace pqml {

std::size_t Evaluator::KeyHash::operator()(const std::vector<std::uint64_t>& k) const noexcept {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (std::uint64_t x : k) {
    h ^= x + 0x9E3779B97F4A7C15ull + (h << 6) + (h >> 2);
    h *= 0x100000001b3ull;
  }
  return static_cast<std::size_t>(h);
}

Evaluator::Evaluator(const GeneralFrame& frame, EvalOptions opts)
    : frame_(frame), opts_(opts), universe_(frame.base().universe()) {}

WorldSet Evaluator::extension(const Formula& f, const Valuation& v) {
  for (Var p : f.free_vars()) {
    auto x = v.get(p);
    if (!x) throw EvalError("unbound free variable " + p.name());
    if (!frame_.admissible().contains(*x)) throw EvalError("value of " + p.name() + " is not admissible");
  }
  if (f.quantifier_depth() > 0 && frame_.admissible().is_powerset() && !opts_.force &&
      frame_.size() > opts_.max_worlds)
    throw GuardrailError("quantifying over the powerset of " + std::to_string(frame_.size()) +
                         " worlds exceeds the limit of " + std::to_string(opts_.max_worlds));
  env_.clear();
  for (Var p : f.free_vars()) env_.emplace_back(p, *v.get(p));
  return eval(f);
}

WorldSet Evaluator::lookup(Var p) const {
  for (auto it = env_.rbegin(); it != env_.rend(); ++it)
    if (it->first == p) return it->second;
  throw EvalError("unbound variable " + p.name());
}

WorldSet Evaluator::eval(const Formula& f) {
  switch (f.op()) {
    case Op::Top:
      return universe_;
    case Op::Bottom:
      return WorldSet{};
    case Op::Atom:
      return lookup(f.var());
    case Op::Not:
      return eval(f.child()).complement_in(universe_);
    case Op::Or: {
      WorldSet a = eval(f.lhs());
      if (a == universe_) return a;
      return a | eval(f.rhs());
    }
    case Op::Dia:
      return frame_.base().m_diamond(eval(f.child()));
    case Op::Exists:
      break;
  }

  const Formula& body = f.child();
  const Var p = f.var();
  const auto& body_free = body.free_vars();
  if (!std::binary_search(body_free.begin(), body_free.end(), p)) return eval(body);

  std::vector<std::uint64_t> key;
  if (opts_.memoize) {
    key.reserve(f.free_vars().size() + 1);
    key.push_back(reinterpret_cast<std::uintptr_t>(f.id()));
    for (Var q : f.free_vars()) key.push_back(lookup(q).bits());
    if (auto it = memo_.find(key); it != memo_.end()) return it->second.value;
  }

  WorldSet acc;
  env_.emplace_back(p, WorldSet{});
  const std::size_t slot = env_.size() - 1;
  auto step = [&](WorldSet x) {
    env_[slot].second = x;
    acc |= eval(body);
    return acc != universe_;
  };
  const auto& family = frame_.admissible();
  if (family.is_powerset()) {
    const std::uint64_t end = std::uint64_t{1} << frame_.size();
    for (std::uint64_t m = 0; m < end; ++m)
      if (!step(WorldSet(m))) break;
  } else {
    for (WorldSet x : family.sets())
      if (!step(x)) break;
  }
  env_.resize(slot);

  if (opts_.memoize) {
    if (memo_.size() > (std::size_t{1} << 20)) memo_.clear();
    memo_.emplace(std::move(key), MemoEntry{f, acc});
  }
  return acc;
}

WorldSet extension(const Formula& f, const GeneralFrame& g, const Valuation& v, EvalOptions opts) {
  return Evaluator(g, opts).extension(f, v);
}

WorldSet extension_full(const Formula& f, const KripkeFrame& frame, const Valuation& v, EvalOptions opts) {
  GeneralFrame g = GeneralFrame::full(frame);
  return Evaluator(g, opts).extension(f, v);
}

bool holds_at(const Formula& f, const Model& m, std::size_t w, EvalOptions opts) {
  if (w >= m.frame().size()) throw FrameError("world index out of range");
  return extension(f, m.frame(), m.valuation(), opts).contains(w);
}

WorldSet eval_boolean(const Formula& f, const Valuation& v, WorldSet universe) {
  switch (f.op()) {
    case Op::Top:
      return universe;
    case Op::Bottom:
      return WorldSet{};
    case Op::Atom:
      return v.at(f.var());
    case Op::Not:
      return eval_boolean(f.child(), v, universe).complement_in(universe);
    case Op::Or:
      return eval_boolean(f.lhs(), v, universe) | eval_boolean(f.rhs(), v, universe);
    case Op::Dia:
    case Op::Exists:
      break;
  }
  throw EvalError("eval_boolean applied to a modal or quantified formula");
}

ValidityReport valid_on_general(const Formula& f, const GeneralFrame& g, EvalOptions opts) {
  const auto& vars = f.free_vars();
  const std::uint64_t per_var = g.admissible().size();
  double total = 1;
  for (std::size_t i = 0; i < vars.size(); ++i) total *= static_cast<double>(per_var);
  if (!opts.force && total > static_cast<double>(opts.max_valuations))
    throw GuardrailError("validity check would enumerate " + std::to_string(static_cast<long double>(total)) +
                         " valuations");
  if (!opts.force && !vars.empty() && g.admissible().is_powerset() && g.size() > opts.max_worlds)
    throw GuardrailError("valuations over the powerset of " + std::to_string(g.size()) + " worlds");

  Evaluator ev(g, opts);
  const WorldSet u = g.base().universe();
  ValidityReport report;
  for_each_valuation(vars, g.admissible(), [&](const Valuation& v) {
    WorldSet ext = ev.extension(f, v);
    if (ext == u) return true;
    report.valid = false;
    report.counter_valuation = v;
    report.counter_world = (u - ext).first();
    return false;
  });
  return report;
}

ValidityReport valid_on_kripke(const Formula& f, const KripkeFrame& frame, EvalOptions opts) {
  return valid_on_general(f, GeneralFrame::full(frame), opts);
}

bool check_substitution_lemma(const Formula& f, const Substitution& sigma, const GeneralFrame& g,
                              const Valuation& v, EvalOptions opts) {
  if (!g.closure_certified()) throw PreconditionError("substitution lemma check needs a closure-certified frame");
  Evaluator ev(g, opts);
  Valuation star;
  for (Var p : f.free_vars()) star.set(p, ev.extension(sigma(p), v));
  return ev.extension(f, star) == ev.extension(substitute(sigma, f), v);
}

}  // namespace pqml
