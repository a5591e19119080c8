#include "pqml/formula.hpp"

#include <algorithm>
#include <utility>

namespace pqml {
namespace detail {

struct FormulaNode {
  Op op = Op::Top;
  Var var{};
  // Null handles until filled; a default Formula would recurse into top().
  Formula kids[2] = {Formula(nullptr), Formula(nullptr)};
  std::vector<Var> free;
  int qd = 0;
  int md = 0;
  std::size_t size = 1;
  std::size_t hash = 0;
};

}  // namespace detail

namespace {

using detail::FormulaNode;

std::size_t mix(std::size_t h, std::size_t v) {
  return h ^ (v + 0x9E3779B97F4A7C15ull + (h << 6) + (h >> 2));
}

std::shared_ptr<const FormulaNode> make(Op op, Var v, const Formula* a, const Formula* b) {
  auto n = std::make_shared<FormulaNode>();
  n->op = op;
  n->var = v;
  n->hash = mix(static_cast<std::size_t>(op) * 1315423911u, 0);
  switch (op) {
    case Op::Top:
    case Op::Bottom:
      break;
    case Op::Atom:
      n->free = {v};
      n->hash = mix(n->hash, v.index);
      break;
    case Op::Not:
    case Op::Dia:
      n->kids[0] = *a;
      n->free = a->free_vars();
      n->qd = a->quantifier_depth();
      n->md = a->modal_depth() + (op == Op::Dia ? 1 : 0);
      n->size = a->size() + 1;
      n->hash = mix(n->hash, a->hash());
      break;
    case Op::Or: {
      n->kids[0] = *a;
      n->kids[1] = *b;
      const auto& fa = a->free_vars();
      const auto& fb = b->free_vars();
      std::set_union(fa.begin(), fa.end(), fb.begin(), fb.end(), std::back_inserter(n->free));
      n->qd = std::max(a->quantifier_depth(), b->quantifier_depth());
      n->md = std::max(a->modal_depth(), b->modal_depth());
      n->size = a->size() + b->size() + 1;
      n->hash = mix(mix(n->hash, a->hash()), b->hash());
      break;
    }
    case Op::Exists:
      n->kids[0] = *a;
      for (Var x : a->free_vars())
        if (x != v) n->free.push_back(x);
      n->qd = a->quantifier_depth() + 1;
      n->md = a->modal_depth();
      n->size = a->size() + 1;
      n->hash = mix(mix(n->hash, v.index), a->hash());
      break;
  }
  return n;
}

const std::shared_ptr<const FormulaNode>& top_node() {
  static const auto n = make(Op::Top, {}, nullptr, nullptr);
  return n;
}

const std::shared_ptr<const FormulaNode>& bottom_node() {
  static const auto n = make(Op::Bottom, {}, nullptr, nullptr);
  return n;
}

}  // namespace

Formula::Formula() : node_(top_node()) {}

Formula Formula::top() { return Formula(top_node()); }
Formula Formula::bottom() { return Formula(bottom_node()); }
Formula Formula::atom(Var v) { return Formula(make(Op::Atom, v, nullptr, nullptr)); }
Formula Formula::negate(Formula a) { return Formula(make(Op::Not, {}, &a, nullptr)); }
Formula Formula::disj(Formula a, Formula b) { return Formula(make(Op::Or, {}, &a, &b)); }
Formula Formula::dia(Formula a) { return Formula(make(Op::Dia, {}, &a, nullptr)); }
Formula Formula::exists(Var v, Formula body) { return Formula(make(Op::Exists, v, &body, nullptr)); }

Formula Formula::conj(Formula a, Formula b) {
  return negate(disj(negate(std::move(a)), negate(std::move(b))));
}
Formula Formula::implies(Formula a, Formula b) { return disj(negate(std::move(a)), std::move(b)); }
Formula Formula::iff(Formula a, Formula b) { return conj(implies(a, b), implies(b, a)); }
Formula Formula::box(Formula a) { return negate(dia(negate(std::move(a)))); }
Formula Formula::forall(Var v, Formula body) { return negate(exists(v, negate(std::move(body)))); }

Op Formula::op() const { return node_->op; }
Var Formula::var() const { return node_->var; }
const Formula& Formula::child() const { return node_->kids[0]; }
const Formula& Formula::rhs() const { return node_->kids[1]; }
const std::vector<Var>& Formula::free_vars() const { return node_->free; }
int Formula::quantifier_depth() const { return node_->qd; }
int Formula::modal_depth() const { return node_->md; }
std::size_t Formula::size() const { return node_->size; }
std::size_t Formula::hash() const { return node_->hash; }

bool operator==(const Formula& a, const Formula& b) {
  if (a.node_ == b.node_) return true;
  const auto& x = *a.node_;
  const auto& y = *b.node_;
  if (x.hash != y.hash || x.op != y.op || x.size != y.size) return false;
  switch (x.op) {
    case Op::Top:
    case Op::Bottom:
      return true;
    case Op::Atom:
      return x.var == y.var;
    case Op::Exists:
      return x.var == y.var && x.kids[0] == y.kids[0];
    case Op::Not:
    case Op::Dia:
      return x.kids[0] == y.kids[0];
    case Op::Or:
      return x.kids[0] == y.kids[0] && x.kids[1] == y.kids[1];
  }
  return false;
}

const std::vector<Var>& free_vars(const Formula& f) { return f.free_vars(); }
int quantifier_depth(const Formula& f) { return f.quantifier_depth(); }
int modal_depth(const Formula& f) { return f.modal_depth(); }

namespace {
void collect_used(const Formula& f, std::set<Var>& out) {
  switch (f.op()) {
    case Op::Top:
    case Op::Bottom:
      return;
    case Op::Atom:
      out.insert(f.var());
      return;
    case Op::Exists:
      out.insert(f.var());
      collect_used(f.child(), out);
      return;
    case Op::Not:
    case Op::Dia:
      collect_used(f.child(), out);
      return;
    case Op::Or:
      collect_used(f.lhs(), out);
      collect_used(f.rhs(), out);
      return;
  }
}
}  // namespace

std::set<Var> used_vars(const Formula& f) {
  std::set<Var> out;
  collect_used(f, out);
  return out;
}

Var first_unused(const std::set<Var>& used) {
  std::uint32_t i = 0;
  for (Var v : used) {
    if (v.index != i) break;
    ++i;
  }
  return Var{i};
}

bool is_boolean(const Formula& f) {
  switch (f.op()) {
    case Op::Top:
    case Op::Bottom:
    case Op::Atom:
      return true;
    case Op::Not:
      return is_boolean(f.child());
    case Op::Or:
      return is_boolean(f.lhs()) && is_boolean(f.rhs());
    case Op::Dia:
    case Op::Exists:
      return false;
  }
  return false;
}

bool is_quantifier_free(const Formula& f) { return f.quantifier_depth() == 0; }

namespace {
// Bound variables are compared by binder depth; free ones by identity.
bool alpha_rec(const Formula& a, const Formula& b, std::vector<std::pair<Var, Var>>& binders) {
  if (a.op() != b.op()) return false;
  switch (a.op()) {
    case Op::Top:
    case Op::Bottom:
      return true;
    case Op::Atom: {
      for (auto it = binders.rbegin(); it != binders.rend(); ++it) {
        bool ha = it->first == a.var();
        bool hb = it->second == b.var();
        if (ha || hb) return ha && hb;
      }
      return a.var() == b.var();
    }
    case Op::Not:
    case Op::Dia:
      return alpha_rec(a.child(), b.child(), binders);
    case Op::Or:
      return alpha_rec(a.lhs(), b.lhs(), binders) && alpha_rec(a.rhs(), b.rhs(), binders);
    case Op::Exists: {
      binders.emplace_back(a.var(), b.var());
      bool ok = alpha_rec(a.child(), b.child(), binders);
      binders.pop_back();
      return ok;
    }
  }
  return false;
}
}  // namespace

bool alpha_equivalent(const Formula& a, const Formula& b) {
  std::vector<std::pair<Var, Var>> binders;
  return alpha_rec(a, b, binders);
}

Formula dia_iter(int n, const Formula& f) {
  Formula out = f;
  for (int i = 0; i < n; ++i) out = Formula::dia(out);
  return out;
}

Formula dia_le(int n, const Formula& f) {
  Formula out = f;
  for (int i = 1; i <= n; ++i) out = Formula::disj(out, dia_iter(i, f));
  return out;
}

Formula box_iter(int n, const Formula& f) {
  Formula out = f;
  for (int i = 0; i < n; ++i) out = Formula::box(out);
  return out;
}

// Dual of dia_le: box_le(0, f) = f, box_le(n+1, f) = box_le(n, f) & box_iter(n+1, f).
Formula box_le(int n, const Formula& f) {
  Formula out = f;
  for (int i = 1; i <= n; ++i) out = Formula::conj(out, box_iter(i, f));
  return out;
}

Formula big_conj(const std::vector<Formula>& fs) {
  if (fs.empty()) return Formula::top();
  Formula out = fs.front();
  for (std::size_t i = 1; i < fs.size(); ++i) out = Formula::conj(out, fs[i]);
  return out;
}

Formula big_disj(const std::vector<Formula>& fs) {
  if (fs.empty()) return Formula::bottom();
  Formula out = fs.front();
  for (std::size_t i = 1; i < fs.size(); ++i) out = Formula::disj(out, fs[i]);
  return out;
}

std::vector<Formula> atoms_over(const std::vector<Var>& vars) {
  const std::size_t k = vars.size();
  std::vector<Formula> out;
  out.reserve(std::size_t{1} << k);
  for (std::size_t a = 0; a < (std::size_t{1} << k); ++a) {
    std::vector<Formula> lits;
    lits.reserve(k);
    for (std::size_t i = 0; i < k; ++i) {
      bool negative = (a >> (k - 1 - i)) & 1u;
      Formula lit = Formula::atom(vars[i]);
      lits.push_back(negative ? Formula::negate(lit) : lit);
    }
    out.push_back(big_conj(lits));
  }
  return out;
}

Substitution Substitution::single(Var p, Formula f) {
  Substitution s;
  s.set(p, std::move(f));
  return s;
}

Substitution& Substitution::set(Var p, Formula f) {
  map_.insert_or_assign(p, std::move(f));
  return *this;
}

Formula Substitution::operator()(Var p) const {
  auto it = map_.find(p);
  return it == map_.end() ? Formula::atom(p) : it->second;
}

Formula substitute(const Substitution& sigma, const Formula& f) {
  switch (f.op()) {
    case Op::Top:
    case Op::Bottom:
      return f;
    case Op::Atom:
      return sigma(f.var());
    case Op::Not:
      return Formula::negate(substitute(sigma, f.child()));
    case Op::Dia:
      return Formula::dia(substitute(sigma, f.child()));
    case Op::Or:
      return Formula::disj(substitute(sigma, f.lhs()), substitute(sigma, f.rhs()));
    case Op::Exists: {
      const Var p = f.var();
      bool clash = false;
      std::set<Var> used = used_vars(f);
      for (Var r : f.free_vars()) {
        Formula image = sigma(r);
        const auto& fv = image.free_vars();
        if (std::binary_search(fv.begin(), fv.end(), p)) clash = true;
        auto u = used_vars(image);
        used.insert(u.begin(), u.end());
      }
      const Var q = clash ? first_unused(used) : p;
      Substitution inner = sigma;
      inner.set(p, Formula::atom(q));
      return Formula::exists(q, substitute(inner, f.child()));
    }
  }
  return f;
}

}  // namespace pqml
