#pragma once

#include <algorithm>
#include <compare>
#include <initializer_list>
#include <optional>
#include <utility>
#include <vector>

#include "pqml/errors.hpp"
#include "pqml/formula.hpp"
#include "pqml/world_set.hpp"

namespace pqml {

/// Finite partial map from variables to world sets, kept sorted by variable.
class Valuation {
 public:
  using Entry = std::pair<Var, WorldSet>;

  Valuation() = default;
  Valuation(std::initializer_list<Entry> init) {
    for (const auto& [p, x] : init) set(p, x);
  }

  /// v[X/p].
  Valuation with(Var p, WorldSet x) const {
    Valuation out = *this;
    out.set(p, x);
    return out;
  }

  void set(Var p, WorldSet x) {
    auto it = std::lower_bound(entries_.begin(), entries_.end(), p,
                               [](const Entry& e, Var v) { return e.first < v; });
    if (it != entries_.end() && it->first == p)
      it->second = x;
    else
      entries_.insert(it, {p, x});
  }

  std::optional<WorldSet> get(Var p) const {
    auto it = std::lower_bound(entries_.begin(), entries_.end(), p,
                               [](const Entry& e, Var v) { return e.first < v; });
    if (it != entries_.end() && it->first == p) return it->second;
    return std::nullopt;
  }

  WorldSet at(Var p) const {
    if (auto x = get(p)) return *x;
    throw EvalError("unbound variable " + p.name());
  }

  bool binds(Var p) const { return get(p).has_value(); }

  /// Restriction to the given variables; unbound ones are skipped.
  Valuation restricted(const std::vector<Var>& vars) const {
    Valuation out;
    for (Var p : vars)
      if (auto x = get(p)) out.entries_.push_back({p, *x});
    std::sort(out.entries_.begin(), out.entries_.end());
    return out;
  }

  std::vector<Var> domain() const {
    std::vector<Var> out;
    for (const auto& e : entries_) out.push_back(e.first);
    return out;
  }

  const std::vector<Entry>& entries() const { return entries_; }
  bool empty() const { return entries_.empty(); }
  std::size_t size() const { return entries_.size(); }

  friend bool operator==(const Valuation&, const Valuation&) = default;
  friend auto operator<=>(const Valuation& a, const Valuation& b) { return a.entries_ <=> b.entries_; }

 private:
  std::vector<Entry> entries_;
};

}  // namespace pqml
