#pragma once

// Reference implementations for the test suites. Worlds are ints, sets are
// std::set<int>, quantifiers enumerate subsets by recursion. Nothing here
// touches WorldSet arithmetic, the kernels, or the library evaluator.

#include <cstdint>
#include <functional>
#include <map>
#include <set>
#include <stdexcept>
#include <utility>
#include <vector>

#include "pqml/formula.hpp"
#include "pqml/frame.hpp"

namespace oracle {

using Set = std::set<int>;

struct Frame {
  int n = 0;
  std::set<std::pair<int, int>> rel;
};

inline Frame from(const pqml::KripkeFrame& f) {
  Frame o;
  o.n = static_cast<int>(f.size());
  for (int a = 0; a < o.n; ++a)
    for (int b = 0; b < o.n; ++b)
      if (f.related(a, b)) o.rel.insert({a, b});
  return o;
}

inline Set to_set(pqml::WorldSet x, int n) {
  Set s;
  for (int w = 0; w < n; ++w)
    if (x.contains(w)) s.insert(w);
  return s;
}

inline Set universe(int n) {
  Set s;
  for (int w = 0; w < n; ++w) s.insert(w);
  return s;
}

inline std::vector<Set> all_subsets(int n) {
  std::vector<Set> out{{}};
  for (int w = 0; w < n; ++w) {
    std::size_t k = out.size();
    for (std::size_t i = 0; i < k; ++i) {
      Set s = out[i];
      s.insert(w);
      out.push_back(s);
    }
  }
  return out;
}

inline Set mdia(const Frame& f, const Set& x) {
  Set out;
  for (auto [a, b] : f.rel)
    if (x.count(b)) out.insert(a);
  return out;
}

using Env = std::map<std::uint32_t, Set>;

// `family` null means every subset of W.
inline Set eval(const pqml::Formula& phi, const Frame& f, const Env& env, const std::vector<Set>* family = nullptr) {
  using pqml::Op;
  switch (phi.op()) {
    case Op::Top: return universe(f.n);
    case Op::Bottom: return {};
    case Op::Atom: {
      auto it = env.find(phi.var().index);
      if (it == env.end()) throw std::runtime_error("oracle: unbound variable");
      return it->second;
    }
    case Op::Not: {
      Set inner = eval(phi.child(), f, env, family), out;
      for (int w = 0; w < f.n; ++w)
        if (!inner.count(w)) out.insert(w);
      return out;
    }
    case Op::Or: {
      Set a = eval(phi.lhs(), f, env, family);
      Set b = eval(phi.rhs(), f, env, family);
      a.insert(b.begin(), b.end());
      return a;
    }
    case Op::Dia: return mdia(f, eval(phi.child(), f, env, family));
    case Op::Exists: {
      Set out;
      auto visit = [&](const Set& x) {
        Env e = env;
        e[phi.var().index] = x;
        Set s = eval(phi.child(), f, e, family);
        out.insert(s.begin(), s.end());
      };
      if (family) {
        for (const Set& x : *family) visit(x);
      } else {
        for (const Set& x : all_subsets(f.n)) visit(x);
      }
      return out;
    }
  }
  throw std::logic_error("oracle: bad op");
}

inline bool valid(const pqml::Formula& phi, const Frame& f) {
  const auto& fv = phi.free_vars();
  auto subsets = all_subsets(f.n);
  std::function<bool(std::size_t, Env&)> rec = [&](std::size_t i, Env& env) {
    if (i == fv.size()) return eval(phi, f, env).size() == static_cast<std::size_t>(f.n);
    for (const Set& x : subsets) {
      env[fv[i].index] = x;
      if (!rec(i + 1, env)) return false;
    }
    return true;
  };
  Env env;
  return rec(0, env);
}

inline bool duplicates(const Frame& f, int w, int u) {
  auto swap = [&](int x) { return x == w ? u : x == u ? w : x; };
  std::set<std::pair<int, int>> img;
  for (auto [a, b] : f.rel) img.insert({swap(a), swap(b)});
  return img == f.rel;
}

inline int diversity(const Frame& f) {
  std::vector<int> rep(f.n, -1);
  int classes = 0;
  for (int w = 0; w < f.n; ++w) {
    if (rep[w] >= 0) continue;
    rep[w] = w;
    ++classes;
    for (int u = w + 1; u < f.n; ++u)
      if (rep[u] < 0 && duplicates(f, w, u)) rep[u] = w;
  }
  return classes;
}

}  // namespace oracle
