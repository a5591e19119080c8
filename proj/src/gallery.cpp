#include "pqml/gallery.hpp"

#include <algorithm>
#include <charconv>

#include "pqml/errors.hpp"
#include "pqml/semantics.hpp"

namespace pqml {

namespace gallery {

namespace {

void need(bool ok, const char* what) {
  if (!ok) throw PreconditionError(what);
}

std::vector<std::string> numbered(const std::string& prefix, std::size_t n) {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < n; ++i) out.push_back(prefix + std::to_string(i));
  return out;
}

}  // namespace

KripkeFrame cyclic(std::size_t n) {
  need(n >= 1 && n <= kMaxWorlds, "cyclic frame needs 1..64 worlds");
  std::vector<Edge> e;
  for (std::size_t i = 0; i < n; ++i) e.push_back({i, (i + 1) % n});
  return KripkeFrame(n, e);
}

KripkeFrame clique(std::size_t n) {
  need(n >= 1 && n <= kMaxWorlds, "clique needs 1..64 worlds");
  std::vector<Edge> e;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) e.push_back({i, j});
  return KripkeFrame(n, e);
}

KripkeFrame identity(std::size_t n) {
  need(n >= 1 && n <= kMaxWorlds, "identity frame needs 1..64 worlds");
  std::vector<Edge> e;
  for (std::size_t i = 0; i < n; ++i) e.push_back({i, i});
  return KripkeFrame(n, e);
}

KripkeFrame chain(std::size_t n) {
  need(n >= 1 && n <= kMaxWorlds, "chain needs 1..64 worlds");
  std::vector<Edge> e;
  for (std::size_t i = 0; i + 1 < n; ++i) e.push_back({i, i + 1});
  return KripkeFrame(n, e);
}

KripkeFrame d45_point(std::size_t k) {
  need(k >= 1 && k < kMaxWorlds, "d45 point needs a clique of 1..63 worlds");
  std::vector<std::string> names{"r"};
  for (auto& s : numbered("c", k)) names.push_back(s);
  std::vector<Edge> e;
  for (std::size_t i = 0; i <= k; ++i)
    for (std::size_t j = 1; j <= k; ++j) e.push_back({i, j});
  return KripkeFrame(names, e);
}

KripkeFrame k5_frame(std::size_t u, std::size_t rest) {
  need(u >= 1, "k5 frame needs |U| >= 1");
  need(1 + u + rest <= kMaxWorlds, "k5 frame too large");
  std::vector<std::string> names{"r"};
  for (auto& s : numbered("u", u)) names.push_back(s);
  for (auto& s : numbered("x", rest)) names.push_back(s);
  const std::size_t w = u + rest;
  std::vector<Edge> e;
  for (std::size_t j = 1; j <= u; ++j) e.push_back({0, j});
  for (std::size_t i = 1; i <= w; ++i)
    for (std::size_t j = 1; j <= w; ++j) e.push_back({i, j});
  return KripkeFrame(names, e);
}

KripkeFrame div4_frame(std::size_t b, std::size_t a, std::size_t c_rest) {
  need(a >= 1 && b >= 1, "div4 frame needs |A| >= 1 and |B| >= 1");
  need(1 + a + b + c_rest <= kMaxWorlds, "div4 frame too large");
  std::vector<std::string> names{"r"};
  for (auto& s : numbered("a", a)) names.push_back(s);
  for (auto& s : numbered("b", b)) names.push_back(s);
  for (auto& s : numbered("c", c_rest)) names.push_back(s);
  const std::size_t a0 = 1, b0 = 1 + a, c_end = 1 + a + b + c_rest;
  std::vector<Edge> e;
  for (std::size_t i = a0; i < b0; ++i) e.push_back({0, i});
  for (std::size_t i = a0; i < b0; ++i)
    for (std::size_t j = b0; j < b0 + b; ++j) e.push_back({i, j});
  for (std::size_t i = b0; i < c_end; ++i)
    for (std::size_t j = b0; j < c_end; ++j) e.push_back({i, j});
  return KripkeFrame(names, e);
}

KripkeFrame euclid_window(std::size_t n) {
  need(n + 2 <= kMaxWorlds, "euclid window too large");
  std::vector<std::string> names = numbered("", n + 1);
  names.push_back("w");
  std::vector<Edge> e;
  for (std::size_t i = 0; i <= n; ++i)
    for (std::size_t j = 0; j <= n; ++j) e.push_back({i, j});
  for (std::size_t j = 0; j <= n; j += 2) e.push_back({n + 1, j});
  return KripkeFrame(names, e);
}

KripkeFrame recession_window(int lo, int hi) {
  need(lo <= hi && static_cast<long>(hi) - lo < static_cast<long>(kMaxWorlds), "recession window needs lo <= hi, at most 64 worlds");
  const std::size_t n = static_cast<std::size_t>(hi - lo + 1);
  std::vector<std::string> names;
  for (int x = lo; x <= hi; ++x) names.push_back(std::to_string(x));
  std::vector<Edge> e;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (j + 1 >= i) e.push_back({i, j});
  return KripkeFrame(names, e);
}

}  // namespace gallery

namespace {

std::vector<std::string> split(const std::string& s) {
  std::vector<std::string> out;
  std::size_t start = 0;
  for (;;) {
    const std::size_t pos = s.find(':', start);
    out.push_back(s.substr(start, pos - start));
    if (pos == std::string::npos) return out;
    start = pos + 1;
  }
}

long to_int(const std::string& s) {
  long v = 0;
  const char* end = s.data() + s.size();
  auto [ptr, ec] = std::from_chars(s.data(), end, v);
  if (ec != std::errc{} || ptr != end) throw PreconditionError("bad number '" + s + "' in gallery id");
  return v;
}

std::size_t to_size(const std::string& s) {
  const long v = to_int(s);
  if (v < 0) throw PreconditionError("negative size in gallery id");
  return static_cast<std::size_t>(v);
}

}  // namespace

GalleryEntry gallery_entry(const std::string& id) {
  const auto parts = split(id);
  const std::string& kind = parts[0];
  auto arity = [&](std::size_t k) {
    if (parts.size() != k + 1)
      throw PreconditionError("gallery id '" + id + "' expects " + std::to_string(k) + " parameter(s)");
  };
  auto full = [&](KripkeFrame f, std::string note) {
    return GalleryEntry{id, GeneralFrame::full(std::move(f)), std::move(note)};
  };
  if (kind == "cyclic") {
    arity(1);
    return full(gallery::cyclic(to_size(parts[1])), "cycle i -> i+1 mod n; every world is its own duplicate class");
  }
  if (kind == "clique") {
    arity(1);
    return full(gallery::clique(to_size(parts[1])), "universal relation; one duplicate class");
  }
  if (kind == "identity") {
    arity(1);
    return full(gallery::identity(to_size(parts[1])), "reflexive loops only");
  }
  if (kind == "chain") {
    arity(1);
    return full(gallery::chain(to_size(parts[1])), "finite strict successor chain");
  }
  if (kind == "d45") {
    arity(1);
    return full(gallery::d45_point(to_size(parts[1])), "point seeing a clique; a rooted KD45 frame with two classes");
  }
  if (kind == "k5") {
    arity(2);
    return full(gallery::k5_frame(to_size(parts[1]), to_size(parts[2])),
                "rooted Euclidean frame: classes {r}, U, W minus U");
  }
  if (kind == "div4") {
    arity(3);
    return full(gallery::div4_frame(to_size(parts[1]), to_size(parts[2]), to_size(parts[3])),
                "rooted frame validating [](<>p -> []<>p) and <><>p -> []<>p; classes {r}, A, B, C minus B");
  }
  if (kind == "euclid") {
    arity(1);
    return full(gallery::euclid_window(to_size(parts[1])),
                "finite window of the naturals plus w; full powerset family. The infinite frame with the "
                "finite/cofinite family is not represented");
  }
  if (kind == "recession") {
    arity(2);
    return full(gallery::recession_window(static_cast<int>(to_int(parts[1])), static_cast<int>(to_int(parts[2]))),
                "finite window of the integers with x R y iff y >= x - 1; full powerset family. The infinite "
                "frame and its family of eventually settled sets are not represented");
  }
  throw PreconditionError("unknown gallery id '" + id + "'");
}

std::vector<std::string> gallery_ids() {
  return {"cyclic:4", "clique:3", "identity:3", "chain:3", "d45:3", "k5:1:2", "div4:1:1:1", "euclid:6", "recession:-3:3"};
}

ShiftReport shift_isomorphism_check(int lo, int hi, int d, int n, int m, const Formula& phi,
                                    const std::map<Var, std::vector<int>>& valuation, int height) {
  ShiftReport rep;
  if (d < 0 || height < 0) throw PreconditionError("depth and height must be non-negative");
  if (phi.modal_depth() > d) throw PreconditionError("formula modal depth exceeds the truncation depth");
  auto inside = [&](int c) { return c - d >= lo && c + height <= hi; };
  if (!inside(n) || !inside(m)) {
    rep.window_too_small = true;
    rep.message = "window too small: band around " + std::to_string(inside(n) ? m : n) + " leaves [" +
                  std::to_string(lo) + ", " + std::to_string(hi) + "]";
    return rep;
  }

  const KripkeFrame window = gallery::recession_window(lo, hi);
  const GeneralFrame g = GeneralFrame::full(window);
  auto band = [&](int c) {
    return reachable_within(window, static_cast<std::size_t>(c - lo), static_cast<std::size_t>(d)) &
           WorldSet::full(static_cast<std::size_t>(c + height - lo + 1));
  };
  auto valuation_around = [&](int shift) {
    Valuation v;
    for (const auto& [p, xs] : valuation) {
      WorldSet s;
      for (int x : xs) {
        const int y = x + shift;
        if (y >= lo && y <= hi) s = s.with(static_cast<std::size_t>(y - lo));
      }
      v.set(p, s);
    }
    return v;
  };

  const int shift = m - n;
  const SubFrame bn = restrict_frame(g, band(n));
  const SubFrame bm = restrict_frame(g, band(m));
  const Valuation vn = valuation_around(0), vm = valuation_around(shift);
  auto local = [](const Valuation& v, const SubFrame& s) {
    Valuation out;
    for (const auto& [p, x] : v.entries()) out.set(p, project(x, s.origin));
    return out;
  };
  const Valuation ln = local(vn, bn), lm = local(vm, bm);

  rep.isomorphic = bn.frame.size() == bm.frame.size();
  if (rep.isomorphic) {
    // Both origins are increasing, so index i in one band maps to index i in the other.
    for (std::size_t i = 0; i < bn.origin.size() && rep.isomorphic; ++i)
      if (static_cast<long>(bm.origin[i]) - static_cast<long>(bn.origin[i]) != shift) rep.isomorphic = false;
    rep.isomorphic = rep.isomorphic && bn.frame.base().rows().size() == bm.frame.base().rows().size() &&
                     std::equal(bn.frame.base().rows().begin(), bn.frame.base().rows().end(),
                                bm.frame.base().rows().begin());
    for (const auto& [p, x] : ln.entries()) rep.isomorphic = rep.isomorphic && lm.at(p) == x;
  }

  const std::size_t at_n = static_cast<std::size_t>(
      std::find(bn.origin.begin(), bn.origin.end(), static_cast<std::size_t>(n - lo)) - bn.origin.begin());
  const std::size_t at_m = static_cast<std::size_t>(
      std::find(bm.origin.begin(), bm.origin.end(), static_cast<std::size_t>(m - lo)) - bm.origin.begin());
  Valuation en, em;
  for (Var p : phi.free_vars()) {
    en.set(p, ln.get(p).value_or(WorldSet{}));
    em.set(p, lm.get(p).value_or(WorldSet{}));
  }
  rep.truth_at_n = extension(phi, bn.frame, en).contains(at_n);
  rep.truth_at_m = extension(phi, bm.frame, em).contains(at_m);
  rep.passed = rep.isomorphic && rep.truth_at_n == rep.truth_at_m;
  rep.message = rep.passed ? "bands isomorphic under x -> x + " + std::to_string(shift) + "; truth values agree"
                           : (rep.isomorphic ? "truth values differ" : "bands are not isomorphic under the shift");
  return rep;
}

}  // namespace pqml
