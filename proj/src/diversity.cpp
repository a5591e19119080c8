#include "pqml/diversity.hpp"

#include <sstream>

namespace pqml {

namespace {

std::uint64_t swap_bits(std::uint64_t m, std::size_t a, std::size_t b) {
  const std::uint64_t x = ((m >> a) ^ (m >> b)) & 1u;
  return m ^ ((x << a) | (x << b));
}

}  // namespace

std::string to_string(LocalKind k) {
  switch (k) {
    case LocalKind::Full:
      return "full";
    case LocalKind::Empty:
      return "empty";
    case LocalKind::Coidentity:
      return "coidentity";
    case LocalKind::Identity:
      return "identity";
  }
  return "?";
}

bool are_duplicates(const KripkeFrame& f, std::size_t w, std::size_t u) {
  if (w >= f.size() || u >= f.size()) throw FrameError("world index out of range");
  if (w == u) return true;
  auto rows = f.rows();
  for (std::size_t x = 0; x < f.size(); ++x) {
    const std::size_t px = x == w ? u : x == u ? w : x;
    if (swap_bits(rows[x], w, u) != rows[px]) return false;
  }
  return true;
}

WorldSet DuplicateStructure::external_successors(std::size_t i) const {
  WorldSet out;
  for (std::size_t j = 0; j < classes.size(); ++j)
    if (j != i && quotient_related(i, j)) out |= classes[j];
  return out;
}

DuplicateStructure duplicate_structure(const KripkeFrame& f) {
  const std::size_t n = f.size();
  DuplicateStructure ds;
  ds.class_of.assign(n, SIZE_MAX);
  for (std::size_t w = 0; w < n; ++w) {
    if (ds.class_of[w] != SIZE_MAX) continue;
    const std::size_t c = ds.classes.size();
    WorldSet cls = WorldSet::singleton(w);
    ds.class_of[w] = c;
    for (std::size_t u = w + 1; u < n; ++u)
      if (ds.class_of[u] == SIZE_MAX && are_duplicates(f, w, u)) {
        cls = cls.with(u);
        ds.class_of[u] = c;
      }
    ds.classes.push_back(cls);
  }

  const std::size_t k = ds.classes.size();
  ds.quotient.assign(k, 0);
  for (std::size_t i = 0; i < k; ++i) {
    const WorldSet di = ds.classes[i];
    WorldSet loops;
    bool all_off_diagonal = true;
    di.for_each([&](std::size_t w) {
      const WorldSet row = f.successors(w);
      if (row.contains(w)) loops = loops.with(w);
      const WorldSet in = row & di;
      if ((in | WorldSet::singleton(w)) != di) all_off_diagonal = false;
      for (std::size_t j = 0; j < k; ++j)
        if (row.intersects(ds.classes[j])) ds.quotient[i] |= std::uint64_t{1} << j;
    });
    for (std::size_t j = 0; j < k; ++j) {
      if (j == i || !ds.quotient_related(i, j)) continue;
      di.for_each([&](std::size_t w) {
        if (!ds.classes[j].subset_of(f.successors(w)))
          throw std::logic_error("duplicate classes violate the all-or-nothing rule");
      });
    }
    bool off_diagonal_edges = false;
    di.for_each([&](std::size_t w) {
      if ((f.successors(w) & di).without(w).count() > 0) off_diagonal_edges = true;
    });
    LocalKind kind;
    if (loops == di && all_off_diagonal)
      kind = LocalKind::Full;
    else if (loops.empty() && !off_diagonal_edges)
      kind = LocalKind::Empty;
    else if (loops.empty() && all_off_diagonal)
      kind = LocalKind::Coidentity;
    else if (loops == di && !off_diagonal_edges)
      kind = LocalKind::Identity;
    else
      throw std::logic_error("duplicate class has an impossible local relation");
    ds.kinds.push_back(kind);
  }
  return ds;
}

std::size_t diversity(const KripkeFrame& f) { return duplicate_structure(f).size(); }

std::size_t diversity_generated(const KripkeFrame& f) {
  const GeneralFrame g = GeneralFrame::full(f);
  std::size_t best = 0;
  for (std::size_t w = 0; w < f.size(); ++w)
    best = std::max(best, diversity(generated_subframe(g, w).frame.base()));
  return best;
}

WorldSet m_diamond_quotient(const DuplicateStructure& ds, const KripkeFrame& f, WorldSet x) {
  (void)f;
  WorldSet out;
  for (std::size_t i = 0; i < ds.size(); ++i) {
    const WorldSet d = ds.classes[i];
    const bool external = ds.external_successors(i).intersects(x);
    const WorldSet here = x & d;
    switch (ds.kinds[i]) {
      case LocalKind::Full:
      case LocalKind::Empty: {
        bool hit = external;
        if (ds.quotient_related(i, i) && !here.empty()) hit = true;
        if (hit) out |= d;
        break;
      }
      case LocalKind::Coidentity:
        if (external || here.count() >= 2)
          out |= d;
        else if (here.count() == 1)
          out |= d - x;
        break;
      case LocalKind::Identity:
        out |= external ? d : here;
        break;
    }
  }
  return out;
}

std::string quotient_to_dot(const DuplicateStructure& ds, const KripkeFrame& f) {
  std::ostringstream os;
  os << "digraph quotient {\n";
  for (std::size_t i = 0; i < ds.size(); ++i) {
    os << "  c" << i << " [label=\"{";
    bool first = true;
    ds.classes[i].for_each([&](std::size_t w) {
      os << (first ? "" : ",") << f.name(w);
      first = false;
    });
    os << "}\\n" << to_string(ds.kinds[i]) << "\"];\n";
  }
  for (std::size_t i = 0; i < ds.size(); ++i)
    for (std::size_t j = 0; j < ds.size(); ++j)
      if (ds.quotient_related(i, j)) os << "  c" << i << " -> c" << j << ";\n";
  os << "}\n";
  return os.str();
}

}  // namespace pqml
