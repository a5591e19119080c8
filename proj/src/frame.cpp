#include "pqml/frame.hpp"

#include <algorithm>

#include "pqml/errors.hpp"
#include "pqml/kernels.hpp"

namespace pqml {
namespace {

std::vector<std::string> default_names(std::size_t n) {
  std::vector<std::string> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) out.push_back(std::to_string(i));
  return out;
}

std::vector<std::uint64_t> rows_from_edges(std::size_t n, const std::vector<Edge>& edges) {
  if (n > kMaxWorlds) throw FrameError("frames are limited to 64 worlds");
  std::vector<std::uint64_t> rows(n, 0);
  for (auto [a, b] : edges) {
    if (a >= n || b >= n) throw FrameError("relation pair outside the world set");
    rows[a] |= std::uint64_t{1} << b;
  }
  return rows;
}

}  // namespace

KripkeFrame::KripkeFrame(std::size_t n, const std::vector<Edge>& edges)
    : KripkeFrame(default_names(n), rows_from_edges(n, edges), 0) {}

KripkeFrame::KripkeFrame(std::vector<std::string> names, const std::vector<Edge>& edges)
    : KripkeFrame(names, rows_from_edges(names.size(), edges), 0) {}

KripkeFrame KripkeFrame::from_rows(std::vector<std::string> names, std::vector<std::uint64_t> rows) {
  if (rows.size() != names.size()) throw FrameError("row count does not match world count");
  return KripkeFrame(std::move(names), std::move(rows), 0);
}

KripkeFrame::KripkeFrame(std::vector<std::string> names, std::vector<std::uint64_t> rows, int)
    : names_(std::move(names)), rows_(std::move(rows)) {
  if (names_.empty()) throw FrameError("a frame needs at least one world");
  if (names_.size() > kMaxWorlds) throw FrameError("frames are limited to 64 worlds");
  auto sorted = names_;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
    throw FrameError("world names must be unique");
  const std::uint64_t u = universe().bits();
  for (auto r : rows_)
    if (r & ~u) throw FrameError("relation pair outside the world set");
  build_columns();
}

void KripkeFrame::build_columns() {
  cols_.assign(size(), 0);
  for (std::size_t w = 0; w < size(); ++w)
    for (std::uint64_t r = rows_[w]; r != 0; r &= r - 1)
      cols_[static_cast<std::size_t>(std::countr_zero(r))] |= std::uint64_t{1} << w;
}

std::optional<std::size_t> KripkeFrame::find(std::string_view name) const {
  for (std::size_t i = 0; i < names_.size(); ++i)
    if (names_[i] == name) return i;
  return std::nullopt;
}

WorldSet KripkeFrame::successors_of_set(WorldSet x) const { return WorldSet(kernels::image(rows_, x.bits())); }

WorldSet KripkeFrame::m_diamond(WorldSet x) const { return WorldSet(kernels::preimage(rows_, x.bits())); }

std::vector<Edge> KripkeFrame::edges() const {
  std::vector<Edge> out;
  for (std::size_t w = 0; w < size(); ++w) successors(w).for_each([&](std::size_t u) { out.emplace_back(w, u); });
  return out;
}

AdmissibleFamily AdmissibleFamily::powerset(std::size_t n) {
  AdmissibleFamily f;
  f.n_ = n;
  f.powerset_ = true;
  return f;
}

AdmissibleFamily AdmissibleFamily::of(std::size_t n, std::vector<WorldSet> sets) {
  if (sets.empty()) throw FrameError("admissible family must be non-empty");
  const WorldSet u = WorldSet::full(n);
  for (WorldSet x : sets)
    if (!x.subset_of(u)) throw FrameError("admissible set outside the world set");
  std::sort(sets.begin(), sets.end());
  sets.erase(std::unique(sets.begin(), sets.end()), sets.end());
  AdmissibleFamily f;
  f.n_ = n;
  f.powerset_ = false;
  f.sets_ = std::move(sets);
  f.index_.insert(f.sets_.begin(), f.sets_.end());
  return f;
}

bool AdmissibleFamily::contains(WorldSet x) const {
  if (powerset_) return x.subset_of(WorldSet::full(n_));
  return index_.count(x) != 0;
}

std::uint64_t AdmissibleFamily::size() const {
  if (powerset_) return n_ >= 64 ? ~std::uint64_t{0} : std::uint64_t{1} << n_;
  return sets_.size();
}

const std::vector<WorldSet>& AdmissibleFamily::sets() const {
  if (powerset_) throw FrameError("the powerset family is not materialized");
  return sets_;
}

std::vector<WorldSet> AdmissibleFamily::materialize() const {
  if (!powerset_) return sets_;
  if (n_ > 24) throw GuardrailError("refusing to materialize a powerset over more than 24 worlds");
  std::vector<WorldSet> out;
  out.reserve(std::size_t{1} << n_);
  for_each([&](WorldSet x) { out.push_back(x); });
  return out;
}

GeneralFrame::GeneralFrame(KripkeFrame base, AdmissibleFamily family)
    : base_(std::move(base)), family_(std::move(family)), certified_(family_.is_powerset()) {
  if (family_.world_count() != base_.size()) throw FrameError("admissible family built for a different world count");
}

GeneralFrame GeneralFrame::full(KripkeFrame base) {
  const std::size_t n = base.size();
  return GeneralFrame(std::move(base), AdmissibleFamily::powerset(n));
}

GeneralFrame GeneralFrame::certified(KripkeFrame base, AdmissibleFamily family) {
  GeneralFrame g(std::move(base), std::move(family));
  if (!check_closure(g.base_, g.family_).closed())
    throw FrameError("admissible family is not closed under complement, union and m_dia");
  g.certified_ = true;
  return g;
}

Model::Model(GeneralFrame frame, Valuation valuation) : frame_(std::move(frame)), valuation_(std::move(valuation)) {
  for (const auto& [p, x] : valuation_.entries())
    if (!frame_.admissible().contains(x)) throw FrameError("valuation of " + p.name() + " is not admissible");
}

namespace {

// Partition of the universe generated by `gens`: the atoms of the field of sets.
std::vector<WorldSet> atoms_of(WorldSet universe, const std::vector<WorldSet>& gens) {
  std::vector<WorldSet> parts{universe};
  for (WorldSet g : gens) {
    std::vector<WorldSet> next;
    next.reserve(parts.size() * 2);
    for (WorldSet a : parts) {
      WorldSet in = a & g, out = a - g;
      if (!in.empty()) next.push_back(in);
      if (!out.empty()) next.push_back(out);
    }
    parts.swap(next);
  }
  return parts;
}

std::vector<WorldSet> all_unions(const std::vector<WorldSet>& atoms) {
  if (atoms.size() > 24) throw GuardrailError("field of sets has more than 2^24 members");
  std::vector<WorldSet> out;
  out.reserve(std::size_t{1} << atoms.size());
  for (std::uint64_t m = 0; m < (std::uint64_t{1} << atoms.size()); ++m) {
    WorldSet x;
    for (std::size_t i = 0; i < atoms.size(); ++i)
      if ((m >> i) & 1u) x |= atoms[i];
    out.push_back(x);
  }
  return out;
}

}  // namespace

ClosureReport check_closure(const KripkeFrame& frame, const AdmissibleFamily& family) {
  ClosureReport r;
  if (family.is_powerset()) return r;
  const auto& sets = family.sets();
  const WorldSet u = frame.universe();

  auto note = [](std::optional<WorldSet>& slot, WorldSet x) {
    if (!slot || x < *slot) slot = x;
  };

  for (WorldSet x : sets)
    if (!family.contains(x.complement_in(u))) note(r.boolean_witness, x.complement_in(u));
  if (!r.boolean_witness) {
    // Cheap test first: a family is Boolean-closed iff it equals the field its atoms generate.
    auto atoms = atoms_of(u, sets);
    bool closed = atoms.size() < 63 && (std::uint64_t{1} << atoms.size()) == sets.size();
    if (!closed)
      for (std::size_t i = 0; i < sets.size(); ++i)
        for (std::size_t j = i + 1; j < sets.size(); ++j)
          if (!family.contains(sets[i] | sets[j])) note(r.boolean_witness, sets[i] | sets[j]);
  }
  r.boolean_closed = !r.boolean_witness.has_value();

  for (WorldSet x : sets) {
    WorldSet m = frame.m_diamond(x);
    if (!family.contains(m)) note(r.mdia_witness, m);
  }
  r.mdia_closed = !r.mdia_witness.has_value();
  return r;
}

AdmissibleFamily close_family(const KripkeFrame& frame, const AdmissibleFamily& family) {
  if (family.is_powerset()) return family;
  const WorldSet u = frame.universe();
  std::vector<WorldSet> gens = family.sets();
  auto atoms = atoms_of(u, gens);
  // m_dia distributes over unions, so the field is m_dia-closed once the
  // image of every atom is a union of atoms.
  for (bool changed = true; changed;) {
    changed = false;
    for (WorldSet a : atoms) {
      WorldSet m = frame.m_diamond(a);
      bool aligned = std::all_of(atoms.begin(), atoms.end(), [&](WorldSet b) {
        WorldSet cut = b & m;
        return cut.empty() || cut == b;
      });
      if (!aligned) {
        gens.push_back(m);
        atoms = atoms_of(u, gens);
        changed = true;
        break;
      }
    }
  }
  if (atoms.size() == frame.size()) return AdmissibleFamily::powerset(frame.size());
  return AdmissibleFamily::of(frame.size(), all_unions(atoms));
}

bool is_quantifiable_finite(const GeneralFrame& g) { return check_closure(g.base(), g.admissible()).closed(); }

WorldSet reachable_within(const KripkeFrame& f, std::size_t w, std::size_t n) {
  WorldSet seen = WorldSet::singleton(w), frontier = seen;
  for (std::size_t step = 0; step < n && !frontier.empty(); ++step) {
    frontier = f.successors_of_set(frontier) - seen;
    seen |= frontier;
  }
  return seen;
}

WorldSet reachable(const KripkeFrame& f, std::size_t w) { return reachable_within(f, w, f.size()); }

WorldSet project(WorldSet x, const std::vector<std::size_t>& origin) {
  WorldSet out;
  for (std::size_t i = 0; i < origin.size(); ++i)
    if (x.contains(origin[i])) out = out.with(i);
  return out;
}

WorldSet embed(WorldSet x, const std::vector<std::size_t>& origin) {
  WorldSet out;
  x.for_each([&](std::size_t i) { out = out.with(origin.at(i)); });
  return out;
}

SubFrame restrict_frame(const GeneralFrame& g, WorldSet u) {
  if (u.empty()) throw FrameError("restriction to an empty world set");
  if (!u.subset_of(g.base().universe())) throw FrameError("restriction set outside the world set");
  std::vector<std::size_t> origin = u.members();
  std::vector<std::string> names;
  std::vector<std::uint64_t> rows;
  for (std::size_t w : origin) {
    names.push_back(g.base().name(w));
    rows.push_back(project(g.base().successors(w), origin).bits());
  }
  KripkeFrame base = KripkeFrame::from_rows(std::move(names), std::move(rows));
  const std::size_t n = origin.size();
  if (g.admissible().is_powerset()) return {GeneralFrame::full(std::move(base)), std::move(origin)};
  std::vector<WorldSet> sets;
  for (WorldSet x : g.admissible().sets()) sets.push_back(project(x, origin));
  return {GeneralFrame(std::move(base), AdmissibleFamily::of(n, std::move(sets))), std::move(origin)};
}

SubFrame generated_subframe(const GeneralFrame& g, std::size_t w) {
  if (w >= g.size()) throw FrameError("world index out of range");
  return restrict_frame(g, reachable(g.base(), w));
}

SubModel truncated_submodel(const Model& m, std::size_t w, std::size_t n) {
  if (w >= m.frame().size()) throw FrameError("world index out of range");
  SubFrame sub = restrict_frame(m.frame(), reachable_within(m.frame().base(), w, n));
  Valuation v;
  for (const auto& [p, x] : m.valuation().entries()) v.set(p, project(x, sub.origin));
  return {Model(std::move(sub.frame), std::move(v)), std::move(sub.origin)};
}

}  // namespace pqml
