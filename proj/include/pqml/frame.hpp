#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_set>
#include <utility>
#include <vector>

#include "pqml/valuation.hpp"
#include "pqml/world_set.hpp"

namespace pqml {

using Edge = std::pair<std::size_t, std::size_t>;

/// Finite Kripke frame (W, R) with named worlds 0..|W|-1.
class KripkeFrame {
 public:
  /// Worlds named "0".."n-1".
  KripkeFrame(std::size_t n, const std::vector<Edge>& edges);
  KripkeFrame(std::vector<std::string> names, const std::vector<Edge>& edges);
  static KripkeFrame from_rows(std::vector<std::string> names, std::vector<std::uint64_t> rows);

  std::size_t size() const { return names_.size(); }
  WorldSet universe() const { return WorldSet::full(size()); }
  const std::vector<std::string>& names() const { return names_; }
  const std::string& name(std::size_t w) const { return names_.at(w); }
  std::optional<std::size_t> find(std::string_view name) const;

  bool related(std::size_t w, std::size_t u) const { return (rows_[w] >> u) & 1u; }
  std::span<const std::uint64_t> rows() const { return rows_; }
  std::span<const std::uint64_t> columns() const { return cols_; }

  /// R[w].
  WorldSet successors(std::size_t w) const { return WorldSet(rows_.at(w)); }
  /// R[X], the union of R[w] over w in X.
  WorldSet successors_of_set(WorldSet x) const;
  /// m_dia(X) = {w | some u in X has wRu}.
  WorldSet m_diamond(WorldSet x) const;

  /// Edges in (source, target) index order.
  std::vector<Edge> edges() const;

  friend bool operator==(const KripkeFrame&, const KripkeFrame&) = default;

 private:
  KripkeFrame(std::vector<std::string> names, std::vector<std::uint64_t> rows, int);
  void build_columns();

  std::vector<std::string> names_;
  std::vector<std::uint64_t> rows_;
  std::vector<std::uint64_t> cols_;
};

/// Non-empty family B of admissible world sets. The full powerset is a
/// distinguished flag and is never materialized.
class AdmissibleFamily {
 public:
  static AdmissibleFamily powerset(std::size_t n);
  /// Explicit family; sorted and deduplicated. Throws FrameError when empty
  /// or when a set leaves the universe.
  static AdmissibleFamily of(std::size_t n, std::vector<WorldSet> sets);

  bool is_powerset() const { return powerset_; }
  std::size_t world_count() const { return n_; }
  bool contains(WorldSet x) const;
  /// Number of members (2^n for the powerset).
  std::uint64_t size() const;
  /// Explicit members in canonical order. Throws for the powerset.
  const std::vector<WorldSet>& sets() const;
  /// Explicit members, materializing the powerset (refused above 24 worlds).
  std::vector<WorldSet> materialize() const;

  template <class F>
  void for_each(F&& f) const {
    if (powerset_) {
      const std::uint64_t end = std::uint64_t{1} << n_;
      for (std::uint64_t m = 0; m < end; ++m) f(WorldSet(m));
    } else {
      for (WorldSet x : sets_) f(x);
    }
  }

  friend bool operator==(const AdmissibleFamily& a, const AdmissibleFamily& b) {
    return a.n_ == b.n_ && a.powerset_ == b.powerset_ && a.sets_ == b.sets_;
  }

 private:
  std::size_t n_ = 0;
  bool powerset_ = true;
  std::vector<WorldSet> sets_;
  std::unordered_set<WorldSet, WorldSetHash> index_;
};

/// Frame with a propositional domain. `closure_certified()` is true only
/// when the family was machine-checked closed under complement, union and
/// m_dia (or is the powerset).
class GeneralFrame {
 public:
  /// Uncertified (pd-frame); certified automatically for the powerset.
  GeneralFrame(KripkeFrame base, AdmissibleFamily family);
  static GeneralFrame full(KripkeFrame base);
  /// Throws FrameError unless the family passes check_closure.
  static GeneralFrame certified(KripkeFrame base, AdmissibleFamily family);

  const KripkeFrame& base() const { return base_; }
  const AdmissibleFamily& admissible() const { return family_; }
  bool closure_certified() const { return certified_; }
  std::size_t size() const { return base_.size(); }

  friend bool operator==(const GeneralFrame&, const GeneralFrame&) = default;

 private:
  KripkeFrame base_;
  AdmissibleFamily family_;
  bool certified_ = false;
};

/// General frame plus a valuation whose values are admissible.
class Model {
 public:
  /// Throws FrameError if a valuation value is outside the family.
  Model(GeneralFrame frame, Valuation valuation);
  const GeneralFrame& frame() const { return frame_; }
  const Valuation& valuation() const { return valuation_; }

 private:
  GeneralFrame frame_;
  Valuation valuation_;
};

struct ClosureReport {
  bool boolean_closed = true;
  bool mdia_closed = true;
  /// Missing complement or union, first in canonical order.
  std::optional<WorldSet> boolean_witness;
  /// Missing m_dia image, first in canonical order.
  std::optional<WorldSet> mdia_witness;

  bool closed() const { return boolean_closed && mdia_closed; }
};

ClosureReport check_closure(const KripkeFrame& frame, const AdmissibleFamily& family);
/// Least family containing `family` closed under complement, union and m_dia.
AdmissibleFamily close_family(const KripkeFrame& frame, const AdmissibleFamily& family);
/// For finite frames: closure under the Boolean operations and m_dia.
bool is_quantifiable_finite(const GeneralFrame& g);

/// Restriction of a frame to a subset of its worlds, with the map back.
struct SubFrame {
  GeneralFrame frame;
  /// origin[i] is the index in the parent frame of new world i.
  std::vector<std::size_t> origin;
};

struct SubModel {
  Model model;
  std::vector<std::size_t> origin;
};

/// Worlds reachable from w in at most n steps, w included.
WorldSet reachable_within(const KripkeFrame& f, std::size_t w, std::size_t n);
/// R*[w].
WorldSet reachable(const KripkeFrame& f, std::size_t w);

/// Renumbers the members of `x` through `origin` (parent index -> new index).
WorldSet project(WorldSet x, const std::vector<std::size_t>& origin);
/// Inverse of project: new indices back to parent indices.
WorldSet embed(WorldSet x, const std::vector<std::size_t>& origin);

/// F|_U: relation and family restricted pointwise. U must be non-empty.
SubFrame restrict_frame(const GeneralFrame& g, WorldSet u);
SubFrame generated_subframe(const GeneralFrame& g, std::size_t w);
/// M_{w,n}: restriction to R^{<=n}[w], valuation restricted pointwise.
SubModel truncated_submodel(const Model& m, std::size_t w, std::size_t n);

}  // namespace pqml
