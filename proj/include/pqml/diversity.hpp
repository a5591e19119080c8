#pragma once

// Duplicate worlds (w, u such that the transposition (w u) is an
// automorphism), their classes, and the quotient relation between classes.

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "pqml/frame.hpp"

namespace pqml {

/// Shape of R restricted to one duplicate class.
enum class LocalKind { Full, Empty, Coidentity, Identity };

std::string to_string(LocalKind k);

bool are_duplicates(const KripkeFrame& f, std::size_t w, std::size_t u);

struct DuplicateStructure {
  /// Classes ordered by least member, which is also the representative.
  std::vector<WorldSet> classes;
  std::vector<std::size_t> class_of;
  std::vector<LocalKind> kinds;
  /// quotient[i] has bit j set iff some member of class i sees some member
  /// of class j (i == j allowed).
  std::vector<std::uint64_t> quotient;

  std::size_t size() const { return classes.size(); }
  std::size_t representative(std::size_t c) const { return classes[c].first(); }
  bool quotient_related(std::size_t i, std::size_t j) const { return (quotient[i] >> j) & 1u; }
  /// Union of the classes i sees through the quotient, i excluded.
  WorldSet external_successors(std::size_t i) const;
};

/// Throws std::logic_error if the classes violate the all-or-nothing rule
/// or the four-kind classification.
DuplicateStructure duplicate_structure(const KripkeFrame& f);

std::size_t diversity(const KripkeFrame& f);
/// Maximum diversity over point-generated subframes.
std::size_t diversity_generated(const KripkeFrame& f);

/// m_dia(X) assembled class by class from the local kinds and the quotient.
WorldSet m_diamond_quotient(const DuplicateStructure& ds, const KripkeFrame& f, WorldSet x);

/// Quotient graph: one node per class labeled with its members and kind.
std::string quotient_to_dot(const DuplicateStructure& ds, const KripkeFrame& f);

}  // namespace pqml
