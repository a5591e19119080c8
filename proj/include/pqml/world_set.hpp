#pragma once

#include <bit>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <vector>

namespace pqml {

/// Frames hold at most this many worlds; a world set is one machine word.
inline constexpr std::size_t kMaxWorlds = 64;

/// A subset of a frame's worlds, one bit per world index.
///
/// A WorldSet does not know its universe; operations that need it
/// (complement) take the universe explicitly.
class WorldSet {
 public:
  constexpr WorldSet() = default;
  constexpr explicit WorldSet(std::uint64_t bits) : bits_(bits) {}

  static constexpr WorldSet singleton(std::size_t w) { return WorldSet(std::uint64_t{1} << w); }
  /// The set {0, ..., n-1}.
  static constexpr WorldSet full(std::size_t n) {
    return WorldSet(n >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n) - 1);
  }

  constexpr std::uint64_t bits() const { return bits_; }
  constexpr bool empty() const { return bits_ == 0; }
  constexpr std::size_t count() const { return static_cast<std::size_t>(std::popcount(bits_)); }
  constexpr bool contains(std::size_t w) const { return (bits_ >> w) & 1u; }
  constexpr bool subset_of(WorldSet o) const { return (bits_ & ~o.bits_) == 0; }
  constexpr bool intersects(WorldSet o) const { return (bits_ & o.bits_) != 0; }
  /// Least member; undefined on the empty set.
  constexpr std::size_t first() const { return static_cast<std::size_t>(std::countr_zero(bits_)); }

  constexpr WorldSet complement_in(WorldSet universe) const { return WorldSet(universe.bits_ & ~bits_); }
  constexpr WorldSet with(std::size_t w) const { return WorldSet(bits_ | (std::uint64_t{1} << w)); }
  constexpr WorldSet without(std::size_t w) const { return WorldSet(bits_ & ~(std::uint64_t{1} << w)); }

  /// The `k` least members (all of them when k >= count()).
  constexpr WorldSet least(std::size_t k) const {
    std::uint64_t rest = bits_, out = 0;
    for (; k > 0 && rest != 0; --k) {
      std::uint64_t low = rest & (~rest + 1);
      out |= low;
      rest ^= low;
    }
    return WorldSet(out);
  }

  template <class F>
  constexpr void for_each(F&& f) const {
    for (std::uint64_t rest = bits_; rest != 0; rest &= rest - 1)
      f(static_cast<std::size_t>(std::countr_zero(rest)));
  }

  std::vector<std::size_t> members() const {
    std::vector<std::size_t> out;
    out.reserve(count());
    for_each([&](std::size_t w) { out.push_back(w); });
    return out;
  }

  friend constexpr WorldSet operator|(WorldSet a, WorldSet b) { return WorldSet(a.bits_ | b.bits_); }
  friend constexpr WorldSet operator&(WorldSet a, WorldSet b) { return WorldSet(a.bits_ & b.bits_); }
  friend constexpr WorldSet operator-(WorldSet a, WorldSet b) { return WorldSet(a.bits_ & ~b.bits_); }
  friend constexpr WorldSet operator^(WorldSet a, WorldSet b) { return WorldSet(a.bits_ ^ b.bits_); }
  constexpr WorldSet& operator|=(WorldSet o) { bits_ |= o.bits_; return *this; }
  constexpr WorldSet& operator&=(WorldSet o) { bits_ &= o.bits_; return *this; }

  // Canonical order is the order of the bit pattern read as an integer.
  friend constexpr bool operator==(WorldSet, WorldSet) = default;
  friend constexpr auto operator<=>(WorldSet a, WorldSet b) { return a.bits_ <=> b.bits_; }

 private:
  std::uint64_t bits_ = 0;
};

struct WorldSetHash {
  std::size_t operator()(WorldSet s) const noexcept {
    std::uint64_t x = s.bits() * 0x9E3779B97F4A7C15ull;
    return static_cast<std::size_t>(x ^ (x >> 29));
  }
};

}  // namespace pqml
