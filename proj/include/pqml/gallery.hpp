#pragma once

// Named finite frames. Infinite structures appear as finite windows and
// their notes say so.

#include <map>
#include <string>
#include <vector>

#include "pqml/formula.hpp"
#include "pqml/frame.hpp"

namespace pqml {

struct GalleryEntry {
  std::string id;
  GeneralFrame frame;
  std::string note;
};

namespace gallery {

/// i -> i+1 mod n.
KripkeFrame cyclic(std::size_t n);
/// W x W.
KripkeFrame clique(std::size_t n);
/// Loops only.
KripkeFrame identity(std::size_t n);
/// 0 -> 1 -> ... -> n-1.
KripkeFrame chain(std::size_t n);
/// Root r seeing every world of a k-clique c0..c(k-1).
KripkeFrame d45_point(std::size_t k);
/// Root r, worlds u* (set U) and x* (W minus U): r sees U, W x W inside W.
KripkeFrame k5_frame(std::size_t u, std::size_t rest);
/// Root r, A = a*, B = b*, C = B plus c*: r sees A, A sees B, C x C.
KripkeFrame div4_frame(std::size_t b, std::size_t a, std::size_t c_rest);
/// Worlds 0..n and w: {0..n}^2 plus w seeing the even numbers.
KripkeFrame euclid_window(std::size_t n);
/// Worlds lo..hi named by integer; x sees y iff y >= x - 1.
KripkeFrame recession_window(int lo, int hi);

}  // namespace gallery

/// Parses ids such as "cyclic:5", "k5:1:2", "div4:1:1:1", "recession:-3:3".
/// Throws PreconditionError on unknown ids or bad sizes.
GalleryEntry gallery_entry(const std::string& id);
/// One representative id per constructor.
std::vector<std::string> gallery_ids();

struct ShiftReport {
  bool passed = false;
  bool window_too_small = false;
  bool isomorphic = false;
  bool truth_at_n = false;
  bool truth_at_m = false;
  std::string message;
};

/// On recession_window(lo, hi), compares the band [n-d, n+height] around n
/// with the band [m-d, m+height] around m. The bands are the depth-d
/// truncations from n and m cut off above at a fixed height. Checks that
/// x -> x + (m - n) is an isomorphism of the two banded models (valuation
/// given in window coordinates around n, shifted for m) and that phi has
/// the same truth value at n and at m. Requires md(phi) <= d.
ShiftReport shift_isomorphism_check(int lo, int hi, int d, int n, int m, const Formula& phi,
                                    const std::map<Var, std::vector<int>>& valuation, int height = 2);

}  // namespace pqml
