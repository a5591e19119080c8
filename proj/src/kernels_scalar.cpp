#include "pqml/kernels.hpp"

#include <bit>

namespace pqml::kernels::scalar {

std::uint64_t preimage(std::span<const std::uint64_t> rows, std::uint64_t x) {
  std::uint64_t out = 0;
  for (std::size_t w = 0; w < rows.size(); ++w)
    out |= static_cast<std::uint64_t>((rows[w] & x) != 0) << w;
  return out;
}

std::uint64_t image(std::span<const std::uint64_t> rows, std::uint64_t x) {
  std::uint64_t out = 0;
  for (std::uint64_t rest = x; rest != 0; rest &= rest - 1) {
    auto w = static_cast<std::size_t>(std::countr_zero(rest));
    if (w < rows.size()) out |= rows[w];
  }
  return out;
}

}  // namespace pqml::kernels::scalar
