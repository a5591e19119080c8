#pragma once

// Row-bitmask kernels behind the modal operators.
//
// A relation on n <= 64 worlds is stored as n successor rows (bit u of
// rows[w] is set iff wRu). Every backend computes bit-identical results;
// the dispatcher picks the widest one the running CPU supports.

#include <cstdint>
#include <span>
#include <string_view>

namespace pqml::kernels {

enum class Backend { Scalar, Avx2 };

/// {w | rows[w] & x != 0}: the diamond preimage m_dia(X).
using PreimageFn = std::uint64_t (*)(std::span<const std::uint64_t> rows, std::uint64_t x);
/// Union of rows[w] over w in x: the successor set R[X].
using ImageFn = std::uint64_t (*)(std::span<const std::uint64_t> rows, std::uint64_t x);

namespace scalar {
std::uint64_t preimage(std::span<const std::uint64_t> rows, std::uint64_t x);
std::uint64_t image(std::span<const std::uint64_t> rows, std::uint64_t x);
}  // namespace scalar

namespace avx2 {
/// True when this build carries AVX2 code and the CPU can run it.
bool available();
std::uint64_t preimage(std::span<const std::uint64_t> rows, std::uint64_t x);
std::uint64_t image(std::span<const std::uint64_t> rows, std::uint64_t x);
}  // namespace avx2

Backend active_backend();
/// Overrides runtime detection. Requesting an unavailable backend falls back to Scalar.
void select_backend(Backend b);
std::string_view backend_name(Backend b);

std::uint64_t preimage(std::span<const std::uint64_t> rows, std::uint64_t x);
std::uint64_t image(std::span<const std::uint64_t> rows, std::uint64_t x);

}  // namespace pqml::kernels
