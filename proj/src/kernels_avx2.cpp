#include "pqml/kernels.hpp"

#if defined(__x86_64__) || defined(_M_X64)
#define PQML_HAVE_AVX2_TU 1
#include <immintrin.h>
#else
#define PQML_HAVE_AVX2_TU 0
#endif

namespace pqml::kernels::avx2 {

#if PQML_HAVE_AVX2_TU

bool available() { return __builtin_cpu_supports("avx2"); }

// Four rows per step: AND with broadcast x, compare against zero, and pull
// one sign bit per lane.
__attribute__((target("avx2"))) std::uint64_t preimage(std::span<const std::uint64_t> rows,
                                                       std::uint64_t x) {
  const std::size_t n = rows.size();
  const __m256i vx = _mm256_set1_epi64x(static_cast<long long>(x));
  const __m256i zero = _mm256_setzero_si256();
  std::uint64_t out = 0;
  std::size_t w = 0;
  for (; w + 4 <= n; w += 4) {
    __m256i r = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(rows.data() + w));
    __m256i hit = _mm256_cmpeq_epi64(_mm256_and_si256(r, vx), zero);
    auto empty = static_cast<unsigned>(_mm256_movemask_pd(_mm256_castsi256_pd(hit)));
    out |= static_cast<std::uint64_t>(~empty & 0xFu) << w;
  }
  for (; w < n; ++w) out |= static_cast<std::uint64_t>((rows[w] & x) != 0) << w;
  return out;
}

// Four rows per step: expand the matching four bits of x into lane masks
// and OR the selected rows into an accumulator.
__attribute__((target("avx2"))) std::uint64_t image(std::span<const std::uint64_t> rows,
                                                    std::uint64_t x) {
  const std::size_t n = rows.size();
  const __m256i lane_bit = _mm256_set_epi64x(8, 4, 2, 1);
  __m256i acc = _mm256_setzero_si256();
  std::size_t w = 0;
  for (; w + 4 <= n; w += 4) {
    auto nibble = static_cast<long long>((x >> w) & 0xFu);
    if (nibble == 0) continue;
    __m256i sel = _mm256_cmpeq_epi64(_mm256_and_si256(_mm256_set1_epi64x(nibble), lane_bit), lane_bit);
    __m256i r = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(rows.data() + w));
    acc = _mm256_or_si256(acc, _mm256_and_si256(r, sel));
  }
  alignas(32) std::uint64_t lanes[4];
  _mm256_store_si256(reinterpret_cast<__m256i*>(lanes), acc);
  std::uint64_t out = lanes[0] | lanes[1] | lanes[2] | lanes[3];
  for (; w < n; ++w)
    if ((x >> w) & 1u) out |= rows[w];
  return out;
}

#else

bool available() { return false; }
std::uint64_t preimage(std::span<const std::uint64_t> rows, std::uint64_t x) {
  return scalar::preimage(rows, x);
}
std::uint64_t image(std::span<const std::uint64_t> rows, std::uint64_t x) {
  return scalar::image(rows, x);
}

#endif

}  // namespace pqml::kernels::avx2
