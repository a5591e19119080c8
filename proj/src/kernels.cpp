#include "pqml/kernels.hpp"

#include <atomic>
#include <cstdlib>

namespace pqml::kernels {
namespace {

Backend detect() {
  if (const char* env = std::getenv("PQML_FORCE_SCALAR"); env != nullptr && *env != '\0' && *env != '0')
    return Backend::Scalar;
  return avx2::available() ? Backend::Avx2 : Backend::Scalar;
}

struct Table {
  PreimageFn preimage;
  ImageFn image;
};

Table table_for(Backend b) {
  if (b == Backend::Avx2) return {&avx2::preimage, &avx2::image};
  return {&scalar::preimage, &scalar::image};
}

std::atomic<Backend>& current() {
  static std::atomic<Backend> b{detect()};
  return b;
}

}  // namespace

Backend active_backend() { return current().load(std::memory_order_relaxed); }

void select_backend(Backend b) {
  if (b == Backend::Avx2 && !avx2::available()) b = Backend::Scalar;
  current().store(b, std::memory_order_relaxed);
}

std::string_view backend_name(Backend b) {
  switch (b) {
    case Backend::Scalar: return "scalar";
    case Backend::Avx2: return "avx2";
  }
  return "unknown";
}

std::uint64_t preimage(std::span<const std::uint64_t> rows, std::uint64_t x) {
  return table_for(active_backend()).preimage(rows, x);
}

std::uint64_t image(std::span<const std::uint64_t> rows, std::uint64_t x) {
  return table_for(active_backend()).image(rows, x);
}

}  // namespace pqml::kernels
