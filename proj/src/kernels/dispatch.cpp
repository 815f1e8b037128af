#include "fockdiv/kernels.hpp"

#include <atomic>
#include <cstdlib>
#include <string>

namespace fockdiv::kernels {

#if !(defined(__x86_64__) || defined(_M_X64))
const Table* avx2_table() { return nullptr; }
#endif
#if !(defined(__aarch64__) || defined(_M_ARM64))
const Table* neon_table() { return nullptr; }
#endif

namespace {

const Table* lookup(Backend b) {
  switch (b) {
  case Backend::Scalar: return &scalar_table();
  case Backend::Avx2: return avx2_table();
  case Backend::Neon: return neon_table();
  }
  return nullptr;
}

const Table* choose() {
  if (const char* env = std::getenv("FOCKDIV_SIMD")) {
    const std::string v = env;
    const Table* t = nullptr;
    if (v == "scalar") t = &scalar_table();
    else if (v == "avx2") t = avx2_table();
    else if (v == "neon") t = neon_table();
    if (t) return t;
  }
  if (const Table* t = avx2_table()) return t;
  if (const Table* t = neon_table()) return t;
  return &scalar_table();
}

std::atomic<const Table*>& current() {
  static std::atomic<const Table*> t{choose()};
  return t;
}

} // namespace

const Table& active() { return *current().load(std::memory_order_acquire); }

bool set_active(Backend b) {
  const Table* t = lookup(b);
  if (!t) return false;
  current().store(t, std::memory_order_release);
  return true;
}

std::string_view backend_name(Backend b) {
  switch (b) {
  case Backend::Scalar: return "scalar";
  case Backend::Avx2: return "avx2";
  case Backend::Neon: return "neon";
  }
  return "unknown";
}

} // namespace fockdiv::kernels
