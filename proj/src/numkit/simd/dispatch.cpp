// SPDX-License-Identifier: Apache-2.0
#include <atomic>
#include <cstdlib>
#include <string_view>

#include "opalg/numkit/simd.hpp"

namespace opalg::simd {

#if defined(OPALG_HAVE_AVX2)
const KernelTable* avx2_table_unchecked() noexcept;
#endif

namespace {

#if defined(OPALG_HAVE_AVX2)
bool cpu_has_avx2() noexcept {
#if defined(__GNUC__) || defined(__clang__)
  __builtin_cpu_init();
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
  return false;
#endif
}
#endif

const KernelTable* initial_table() noexcept {
  const KernelTable* best = avx2_kernels();
  if (const char* env = std::getenv("OPALG_SIMD")) {
    if (std::string_view(env) == "scalar") return &scalar_kernels();
  }
  return best ? best : &scalar_kernels();
}

std::atomic<const KernelTable*>& current() noexcept {
  static std::atomic<const KernelTable*> table{initial_table()};
  return table;
}

}  // namespace

const KernelTable* avx2_kernels() noexcept {
#if defined(OPALG_HAVE_AVX2)
  static const bool ok = cpu_has_avx2();
  return ok ? avx2_table_unchecked() : nullptr;
#else
  return nullptr;
#endif
}

const KernelTable& active() noexcept { return *current().load(std::memory_order_acquire); }

bool select(Isa isa) noexcept {
  const KernelTable* t = isa == Isa::scalar ? &scalar_kernels() : avx2_kernels();
  if (t == nullptr) return false;
  current().store(t, std::memory_order_release);
  return true;
}

std::string_view isa_name(Isa isa) noexcept { return isa == Isa::avx2 ? "avx2" : "scalar"; }

}  // namespace opalg::simd
