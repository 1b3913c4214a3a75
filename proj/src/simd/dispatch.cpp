#include <atomic>
#include <cstdlib>
#include <string_view>

#include "rainbow/simd/kernels.hpp"

namespace rainbow::simd {

#if !defined(RAINBOW_HAVE_AVX2_TU)
const KernelTable* avx2_kernels() { return nullptr; }
#endif

bool cpu_has_avx2() {
#if defined(RAINBOW_HAVE_AVX2_TU) && (defined(__GNUC__) || defined(__clang__))
  __builtin_cpu_init();
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
  return false;
#endif
}

namespace {

Isa initial_isa() {
  if (const char* env = std::getenv("RT_SIMD"); env && std::string_view(env) == "scalar")
    return Isa::Scalar;
  return (avx2_kernels() && cpu_has_avx2()) ? Isa::Avx2 : Isa::Scalar;
}

std::atomic<Isa>& selected() {
  static std::atomic<Isa> isa{initial_isa()};
  return isa;
}

}  // namespace

const KernelTable& kernels() {
  return selected().load(std::memory_order_relaxed) == Isa::Avx2 ? *avx2_kernels()
                                                                 : scalar_kernels();
}

Isa active_isa() { return selected().load(std::memory_order_relaxed); }

bool set_isa(Isa isa) {
  if (isa == Isa::Avx2 && !(avx2_kernels() && cpu_has_avx2())) return false;
  selected().store(isa, std::memory_order_relaxed);
  return true;
}

std::string_view isa_name(Isa isa) { return isa == Isa::Avx2 ? "avx2" : "scalar"; }

}  // namespace rainbow::simd
