#include <cstdlib>
#include <string_view>

#include "hypent/kernels.hpp"

namespace hypent::kernels {

#if HYPENT_HAVE_AVX2
const KernelTable* avx2_table();
#endif

const KernelTable* avx2() {
#if HYPENT_HAVE_AVX2
  static const bool supported = __builtin_cpu_supports("avx2");
  return supported ? avx2_table() : nullptr;
#else
  return nullptr;
#endif
}

const KernelTable& active() {
  static const KernelTable& chosen = [] () -> const KernelTable& {
    const char* env = std::getenv("HYPENT_SIMD");
    if (env != nullptr && std::string_view(env) == "scalar") return scalar();
    const KernelTable* fast = avx2();
    return fast != nullptr ? *fast : scalar();
  }();
  return chosen;
}

}  // namespace hypent::kernels
