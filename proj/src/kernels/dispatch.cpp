#include <cstdlib>
#include <string_view>

#include "kernels_impl.hpp"

namespace tmkit::kernels {

const KernelTable* avx2_table() {
#if TMKIT_HAVE_AVX2_VARIANT
  static const bool supported = [] {
    __builtin_cpu_init();
    return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("popcnt");
  }();
  return supported ? &avx2::table() : nullptr;
#else
  return nullptr;
#endif
}

const KernelTable& active() {
  static const KernelTable* chosen = [] {
    const char* env = std::getenv("TMKIT_KERNELS");
    if (env != nullptr && std::string_view(env) == "scalar") return &scalar_table();
    if (const KernelTable* t = avx2_table()) return t;
    return &scalar_table();
  }();
  return *chosen;
}

}  // namespace tmkit::kernels
