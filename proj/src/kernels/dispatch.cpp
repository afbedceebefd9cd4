#include <cstdlib>
#include <string_view>

#include "kernels/variants.hpp"
#include "tdt/kernels.hpp"

namespace tdt::kernels {

const KernelSet& scalar() {
  static const KernelSet set{"scalar", &transpose_scalar, &untranspose_scalar};
  return set;
}

const KernelSet* avx2() {
#if defined(TDT_HAVE_AVX2_KERNELS)
  static const KernelSet set{"avx2", &transpose_avx2, &untranspose_avx2};
  static const bool supported = __builtin_cpu_supports("avx2");
  return supported ? &set : nullptr;
#else
  return nullptr;
#endif
}

const KernelSet& active() {
  static const KernelSet& chosen = [] () -> const KernelSet& {
    const char* env = std::getenv("TDT_KERNELS");
    if (env != nullptr && std::string_view(env) == "scalar") return scalar();
    if (const KernelSet* v = avx2()) return *v;
    return scalar();
  }();
  return chosen;
}

}  // namespace tdt::kernels
