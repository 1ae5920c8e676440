#pragma once

#include "tmkit/kernels.hpp"

#if defined(__x86_64__) || defined(_M_X64)
#define TMKIT_HAVE_AVX2_VARIANT 1
#else
#define TMKIT_HAVE_AVX2_VARIANT 0
#endif

namespace tmkit::kernels {

#if TMKIT_HAVE_AVX2_VARIANT
namespace avx2 {
const KernelTable& table();
}
#endif

}  // namespace tmkit::kernels
