#pragma once

// Data-parallel inner loops used by the cell-set and sampled-function code.
//
// Every kernel has a scalar reference implementation and, where the build
// target is x86-64, an AVX2 variant. The active table is picked once at
// startup from the CPU feature bits; TMKIT_KERNELS=scalar forces the
// reference path. Variants must agree bit-for-bit on every boolean/bitset
// kernel; floating-point reductions agree to rounding.

#include <cstddef>
#include <cstdint>

namespace tmkit::kernels {

using Word = std::uint64_t;

struct KernelTable {
  const char* name;

  void (*and_words)(const Word* a, const Word* b, Word* out, std::size_t n);
  void (*or_words)(const Word* a, const Word* b, Word* out, std::size_t n);
  /// out = a & ~b
  void (*andnot_words)(const Word* a, const Word* b, Word* out, std::size_t n);
  std::size_t (*popcount)(const Word* a, std::size_t n);
  std::size_t (*and_popcount)(const Word* a, const Word* b, std::size_t n);
  /// true iff (a & ~b) == 0
  bool (*is_subset)(const Word* a, const Word* b, std::size_t n);
  /// true iff (a & b) != 0
  bool (*intersects)(const Word* a, const Word* b, std::size_t n);
  bool (*equal)(const Word* a, const Word* b, std::size_t n);

  /// Bit i of `out` = values[i] > t (strict) or values[i] >= t. `out` must
  /// hold ceil(count/64) words; bits past `count` are cleared.
  void (*threshold_mask)(const double* values, std::size_t count, double t,
                         bool strict, Word* out);
  /// Sum of weights[i] over set bits i < count.
  double (*masked_sum)(const double* weights, const Word* bits,
                       std::size_t count);
  /// Min and max of values[i] over set bits i < count. Leaves lo/hi
  /// untouched when no bit is set.
  void (*masked_minmax)(const double* values, const Word* bits,
                        std::size_t count, double* lo, double* hi);
};

const KernelTable& scalar_table();
/// nullptr when the variant is not compiled in or the CPU lacks AVX2.
const KernelTable* avx2_table();
/// The table used by the library.
const KernelTable& active();

}  // namespace tmkit::kernels
