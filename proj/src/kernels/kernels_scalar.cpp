#include <bit>
#include <cstring>

#include "kernels_impl.hpp"

namespace tmkit::kernels::scalar {

void and_words(const Word* a, const Word* b, Word* out, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) out[i] = a[i] & b[i];
}

void or_words(const Word* a, const Word* b, Word* out, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) out[i] = a[i] | b[i];
}

void andnot_words(const Word* a, const Word* b, Word* out, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) out[i] = a[i] & ~b[i];
}

std::size_t popcount(const Word* a, std::size_t n) {
  std::size_t c = 0;
  for (std::size_t i = 0; i < n; ++i) c += std::popcount(a[i]);
  return c;
}

std::size_t and_popcount(const Word* a, const Word* b, std::size_t n) {
  std::size_t c = 0;
  for (std::size_t i = 0; i < n; ++i) c += std::popcount(a[i] & b[i]);
  return c;
}

bool is_subset(const Word* a, const Word* b, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i)
    if (a[i] & ~b[i]) return false;
  return true;
}

bool intersects(const Word* a, const Word* b, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i)
    if (a[i] & b[i]) return true;
  return false;
}

bool equal(const Word* a, const Word* b, std::size_t n) {
  return n == 0 || std::memcmp(a, b, n * sizeof(Word)) == 0;
}

void threshold_mask(const double* values, std::size_t count, double t,
                    bool strict, Word* out) {
  const std::size_t words = (count + 63) / 64;
  for (std::size_t w = 0; w < words; ++w) out[w] = 0;
  for (std::size_t i = 0; i < count; ++i) {
    const bool hit = strict ? values[i] > t : values[i] >= t;
    if (hit) out[i >> 6] |= Word{1} << (i & 63);
  }
}

double masked_sum(const double* weights, const Word* bits, std::size_t count) {
  double s = 0.0;
  for (std::size_t i = 0; i < count; ++i)
    if ((bits[i >> 6] >> (i & 63)) & 1u) s += weights[i];
  return s;
}

void masked_minmax(const double* values, const Word* bits, std::size_t count,
                   double* lo, double* hi) {
  bool any = false;
  double mn = 0.0, mx = 0.0;
  for (std::size_t i = 0; i < count; ++i) {
    if (!((bits[i >> 6] >> (i & 63)) & 1u)) continue;
    const double v = values[i];
    if (!any) {
      mn = mx = v;
      any = true;
    } else {
      if (v < mn) mn = v;
      if (v > mx) mx = v;
    }
  }
  if (any) {
    *lo = mn;
    *hi = mx;
  }
}

}  // namespace tmkit::kernels::scalar

namespace tmkit::kernels {

const KernelTable& scalar_table() {
  static const KernelTable table{
      "scalar",           scalar::and_words,      scalar::or_words,
      scalar::andnot_words, scalar::popcount,     scalar::and_popcount,
      scalar::is_subset,  scalar::intersects,     scalar::equal,
      scalar::threshold_mask, scalar::masked_sum, scalar::masked_minmax};
  return table;
}

}  // namespace tmkit::kernels
