// AVX2 variants. This translation unit is compiled with -mavx2 -mpopcnt and
// is only entered after the dispatcher has confirmed CPU support.

#include "kernels_impl.hpp"

#if TMKIT_HAVE_AVX2_VARIANT

#include <immintrin.h>

#include <cstring>

namespace tmkit::kernels::avx2 {
namespace {

inline __m256i load(const Word* p) {
  return _mm256_loadu_si256(reinterpret_cast<const __m256i*>(p));
}
inline void store(Word* p, __m256i v) {
  _mm256_storeu_si256(reinterpret_cast<__m256i*>(p), v);
}

// Per-byte popcount via nibble lookup, reduced to four 64-bit lanes.
inline __m256i popcount_lanes(__m256i v) {
  const __m256i lut = _mm256_setr_epi8(0, 1, 1, 2, 1, 2, 2, 3, 1, 2, 2, 3, 2,
                                       3, 3, 4, 0, 1, 1, 2, 1, 2, 2, 3, 1, 2,
                                       2, 3, 2, 3, 3, 4);
  const __m256i low = _mm256_set1_epi8(0x0f);
  const __m256i lo = _mm256_and_si256(v, low);
  const __m256i hi = _mm256_and_si256(_mm256_srli_epi16(v, 4), low);
  const __m256i cnt = _mm256_add_epi8(_mm256_shuffle_epi8(lut, lo),
                                      _mm256_shuffle_epi8(lut, hi));
  return _mm256_sad_epu8(cnt, _mm256_setzero_si256());
}

inline std::size_t hsum_epi64(__m256i v) {
  alignas(32) std::uint64_t lanes[4];
  _mm256_store_si256(reinterpret_cast<__m256i*>(lanes), v);
  return static_cast<std::size_t>(lanes[0] + lanes[1] + lanes[2] + lanes[3]);
}

// Lane masks for a 4-bit selector, one 64-bit lane per bit.
alignas(32) const std::int64_t kNibbleMask[16][4] = {
    {0, 0, 0, 0},    {-1, 0, 0, 0},    {0, -1, 0, 0},    {-1, -1, 0, 0},
    {0, 0, -1, 0},   {-1, 0, -1, 0},   {0, -1, -1, 0},   {-1, -1, -1, 0},
    {0, 0, 0, -1},   {-1, 0, 0, -1},   {0, -1, 0, -1},   {-1, -1, 0, -1},
    {0, 0, -1, -1},  {-1, 0, -1, -1},  {0, -1, -1, -1},  {-1, -1, -1, -1}};

inline __m256d nibble_mask(unsigned nib) {
  return _mm256_castsi256_pd(
      _mm256_load_si256(reinterpret_cast<const __m256i*>(kNibbleMask[nib])));
}

inline bool bit(const Word* bits, std::size_t i) {
  return (bits[i >> 6] >> (i & 63)) & 1u;
}

void and_words(const Word* a, const Word* b, Word* out, std::size_t n) {
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) store(out + i, _mm256_and_si256(load(a + i), load(b + i)));
  for (; i < n; ++i) out[i] = a[i] & b[i];
}

void or_words(const Word* a, const Word* b, Word* out, std::size_t n) {
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) store(out + i, _mm256_or_si256(load(a + i), load(b + i)));
  for (; i < n; ++i) out[i] = a[i] | b[i];
}

void andnot_words(const Word* a, const Word* b, Word* out, std::size_t n) {
  std::size_t i = 0;
  // _mm256_andnot_si256(x, y) computes ~x & y
  for (; i + 4 <= n; i += 4) store(out + i, _mm256_andnot_si256(load(b + i), load(a + i)));
  for (; i < n; ++i) out[i] = a[i] & ~b[i];
}

std::size_t popcount(const Word* a, std::size_t n) {
  __m256i acc = _mm256_setzero_si256();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) acc = _mm256_add_epi64(acc, popcount_lanes(load(a + i)));
  std::size_t c = hsum_epi64(acc);
  for (; i < n; ++i) c += static_cast<std::size_t>(_mm_popcnt_u64(a[i]));
  return c;
}

std::size_t and_popcount(const Word* a, const Word* b, std::size_t n) {
  __m256i acc = _mm256_setzero_si256();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4)
    acc = _mm256_add_epi64(acc, popcount_lanes(_mm256_and_si256(load(a + i), load(b + i))));
  std::size_t c = hsum_epi64(acc);
  for (; i < n; ++i) c += static_cast<std::size_t>(_mm_popcnt_u64(a[i] & b[i]));
  return c;
}

bool is_subset(const Word* a, const Word* b, std::size_t n) {
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256i d = _mm256_andnot_si256(load(b + i), load(a + i));
    if (!_mm256_testz_si256(d, d)) return false;
  }
  for (; i < n; ++i)
    if (a[i] & ~b[i]) return false;
  return true;
}

bool intersects(const Word* a, const Word* b, std::size_t n) {
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4)
    if (!_mm256_testz_si256(load(a + i), load(b + i))) return true;
  for (; i < n; ++i)
    if (a[i] & b[i]) return true;
  return false;
}

bool equal(const Word* a, const Word* b, std::size_t n) {
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256i d = _mm256_xor_si256(load(a + i), load(b + i));
    if (!_mm256_testz_si256(d, d)) return false;
  }
  for (; i < n; ++i)
    if (a[i] != b[i]) return false;
  return true;
}

void threshold_mask(const double* values, std::size_t count, double t,
                    bool strict, Word* out) {
  const std::size_t words = (count + 63) / 64;
  const __m256d tv = _mm256_set1_pd(t);
  for (std::size_t w = 0; w < words; ++w) {
    const std::size_t base = w * 64;
    Word word = 0;
    if (base + 64 <= count) {
      for (unsigned g = 0; g < 16; ++g) {
        const __m256d v = _mm256_loadu_pd(values + base + 4 * g);
        const __m256d c = strict ? _mm256_cmp_pd(v, tv, _CMP_GT_OQ)
                                 : _mm256_cmp_pd(v, tv, _CMP_GE_OQ);
        word |= static_cast<Word>(_mm256_movemask_pd(c)) << (4 * g);
      }
    } else {
      for (std::size_t i = base; i < count; ++i) {
        const bool hit = strict ? values[i] > t : values[i] >= t;
        if (hit) word |= Word{1} << (i - base);
      }
    }
    out[w] = word;
  }
}

double masked_sum(const double* weights, const Word* bits, std::size_t count) {
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= count; i += 4) {
    const unsigned nib = static_cast<unsigned>((bits[i >> 6] >> (i & 63)) & 0xFu);
    if (nib == 0) continue;
    acc = _mm256_add_pd(acc, _mm256_and_pd(_mm256_loadu_pd(weights + i), nibble_mask(nib)));
  }
  alignas(32) double lanes[4];
  _mm256_store_pd(lanes, acc);
  double s = (lanes[0] + lanes[1]) + (lanes[2] + lanes[3]);
  for (; i < count; ++i)
    if (bit(bits, i)) s += weights[i];
  return s;
}

void masked_minmax(const double* values, const Word* bits, std::size_t count,
                   double* lo, double* hi) {
  const double inf = __builtin_inf();
  __m256d mn = _mm256_set1_pd(inf);
  __m256d mx = _mm256_set1_pd(-inf);
  bool any = false;
  std::size_t i = 0;
  for (; i + 4 <= count; i += 4) {
    const unsigned nib = static_cast<unsigned>((bits[i >> 6] >> (i & 63)) & 0xFu);
    if (nib == 0) continue;
    any = true;
    const __m256d m = nibble_mask(nib);
    const __m256d v = _mm256_loadu_pd(values + i);
    mn = _mm256_min_pd(mn, _mm256_blendv_pd(_mm256_set1_pd(inf), v, m));
    mx = _mm256_max_pd(mx, _mm256_blendv_pd(_mm256_set1_pd(-inf), v, m));
  }
  alignas(32) double a[4], b[4];
  _mm256_store_pd(a, mn);
  _mm256_store_pd(b, mx);
  double smin = a[0], smax = b[0];
  for (int k = 1; k < 4; ++k) {
    if (a[k] < smin) smin = a[k];
    if (b[k] > smax) smax = b[k];
  }
  for (; i < count; ++i) {
    if (!bit(bits, i)) continue;
    if (!any) {
      smin = smax = values[i];
      any = true;
      continue;
    }
    if (values[i] < smin) smin = values[i];
    if (values[i] > smax) smax = values[i];
  }
  if (any) {
    *lo = smin;
    *hi = smax;
  }
}

}  // namespace

const KernelTable& table() {
  static const KernelTable t{"avx2",     and_words,    or_words,   andnot_words,
                             popcount,   and_popcount, is_subset,  intersects,
                             equal,      threshold_mask, masked_sum, masked_minmax};
  return t;
}

}  // namespace tmkit::kernels::avx2

#endif
