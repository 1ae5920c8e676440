#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "tmkit/kernels.hpp"

namespace tmkit {

/// Fixed-size bitset over grid cells (row-major cell index). Bits past
/// `size()` in the last word are always zero.
class CellSet {
 public:
  using Word = kernels::Word;

  CellSet() = default;
  explicit CellSet(std::size_t n) : n_(n), words_((n + 63) / 64, 0) {}

  std::size_t size() const noexcept { return n_; }
  std::size_t word_count() const noexcept { return words_.size(); }
  std::span<const Word> words() const noexcept { return words_; }
  std::span<Word> words() noexcept { return words_; }

  bool test(std::size_t i) const noexcept { return (words_[i >> 6] >> (i & 63)) & 1u; }
  void set(std::size_t i) noexcept { words_[i >> 6] |= Word{1} << (i & 63); }
  void reset(std::size_t i) noexcept { words_[i >> 6] &= ~(Word{1} << (i & 63)); }
  void assign(std::size_t i, bool v) noexcept { v ? set(i) : reset(i); }
  void clear() noexcept {
    for (Word& w : words_) w = 0;
  }

  std::size_t count() const noexcept {
    return kernels::active().popcount(words_.data(), words_.size());
  }
  bool any() const noexcept;
  bool none() const noexcept { return !any(); }

  CellSet& operator&=(const CellSet& o) noexcept {
    kernels::active().and_words(words_.data(), o.words_.data(), words_.data(), words_.size());
    return *this;
  }
  CellSet& operator|=(const CellSet& o) noexcept {
    kernels::active().or_words(words_.data(), o.words_.data(), words_.data(), words_.size());
    return *this;
  }
  /// Set difference.
  CellSet& operator-=(const CellSet& o) noexcept {
    kernels::active().andnot_words(words_.data(), o.words_.data(), words_.data(), words_.size());
    return *this;
  }
  friend CellSet operator&(CellSet a, const CellSet& b) { return a &= b; }
  friend CellSet operator|(CellSet a, const CellSet& b) { return a |= b; }
  friend CellSet operator-(CellSet a, const CellSet& b) { return a -= b; }

  bool subset_of(const CellSet& o) const noexcept {
    return kernels::active().is_subset(words_.data(), o.words_.data(), words_.size());
  }
  bool intersects(const CellSet& o) const noexcept {
    return kernels::active().intersects(words_.data(), o.words_.data(), words_.size());
  }
  std::size_t intersection_count(const CellSet& o) const noexcept {
    return kernels::active().and_popcount(words_.data(), o.words_.data(), words_.size());
  }
  friend bool operator==(const CellSet& a, const CellSet& b) noexcept {
    return a.n_ == b.n_ &&
           kernels::active().equal(a.words_.data(), b.words_.data(), a.words_.size());
  }

  std::size_t hash() const noexcept;

  /// Lowest set index, or -1.
  long first() const noexcept;

  template <class F>
  void for_each(F&& f) const {
    for (std::size_t w = 0; w < words_.size(); ++w) {
      Word bits = words_[w];
      while (bits) {
        const int b = std::countr_zero(bits);
        f(static_cast<int>(w * 64 + static_cast<std::size_t>(b)));
        bits &= bits - 1;
      }
    }
  }

  std::vector<int> indices() const;

  /// Bit i = values[i] > t (strict) or values[i] >= t.
  static CellSet threshold(std::span<const double> values, double t, bool strict);

  /// Shift every bit by `offset` positions (positive = towards higher
  /// indices); bits shifted past either end are dropped.
  CellSet shifted(long offset) const;

 private:
  std::size_t n_ = 0;
  std::vector<Word> words_;
};

}  // namespace tmkit
