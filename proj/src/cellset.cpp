#include "tmkit/cellset.hpp"

namespace tmkit {

bool CellSet::any() const noexcept {
  for (Word w : words_)
    if (w) return true;
  return false;
}

std::size_t CellSet::hash() const noexcept {
  // FNV-1a over words, mixed with the size.
  std::uint64_t h = 0xcbf29ce484222325ull ^ n_;
  for (Word w : words_) {
    h ^= w;
    h *= 0x100000001b3ull;
    h ^= h >> 29;
  }
  return static_cast<std::size_t>(h);
}

long CellSet::first() const noexcept {
  for (std::size_t w = 0; w < words_.size(); ++w)
    if (words_[w]) return static_cast<long>(w * 64 + static_cast<std::size_t>(std::countr_zero(words_[w])));
  return -1;
}

std::vector<int> CellSet::indices() const {
  std::vector<int> out;
  out.reserve(count());
  for_each([&](int i) { out.push_back(i); });
  return out;
}

CellSet CellSet::threshold(std::span<const double> values, double t, bool strict) {
  CellSet s(values.size());
  kernels::active().threshold_mask(values.data(), values.size(), t, strict, s.words_.data());
  return s;
}

CellSet CellSet::shifted(long offset) const {
  CellSet out(n_);
  if (n_ == 0) return out;
  const long n = static_cast<long>(n_);
  if (offset >= n || -offset >= n) return out;
  const long wshift = offset >= 0 ? offset / 64 : -((-offset) / 64);
  const int bshift = static_cast<int>(offset >= 0 ? offset % 64 : (-offset) % 64);
  const long nw = static_cast<long>(words_.size());
  if (offset >= 0) {
    for (long i = nw - 1; i >= 0; --i) {
      const long src = i - wshift;
      if (src < 0) break;
      Word v = words_[static_cast<std::size_t>(src)] << bshift;
      if (bshift && src - 1 >= 0) v |= words_[static_cast<std::size_t>(src - 1)] >> (64 - bshift);
      out.words_[static_cast<std::size_t>(i)] = v;
    }
  } else {
    const long ws = -wshift;
    for (long i = 0; i < nw; ++i) {
      const long src = i + ws;
      if (src >= nw) break;
      Word v = words_[static_cast<std::size_t>(src)] >> bshift;
      if (bshift && src + 1 < nw) v |= words_[static_cast<std::size_t>(src + 1)] << (64 - bshift);
      out.words_[static_cast<std::size_t>(i)] = v;
    }
  }
  if (n_ % 64) out.words_.back() &= (Word{1} << (n_ % 64)) - 1;
  return out;
}

}  // namespace tmkit
