#include "addbasis/bitset.hpp"

#include <bit>
#include <cassert>

#include "addbasis/error.hpp"

namespace addbasis {

namespace {
using Word = PrefixBitset::Word;
constexpr unsigned kBits = PrefixBitset::kWordBits;

Word low_mask(unsigned n) noexcept { return n >= kBits ? ~Word{0} : (Word{1} << n) - 1; }
}  // namespace

PrefixBitset::PrefixBitset(Natural bound) : bound_(bound) {
  if (bound == ~Natural{0}) throw Error(ErrorKind::BoundCeiling, "bound too large for a bitset");
  words_.assign(bound / kBits + 1, 0);
}

void PrefixBitset::clear_tail() noexcept {
  unsigned used = static_cast<unsigned>(bound_ % kBits) + 1;
  words_.back() &= low_mask(used);
}

void PrefixBitset::set_range(Natural lo, Natural hi) noexcept {
  if (lo > bound_ || lo > hi) return;
  if (hi > bound_) hi = bound_;
  std::size_t wlo = lo / kBits, whi = hi / kBits;
  unsigned blo = lo % kBits, bhi = hi % kBits;
  if (wlo == whi) {
    words_[wlo] |= low_mask(bhi + 1) & ~low_mask(blo);
    return;
  }
  words_[wlo] |= ~low_mask(blo);
  for (std::size_t w = wlo + 1; w < whi; ++w) words_[w] = ~Word{0};
  words_[whi] |= low_mask(bhi + 1);
}

Natural PrefixBitset::count_range(Natural lo, Natural hi) const noexcept {
  if (lo > bound_ || lo > hi) return 0;
  if (hi > bound_) hi = bound_;
  std::size_t wlo = lo / kBits, whi = hi / kBits;
  unsigned blo = lo % kBits, bhi = hi % kBits;
  if (wlo == whi) return std::popcount(words_[wlo] & low_mask(bhi + 1) & ~low_mask(blo));
  Natural total = std::popcount(words_[wlo] & ~low_mask(blo));
  for (std::size_t w = wlo + 1; w < whi; ++w) total += std::popcount(words_[w]);
  total += std::popcount(words_[whi] & low_mask(bhi + 1));
  return total;
}

std::optional<Natural> PrefixBitset::next_set(Natural from) const noexcept {
  if (from > bound_) return std::nullopt;
  std::size_t w = from / kBits;
  Word cur = words_[w] & ~low_mask(from % kBits);
  while (true) {
    if (cur) {
      Natural i = w * kBits + std::countr_zero(cur);
      return i <= bound_ ? std::optional<Natural>(i) : std::nullopt;
    }
    if (++w == words_.size()) return std::nullopt;
    cur = words_[w];
  }
}

std::optional<Natural> PrefixBitset::next_clear(Natural from) const noexcept {
  if (from > bound_) return std::nullopt;
  std::size_t w = from / kBits;
  Word cur = ~words_[w] & ~low_mask(from % kBits);
  while (true) {
    if (cur) {
      Natural i = w * kBits + std::countr_zero(cur);
      return i <= bound_ ? std::optional<Natural>(i) : std::nullopt;
    }
    if (++w == words_.size()) return std::nullopt;
    cur = ~words_[w];
  }
}

std::vector<Run> PrefixBitset::runs() const {
  std::vector<Run> out;
  Natural pos = 0;
  while (auto lo = next_set(pos)) {
    auto gap = next_clear(*lo);
    Natural hi = gap ? *gap - 1 : bound_;
    out.push_back({*lo, hi});
    if (!gap) break;
    pos = *gap;
  }
  return out;
}

PrefixBitset PrefixBitset::truncated(Natural bound) const {
  assert(bound <= bound_);
  PrefixBitset out(bound);
  std::copy_n(words_.begin(), out.words_.size(), out.words_.begin());
  out.clear_tail();
  return out;
}

PrefixBitset& PrefixBitset::operator|=(const PrefixBitset& other) {
  if (other.bound_ != bound_) throw Error(ErrorKind::BoundMismatch, "OR of bitsets with different bounds");
  for (std::size_t w = 0; w < words_.size(); ++w) words_[w] |= other.words_[w];
  return *this;
}

void PrefixBitset::shift_or(std::span<Word> dst, std::span<const Word> src, Natural shift) noexcept {
  std::size_t ws = shift / kBits;
  unsigned bs = shift % kBits;
  if (ws >= dst.size()) return;
  std::size_t end = std::min(dst.size(), src.size() + ws + (bs ? 1 : 0));
  if (bs == 0) {
    for (std::size_t i = ws; i < end; ++i) dst[i] |= src[i - ws];
    return;
  }
  for (std::size_t i = ws; i < end; ++i) {
    std::size_t j = i - ws;
    Word v = j < src.size() ? src[j] << bs : 0;
    if (j > 0) v |= src[j - 1] >> (kBits - bs);
    dst[i] |= v;
  }
}

}  // namespace addbasis
