#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "addbasis/natural.hpp"

namespace addbasis {

/// Maximal run of consecutive members, inclusive on both ends.
struct Run {
  Natural lo;
  Natural hi;
  Natural length() const noexcept { return hi - lo + 1; }
  friend bool operator==(const Run&, const Run&) = default;
};

// Dense membership vector over [0, bound]. Bits above `bound` in the last
// word are always zero, so word-level equality is set equality.
class PrefixBitset {
 public:
  using Word = std::uint64_t;
  static constexpr unsigned kWordBits = 64;

  explicit PrefixBitset(Natural bound);

  Natural bound() const noexcept { return bound_; }
  std::size_t word_count() const noexcept { return words_.size(); }
  std::span<const Word> words() const noexcept { return words_; }
  std::span<Word> words() noexcept { return words_; }

  bool test(Natural i) const noexcept {
    return i <= bound_ && ((words_[i / kWordBits] >> (i % kWordBits)) & 1U);
  }
  void set(Natural i) noexcept { words_[i / kWordBits] |= Word{1} << (i % kWordBits); }
  /// Sets [lo, min(hi, bound)]; no-op when lo > bound.
  void set_range(Natural lo, Natural hi) noexcept;

  /// Number of members in [lo, min(hi, bound)].
  Natural count_range(Natural lo, Natural hi) const noexcept;
  Natural count() const noexcept { return count_range(0, bound_); }
  bool all() const noexcept { return count() == bound_ + 1; }

  /// First non-member >= from, or nullopt when [from, bound] is full.
  std::optional<Natural> next_clear(Natural from) const noexcept;
  std::optional<Natural> next_set(Natural from) const noexcept;

  /// Maximal runs of members, ascending.
  std::vector<Run> runs() const;

  /// Copy restricted to [0, bound]; bound must not exceed this one's.
  PrefixBitset truncated(Natural bound) const;

  PrefixBitset& operator|=(const PrefixBitset& other);
  friend bool operator==(const PrefixBitset&, const PrefixBitset&) = default;

  // dst |= src << shift, restricted to dst's window. src and dst may differ in bound.
  static void shift_or(std::span<Word> dst, std::span<const Word> src, Natural shift) noexcept;

  void clear_tail() noexcept;

 private:
  Natural bound_;
  std::vector<Word> words_;
};

}  // namespace addbasis
