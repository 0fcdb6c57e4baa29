#pragma once

#include <bit>
#include <cstdint>
#include <vector>

namespace shiftedprime {

/// Fixed-size dynamic bitset with the shifted word operations the set solvers need.
class Bitset {
 public:
  Bitset() = default;
  explicit Bitset(std::int64_t size) : size_(size), words_(static_cast<std::size_t>((size + 63) / 64), 0) {}

  std::int64_t size() const { return size_; }
  bool test(std::int64_t i) const { return (words_[i >> 6] >> (i & 63)) & 1U; }
  void set(std::int64_t i) { words_[i >> 6] |= std::uint64_t{1} << (i & 63); }
  void reset(std::int64_t i) { words_[i >> 6] &= ~(std::uint64_t{1} << (i & 63)); }

  bool any() const {
    for (auto w : words_) {
      if (w != 0) return true;
    }
    return false;
  }
  std::int64_t count() const {
    std::int64_t c = 0;
    for (auto w : words_) c += std::popcount(w);
    return c;
  }
  /// Lowest set index, or -1.
  std::int64_t first() const {
    for (std::size_t i = 0; i < words_.size(); ++i) {
      if (words_[i] != 0) return static_cast<std::int64_t>(i * 64) + std::countr_zero(words_[i]);
    }
    return -1;
  }
  /// Lowest set index strictly above `i`, or -1.
  std::int64_t next(std::int64_t i) const {
    ++i;
    if (i >= size_) return -1;
    std::size_t w = static_cast<std::size_t>(i >> 6);
    std::uint64_t word = words_[w] & (~std::uint64_t{0} << (i & 63));
    while (true) {
      if (word != 0) return static_cast<std::int64_t>(w * 64) + std::countr_zero(word);
      if (++w == words_.size()) return -1;
      word = words_[w];
    }
  }

  Bitset& operator&=(const Bitset& o) {
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= o.words_[i];
    return *this;
  }
  Bitset& operator|=(const Bitset& o) {
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] |= o.words_[i];
    return *this;
  }
  void and_not(const Bitset& o) {
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= ~o.words_[i];
  }

  /// this[i] |= src[i - shift] wherever both indices are in range.
  void or_shifted(const Bitset& src, std::int64_t shift) {
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] |= shifted_word(src, static_cast<std::int64_t>(i), shift);
    trim();
  }
  /// Lowest i with this[i] and src[i - shift], or -1.
  std::int64_t first_common_shifted(const Bitset& src, std::int64_t shift) const {
    for (std::size_t i = 0; i < words_.size(); ++i) {
      const std::uint64_t w = words_[i] & shifted_word(src, static_cast<std::int64_t>(i), shift);
      if (w != 0) return static_cast<std::int64_t>(i * 64) + std::countr_zero(w);
    }
    return -1;
  }

 private:
  static std::uint64_t word_at(const Bitset& b, std::int64_t w) {
    return w >= 0 && w < static_cast<std::int64_t>(b.words_.size()) ? b.words_[static_cast<std::size_t>(w)] : 0;
  }
  // Word i of (src << shift), with a negative shift moving bits down.
  static std::uint64_t shifted_word(const Bitset& src, std::int64_t i, std::int64_t shift) {
    const std::int64_t word_shift = shift >= 0 ? shift / 64 : -((-shift + 63) / 64);
    const int bit_shift = static_cast<int>(shift - word_shift * 64);
    const std::int64_t j = i - word_shift;
    if (bit_shift == 0) return word_at(src, j);
    return (word_at(src, j) << bit_shift) | (word_at(src, j - 1) >> (64 - bit_shift));
  }
  void trim() {
    if (size_ % 64 != 0 && !words_.empty()) words_.back() &= (std::uint64_t{1} << (size_ % 64)) - 1;
  }

  std::int64_t size_ = 0;
  std::vector<std::uint64_t> words_;
};

}  // namespace shiftedprime
