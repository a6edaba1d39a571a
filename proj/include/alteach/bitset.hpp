#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>
#include <vector>

namespace alteach {

/// Fixed-size dynamic bitset used for hypothesis and instance sets.
///
/// All binary operations require operands of equal size. The counting
/// helpers (`count_and`, `count_and_or`) avoid materializing temporaries,
/// which is what the greedy teacher and the exact oracles spend their time on.
class Bitset {
 public:
  Bitset() = default;
  explicit Bitset(std::size_t size, bool value = false);

  std::size_t size() const { return size_; }

  bool test(std::size_t i) const { return (words_[i >> 6] >> (i & 63)) & 1u; }
  void set(std::size_t i) { words_[i >> 6] |= std::uint64_t{1} << (i & 63); }
  void reset(std::size_t i) { words_[i >> 6] &= ~(std::uint64_t{1} << (i & 63)); }

  std::size_t count() const;
  bool none() const;
  bool any() const { return !none(); }

  /// Lowest set index, or size() when empty.
  std::size_t first() const;
  std::vector<std::size_t> indices() const;

  Bitset& operator&=(const Bitset& other);
  Bitset& operator|=(const Bitset& other);
  /// Set difference: removes every bit set in `other`.
  Bitset& operator-=(const Bitset& other);

  friend Bitset operator&(Bitset a, const Bitset& b) { return a &= b; }
  friend Bitset operator|(Bitset a, const Bitset& b) { return a |= b; }
  friend Bitset operator-(Bitset a, const Bitset& b) { return a -= b; }

  /// |this ∩ a|
  std::size_t count_and(const Bitset& a) const;
  /// |this ∩ (a ∪ b)|
  std::size_t count_and_or(const Bitset& a, const Bitset& b) const;
  bool is_subset_of(const Bitset& other) const;

  bool operator==(const Bitset& other) const = default;

  std::size_t hash() const;

 private:
  std::size_t size_ = 0;
  std::vector<std::uint64_t> words_;
};

struct BitsetHash {
  std::size_t operator()(const Bitset& b) const { return b.hash(); }
};

}  // namespace alteach
