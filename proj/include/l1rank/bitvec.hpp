#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace l1rank {

using Word = std::uint64_t;
inline constexpr std::size_t kWordBits = 64;

inline constexpr std::size_t words_for(std::size_t bits) {
  return (bits + kWordBits - 1) / kWordBits;
}

// Bit-packed binary vector of fixed length. Bits past size()-1 are always zero
// in storage, so word-wise comparison and popcount are exact.
class BitVec {
 public:
  BitVec() = default;
  explicit BitVec(std::size_t len) : len_(len), words_(words_for(len), 0) {}

  // Parses a string over {0,1}; position i is character i.
  static BitVec from_string(std::string_view bits);
  static BitVec ones(std::size_t len);

  std::size_t size() const noexcept { return len_; }
  bool empty() const noexcept { return len_ == 0; }

  bool get(std::size_t i) const noexcept {
    return (words_[i / kWordBits] >> (i % kWordBits)) & 1u;
  }
  bool operator[](std::size_t i) const noexcept { return get(i); }

  void set(std::size_t i, bool value = true) noexcept {
    const Word bit = Word{1} << (i % kWordBits);
    if (value) {
      words_[i / kWordBits] |= bit;
    } else {
      words_[i / kWordBits] &= ~bit;
    }
  }

  std::size_t popcount() const noexcept {
    std::size_t total = 0;
    for (Word w : words_) total += static_cast<std::size_t>(std::popcount(w));
    return total;
  }

  std::span<const Word> words() const noexcept { return words_; }

  BitVec operator^(const BitVec& other) const;
  BitVec operator&(const BitVec& other) const;
  BitVec operator|(const BitVec& other) const;

  bool operator==(const BitVec& other) const noexcept = default;

  std::string to_string() const;
  std::size_t hash() const noexcept;

 private:
  friend class BitMatrix;

  std::size_t len_ = 0;
  std::vector<Word> words_;
};

struct BitVecHash {
  std::size_t operator()(const BitVec& v) const noexcept { return v.hash(); }
};

// Sorted, duplicate-free subset of {0, ..., universe-1}.
class PositionSet {
 public:
  PositionSet() = default;
  // Throws DimensionError when a position is >= universe; sorts and
  // rejects duplicates.
  PositionSet(std::size_t universe, std::vector<std::uint32_t> positions);

  static PositionSet all(std::size_t universe);
  static PositionSet none(std::size_t universe) { return PositionSet(universe, {}); }

  std::size_t universe() const noexcept { return universe_; }
  std::size_t size() const noexcept { return positions_.size(); }
  bool empty() const noexcept { return positions_.empty(); }
  bool contains(std::size_t p) const noexcept { return p < universe_ && mask_.get(p); }

  const std::vector<std::uint32_t>& positions() const noexcept { return positions_; }
  auto begin() const noexcept { return positions_.begin(); }
  auto end() const noexcept { return positions_.end(); }
  std::uint32_t operator[](std::size_t i) const noexcept { return positions_[i]; }

  // Indicator vector of length universe().
  const BitVec& mask() const noexcept { return mask_; }
  PositionSet complement() const;

  bool operator==(const PositionSet& other) const noexcept {
    return universe_ == other.universe_ && positions_ == other.positions_;
  }

 private:
  std::size_t universe_ = 0;
  std::vector<std::uint32_t> positions_;
  BitVec mask_;
};

// Number of differing positions. Throws DimensionError on length mismatch.
std::size_t hamming(const BitVec& x, const BitVec& y);

// Differing positions counted only inside `positions`.
std::size_t hamming_restricted(const BitVec& x, const BitVec& y, const PositionSet& positions);

// x restricted to `positions`, in increasing position order.
BitVec project(const BitVec& x, const PositionSet& positions);

}  // namespace l1rank
