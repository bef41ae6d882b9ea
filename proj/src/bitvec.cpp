#include "l1rank/bitvec.hpp"

#include <algorithm>

#include "l1rank/error.hpp"

namespace l1rank {

BitVec BitVec::from_string(std::string_view bits) {
  BitVec v(bits.size());
  for (std::size_t i = 0; i < bits.size(); ++i) {
    const char c = bits[i];
    if (c == '1') {
      v.set(i);
    } else if (c != '0') {
      throw ParseError("bit string: invalid character '" + std::string(1, c) +
                       "' at position " + std::to_string(i));
    }
  }
  return v;
}

BitVec BitVec::ones(std::size_t len) {
  BitVec v(len);
  for (auto& w : v.words_) w = ~Word{0};
  if (len % kWordBits != 0) {
    v.words_.back() &= (Word{1} << (len % kWordBits)) - 1;
  }
  return v;
}

namespace {

void require_same_length(const BitVec& x, const BitVec& y) {
  if (x.size() != y.size()) {
    throw DimensionError("bit vector length mismatch: " + std::to_string(x.size()) +
                         " vs " + std::to_string(y.size()));
  }
}

}  // namespace

BitVec BitVec::operator^(const BitVec& other) const {
  require_same_length(*this, other);
  BitVec out(len_);
  for (std::size_t w = 0; w < words_.size(); ++w) out.words_[w] = words_[w] ^ other.words_[w];
  return out;
}

BitVec BitVec::operator&(const BitVec& other) const {
  require_same_length(*this, other);
  BitVec out(len_);
  for (std::size_t w = 0; w < words_.size(); ++w) out.words_[w] = words_[w] & other.words_[w];
  return out;
}

BitVec BitVec::operator|(const BitVec& other) const {
  require_same_length(*this, other);
  BitVec out(len_);
  for (std::size_t w = 0; w < words_.size(); ++w) out.words_[w] = words_[w] | other.words_[w];
  return out;
}

std::string BitVec::to_string() const {
  std::string s(len_, '0');
  for (std::size_t i = 0; i < len_; ++i) {
    if (get(i)) s[i] = '1';
  }
  return s;
}

std::size_t BitVec::hash() const noexcept {
  // FNV-1a over the words, seeded with the length.
  std::uint64_t h = 1469598103934665603ull ^ len_;
  for (Word w : words_) {
    h ^= w;
    h *= 1099511628211ull;
  }
  return static_cast<std::size_t>(h);
}

PositionSet::PositionSet(std::size_t universe, std::vector<std::uint32_t> positions)
    : universe_(universe), positions_(std::move(positions)), mask_(universe) {
  std::sort(positions_.begin(), positions_.end());
  if (std::adjacent_find(positions_.begin(), positions_.end()) != positions_.end()) {
    throw DimensionError("position set contains duplicates");
  }
  for (auto p : positions_) {
    if (p >= universe_) {
      throw DimensionError("position " + std::to_string(p) + " outside universe of size " +
                           std::to_string(universe_));
    }
    mask_.set(p);
  }
}

PositionSet PositionSet::all(std::size_t universe) {
  std::vector<std::uint32_t> ps(universe);
  for (std::size_t i = 0; i < universe; ++i) ps[i] = static_cast<std::uint32_t>(i);
  return PositionSet(universe, std::move(ps));
}

PositionSet PositionSet::complement() const {
  std::vector<std::uint32_t> ps;
  ps.reserve(universe_ - positions_.size());
  for (std::size_t i = 0; i < universe_; ++i) {
    if (!mask_.get(i)) ps.push_back(static_cast<std::uint32_t>(i));
  }
  return PositionSet(universe_, std::move(ps));
}

std::size_t hamming(const BitVec& x, const BitVec& y) {
  require_same_length(x, y);
  auto xs = x.words();
  auto ys = y.words();
  std::size_t d = 0;
  for (std::size_t w = 0; w < xs.size(); ++w) {
    d += static_cast<std::size_t>(std::popcount(xs[w] ^ ys[w]));
  }
  return d;
}

std::size_t hamming_restricted(const BitVec& x, const BitVec& y, const PositionSet& positions) {
  require_same_length(x, y);
  if (!positions.empty() && positions.positions().back() >= x.size()) {
    throw DimensionError("restricted Hamming distance: position " +
                         std::to_string(positions.positions().back()) +
                         " out of range for length " + std::to_string(x.size()));
  }
  if (positions.universe() == x.size()) {
    auto xs = x.words();
    auto ys = y.words();
    auto ms = positions.mask().words();
    std::size_t d = 0;
    for (std::size_t w = 0; w < xs.size(); ++w) {
      d += static_cast<std::size_t>(std::popcount((xs[w] ^ ys[w]) & ms[w]));
    }
    return d;
  }
  std::size_t d = 0;
  for (auto p : positions) d += x.get(p) != y.get(p);
  return d;
}

BitVec project(const BitVec& x, const PositionSet& positions) {
  if (!positions.empty() && positions.positions().back() >= x.size()) {
    throw DimensionError("projection position out of range");
  }
  BitVec out(positions.size());
  for (std::size_t i = 0; i < positions.size(); ++i) {
    if (x.get(positions[i])) out.set(i);
  }
  return out;
}

}  // namespace l1rank
