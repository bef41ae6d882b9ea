#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "l1rank/bitvec.hpp"

namespace l1rank {

// A k-tuple of bits packed into a word: bit i holds t_{i+1}, the bit of
// center i (0-based).
using TupleWord = std::uint64_t;
inline constexpr std::size_t kMaxArity = 64;

inline bool tuple_bit(TupleWord t, std::size_t i) noexcept { return (t >> i) & 1u; }

// Non-empty set of allowed k-tuples at one position.
class Relation {
 public:
  Relation(std::size_t arity, std::vector<TupleWord> tuples);

  // All 2^arity tuples; arity is limited to 20 here.
  static Relation full(std::size_t arity);
  // Each string has `arity` characters; character i is the bit of center i.
  static Relation from_strings(const std::vector<std::string>& tuples);

  std::size_t arity() const noexcept { return arity_; }
  std::size_t size() const noexcept { return tuples_.size(); }
  const std::vector<TupleWord>& tuples() const noexcept { return tuples_; }
  TupleWord operator[](std::size_t i) const noexcept { return tuples_[i]; }
  bool contains(TupleWord t) const noexcept;

  std::string tuple_string(TupleWord t) const;
  std::vector<std::string> to_strings() const;

  bool operator==(const Relation& other) const noexcept = default;

 private:
  std::size_t arity_;
  std::vector<TupleWord> tuples_;  // sorted ascending
};

// Cluster index (0-based) per vector.
using Partition = std::vector<std::uint32_t>;

// Ordered tuple of k centers of a common length m.
class CenterTuple {
 public:
  CenterTuple() = default;
  explicit CenterTuple(std::vector<BitVec> centers);
  // k zero centers of length m.
  CenterTuple(std::size_t k, std::size_t m) : centers_(k, BitVec(m)), dim_(m) {}

  std::size_t size() const noexcept { return centers_.size(); }
  std::size_t dim() const noexcept { return dim_; }
  const BitVec& operator[](std::size_t i) const noexcept { return centers_[i]; }
  const std::vector<BitVec>& centers() const noexcept { return centers_; }

  // Bits of all centers at position j, packed as a TupleWord.
  TupleWord column_word(std::size_t j) const noexcept;
  // Overwrites position j of every center with the bits of `t`.
  void set_column(std::size_t j, TupleWord t) noexcept;

  bool operator==(const CenterTuple& other) const noexcept = default;

 private:
  std::vector<BitVec> centers_;
  std::size_t dim_ = 0;
};

class KCenterInstance {
 public:
  // Validates: common vector length m, |relations| == m, every relation of
  // arity k. Empty relations are already rejected by Relation.
  KCenterInstance(std::vector<BitVec> vectors, std::size_t k, std::vector<Relation> relations);
  // Vectors of length m; explicit m allows n == 0.
  KCenterInstance(std::vector<BitVec> vectors, std::size_t k, std::vector<Relation> relations,
                  std::size_t m);

  std::size_t n() const noexcept { return vectors_.size(); }
  std::size_t m() const noexcept { return m_; }
  std::size_t k() const noexcept { return k_; }
  const std::vector<BitVec>& vectors() const noexcept { return vectors_; }
  const std::vector<Relation>& relations() const noexcept { return relations_; }

  bool operator==(const KCenterInstance& other) const noexcept = default;

 private:
  std::vector<BitVec> vectors_;
  std::size_t k_;
  std::vector<Relation> relations_;
  std::size_t m_;
};

using KCenterPtr = std::shared_ptr<const KCenterInstance>;

// A k-center instance plus a fixed assignment of vectors to clusters. The
// base instance is shared, so families of partitions do not copy the data.
class PartitionInstance {
 public:
  PartitionInstance(KCenterPtr base, Partition partition);

  const KCenterInstance& base() const noexcept { return *base_; }
  const KCenterPtr& base_ptr() const noexcept { return base_; }
  std::size_t n() const noexcept { return base_->n(); }
  std::size_t m() const noexcept { return base_->m(); }
  std::size_t k() const noexcept { return base_->k(); }
  const std::vector<BitVec>& vectors() const noexcept { return base_->vectors(); }
  const std::vector<Relation>& relations() const noexcept { return base_->relations(); }
  const Partition& partition() const noexcept { return partition_; }
  // Vector indices of cluster i, ascending. May be empty.
  const std::vector<std::uint32_t>& members(std::size_t i) const noexcept { return members_[i]; }

 private:
  KCenterPtr base_;
  Partition partition_;
  std::vector<std::vector<std::uint32_t>> members_;
};

// Partitioned instance with a non-negative offset d_x per vector; the
// objective is max over x of d_H(x, c_cluster(x)) + d_x.
class PartitionStarInstance {
 public:
  PartitionStarInstance(PartitionInstance inner, std::vector<std::size_t> offsets);

  const PartitionInstance& partitioned() const noexcept { return inner_; }
  std::size_t n() const noexcept { return inner_.n(); }
  std::size_t m() const noexcept { return inner_.m(); }
  std::size_t k() const noexcept { return inner_.k(); }
  const std::vector<BitVec>& vectors() const noexcept { return inner_.vectors(); }
  const std::vector<Relation>& relations() const noexcept { return inner_.relations(); }
  const Partition& partition() const noexcept { return inner_.partition(); }
  const std::vector<std::uint32_t>& members(std::size_t i) const noexcept {
    return inner_.members(i);
  }
  const std::vector<std::size_t>& offsets() const noexcept { return offsets_; }
  std::size_t max_offset() const noexcept;

 private:
  PartitionInstance inner_;
  std::vector<std::size_t> offsets_;
};

// (c_1[j], ..., c_k[j]) is in R_j for every position j.
bool satisfies(const CenterTuple& centers, const std::vector<Relation>& relations);

// max over x of min over centers of d_H(x, c).
std::size_t cost_kcenter(const std::vector<BitVec>& vectors, const CenterTuple& centers);
std::size_t cost_partition(const PartitionInstance& inst, const CenterTuple& centers);
std::size_t cost_partition_star(const PartitionStarInstance& inst, const CenterTuple& centers);

// Each vector goes to a nearest center; ties go to the lowest center index.
Partition induced_partition(const std::vector<BitVec>& vectors, const CenterTuple& centers);

// Projects vectors and relations onto `kept` (in increasing order) and
// attaches the offsets. Cluster assignment is preserved.
PartitionStarInstance restrict_instance(const PartitionInstance& inst, const PositionSet& kept,
                                        std::vector<std::size_t> offsets);

}  // namespace l1rank
