#include "l1rank/model.hpp"

#include <algorithm>
#include <limits>

#include "l1rank/error.hpp"

namespace l1rank {

Relation::Relation(std::size_t arity, std::vector<TupleWord> tuples)
    : arity_(arity), tuples_(std::move(tuples)) {
  if (arity_ == 0 || arity_ > kMaxArity) {
    throw ParameterError("relation arity must be in [1, 64], got " + std::to_string(arity_));
  }
  if (tuples_.empty()) {
    throw ParameterError("relation is empty; the instance would be infeasible");
  }
  std::sort(tuples_.begin(), tuples_.end());
  if (std::adjacent_find(tuples_.begin(), tuples_.end()) != tuples_.end()) {
    throw ParameterError("relation contains duplicate tuples");
  }
  if (arity_ < kMaxArity && tuples_.back() >> arity_) {
    throw ParameterError("relation tuple has bits beyond its arity");
  }
}

Relation Relation::full(std::size_t arity) {
  if (arity == 0 || arity > 20) throw ParameterError("full relation arity must be in [1, 20]");
  std::vector<TupleWord> ts(std::size_t{1} << arity);
  for (std::size_t t = 0; t < ts.size(); ++t) ts[t] = t;
  return Relation(arity, std::move(ts));
}

Relation Relation::from_strings(const std::vector<std::string>& tuples) {
  if (tuples.empty()) throw ParameterError("relation is empty; the instance would be infeasible");
  const std::size_t arity = tuples.front().size();
  std::vector<TupleWord> words;
  words.reserve(tuples.size());
  for (const auto& s : tuples) {
    if (s.size() != arity) throw ParseError("relation tuples have differing lengths");
    TupleWord w = 0;
    for (std::size_t i = 0; i < s.size(); ++i) {
      if (s[i] == '1') {
        w |= TupleWord{1} << i;
      } else if (s[i] != '0') {
        throw ParseError("relation tuple \"" + s + "\" contains a character other than 0/1");
      }
    }
    words.push_back(w);
  }
  return Relation(arity, std::move(words));
}

bool Relation::contains(TupleWord t) const noexcept {
  return std::binary_search(tuples_.begin(), tuples_.end(), t);
}

std::string Relation::tuple_string(TupleWord t) const {
  std::string s(arity_, '0');
  for (std::size_t i = 0; i < arity_; ++i) {
    if (tuple_bit(t, i)) s[i] = '1';
  }
  return s;
}

std::vector<std::string> Relation::to_strings() const {
  std::vector<std::string> out;
  out.reserve(tuples_.size());
  for (auto t : tuples_) out.push_back(tuple_string(t));
  return out;
}

CenterTuple::CenterTuple(std::vector<BitVec> centers) : centers_(std::move(centers)) {
  dim_ = centers_.empty() ? 0 : centers_.front().size();
  for (const auto& c : centers_) {
    if (c.size() != dim_) throw DimensionError("centers have differing lengths");
  }
}

TupleWord CenterTuple::column_word(std::size_t j) const noexcept {
  TupleWord t = 0;
  for (std::size_t i = 0; i < centers_.size(); ++i) {
    if (centers_[i].get(j)) t |= TupleWord{1} << i;
  }
  return t;
}

void CenterTuple::set_column(std::size_t j, TupleWord t) noexcept {
  for (std::size_t i = 0; i < centers_.size(); ++i) centers_[i].set(j, tuple_bit(t, i));
}

KCenterInstance::KCenterInstance(std::vector<BitVec> vectors, std::size_t k,
                                 std::vector<Relation> relations)
    : KCenterInstance(std::move(vectors), k, std::move(relations),
                      std::numeric_limits<std::size_t>::max()) {}

KCenterInstance::KCenterInstance(std::vector<BitVec> vectors, std::size_t k,
                                 std::vector<Relation> relations, std::size_t m)
    : vectors_(std::move(vectors)), k_(k), relations_(std::move(relations)), m_(m) {
  if (m_ == std::numeric_limits<std::size_t>::max()) {
    m_ = vectors_.empty() ? relations_.size() : vectors_.front().size();
  }
  if (k_ == 0 || k_ > kMaxArity) {
    throw ParameterError("center count k must be in [1, 64], got " + std::to_string(k_));
  }
  for (const auto& v : vectors_) {
    if (v.size() != m_) throw DimensionError("input vectors have differing lengths");
  }
  if (relations_.size() != m_) {
    throw DimensionError("expected " + std::to_string(m_) + " relations, got " +
                         std::to_string(relations_.size()));
  }
  for (const auto& r : relations_) {
    if (r.arity() != k_) {
      throw DimensionError("relation arity " + std::to_string(r.arity()) + " differs from k = " +
                           std::to_string(k_));
    }
  }
}

PartitionInstance::PartitionInstance(KCenterPtr base, Partition partition)
    : base_(std::move(base)), partition_(std::move(partition)), members_(base_->k()) {
  if (partition_.size() != base_->n()) {
    throw DimensionError("partition assigns " + std::to_string(partition_.size()) +
                         " vectors, instance has " + std::to_string(base_->n()));
  }
  for (std::size_t x = 0; x < partition_.size(); ++x) {
    if (partition_[x] >= base_->k()) {
      throw ParameterError("partition assigns vector " + std::to_string(x) +
                           " to cluster outside [0, k)");
    }
    members_[partition_[x]].push_back(static_cast<std::uint32_t>(x));
  }
}

PartitionStarInstance::PartitionStarInstance(PartitionInstance inner,
                                             std::vector<std::size_t> offsets)
    : inner_(std::move(inner)), offsets_(std::move(offsets)) {
  if (offsets_.size() != inner_.n()) {
    throw DimensionError("offset count " + std::to_string(offsets_.size()) +
                         " differs from vector count " + std::to_string(inner_.n()));
  }
}

std::size_t PartitionStarInstance::max_offset() const noexcept {
  return offsets_.empty() ? 0 : *std::max_element(offsets_.begin(), offsets_.end());
}

namespace {

void require_compatible(const CenterTuple& centers, std::size_t k, std::size_t m) {
  if (centers.size() != k) {
    throw DimensionError("expected " + std::to_string(k) + " centers, got " +
                         std::to_string(centers.size()));
  }
  if (centers.dim() != m && k > 0) {
    throw DimensionError("centers have length " + std::to_string(centers.dim()) +
                         ", instance has m = " + std::to_string(m));
  }
}

}  // namespace

bool satisfies(const CenterTuple& centers, const std::vector<Relation>& relations) {
  if (centers.dim() != relations.size()) {
    throw DimensionError("center length differs from the number of relations");
  }
  for (std::size_t j = 0; j < relations.size(); ++j) {
    if (relations[j].arity() != centers.size()) {
      throw DimensionError("relation arity differs from the number of centers");
    }
    if (!relations[j].contains(centers.column_word(j))) return false;
  }
  return true;
}

std::size_t cost_kcenter(const std::vector<BitVec>& vectors, const CenterTuple& centers) {
  if (centers.size() == 0) throw ParameterError("cost of an empty center tuple is undefined");
  std::size_t worst = 0;
  for (const auto& x : vectors) {
    std::size_t best = std::numeric_limits<std::size_t>::max();
    for (const auto& c : centers.centers()) best = std::min(best, hamming(x, c));
    worst = std::max(worst, best);
  }
  return worst;
}

std::size_t cost_partition(const PartitionInstance& inst, const CenterTuple& centers) {
  require_compatible(centers, inst.k(), inst.m());
  std::size_t worst = 0;
  for (std::size_t x = 0; x < inst.n(); ++x) {
    worst = std::max(worst, hamming(inst.vectors()[x], centers[inst.partition()[x]]));
  }
  return worst;
}

std::size_t cost_partition_star(const PartitionStarInstance& inst, const CenterTuple& centers) {
  require_compatible(centers, inst.k(), inst.m());
  std::size_t worst = 0;
  for (std::size_t x = 0; x < inst.n(); ++x) {
    const std::size_t d =
        inst.m() == 0 ? 0 : hamming(inst.vectors()[x], centers[inst.partition()[x]]);
    worst = std::max(worst, d + inst.offsets()[x]);
  }
  return worst;
}

Partition induced_partition(const std::vector<BitVec>& vectors, const CenterTuple& centers) {
  if (centers.size() == 0) throw ParameterError("induced partition needs at least one center");
  Partition p(vectors.size(), 0);
  for (std::size_t x = 0; x < vectors.size(); ++x) {
    std::size_t best = std::numeric_limits<std::size_t>::max();
    for (std::size_t i = 0; i < centers.size(); ++i) {
      const std::size_t d = hamming(vectors[x], centers[i]);
      if (d < best) {
        best = d;
        p[x] = static_cast<std::uint32_t>(i);
      }
    }
  }
  return p;
}

PartitionStarInstance restrict_instance(const PartitionInstance& inst, const PositionSet& kept,
                                        std::vector<std::size_t> offsets) {
  if (kept.universe() != inst.m()) {
    throw DimensionError("restriction position set has the wrong universe");
  }
  std::vector<BitVec> vectors;
  vectors.reserve(inst.n());
  for (const auto& x : inst.vectors()) vectors.push_back(project(x, kept));
  std::vector<Relation> relations;
  relations.reserve(kept.size());
  for (auto j : kept) relations.push_back(inst.relations()[j]);
  auto base = std::make_shared<const KCenterInstance>(std::move(vectors), inst.k(),
                                                      std::move(relations), kept.size());
  return PartitionStarInstance(PartitionInstance(std::move(base), inst.partition()),
                               std::move(offsets));
}

}  // namespace l1rank
