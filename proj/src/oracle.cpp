#include "l1rank/oracle.hpp"

#include <algorithm>
#include <bit>
#include <limits>

#include "l1rank/error.hpp"
#include "l1rank/lp_round.hpp"

namespace l1rank {

namespace {

// Shared branch-and-bound. With a partition, each vector is charged against
// its own cluster's center plus its offset; without one, against the nearest
// center.
class TupleSearch {
 public:
  TupleSearch(const std::vector<BitVec>& vectors, const std::vector<Relation>& relations,
              std::size_t k, const Partition* partition, const std::vector<std::size_t>* offsets)
      : xs_(vectors), rels_(relations), k_(k), partition_(partition),
        dist_(vectors.size() * k, 0), choice_(relations.size(), 0) {
    if (offsets) {
      for (std::size_t x = 0; x < xs_.size(); ++x) {
        for (std::size_t i = 0; i < k_; ++i) dist_[x * k_ + i] = (*offsets)[x];
      }
    }
  }

  void run() { descend(0); }

  std::size_t best() const { return best_; }

  CenterTuple centers() const {
    CenterTuple c(k_, rels_.size());
    for (std::size_t j = 0; j < rels_.size(); ++j) c.set_column(j, rels_[j][best_choice_[j]]);
    return c;
  }

 private:
  std::size_t bound() const {
    std::size_t worst = 0;
    for (std::size_t x = 0; x < xs_.size(); ++x) {
      std::size_t d;
      if (partition_) {
        d = dist_[x * k_ + (*partition_)[x]];
      } else {
        d = *std::min_element(dist_.begin() + x * k_, dist_.begin() + (x + 1) * k_);
      }
      worst = std::max(worst, d);
    }
    return worst;
  }

  void apply(std::size_t j, TupleWord t, int sign) {
    for (std::size_t x = 0; x < xs_.size(); ++x) {
      const bool bit = xs_[x].get(j);
      for (std::size_t i = 0; i < k_; ++i) {
        if (bit != tuple_bit(t, i)) dist_[x * k_ + i] += sign;
      }
    }
  }

  void descend(std::size_t j) {
    const std::size_t lb = bound();
    if (lb >= best_) return;
    if (j == rels_.size()) {
      best_ = lb;
      best_choice_ = choice_;
      return;
    }
    for (std::size_t t = 0; t < rels_[j].size(); ++t) {
      apply(j, rels_[j][t], +1);
      choice_[j] = t;
      descend(j + 1);
      apply(j, rels_[j][t], -1);
    }
  }

  const std::vector<BitVec>& xs_;
  const std::vector<Relation>& rels_;
  std::size_t k_;
  const Partition* partition_;
  std::vector<std::size_t> dist_;
  std::vector<std::size_t> choice_;
  std::vector<std::size_t> best_choice_;
  std::size_t best_ = std::numeric_limits<std::size_t>::max();
};

void check_budget(const std::vector<Relation>& relations, std::uint64_t budget) {
  if (tuple_product(relations, budget) > budget) {
    throw BudgetError("oracle", "relation tuple product exceeds the budget of " +
                                    std::to_string(budget));
  }
}

SolveReport finish(const char* problem, const TupleSearch& search) {
  SolveReport rep;
  rep.problem = problem;
  rep.cost = search.best();
  rep.centers = search.centers();
  rep.path = SolvePath::oracle;
  return rep;
}

}  // namespace

SolveReport oracle_kcenter(const KCenterInstance& inst, std::uint64_t budget) {
  check_budget(inst.relations(), budget);
  if (inst.n() == 0) {
    // Any feasible tuple is optimal.
    SolveReport rep;
    rep.problem = "kcenter";
    rep.centers = CenterTuple(inst.k(), inst.m());
    for (std::size_t j = 0; j < inst.m(); ++j) rep.centers.set_column(j, inst.relations()[j][0]);
    rep.partition = Partition{};
    rep.path = SolvePath::oracle;
    return rep;
  }
  TupleSearch search(inst.vectors(), inst.relations(), inst.k(), nullptr, nullptr);
  search.run();
  SolveReport rep = finish("kcenter", search);
  rep.partition = induced_partition(inst.vectors(), rep.centers);
  return rep;
}

SolveReport oracle_partition(const PartitionInstance& inst, std::uint64_t budget) {
  check_budget(inst.relations(), budget);
  TupleSearch search(inst.vectors(), inst.relations(), inst.k(), &inst.partition(), nullptr);
  search.run();
  SolveReport rep = finish("partition", search);
  rep.partition = inst.partition();
  return rep;
}

SolveReport oracle_star(const PartitionStarInstance& inst, std::uint64_t budget) {
  check_budget(inst.relations(), budget);
  TupleSearch search(inst.vectors(), inst.relations(), inst.k(), &inst.partition(),
                     &inst.offsets());
  search.run();
  SolveReport rep = finish("partition-star", search);
  rep.partition = inst.partition();
  return rep;
}

RankOracleResult oracle_rank(const BitMatrix& a, std::size_t r, std::uint64_t budget) {
  const std::size_t m = a.rows();
  const std::size_t n = a.cols();
  if (r == 0) throw ParameterError("rank must be at least 1");
  const std::size_t bits = m * r;
  if (m > 63 || bits >= 63 || (std::uint64_t{1} << bits) > budget) {
    throw BudgetError("oracle", "2^(m r) basis choices exceed the budget of " +
                                    std::to_string(budget));
  }

  std::vector<std::uint64_t> cols(n, 0);
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t i = 0; i < m; ++i) {
      if (a.get(i, j)) cols[j] |= std::uint64_t{1} << i;
    }
  }
  const std::uint64_t mask = m == 0 ? 0 : (~std::uint64_t{0} >> (64 - m));
  const std::size_t span_size = std::size_t{1} << r;

  std::size_t best = std::numeric_limits<std::size_t>::max();
  std::uint64_t best_code = 0;
  std::vector<std::uint64_t> span(span_size);
  for (std::uint64_t code = 0; code < (std::uint64_t{1} << bits); ++code) {
    for (std::size_t s = 0; s < span_size; ++s) {
      std::uint64_t v = 0;
      for (std::size_t t = 0; t < r; ++t) {
        if ((s >> t) & 1u) v ^= (code >> (t * m)) & mask;
      }
      span[s] = v;
    }
    std::size_t worst = 0;
    for (std::size_t j = 0; j < n && worst < best; ++j) {
      std::size_t near = m + 1;
      for (auto v : span) near = std::min<std::size_t>(near, std::popcount(cols[j] ^ v));
      worst = std::max(worst, near);
    }
    if (worst < best) {
      best = worst;
      best_code = code;
    }
  }
  if (n == 0) best = 0;

  std::vector<BitVec> basis_cols(r, BitVec(m));
  for (std::size_t t = 0; t < r; ++t) {
    for (std::size_t i = 0; i < m; ++i) {
      if ((best_code >> (t * m + i)) & 1u) basis_cols[t].set(i);
    }
  }
  std::vector<BitVec> b_cols;
  b_cols.reserve(n);
  for (std::size_t j = 0; j < n; ++j) {
    std::size_t near = m + 1;
    std::uint64_t pick = 0;
    for (std::size_t s = 0; s < span_size; ++s) {
      std::uint64_t v = 0;
      for (std::size_t t = 0; t < r; ++t) {
        if ((s >> t) & 1u) v ^= (best_code >> (t * m)) & mask;
      }
      const auto d = static_cast<std::size_t>(std::popcount(cols[j] ^ v));
      if (d < near) {
        near = d;
        pick = v;
      }
    }
    BitVec col(m);
    for (std::size_t i = 0; i < m; ++i) {
      if ((pick >> i) & 1u) col.set(i);
    }
    b_cols.push_back(std::move(col));
  }
  return {BitMatrix::from_columns(b_cols, m), BitMatrix::from_columns(basis_cols, m), best};
}

ClosestStringOracleResult oracle_closest_string(const std::vector<BitVec>& strings,
                                                std::uint64_t budget) {
  if (strings.empty()) throw ParameterError("closest string needs at least one string");
  const std::size_t m = strings.front().size();
  if (m >= 63 || (std::uint64_t{1} << m) > budget) {
    throw BudgetError("oracle", "2^m candidate strings exceed the budget of " +
                                    std::to_string(budget));
  }
  std::vector<std::uint64_t> packed;
  for (const auto& s : strings) {
    if (s.size() != m) throw DimensionError("closest string inputs have differing lengths");
    packed.push_back(m == 0 ? 0 : s.words()[0]);
  }
  std::size_t best = m + 1;
  std::uint64_t best_c = 0;
  for (std::uint64_t c = 0; c < (std::uint64_t{1} << m); ++c) {
    std::size_t worst = 0;
    for (std::size_t i = 0; i < packed.size() && worst < best; ++i) {
      worst = std::max<std::size_t>(worst, std::popcount(packed[i] ^ c));
    }
    if (worst < best) {
      best = worst;
      best_c = c;
    }
  }
  BitVec center(m);
  for (std::size_t i = 0; i < m; ++i) center.set(i, (best_c >> i) & 1u);
  return {center, best};
}

}  // namespace l1rank
