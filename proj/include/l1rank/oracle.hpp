#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "l1rank/bitmatrix.hpp"
#include "l1rank/model.hpp"
#include "l1rank/report.hpp"

namespace l1rank {

// Exact solvers for tiny instances. Each one enumerates one relation tuple
// per position depth-first, keeping a running mismatch count per vector and
// cutting branches that cannot beat the best cost found so far. All of them
// throw BudgetError("oracle", ...) when the product of relation sizes (or
// 2^(mr) for the rank oracle) exceeds `budget`.
inline constexpr std::uint64_t kDefaultOracleBudget = std::uint64_t{1} << 24;

SolveReport oracle_kcenter(const KCenterInstance& inst,
                           std::uint64_t budget = kDefaultOracleBudget);
SolveReport oracle_partition(const PartitionInstance& inst,
                             std::uint64_t budget = kDefaultOracleBudget);
SolveReport oracle_star(const PartitionStarInstance& inst,
                        std::uint64_t budget = kDefaultOracleBudget);

struct RankOracleResult {
  BitMatrix b;      // best approximation, gf2_rank(b) <= r
  BitMatrix basis;  // m x r
  std::size_t cost = 0;
};

// Enumerates all r-tuples of basis vectors in {0,1}^m.
RankOracleResult oracle_rank(const BitMatrix& a, std::size_t r,
                             std::uint64_t budget = kDefaultOracleBudget);

struct ClosestStringOracleResult {
  BitVec center;
  std::size_t cost = 0;
};

// Enumerates all 2^m candidate strings; ties go to the smallest candidate.
ClosestStringOracleResult oracle_closest_string(const std::vector<BitVec>& strings,
                                                std::uint64_t budget = kDefaultOracleBudget);

}  // namespace l1rank
