#pragma once

// Brute-force reference implementations used only by tests. They avoid the
// library's distance and cost helpers so that agreement is meaningful.

#include <cstddef>
#include <cstdint>
#include <vector>

#include "l1rank/bitmatrix.hpp"
#include "l1rank/model.hpp"

namespace l1rank::testing {

std::size_t naive_distance(const BitVec& x, const BitVec& y);

// Largest linearly independent subset of rows, by enumerating subsets.
std::size_t naive_rank(const BitMatrix& m);

// Full product enumeration, no pruning.
std::size_t naive_kcenter(const KCenterInstance& inst);
std::size_t naive_partition(const PartitionInstance& inst);
std::size_t naive_star(const PartitionStarInstance& inst);

// Enumerates every string of length m.
std::size_t naive_closest_string(const std::vector<BitVec>& strings);

// Whether b == u (OR-AND) v for some m x r u and r x n v.
bool naive_boolean_rank_at_most(const BitMatrix& b, std::size_t r);

// k subspaces of dimension <= 1 (each the span of one vector).
std::size_t naive_projective_rank1(const std::vector<BitVec>& vectors, std::size_t k);

// All k^n cluster assignments; min over them of the partitioned cost.
std::size_t naive_best_partition_cost(const std::vector<BitVec>& vectors,
                                      const CenterTuple& centers);

}  // namespace l1rank::testing
