#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "l1rank/bitmatrix.hpp"
#include "l1rank/exec.hpp"
#include "l1rank/model.hpp"
#include "l1rank/report.hpp"
#include "l1rank/sketch.hpp"

namespace l1rank {

struct Budgets {
  std::uint64_t family = 4096;                       // partitions across the ell grid
  std::uint64_t guess = 4096;                        // subset guesses per partition
  std::uint64_t exhaustive = std::uint64_t{1} << 22; // tuple combinations per sub-instance
  std::optional<std::size_t> lp_repeats;
  std::size_t max_repeats = 2000;
};

struct PipelineOptions {
  double epsilon = 0.5;
  std::uint64_t seed = 0;
  Budgets budgets;
  FamilyMode mode = FamilyMode::sampled;
  double gamma = 2.0;
  double lambda = 2.0;
  std::optional<std::size_t> sketch_dim;
  std::size_t max_sketch_dim = 1024;
  bool lower_bound = true;
  Exec exec = Exec::parallel;
};

// beta = eps/8; the family is built with beta and every member is solved by
// the partition solver with beta. The winner is the member whose centers
// have the smallest k-center cost. The reported lower bound is the LP bound
// of the partition the winning centers induce, which bounds their cost from
// below. Requires 0 < eps <= 1.
SolveReport solve_kcenter(const KCenterPtr& instance, const PipelineOptions& options);

struct RankSolution {
  BitMatrix b;
  BitMatrix basis;  // m x r
  std::size_t cost = 0;
  bool rank_check = false;  // gf2_rank(b) <= r, recomputed
  SolveReport report;
};

struct BooleanRankSolution {
  BitMatrix b;
  BitMatrix u;
  BitMatrix v;
  std::size_t cost = 0;
  bool factor_check = false;  // b == boolean_matmul(u, v) with r inner columns
  SolveReport report;
};

struct ProjectiveSolution {
  std::vector<BitMatrix> bases;
  std::size_t cost = 0;
  bool dimension_check = false;  // every basis has at most r columns of rank <= r
  SolveReport report;
};

struct ClosestStringSolution {
  BitVec center;
  std::size_t cost = 0;
  SolveReport report;
};

// Columns of `a` are the vectors.
RankSolution solve_rank(const BitMatrix& a, std::size_t r, const PipelineOptions& options);
BooleanRankSolution solve_boolean_rank(const BitMatrix& a, std::size_t r,
                                       const PipelineOptions& options);
ProjectiveSolution solve_projective(const std::vector<BitVec>& vectors, std::size_t r,
                                    std::size_t k, const PipelineOptions& options);
ClosestStringSolution solve_closest_string(const std::vector<BitVec>& strings,
                                           const PipelineOptions& options);

// max over x of the distance to the nearest member of any span.
std::size_t projective_cost(const std::vector<BitVec>& vectors,
                            const std::vector<BitMatrix>& bases);

}  // namespace l1rank
