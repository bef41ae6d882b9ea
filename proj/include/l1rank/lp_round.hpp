#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "l1rank/exec.hpp"
#include "l1rank/model.hpp"
#include "l1rank/random.hpp"
#include "l1rank/report.hpp"
#include "l1rank/simplex.hpp"

namespace l1rank {

// 0/1 program for the offset-partitioned problem, relaxed to an LP:
//   min d
//   sum_t y[j,t] = 1                                for every position j
//   sum_j sum_t mismatch(x, j, t) y[j,t] - d <= -d_x  for every vector x
// where mismatch is 1 when x[j] differs from bit cluster(x) of tuple t.
struct LpFormulation {
  lp::LinearProgram program;
  std::vector<std::size_t> var_offset;  // y[j,t] is variable var_offset[j] + t
  std::size_t d_index = 0;
  std::size_t position_rows = 0;
  std::size_t distance_rows = 0;
};

LpFormulation build_lp(const PartitionStarInstance& inst);

// y[j][t] aligned with relations()[j].tuples(); each position sums to 1.
struct FractionalSolution {
  std::vector<std::vector<double>> y;
  double objective = 0.0;  // d' = max_x (d_x + expected distance)

  bool integral(double tol = 1e-9) const;
};

// Solves the relaxation and cleans the point: clamps to [0,1], renormalizes
// each position, and recomputes the objective from the cleaned values.
// Throws ContractError if the LP solver does not report an optimum.
FractionalSolution solve_relaxation(const PartitionStarInstance& inst);

// d', a lower bound on the integer optimum (up to LP tolerance 1e-9).
double certified_lower_bound(const FractionalSolution& frac);

// One independent draw per position with probabilities y[j][*].
CenterTuple round_once(const FractionalSolution& frac, const PartitionStarInstance& inst, Rng& rng);

// ceil(3 ln(n + 2) (c / delta)^2)
std::size_t default_repeats(std::size_t n, double c, double delta);

// m < 9 c^2 ln(n) / delta^2 selects exhaustive search; n is clamped to >= 2.
bool below_lp_threshold(std::size_t m, std::size_t n, double c, double delta);

// Product of relation sizes, saturating at `cap + 1`.
std::uint64_t tuple_product(const std::vector<Relation>& relations, std::uint64_t cap);

struct StarOptions {
  std::uint64_t exhaustive_budget = std::uint64_t{1} << 22;
  std::optional<std::size_t> repeats;  // default_repeats(), clamped to max_repeats
  std::size_t max_repeats = 2000;
  bool force_lp = false;
  bool lower_bound_on_exhaustive = false;
  Exec exec = Exec::parallel;
};

// Exact optimum by depth-first search over relation tuples with bound
// pruning. Returns nullopt when the tuple product exceeds `budget`.
std::optional<SolveReport> solve_star_exhaustive(const PartitionStarInstance& inst,
                                                 std::uint64_t budget);

// Requires 0 < delta < 1/c. Exhaustive below the LP threshold when the
// budget allows; otherwise LP relaxation plus best-of-repeats rounding.
SolveReport solve_star(const PartitionStarInstance& inst, double delta, double c,
                       std::uint64_t seed, const StarOptions& options = {});

}  // namespace l1rank
