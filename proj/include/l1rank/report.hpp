#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "l1rank/model.hpp"

namespace l1rank {

enum class SolvePath {
  trivial,      // nothing to decide (no positions, or a zero-cost shortcut)
  exhaustive,   // exact enumeration of relation tuples
  lp_rounding,  // LP relaxation plus randomized rounding
  oracle,       // brute-force ground truth
};

const char* to_string(SolvePath p) noexcept;

// The r-subset guess that produced a partition-solver answer.
struct GuessRecord {
  std::vector<std::vector<std::uint32_t>> members;  // per cluster, r indices
  std::size_t agreement_size = 0;                   // |Q|
  std::size_t free_size = 0;                        // |Q̄|
  bool sampled = false;
};

// Where in the partition family the winning instance came from.
struct FamilyRecord {
  std::size_t member = 0;
  std::size_t ell = 0;
  std::uint64_t guess = 0;
  std::size_t family_size = 0;
  std::size_t sketch_dim = 0;
  bool sampled = false;
  bool shortcut = false;
};

struct SolveReport {
  std::string problem;
  std::size_t cost = 0;
  CenterTuple centers;
  std::optional<Partition> partition;
  std::optional<double> lp_lower_bound;
  SolvePath path = SolvePath::trivial;
  std::uint64_t seed = 0;
  std::optional<GuessRecord> guess;
  std::optional<FamilyRecord> family;
  std::size_t guesses_evaluated = 0;
  std::size_t roundings = 0;
  std::vector<std::string> caveats;
  double wall_ms = 0.0;
};

}  // namespace l1rank
