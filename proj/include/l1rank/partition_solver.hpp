#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "l1rank/exec.hpp"
#include "l1rank/lp_round.hpp"
#include "l1rank/model.hpp"
#include "l1rank/report.hpp"

namespace l1rank {

// ceil(1 + 4/eps)
std::size_t subset_size(double epsilon);

// Per cluster, r member indices (vector indices into X). Clusters smaller
// than r repeat their last member; empty clusters have no entries. The
// first entry is the distinguished representative.
struct SubsetGuess {
  std::vector<std::vector<std::uint32_t>> members;
};

// Q: positions where every cluster's chosen members coincide and the
// representatives' joint tuple is allowed by R_j. fixed[i] is that tuple for
// the i-th position of Q.
struct AgreementSplit {
  PositionSet agree;
  PositionSet free;
  std::vector<TupleWord> fixed;
};

AgreementSplit agreement_positions(const SubsetGuess& guess, const PartitionInstance& inst);

// Full-length centers: `fixed` on Q, `inner` (indexed over Q̄) elsewhere.
// Throws ContractError if inner violates the relations restricted to Q̄.
CenterTuple stitch(const AgreementSplit& split, const CenterTuple& inner,
                   const std::vector<Relation>& relations);

// Offsets d_x = d_H^Q(x, representative of x's cluster).
std::vector<std::size_t> agreement_offsets(const SubsetGuess& guess, const AgreementSplit& split,
                                           const PartitionInstance& inst);

struct PartitionOptions {
  std::uint64_t guess_budget = 4096;
  StarOptions star;
  bool lower_bound = true;  // LP bound on the partitioned instance
  Exec exec = Exec::parallel;
};

// Number of subset guesses, saturating at cap + 1.
std::uint64_t guess_count(const PartitionInstance& inst, std::size_t r, std::uint64_t cap);

// The guess at `index` in lexicographic (cluster, member) order.
SubsetGuess guess_at(const PartitionInstance& inst, std::size_t r, std::uint64_t index);

// Requires 0 < eps <= 1; eps >= 1/2 is accepted with a caveat in the report.
// Every guess is enumerated when guess_count <= guess_budget, otherwise
// guess_budget guesses are sampled uniformly.
SolveReport solve_partition(const PartitionInstance& inst, double epsilon, std::uint64_t seed,
                            const PartitionOptions& options = {});

}  // namespace l1rank
