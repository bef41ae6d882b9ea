#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "l1rank/bitmatrix.hpp"
#include "l1rank/exec.hpp"
#include "l1rank/model.hpp"

namespace l1rank {

enum class FamilyMode { exact, sampled };

const char* to_string(FamilyMode mode) noexcept;
// Accepts "exact" or "sampled"; throws ParameterError otherwise.
FamilyMode parse_family_mode(const std::string& text);

struct SketchParams {
  double epsilon = 0.25;
  double gamma = 2.0;
  double lambda = 2.0;
  std::optional<std::size_t> dim;  // overrides the formula dimension
  std::size_t max_dim = 1024;      // cap applied to the formula in sampled mode

  // ceil(lambda ln(n + k) / eps^4), at least 1.
  std::size_t formula_dimension(std::size_t n, std::size_t k) const;
};

// eps^2 / ell, clamped to 1/2 for family generation.
double family_density(double epsilon, std::size_t ell);

struct SketchMatrix {
  BitMatrix a;  // m' x m
  std::size_t ell = 0;
  std::uint64_t seed = 0;
  double density = 0.0;
};

// Entries i.i.d. Bernoulli(min(1, eps^2 / ell)).
SketchMatrix draw_sketch(std::size_t m, std::size_t m_prime, std::size_t ell, double epsilon,
                         std::uint64_t seed);
SketchMatrix draw_sketch_with_density(std::size_t m, std::size_t m_prime, std::size_t ell,
                                      double density, std::uint64_t seed);

BitVec apply_sketch(const SketchMatrix& s, const BitVec& x);

struct DistortionReport {
  bool pass = false;
  std::optional<double> alpha;               // a witnessing scale when pass
  std::optional<std::size_t> violated_pair;  // index into the input when !pass
  int violated_condition = 0;                // 1, 2 or 3
};

// Each entry is (original distance, mapped distance). Conditions, for a
// common alpha > 0:
//   1. d < ell        ->  d' < (1 + delta) alpha ell
//   2. d > h          ->  d' > (1 - delta) alpha h
//   3. ell <= d <= h  ->  (1 - delta) alpha d <= d' <= (1 + delta) alpha d
// Each condition bounds alpha on one side, so the feasible set is an
// interval and is found exactly.
DistortionReport check_distortion_distances(
    const std::vector<std::pair<std::size_t, std::size_t>>& distances, double delta,
    double ell, double h);

DistortionReport check_distortion(const SketchMatrix& s,
                                  const std::vector<std::pair<BitVec, BitVec>>& pairs,
                                  double delta, double ell, double h);

struct FamilyOptions {
  FamilyMode mode = FamilyMode::sampled;
  std::uint64_t budget = 4096;  // total partitions considered across all ell
  SketchParams params;
  std::uint64_t seed = 0;
  Exec exec = Exec::parallel;
};

struct FamilyMember {
  PartitionInstance instance;
  std::size_t ell = 0;    // 0 for the zero-cost shortcut
  std::uint64_t guess = 0;
  CenterTuple sketched;   // the guessed centers in sketch space
};

struct PartitionFamily {
  std::vector<FamilyMember> members;
  FamilyMode mode = FamilyMode::sampled;
  std::size_t sketch_dim = 0;
  std::vector<std::size_t> ells;
  std::vector<double> densities;  // aligned with ells
  std::uint64_t guesses_per_ell = 0;
  bool shortcut = false;
  std::uint64_t seed = 0;
  std::vector<std::string> caveats;
};

// Exact mode enumerates every k-tuple of sketch-space centers for every ell
// in 1..m and throws BudgetError("family", ...) when m 2^(m'k) exceeds the
// budget. Sampled mode walks ell over 1, 2, 4, ... and draws budget/|grid|
// guesses per ell. Partitions are deduplicated, first occurrence kept, in
// (ell, guess) order. With at most k distinct vectors, a single zero-cost
// partition is returned when some labeling of the groups satisfies R.
PartitionFamily generate_family(const KCenterPtr& instance, const FamilyOptions& options);

// Used by the zero-cost shortcut: a partition of X into equal-vector groups
// whose common values fit the relations, if one exists.
std::optional<Partition> zero_cost_partition(const KCenterInstance& instance,
                                             std::uint64_t budget);

}  // namespace l1rank
