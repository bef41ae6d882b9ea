#include "l1rank/partition_solver.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <limits>
#include <numeric>

#include "l1rank/error.hpp"
#include "l1rank/random.hpp"

namespace l1rank {

std::size_t subset_size(double epsilon) {
  if (!(epsilon > 0.0)) throw ParameterError("epsilon must be positive");
  return static_cast<std::size_t>(std::ceil(1.0 + 4.0 / epsilon - 1e-12));
}

AgreementSplit agreement_positions(const SubsetGuess& guess, const PartitionInstance& inst) {
  const std::size_t m = inst.m();
  const std::size_t k = inst.k();
  if (guess.members.size() != k) throw DimensionError("guess has the wrong number of clusters");
  const auto& xs = inst.vectors();

  BitVec disagree(m);
  for (std::size_t i = 0; i < k; ++i) {
    const auto& chosen = guess.members[i];
    if (chosen.empty()) continue;
    const BitVec& rep = xs[chosen.front()];
    for (std::size_t s = 1; s < chosen.size(); ++s) disagree = disagree | (rep ^ xs[chosen[s]]);
  }

  std::vector<std::uint32_t> agree;
  std::vector<std::uint32_t> rest;
  std::vector<TupleWord> fixed;
  for (std::size_t j = 0; j < m; ++j) {
    if (!disagree.get(j)) {
      TupleWord t = 0;
      for (std::size_t i = 0; i < k; ++i) {
        const auto& chosen = guess.members[i];
        if (!chosen.empty() && xs[chosen.front()].get(j)) t |= TupleWord{1} << i;
      }
      if (inst.relations()[j].contains(t)) {
        agree.push_back(static_cast<std::uint32_t>(j));
        fixed.push_back(t);
        continue;
      }
    }
    rest.push_back(static_cast<std::uint32_t>(j));
  }
  return {PositionSet(m, std::move(agree)), PositionSet(m, std::move(rest)), std::move(fixed)};
}

CenterTuple stitch(const AgreementSplit& split, const CenterTuple& inner,
                   const std::vector<Relation>& relations) {
  const std::size_t m = split.agree.universe();
  if (inner.dim() != split.free.size()) {
    throw DimensionError("inner centers do not match the free position count");
  }
  const std::size_t k = inner.size();
  CenterTuple out(k, m);
  for (std::size_t q = 0; q < split.agree.size(); ++q) out.set_column(split.agree[q], split.fixed[q]);
  for (std::size_t q = 0; q < split.free.size(); ++q) {
    const std::size_t j = split.free[q];
    const TupleWord t = inner.column_word(q);
    if (!relations[j].contains(t)) {
      throw ContractError("inner solution violates the relation at position " + std::to_string(j));
    }
    out.set_column(j, t);
  }
  return out;
}

std::vector<std::size_t> agreement_offsets(const SubsetGuess& guess, const AgreementSplit& split,
                                           const PartitionInstance& inst) {
  std::vector<std::size_t> offsets(inst.n(), 0);
  for (std::size_t x = 0; x < inst.n(); ++x) {
    const auto& chosen = guess.members[inst.partition()[x]];
    // x's own cluster is non-empty, so it has a representative.
    offsets[x] = hamming_restricted(inst.vectors()[x], inst.vectors()[chosen.front()], split.agree);
  }
  return offsets;
}

namespace {

std::uint64_t binomial(std::uint64_t n, std::uint64_t k, std::uint64_t cap) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  unsigned __int128 acc = 1;
  for (std::uint64_t i = 1; i <= k; ++i) {
    acc = acc * (n - k + i) / i;
    if (acc > cap) return cap + 1;
  }
  return static_cast<std::uint64_t>(acc);
}

std::size_t chosen_size(const PartitionInstance& inst, std::size_t i, std::size_t r) {
  return std::min(r, inst.members(i).size());
}

void pad(std::vector<std::uint32_t>& chosen, std::size_t r) {
  if (chosen.empty()) return;
  while (chosen.size() < r) chosen.push_back(chosen.back());
}

// Lexicographic unranking of an s-subset of {0..n-1}.
std::vector<std::size_t> unrank_combination(std::size_t n, std::size_t s, std::uint64_t rank) {
  std::vector<std::size_t> out;
  out.reserve(s);
  std::size_t next = 0;
  for (std::size_t slot = 0; slot < s; ++slot) {
    for (std::size_t v = next; v < n; ++v) {
      const std::uint64_t count = binomial(n - v - 1, s - slot - 1,
                                           std::numeric_limits<std::uint64_t>::max() - 1);
      if (rank < count) {
        out.push_back(v);
        next = v + 1;
        break;
      }
      rank -= count;
    }
  }
  return out;
}

SubsetGuess sample_guess(const PartitionInstance& inst, std::size_t r, Rng& rng) {
  SubsetGuess g;
  g.members.resize(inst.k());
  for (std::size_t i = 0; i < inst.k(); ++i) {
    std::vector<std::uint32_t> pool = inst.members(i);
    const std::size_t s = chosen_size(inst, i, r);
    for (std::size_t t = 0; t < s; ++t) {
      const std::size_t pick = t + rng.below(pool.size() - t);
      std::swap(pool[t], pool[pick]);
    }
    pool.resize(s);
    std::sort(pool.begin(), pool.end());
    pad(pool, r);
    g.members[i] = std::move(pool);
  }
  return g;
}

std::uint64_t guess_hash(const SubsetGuess& g) {
  std::uint64_t h = 0x51ed2701u;
  for (const auto& cluster : g.members) {
    h = splitmix64(h ^ (cluster.size() + 0x9e37u));
    for (auto idx : cluster) h = splitmix64(h ^ idx);
  }
  return h;
}

struct Outcome {
  SolveReport star;
  AgreementSplit split;
  CenterTuple centers;
  std::size_t cost = 0;
};

Outcome evaluate(const PartitionInstance& inst, const SubsetGuess& guess, double delta, double c,
                 std::uint64_t seed, const StarOptions& star_options) {
  Outcome out;
  out.split = agreement_positions(guess, inst);
  auto offsets = agreement_offsets(guess, out.split, inst);
  const PartitionStarInstance star = restrict_instance(inst, out.split.free, std::move(offsets));
  out.star = solve_star(star, delta, c, derive_seed(seed, "star", {guess_hash(guess)}), star_options);
  out.centers = stitch(out.split, out.star.centers, inst.relations());
  out.cost = cost_partition(inst, out.centers);
  if (out.cost != out.star.cost) {
    throw ContractError("stitched cost " + std::to_string(out.cost) +
                        " differs from the sub-instance cost " + std::to_string(out.star.cost));
  }
  return out;
}

}  // namespace

std::uint64_t guess_count(const PartitionInstance& inst, std::size_t r, std::uint64_t cap) {
  std::uint64_t total = 1;
  for (std::size_t i = 0; i < inst.k(); ++i) {
    const std::size_t size = inst.members(i).size();
    const std::uint64_t c = binomial(size, chosen_size(inst, i, r), cap);
    if (c > cap || total > cap / c) return cap + 1;
    total *= c;
  }
  return total;
}

SubsetGuess guess_at(const PartitionInstance& inst, std::size_t r, std::uint64_t index) {
  const std::size_t k = inst.k();
  std::vector<std::uint64_t> digits(k, 0);
  for (std::size_t i = k; i-- > 0;) {
    const std::uint64_t c = binomial(inst.members(i).size(), chosen_size(inst, i, r),
                                     std::numeric_limits<std::uint64_t>::max() - 1);
    digits[i] = index % c;
    index /= c;
  }
  SubsetGuess g;
  g.members.resize(k);
  for (std::size_t i = 0; i < k; ++i) {
    const auto& pool = inst.members(i);
    for (auto pos : unrank_combination(pool.size(), chosen_size(inst, i, r), digits[i])) {
      g.members[i].push_back(pool[pos]);
    }
    pad(g.members[i], r);
  }
  return g;
}

SolveReport solve_partition(const PartitionInstance& inst, double epsilon, std::uint64_t seed,
                            const PartitionOptions& options) {
  if (!(epsilon > 0.0) || epsilon > 1.0) throw ParameterError("epsilon must lie in (0, 1]");
  if (options.guess_budget == 0) throw ParameterError("guess budget must be positive");

  const std::size_t k = inst.k();
  const std::size_t r = subset_size(epsilon);
  const double c = static_cast<double>(r * k);
  const double delta = epsilon / ((2.0 * epsilon + 8.0) * static_cast<double>(k));

  const std::uint64_t total = guess_count(inst, r, options.guess_budget);
  const bool sampled = total > options.guess_budget;
  const std::uint64_t count = sampled ? options.guess_budget : total;

  auto guess_for = [&](std::uint64_t g) {
    if (!sampled) return guess_at(inst, r, g);
    Rng rng(seed, "guess", {g});
    return sample_guess(inst, r, rng);
  };

  StarOptions star_options = options.star;
  std::vector<std::size_t> costs(count, std::numeric_limits<std::size_t>::max());
  std::exception_ptr failure;

  if (options.exec == Exec::parallel && count > 1) {
    star_options.exec = Exec::serial;
#pragma omp parallel for schedule(dynamic, 1)
    for (std::uint64_t g = 0; g < count; ++g) {
      try {
        costs[g] = evaluate(inst, guess_for(g), delta, c, seed, star_options).cost;
      } catch (...) {
#pragma omp critical(l1rank_partition_failure)
        if (!failure) failure = std::current_exception();
      }
    }
  } else {
    for (std::uint64_t g = 0; g < count; ++g) {
      costs[g] = evaluate(inst, guess_for(g), delta, c, seed, star_options).cost;
    }
  }
  if (failure) std::rethrow_exception(failure);

  const auto best = static_cast<std::uint64_t>(
      std::min_element(costs.begin(), costs.end()) - costs.begin());
  const SubsetGuess winner = guess_for(best);
  Outcome out = evaluate(inst, winner, delta, c, seed, star_options);

  SolveReport rep;
  rep.problem = "partition";
  rep.cost = out.cost;
  rep.centers = std::move(out.centers);
  rep.partition = inst.partition();
  rep.path = out.star.path;
  rep.seed = seed;
  rep.guess = GuessRecord{winner.members, out.split.agree.size(), out.split.free.size(), sampled};
  rep.guesses_evaluated = count;
  rep.roundings = out.star.roundings;
  if (epsilon >= 0.5) {
    rep.caveats.push_back("epsilon >= 1/2: outside the range with a proven guarantee");
  }
  if (sampled) {
    rep.caveats.push_back("subset guesses sampled: " + std::to_string(count) + " of more than " +
                          std::to_string(options.guess_budget));
  }
  for (auto& note : out.star.caveats) rep.caveats.push_back(std::move(note));

  if (options.lower_bound && inst.m() > 0) {
    const PartitionStarInstance whole(inst, std::vector<std::size_t>(inst.n(), 0));
    rep.lp_lower_bound = certified_lower_bound(solve_relaxation(whole));
  } else if (options.lower_bound) {
    rep.lp_lower_bound = 0.0;
  }
  return rep;
}

}  // namespace l1rank
