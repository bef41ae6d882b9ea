#include "l1rank/sketch.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <unordered_map>
#include <unordered_set>

#include "l1rank/error.hpp"
#include "l1rank/random.hpp"

namespace l1rank {

const char* to_string(FamilyMode mode) noexcept {
  return mode == FamilyMode::exact ? "exact" : "sampled";
}

FamilyMode parse_family_mode(const std::string& text) {
  if (text == "exact") return FamilyMode::exact;
  if (text == "sampled") return FamilyMode::sampled;
  throw ParameterError("unknown family mode '" + text + "'");
}

std::size_t SketchParams::formula_dimension(std::size_t n, std::size_t k) const {
  const double e4 = std::pow(epsilon, 4.0);
  const double raw = std::ceil(lambda * std::log(static_cast<double>(n + k)) / e4);
  if (!(raw >= 1.0)) return 1;
  if (raw > 1e15) return static_cast<std::size_t>(1e15);
  return static_cast<std::size_t>(raw);
}

double family_density(double epsilon, std::size_t ell) {
  return std::min(epsilon * epsilon / static_cast<double>(ell), 0.5);
}

SketchMatrix draw_sketch_with_density(std::size_t m, std::size_t m_prime, std::size_t ell,
                                      double density, std::uint64_t seed) {
  if (m_prime == 0) throw ParameterError("sketch dimension must be positive");
  if (ell == 0) throw ParameterError("ell must be at least 1");
  if (!(density > 0.0)) throw ParameterError("sketch density must be positive");
  density = std::min(density, 1.0);
  Rng rng(seed, "sketch-entries");
  std::vector<BitVec> rows;
  rows.reserve(m_prime);
  for (std::size_t i = 0; i < m_prime; ++i) {
    BitVec row(m);
    for (std::size_t j = 0; j < m; ++j) {
      if (rng.bernoulli(density)) row.set(j);
    }
    rows.push_back(std::move(row));
  }
  return {BitMatrix::from_rows(std::move(rows), m), ell, seed, density};
}

SketchMatrix draw_sketch(std::size_t m, std::size_t m_prime, std::size_t ell, double epsilon,
                         std::uint64_t seed) {
  if (ell == 0) throw ParameterError("ell must be at least 1");
  return draw_sketch_with_density(m, m_prime, ell, epsilon * epsilon / static_cast<double>(ell),
                                  seed);
}

BitVec apply_sketch(const SketchMatrix& s, const BitVec& x) { return gf2_apply(s.a, x); }

DistortionReport check_distortion_distances(
    const std::vector<std::pair<std::size_t, std::size_t>>& distances, double delta,
    double ell, double h) {
  struct Bound {
    double value;
    bool strict;
    std::optional<std::size_t> pair;
    int condition;
  };
  Bound lo{0.0, true, std::nullopt, 0};
  Bound hi{std::numeric_limits<double>::infinity(), true, std::nullopt, 0};
  DistortionReport rep;

  auto raise_lo = [&](double v, bool strict, std::size_t i, int cond) {
    if (v > lo.value || (v == lo.value && strict && !lo.strict)) lo = {v, strict, i, cond};
  };
  auto lower_hi = [&](double v, bool strict, std::size_t i, int cond) {
    if (v < hi.value || (v == hi.value && strict && !hi.strict)) hi = {v, strict, i, cond};
  };

  for (std::size_t i = 0; i < distances.size(); ++i) {
    const double d = static_cast<double>(distances[i].first);
    const double dm = static_cast<double>(distances[i].second);
    if (d < ell) raise_lo(dm / ((1.0 + delta) * ell), true, i, 1);
    if (d > h) {
      const double a = (1.0 - delta) * h;
      if (a > 0.0) {
        lower_hi(dm / a, true, i, 2);
      } else if (a == 0.0 && dm <= 0.0) {
        rep.violated_pair = i;
        rep.violated_condition = 2;
        return rep;
      }
    }
    if (d >= ell && d <= h) {
      if (d == 0.0) {
        if (dm != 0.0) {
          rep.violated_pair = i;
          rep.violated_condition = 3;
          return rep;
        }
        continue;
      }
      raise_lo(dm / ((1.0 + delta) * d), false, i, 3);
      if (delta < 1.0) lower_hi(dm / ((1.0 - delta) * d), false, i, 3);
    }
  }

  const bool feasible =
      lo.value < hi.value || (lo.value == hi.value && !lo.strict && !hi.strict);
  if (!feasible) {
    const Bound& culprit = hi.pair ? hi : lo;
    rep.violated_pair = culprit.pair;
    rep.violated_condition = culprit.condition;
    return rep;
  }
  rep.pass = true;
  if (std::isinf(hi.value)) {
    rep.alpha = lo.value > 0.0 ? lo.value * (lo.strict ? 2.0 : 1.0) : 1.0;
  } else if (lo.value == hi.value) {
    rep.alpha = lo.value;
  } else {
    rep.alpha = 0.5 * (lo.value + hi.value);
  }
  return rep;
}

DistortionReport check_distortion(const SketchMatrix& s,
                                  const std::vector<std::pair<BitVec, BitVec>>& pairs,
                                  double delta, double ell, double h) {
  std::vector<std::pair<std::size_t, std::size_t>> distances;
  distances.reserve(pairs.size());
  for (const auto& [x, y] : pairs) {
    distances.emplace_back(hamming(x, y), hamming(apply_sketch(s, x), apply_sketch(s, y)));
  }
  return check_distortion_distances(distances, delta, ell, h);
}

namespace {

struct PartitionHash {
  std::size_t operator()(const Partition& p) const noexcept {
    std::uint64_t h = 0x2545f491u;
    for (auto v : p) h = splitmix64(h ^ v);
    return static_cast<std::size_t>(h);
  }
};

struct Candidate {
  std::uint64_t guess;
  Partition partition;
  CenterTuple sketched;
};

Partition nearest(const std::vector<BitVec>& images, const std::vector<BitVec>& centers) {
  Partition p(images.size(), 0);
  for (std::size_t x = 0; x < images.size(); ++x) {
    std::size_t best = std::numeric_limits<std::size_t>::max();
    for (std::size_t i = 0; i < centers.size(); ++i) {
      const std::size_t d = hamming(images[x], centers[i]);
      if (d < best) {
        best = d;
        p[x] = static_cast<std::uint32_t>(i);
      }
    }
  }
  return p;
}

std::vector<BitVec> exact_centers(std::uint64_t g, std::size_t k, std::size_t dim) {
  std::vector<BitVec> centers(k, BitVec(dim));
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t b = 0; b < dim; ++b) {
      if ((g >> (i * dim + b)) & 1u) centers[i].set(b);
    }
  }
  return centers;
}

std::vector<BitVec> sampled_centers(const std::vector<BitVec>& images, std::size_t k,
                                    std::size_t dim, Rng& rng) {
  const std::size_t n = images.size();
  const std::size_t seeded = static_cast<std::size_t>(rng.below(std::min(k, n) + 1));
  std::vector<std::size_t> sources(n);
  std::iota(sources.begin(), sources.end(), 0);
  std::vector<std::size_t> slots(k);
  std::iota(slots.begin(), slots.end(), 0);
  for (std::size_t t = 0; t < seeded; ++t) {
    std::swap(sources[t], sources[t + rng.below(n - t)]);
    std::swap(slots[t], slots[t + rng.below(k - t)]);
  }
  std::vector<BitVec> centers(k, BitVec(dim));
  std::vector<bool> filled(k, false);
  for (std::size_t t = 0; t < seeded; ++t) {
    centers[slots[t]] = images[sources[t]];
    filled[slots[t]] = true;
  }
  for (std::size_t i = 0; i < k; ++i) {
    if (filled[i]) continue;
    for (std::size_t b = 0; b < dim; ++b) {
      if (rng.next() & 1u) centers[i].set(b);
    }
  }
  return centers;
}

std::vector<Candidate> candidates_for_ell(const KCenterInstance& inst, std::size_t ell,
                                          std::size_t dim, double density, std::uint64_t guesses,
                                          FamilyMode mode, std::uint64_t seed) {
  const SketchMatrix s =
      draw_sketch_with_density(inst.m(), dim, ell, density, derive_seed(seed, "sketch", {ell}));
  std::vector<BitVec> images;
  images.reserve(inst.n());
  for (const auto& x : inst.vectors()) images.push_back(apply_sketch(s, x));

  std::vector<Candidate> out;
  std::unordered_set<Partition, PartitionHash> seen;
  for (std::uint64_t g = 0; g < guesses; ++g) {
    std::vector<BitVec> centers;
    if (mode == FamilyMode::exact) {
      centers = exact_centers(g, inst.k(), dim);
    } else {
      Rng rng(seed, "family-guess", {ell, g});
      centers = sampled_centers(images, inst.k(), dim, rng);
    }
    Partition p = nearest(images, centers);
    if (!seen.insert(p).second) continue;
    out.push_back({g, std::move(p), CenterTuple(std::move(centers))});
  }
  return out;
}

}  // namespace

std::optional<Partition> zero_cost_partition(const KCenterInstance& instance,
                                             std::uint64_t budget) {
  const std::size_t n = instance.n();
  const std::size_t k = instance.k();
  std::unordered_map<BitVec, std::uint32_t, BitVecHash> group_of;
  std::vector<std::uint32_t> group(n);
  std::vector<const BitVec*> reps;
  for (std::size_t x = 0; x < n; ++x) {
    auto [it, inserted] =
        group_of.emplace(instance.vectors()[x], static_cast<std::uint32_t>(reps.size()));
    if (inserted) reps.push_back(&instance.vectors()[x]);
    group[x] = it->second;
  }
  const std::size_t d = reps.size();
  if (d > k) return std::nullopt;

  auto fits = [&](const std::vector<std::uint32_t>& label) {
    TupleWord mask = 0;
    for (auto c : label) mask |= TupleWord{1} << c;
    for (std::size_t j = 0; j < instance.m(); ++j) {
      TupleWord bits = 0;
      for (std::size_t g = 0; g < d; ++g) {
        if (reps[g]->get(j)) bits |= TupleWord{1} << label[g];
      }
      const auto& tuples = instance.relations()[j].tuples();
      if (std::none_of(tuples.begin(), tuples.end(),
                       [&](TupleWord t) { return (t & mask) == bits; })) {
        return false;
      }
    }
    return true;
  };

  // Injective labelings of the d groups, lexicographic.
  std::vector<std::uint32_t> label(d, 0);
  std::vector<bool> used(k, false);
  std::uint64_t tried = 0;
  std::optional<std::vector<std::uint32_t>> found;
  auto search = [&](auto&& self, std::size_t g) -> void {
    if (found || tried >= budget) return;
    if (g == d) {
      ++tried;
      if (fits(label)) found = label;
      return;
    }
    for (std::uint32_t c = 0; c < k && !found; ++c) {
      if (used[c]) continue;
      used[c] = true;
      label[g] = c;
      self(self, g + 1);
      used[c] = false;
    }
  };
  search(search, 0);
  if (!found) return std::nullopt;

  Partition p(n);
  for (std::size_t x = 0; x < n; ++x) p[x] = (*found)[group[x]];
  return p;
}

PartitionFamily generate_family(const KCenterPtr& instance, const FamilyOptions& options) {
  const KCenterInstance& inst = *instance;
  const auto& params = options.params;
  if (!(params.epsilon > 0.0)) throw ParameterError("sketch epsilon must be positive");
  if (options.budget == 0) throw ParameterError("family budget must be positive");

  PartitionFamily fam;
  fam.mode = options.mode;
  fam.seed = options.seed;

  if (auto p = zero_cost_partition(inst, options.budget)) {
    fam.shortcut = true;
    fam.members.push_back({PartitionInstance(instance, std::move(*p)), 0, 0, CenterTuple()});
    return fam;
  }

  const std::size_t m = inst.m();
  const std::size_t k = inst.k();
  const std::size_t formula = params.formula_dimension(inst.n(), k);

  if (options.mode == FamilyMode::exact) {
    fam.sketch_dim = params.dim.value_or(formula);
    const std::size_t bits = fam.sketch_dim * k;
    const bool fits = bits < 63 && m <= options.budget &&
                      (std::uint64_t{1} << bits) <= options.budget / std::max<std::size_t>(m, 1);
    if (!fits) {
      throw BudgetError("family", "exact mode needs m * 2^(m'k) = " + std::to_string(m) +
                                      " * 2^" + std::to_string(bits) + " guesses, budget is " +
                                      std::to_string(options.budget) + "; use sampled mode");
    }
    for (std::size_t ell = 1; ell <= m; ++ell) fam.ells.push_back(ell);
    fam.guesses_per_ell = std::uint64_t{1} << bits;
  } else {
    if (params.dim) {
      fam.sketch_dim = *params.dim;
    } else {
      fam.sketch_dim = std::min(formula, params.max_dim);
      if (formula > params.max_dim) {
        fam.caveats.push_back("sketch dimension capped from " + std::to_string(formula) + " to " +
                              std::to_string(params.max_dim));
      }
    }
    for (std::size_t ell = 1; ell <= m; ell *= 2) fam.ells.push_back(ell);
    fam.guesses_per_ell =
        std::max<std::uint64_t>(1, options.budget / std::max<std::size_t>(fam.ells.size(), 1));
    fam.caveats.push_back("sampled family: center guesses are drawn, not enumerated");
  }
  if (fam.sketch_dim == 0) throw ParameterError("sketch dimension must be positive");

  for (auto ell : fam.ells) {
    const double p = family_density(params.epsilon, ell);
    fam.densities.push_back(p);
  }

  std::vector<std::vector<Candidate>> per_ell(fam.ells.size());
  const auto run = [&](std::size_t e) {
    per_ell[e] = candidates_for_ell(inst, fam.ells[e], fam.sketch_dim, fam.densities[e],
                                    fam.guesses_per_ell, options.mode, options.seed);
  };
  if (options.exec == Exec::parallel) {
#pragma omp parallel for schedule(dynamic, 1)
    for (std::size_t e = 0; e < fam.ells.size(); ++e) run(e);
  } else {
    for (std::size_t e = 0; e < fam.ells.size(); ++e) run(e);
  }

  std::unordered_set<Partition, PartitionHash> seen;
  for (std::size_t e = 0; e < fam.ells.size(); ++e) {
    for (auto& cand : per_ell[e]) {
      if (!seen.insert(cand.partition).second) continue;
      fam.members.push_back({PartitionInstance(instance, std::move(cand.partition)), fam.ells[e],
                             cand.guess, std::move(cand.sketched)});
    }
  }
  return fam;
}

}  // namespace l1rank
