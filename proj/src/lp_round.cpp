#include "l1rank/lp_round.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "l1rank/error.hpp"

namespace l1rank {

LpFormulation build_lp(const PartitionStarInstance& inst) {
  LpFormulation f;
  const std::size_t m = inst.m();
  const auto& rels = inst.relations();

  f.var_offset.resize(m + 1, 0);
  for (std::size_t j = 0; j < m; ++j) f.var_offset[j + 1] = f.var_offset[j] + rels[j].size();
  f.d_index = f.var_offset[m];
  const std::size_t nvars = f.d_index + 1;

  auto& p = f.program;
  p.var_names.reserve(nvars);
  for (std::size_t j = 0; j < m; ++j) {
    for (auto t : rels[j].tuples()) {
      p.var_names.push_back("y_" + std::to_string(j) + "_" + rels[j].tuple_string(t));
    }
  }
  p.var_names.push_back("d");
  p.objective.assign(nvars, 0.0);
  p.objective[f.d_index] = 1.0;
  p.upper.assign(nvars, 1.0);
  p.upper[f.d_index] = std::numeric_limits<double>::infinity();

  for (std::size_t j = 0; j < m; ++j) {
    lp::Row row;
    row.name = "pos_" + std::to_string(j);
    row.coeffs.assign(nvars, 0.0);
    for (std::size_t t = 0; t < rels[j].size(); ++t) row.coeffs[f.var_offset[j] + t] = 1.0;
    row.sense = lp::Sense::eq;
    row.rhs = 1.0;
    p.rows.push_back(std::move(row));
  }
  f.position_rows = m;

  for (std::size_t x = 0; x < inst.n(); ++x) {
    const auto& v = inst.vectors()[x];
    const std::size_t cluster = inst.partition()[x];
    lp::Row row;
    row.name = "dist_" + std::to_string(x);
    row.coeffs.assign(nvars, 0.0);
    for (std::size_t j = 0; j < m; ++j) {
      for (std::size_t t = 0; t < rels[j].size(); ++t) {
        if (v.get(j) != tuple_bit(rels[j][t], cluster)) row.coeffs[f.var_offset[j] + t] = 1.0;
      }
    }
    row.coeffs[f.d_index] = -1.0;
    row.sense = lp::Sense::le;
    row.rhs = -static_cast<double>(inst.offsets()[x]);
    p.rows.push_back(std::move(row));
  }
  f.distance_rows = inst.n();
  return f;
}

bool FractionalSolution::integral(double tol) const {
  for (const auto& pos : y) {
    for (double v : pos) {
      if (v > tol && v < 1.0 - tol) return false;
    }
  }
  return true;
}

namespace {

double expected_objective(const PartitionStarInstance& inst,
                          const std::vector<std::vector<double>>& y) {
  double worst = 0.0;
  const auto& rels = inst.relations();
  for (std::size_t x = 0; x < inst.n(); ++x) {
    const auto& v = inst.vectors()[x];
    const std::size_t cluster = inst.partition()[x];
    double d = static_cast<double>(inst.offsets()[x]);
    for (std::size_t j = 0; j < inst.m(); ++j) {
      for (std::size_t t = 0; t < rels[j].size(); ++t) {
        if (v.get(j) != tuple_bit(rels[j][t], cluster)) d += y[j][t];
      }
    }
    worst = std::max(worst, d);
  }
  return worst;
}

}  // namespace

FractionalSolution solve_relaxation(const PartitionStarInstance& inst) {
  FractionalSolution frac;
  if (inst.m() == 0) {
    frac.objective = static_cast<double>(inst.max_offset());
    return frac;
  }
  const LpFormulation f = build_lp(inst);
  const lp::Result res = lp::solve(f.program);
  if (res.status != lp::Status::optimal) {
    throw ContractError(std::string("LP relaxation not solved to optimality: ") +
                        lp::to_string(res.status));
  }
  const auto& rels = inst.relations();
  frac.y.resize(inst.m());
  for (std::size_t j = 0; j < inst.m(); ++j) {
    auto& pos = frac.y[j];
    pos.resize(rels[j].size());
    double sum = 0.0;
    for (std::size_t t = 0; t < pos.size(); ++t) {
      double v = std::clamp(res.x[f.var_offset[j] + t], 0.0, 1.0);
      if (v < 1e-12) v = 0.0;
      pos[t] = v;
      sum += v;
    }
    if (sum <= 0.0) throw ContractError("LP relaxation returned an empty position");
    for (double& v : pos) v /= sum;
  }
  frac.objective = expected_objective(inst, frac.y);
  return frac;
}

double certified_lower_bound(const FractionalSolution& frac) { return frac.objective; }

CenterTuple round_once(const FractionalSolution& frac, const PartitionStarInstance& inst,
                       Rng& rng) {
  CenterTuple centers(inst.k(), inst.m());
  const auto& rels = inst.relations();
  for (std::size_t j = 0; j < inst.m(); ++j) {
    const auto& pos = frac.y[j];
    const double u = rng.uniform();
    double acc = 0.0;
    std::size_t pick = pos.size() - 1;
    for (std::size_t t = 0; t < pos.size(); ++t) {
      acc += pos[t];
      if (u < acc && pos[t] > 0.0) {
        pick = t;
        break;
      }
    }
    // Guard against a rounding-error tail landing on a zero-probability tuple.
    while (pos[pick] == 0.0 && pick > 0) --pick;
    centers.set_column(j, rels[j][pick]);
  }
  return centers;
}

std::size_t default_repeats(std::size_t n, double c, double delta) {
  const double ratio = c / delta;
  return static_cast<std::size_t>(
      std::ceil(3.0 * std::log(static_cast<double>(n) + 2.0) * ratio * ratio));
}

bool below_lp_threshold(std::size_t m, std::size_t n, double c, double delta) {
  const double logn = std::log(static_cast<double>(std::max<std::size_t>(n, 2)));
  return static_cast<double>(m) < 9.0 * c * c * logn / (delta * delta);
}

std::uint64_t tuple_product(const std::vector<Relation>& relations, std::uint64_t cap) {
  std::uint64_t product = 1;
  for (const auto& r : relations) {
    if (product > cap / r.size()) return cap + 1;
    product *= r.size();
    if (product > cap) return cap + 1;
  }
  return product;
}

namespace {

class StarSearch {
 public:
  explicit StarSearch(const PartitionStarInstance& inst)
      : inst_(inst), dist_(inst.offsets()), choice_(inst.m(), 0) {}

  void run() {
    const std::size_t start = inst_.max_offset();
    descend(0, start);
  }

  std::size_t best() const { return best_; }

  CenterTuple centers() const {
    CenterTuple c(inst_.k(), inst_.m());
    for (std::size_t j = 0; j < inst_.m(); ++j) {
      c.set_column(j, inst_.relations()[j][best_choice_[j]]);
    }
    return c;
  }

 private:
  void descend(std::size_t j, std::size_t current) {
    if (current >= best_) return;
    if (j == inst_.m()) {
      best_ = current;
      best_choice_ = choice_;
      return;
    }
    const auto& rel = inst_.relations()[j];
    // Try tuples in order of the objective they would leave behind.
    std::vector<std::pair<std::size_t, std::size_t>> order;
    order.reserve(rel.size());
    for (std::size_t t = 0; t < rel.size(); ++t) {
      std::size_t worst = current;
      for (std::size_t x = 0; x < inst_.n(); ++x) {
        const bool miss = inst_.vectors()[x].get(j) != tuple_bit(rel[t], inst_.partition()[x]);
        worst = std::max(worst, dist_[x] + miss);
      }
      order.emplace_back(worst, t);
    }
    std::stable_sort(order.begin(), order.end());
    for (auto [worst, t] : order) {
      if (worst >= best_) break;
      for (std::size_t x = 0; x < inst_.n(); ++x) {
        dist_[x] += inst_.vectors()[x].get(j) != tuple_bit(rel[t], inst_.partition()[x]);
      }
      choice_[j] = t;
      descend(j + 1, worst);
      for (std::size_t x = 0; x < inst_.n(); ++x) {
        dist_[x] -= inst_.vectors()[x].get(j) != tuple_bit(rel[t], inst_.partition()[x]);
      }
    }
  }

  const PartitionStarInstance& inst_;
  std::vector<std::size_t> dist_;
  std::vector<std::size_t> choice_;
  std::vector<std::size_t> best_choice_;
  std::size_t best_ = std::numeric_limits<std::size_t>::max();
};

}  // namespace

std::optional<SolveReport> solve_star_exhaustive(const PartitionStarInstance& inst,
                                                 std::uint64_t budget) {
  if (tuple_product(inst.relations(), budget) > budget) return std::nullopt;
  StarSearch search(inst);
  search.run();
  SolveReport rep;
  rep.problem = "partition-star";
  rep.centers = search.centers();
  rep.cost = search.best();
  rep.path = SolvePath::exhaustive;
  return rep;
}

SolveReport solve_star(const PartitionStarInstance& inst, double delta, double c,
                       std::uint64_t seed, const StarOptions& options) {
  if (!(delta > 0.0) || !(c > 0.0) || !(delta * c < 1.0)) {
    throw ParameterError("solve_star requires 0 < delta < 1/c");
  }
  if (inst.m() == 0) {
    SolveReport rep;
    rep.problem = "partition-star";
    rep.seed = seed;
    rep.centers = CenterTuple(inst.k(), 0);
    rep.cost = inst.max_offset();
    rep.lp_lower_bound = static_cast<double>(rep.cost);
    rep.path = SolvePath::trivial;
    return rep;
  }

  std::vector<std::string> caveats;
  if (!options.force_lp && below_lp_threshold(inst.m(), inst.n(), c, delta)) {
    if (auto rep = solve_star_exhaustive(inst, options.exhaustive_budget)) {
      rep->seed = seed;
      if (options.lower_bound_on_exhaustive) {
        rep->lp_lower_bound = certified_lower_bound(solve_relaxation(inst));
      }
      return *rep;
    }
    caveats.push_back("exhaustive tuple product exceeds budget below the LP threshold; "
                      "used LP rounding instead");
  }

  const FractionalSolution frac = solve_relaxation(inst);
  SolveReport rep;
  rep.problem = "partition-star";
  rep.seed = seed;
  rep.path = SolvePath::lp_rounding;
  rep.lp_lower_bound = certified_lower_bound(frac);
  rep.caveats = std::move(caveats);

  if (frac.integral()) {
    CenterTuple centers(inst.k(), inst.m());
    for (std::size_t j = 0; j < inst.m(); ++j) {
      const auto& pos = frac.y[j];
      const auto pick = static_cast<std::size_t>(
          std::max_element(pos.begin(), pos.end()) - pos.begin());
      centers.set_column(j, inst.relations()[j][pick]);
    }
    rep.cost = cost_partition_star(inst, centers);
    rep.centers = std::move(centers);
    return rep;
  }

  std::size_t repeats = options.repeats.value_or(
      std::min(default_repeats(inst.n(), c, delta), options.max_repeats));
  repeats = std::max<std::size_t>(repeats, 1);

  std::vector<std::size_t> costs(repeats);
  const auto trial = [&](std::size_t t) {
    Rng rng(seed, "round", {t});
    costs[t] = cost_partition_star(inst, round_once(frac, inst, rng));
  };
  if (options.exec == Exec::parallel) {
#pragma omp parallel for schedule(dynamic, 16)
    for (std::size_t t = 0; t < repeats; ++t) trial(t);
  } else {
    for (std::size_t t = 0; t < repeats; ++t) trial(t);
  }

  const auto best = static_cast<std::size_t>(
      std::min_element(costs.begin(), costs.end()) - costs.begin());
  Rng rng(seed, "round", {best});
  rep.centers = round_once(frac, inst, rng);
  rep.cost = costs[best];
  rep.roundings = repeats;
  return rep;
}

}  // namespace l1rank
