#include "l1rank/pipeline.hpp"

#include <algorithm>
#include <chrono>
#include <exception>
#include <limits>

#include "l1rank/encode.hpp"
#include "l1rank/error.hpp"
#include "l1rank/lp_round.hpp"
#include "l1rank/partition_solver.hpp"
#include "l1rank/random.hpp"

namespace l1rank {

namespace {

std::uint64_t partition_hash(const Partition& p) {
  std::uint64_t h = 0x7f4a7c15u;
  for (auto v : p) h = splitmix64(h ^ v);
  return h;
}

PartitionOptions member_options(const PipelineOptions& o) {
  PartitionOptions p;
  p.guess_budget = o.budgets.guess;
  p.star.exhaustive_budget = o.budgets.exhaustive;
  p.star.repeats = o.budgets.lp_repeats;
  p.star.max_repeats = o.budgets.max_repeats;
  p.lower_bound = false;
  return p;
}

}  // namespace

SolveReport solve_kcenter(const KCenterPtr& instance, const PipelineOptions& options) {
  const auto start = std::chrono::steady_clock::now();
  const double eps = options.epsilon;
  if (!(eps > 0.0) || eps > 1.0) throw ParameterError("epsilon must lie in (0, 1]");
  const double beta = eps / 8.0;
  const KCenterInstance& inst = *instance;

  FamilyOptions fo;
  fo.mode = options.mode;
  fo.budget = options.budgets.family;
  fo.params.epsilon = beta;
  fo.params.gamma = options.gamma;
  fo.params.lambda = options.lambda;
  fo.params.dim = options.sketch_dim;
  fo.params.max_dim = options.max_sketch_dim;
  fo.seed = derive_seed(options.seed, "family");
  fo.exec = options.exec;
  const PartitionFamily family = generate_family(instance, fo);

  PartitionOptions po = member_options(options);
  const std::size_t count = family.members.size();
  std::vector<SolveReport> reports(count);
  std::vector<std::size_t> kcost(count, std::numeric_limits<std::size_t>::max());
  std::exception_ptr failure;

  const auto solve_member = [&](std::size_t i) {
    const auto& member = family.members[i];
    const std::uint64_t seed =
        derive_seed(options.seed, "member", {partition_hash(member.instance.partition())});
    reports[i] = solve_partition(member.instance, beta, seed, po);
    kcost[i] = cost_kcenter(inst.vectors(), reports[i].centers);
  };
  if (options.exec == Exec::parallel && count > 1) {
    po.exec = Exec::serial;
    po.star.exec = Exec::serial;
#pragma omp parallel for schedule(dynamic, 1)
    for (std::size_t i = 0; i < count; ++i) {
      try {
        solve_member(i);
      } catch (...) {
#pragma omp critical(l1rank_pipeline_failure)
        if (!failure) failure = std::current_exception();
      }
    }
  } else {
    for (std::size_t i = 0; i < count; ++i) solve_member(i);
  }
  if (failure) std::rethrow_exception(failure);

  const auto best = static_cast<std::size_t>(
      std::min_element(kcost.begin(), kcost.end()) - kcost.begin());
  SolveReport& win = reports[best];
  if (!satisfies(win.centers, inst.relations())) {
    throw ContractError("pipeline produced centers that violate the relations");
  }

  SolveReport rep;
  rep.problem = "kcenter";
  rep.centers = win.centers;
  rep.cost = kcost[best];
  rep.partition = induced_partition(inst.vectors(), rep.centers);
  rep.path = family.shortcut ? SolvePath::trivial : win.path;
  rep.seed = options.seed;
  rep.guess = win.guess;
  const auto& member = family.members[best];
  rep.family = FamilyRecord{best,          member.ell,  member.guess,
                            count,         family.sketch_dim,
                            family.mode == FamilyMode::sampled, family.shortcut};
  for (const auto& r : reports) rep.guesses_evaluated += r.guesses_evaluated;
  rep.roundings = win.roundings;
  rep.caveats = family.caveats;
  if (eps >= 0.5) rep.caveats.push_back("epsilon >= 1/2: outside the range with a proven guarantee");
  for (const auto& note : win.caveats) {
    if (std::find(rep.caveats.begin(), rep.caveats.end(), note) == rep.caveats.end()) {
      rep.caveats.push_back(note);
    }
  }

  if (options.lower_bound) {
    if (inst.m() == 0 || inst.n() == 0) {
      rep.lp_lower_bound = 0.0;
    } else {
      const PartitionStarInstance induced(PartitionInstance(instance, *rep.partition),
                                          std::vector<std::size_t>(inst.n(), 0));
      rep.lp_lower_bound = certified_lower_bound(solve_relaxation(induced));
    }
  }
  rep.wall_ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return rep;
}

RankSolution solve_rank(const BitMatrix& a, std::size_t r, const PipelineOptions& options) {
  auto inst = std::make_shared<const KCenterInstance>(encode_gf2_rank(a, r));
  RankSolution out;
  out.report = solve_kcenter(inst, options);
  out.report.problem = "rank";
  RankDecoding dec = decode_gf2_rank(a, r, out.report.centers);
  out.cost = column_sum_norm(a ^ dec.b);
  if (out.cost != out.report.cost) {
    throw ContractError("decoded matrix cost differs from the center cost");
  }
  out.rank_check = gf2_rank(dec.b) <= r;
  out.b = std::move(dec.b);
  out.basis = std::move(dec.basis);
  return out;
}

BooleanRankSolution solve_boolean_rank(const BitMatrix& a, std::size_t r,
                                       const PipelineOptions& options) {
  auto inst = std::make_shared<const KCenterInstance>(encode_boolean_rank(a, r));
  BooleanRankSolution out;
  out.report = solve_kcenter(inst, options);
  out.report.problem = "boolean-rank";
  BooleanDecoding dec = decode_boolean_rank(a, r, out.report.centers);
  out.cost = column_sum_norm(a ^ dec.b);
  if (out.cost != out.report.cost) {
    throw ContractError("decoded matrix cost differs from the center cost");
  }
  out.factor_check = dec.u.cols() == r && dec.v.rows() == r && boolean_matmul(dec.u, dec.v) == dec.b;
  out.b = std::move(dec.b);
  out.u = std::move(dec.u);
  out.v = std::move(dec.v);
  return out;
}

std::size_t projective_cost(const std::vector<BitVec>& vectors,
                            const std::vector<BitMatrix>& bases) {
  std::vector<BitVec> members;
  for (const auto& basis : bases) {
    const auto cols = basis.columns();
    const std::size_t r = cols.size();
    for (std::size_t s = 0; s < (std::size_t{1} << r); ++s) {
      BitVec v(basis.rows());
      for (std::size_t t = 0; t < r; ++t) {
        if ((s >> t) & 1u) v = v ^ cols[t];
      }
      members.push_back(std::move(v));
    }
  }
  std::size_t worst = 0;
  for (const auto& x : vectors) {
    std::size_t near = std::numeric_limits<std::size_t>::max();
    for (const auto& v : members) near = std::min(near, hamming(x, v));
    worst = std::max(worst, near);
  }
  return worst;
}

ProjectiveSolution solve_projective(const std::vector<BitVec>& vectors, std::size_t r,
                                    std::size_t k, const PipelineOptions& options) {
  auto inst = std::make_shared<const KCenterInstance>(encode_projective(vectors, r, k));
  ProjectiveSolution out;
  out.report = solve_kcenter(inst, options);
  out.report.problem = "projective";
  ProjectiveDecoding dec = decode_projective(vectors, r, k, out.report.centers);
  out.cost = projective_cost(vectors, dec.bases);
  if (out.cost != out.report.cost) {
    throw ContractError("subspace cost differs from the center cost");
  }
  out.dimension_check = std::all_of(dec.bases.begin(), dec.bases.end(), [&](const BitMatrix& b) {
    return b.cols() <= r && gf2_rank(b) <= r;
  });
  out.bases = std::move(dec.bases);
  return out;
}

ClosestStringSolution solve_closest_string(const std::vector<BitVec>& strings,
                                           const PipelineOptions& options) {
  auto inst = std::make_shared<const KCenterInstance>(encode_closest_string(strings));
  ClosestStringSolution out;
  out.report = solve_kcenter(inst, options);
  out.report.problem = "closest-string";
  out.center = decode_closest_string(strings, out.report.centers);
  for (const auto& s : strings) out.cost = std::max(out.cost, hamming(s, out.center));
  // The decoded string is at least as good as the encoded solution.
  if (out.cost > out.report.cost) {
    throw ContractError("decoded string is worse than the encoded solution");
  }

  // Re-express the report in terms of the decoded string: center 1 becomes
  // the string padded with ones, which every input is then nearest to.
  const std::size_t m = out.center.size();
  BitVec padded(2 * m + 1);
  for (std::size_t i = 0; i < 2 * m + 1; ++i) padded.set(i, i < m ? out.center.get(i) : true);
  out.report.centers = CenterTuple({BitVec(2 * m + 1), padded});
  out.report.cost = cost_kcenter(inst->vectors(), out.report.centers);
  if (out.report.cost != out.cost) throw ContractError("closest string cost mismatch");
  out.report.partition = induced_partition(inst->vectors(), out.report.centers);
  if (options.lower_bound) {
    const PartitionStarInstance induced(PartitionInstance(inst, *out.report.partition),
                                        std::vector<std::size_t>(inst->n(), 0));
    out.report.lp_lower_bound = certified_lower_bound(solve_relaxation(induced));
  }
  return out;
}

}  // namespace l1rank
