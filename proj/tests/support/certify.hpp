#pragma once

// Independent checks applied to every solver answer in the tests: relation
// feasibility, cost re-evaluation, and the LP lower bound sandwich.

#include <string>

#include "l1rank/model.hpp"
#include "l1rank/report.hpp"
#include "naive.hpp"

namespace l1rank::testing {

inline constexpr double kLpSlack = 1e-9;

struct Certifier {
  std::size_t checked = 0;
  std::size_t violations = 0;
  std::string first_failure;

  void fail(const std::string& why) {
    if (violations++ == 0) first_failure = why;
  }

  void lower_bound(const SolveReport& rep) {
    if (rep.lp_lower_bound && static_cast<double>(rep.cost) < *rep.lp_lower_bound - kLpSlack) {
      fail(rep.problem + ": cost below the LP lower bound");
    }
  }

  void kcenter(const KCenterInstance& inst, const SolveReport& rep) {
    ++checked;
    if (!satisfies(rep.centers, inst.relations())) return fail("kcenter: relation violated");
    std::size_t worst = 0;
    for (const auto& x : inst.vectors()) {
      std::size_t near = x.size() + 1;
      for (const auto& c : rep.centers.centers()) near = std::min(near, naive_distance(x, c));
      worst = std::max(worst, near);
    }
    if (worst != rep.cost) return fail("kcenter: reported cost differs from re-evaluation");
    lower_bound(rep);
  }

  void partition(const PartitionInstance& inst, const SolveReport& rep) {
    ++checked;
    if (!satisfies(rep.centers, inst.relations())) return fail("partition: relation violated");
    std::size_t worst = 0;
    for (std::size_t x = 0; x < inst.n(); ++x) {
      worst = std::max(worst, naive_distance(inst.vectors()[x], rep.centers[inst.partition()[x]]));
    }
    if (worst != rep.cost) return fail("partition: reported cost differs from re-evaluation");
    lower_bound(rep);
  }

  void star(const PartitionStarInstance& inst, const SolveReport& rep) {
    ++checked;
    if (!satisfies(rep.centers, inst.relations())) return fail("star: relation violated");
    std::size_t worst = 0;
    for (std::size_t x = 0; x < inst.n(); ++x) {
      worst = std::max(worst, naive_distance(inst.vectors()[x], rep.centers[inst.partition()[x]]) +
                                  inst.offsets()[x]);
    }
    if (worst != rep.cost) return fail("star: reported cost differs from re-evaluation");
    lower_bound(rep);
  }
};

}  // namespace l1rank::testing
