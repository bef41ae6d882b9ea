// Times each OpenMP kernel against its serial reference and checks that the
// two produce the same answer.

#include <chrono>
#include <cstdio>
#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "l1rank/exec.hpp"
#include "l1rank/lp_round.hpp"
#include "l1rank/partition_solver.hpp"
#include "l1rank/pipeline.hpp"
#include "l1rank/random.hpp"
#include "l1rank/sketch.hpp"

using namespace l1rank;

namespace {

KCenterPtr random_instance(std::size_t n, std::size_t m, std::size_t k, std::uint64_t seed) {
  Rng rng(seed, "bench-instance");
  std::vector<BitVec> xs(n, BitVec(m));
  for (auto& x : xs) {
    for (std::size_t j = 0; j < m; ++j) x.set(j, rng.next() & 1u);
  }
  return std::make_shared<const KCenterInstance>(xs, k, std::vector<Relation>(m, Relation::full(k)));
}

Partition round_robin(std::size_t n, std::size_t k) {
  Partition p(n);
  for (std::size_t i = 0; i < n; ++i) p[i] = static_cast<std::uint32_t>(i % k);
  return p;
}

double time_ms(const std::function<std::size_t()>& body, std::size_t& result, int reps) {
  double best = 1e300;
  for (int r = 0; r < reps; ++r) {
    const auto t0 = std::chrono::steady_clock::now();
    result = body();
    const auto t1 = std::chrono::steady_clock::now();
    best = std::min(best, std::chrono::duration<double, std::milli>(t1 - t0).count());
  }
  return best;
}

void row(const std::string& name, const std::function<std::size_t(Exec)>& kernel, int reps) {
  std::size_t serial_cost = 0;
  std::size_t parallel_cost = 0;
  const double s = time_ms([&] { return kernel(Exec::serial); }, serial_cost, reps);
  const double p = time_ms([&] { return kernel(Exec::parallel); }, parallel_cost, reps);
  std::printf("%-22s %10.2f %10.2f %8.2fx  %s\n", name.c_str(), s, p, s / p,
              serial_cost == parallel_cost ? "same" : "DIFFERENT");
}

}  // namespace

int main(int argc, char** argv) {
  if (argc > 1) set_thread_count(std::stoi(argv[1]));
  const int reps = 3;
  std::printf("threads: %d\n", thread_count());
  std::printf("%-22s %10s %10s %9s  %s\n", "kernel", "serial ms", "parallel ms", "speedup", "result");

  const auto star_base = random_instance(24, 120, 2, 1);
  const PartitionStarInstance star(PartitionInstance(star_base, round_robin(24, 2)),
                                   std::vector<std::size_t>(24, 0));
  row("star rounding", [&](Exec e) {
    StarOptions opt;
    opt.force_lp = true;
    opt.repeats = 2000;
    opt.exec = e;
    return solve_star(star, 0.1, 2.0, 7, opt).cost;
  }, reps);

  const auto part_base = random_instance(14, 40, 2, 2);
  const PartitionInstance part(part_base, round_robin(14, 2));
  row("partition guesses", [&](Exec e) {
    PartitionOptions opt;
    opt.guess_budget = 256;
    opt.exec = e;
    opt.star.exec = e;
    return solve_partition(part, 1.0, 3, opt).cost;
  }, reps);

  const auto fam_base = random_instance(32, 256, 2, 3);
  row("family generation", [&](Exec e) {
    FamilyOptions opt;
    opt.params.epsilon = 0.25;
    opt.budget = 4096;
    opt.seed = 4;
    opt.exec = e;
    return generate_family(fam_base, opt).members.size();
  }, reps);

  const auto pipe_base = random_instance(10, 24, 2, 4);
  row("pipeline", [&](Exec e) {
    PipelineOptions opt;
    opt.epsilon = 0.5;
    opt.seed = 5;
    opt.budgets.family = 512;
    opt.exec = e;
    return solve_kcenter(pipe_base, opt).cost;
  }, 1);
  return 0;
}
