// Acceptance suite. Prints one PASS/FAIL line per criterion and exits
// non-zero if any criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "cli.hpp"
#include "l1rank/encode.hpp"
#include "l1rank/io.hpp"
#include "l1rank/lp_round.hpp"
#include "l1rank/oracle.hpp"
#include "l1rank/partition_solver.hpp"
#include "l1rank/pipeline.hpp"
#include "support/certify.hpp"
#include "support/gen.hpp"
#include "support/naive.hpp"

using namespace l1rank;
using namespace l1rank::testing;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

struct Result {
  bool pass = false;
  std::string detail;
};

std::string fmt(const char* f, double a, double b = 0, double c = 0, double d = 0) {
  char buf[256];
  std::snprintf(buf, sizeof buf, f, a, b, c, d);
  return buf;
}

Certifier certifier;                // criterion 2, shared by every solver call
std::size_t oracle_comparisons = 0;  // criterion 3
std::size_t below_optimum = 0;

void versus_oracle(std::size_t cost, std::size_t opt) {
  ++oracle_comparisons;
  if (cost < opt) ++below_optimum;
}

// 1. Rank oracle and k-center oracle on the encoding agree exactly.
Result reduction_equivalence() {
  const auto t0 = Clock::now();
  Gen gen(101);
  std::size_t agree = 0;
  const std::size_t total = 240;
  for (std::size_t i = 0; i < total; ++i) {
    const std::size_t m = gen.range(1, 5);
    const std::size_t n = gen.range(1, 4);
    const std::size_t r = gen.range(1, 2);
    const BitMatrix a = gen.matrix(m, n);
    const auto kc = oracle_kcenter(encode_gf2_rank(a, r), std::uint64_t{1} << 20);
    const auto rk = oracle_rank(a, r);
    if (kc.cost == rk.cost) ++agree;
  }
  const double secs = seconds_since(t0);
  return {agree == total && secs < 60.0,
          fmt("%.0f/%.0f random matrices agree (%.1f s, limit 60 s)", double(agree),
              double(total), secs)};
}

// Extra solver calls whose only purpose is certification (criteria 2 and 3).
void certification_sweep() {
  Gen gen(202);
  for (std::size_t i = 0; i < 30; ++i) {
    const std::size_t k = gen.range(1, 2);
    const auto inst = gen.instance(gen.range(1, 6), gen.range(1, 8), k, gen.coin());
    PipelineOptions po;
    po.epsilon = 0.5;
    po.seed = i;
    po.budgets.family = 256;
    const auto rep = solve_kcenter(inst, po);
    certifier.kcenter(*inst, rep);
    versus_oracle(rep.cost, oracle_kcenter(*inst).cost);
  }
  for (std::size_t i = 0; i < 30; ++i) {
    const std::size_t k = gen.range(1, 2);
    const auto inst = gen.instance(gen.range(1, 7), gen.range(1, 9), k);
    const PartitionInstance part(inst, gen.partition(inst->n(), k));
    const auto rep = solve_partition(part, 0.5, i);
    certifier.partition(part, rep);
    versus_oracle(rep.cost, oracle_partition(part).cost);
  }
  for (std::size_t i = 0; i < 30; ++i) {
    const std::size_t k = gen.range(1, 2);
    const auto inst = gen.instance(gen.range(1, 6), gen.range(1, 10), k);
    std::vector<std::size_t> offsets(inst->n());
    for (auto& d : offsets) d = gen.range(0, 3);
    const PartitionStarInstance star(PartitionInstance(inst, gen.partition(inst->n(), k)), offsets);
    StarOptions so;
    so.force_lp = true;
    so.repeats = 200;
    const auto rep = solve_star(star, 0.1, 2.0, i, so);
    certifier.star(star, rep);
    versus_oracle(rep.cost, oracle_star(star).cost);
  }
}

// 4. Partition solver at eps = 1 with the optimal partition supplied.
Result partition_guarantee() {
  const auto t0 = Clock::now();
  Gen gen(404);
  std::size_t ok = 0;
  const std::size_t runs = 200;
  for (std::size_t i = 0; i < runs; ++i) {
    const std::size_t k = gen.range(1, 2);
    const auto inst = gen.instance(gen.range(2, 8), gen.range(2, 10), k, gen.coin());
    const auto opt = oracle_kcenter(*inst, std::uint64_t{1} << 20);
    const PartitionInstance part(inst, *opt.partition);
    const auto rep = solve_partition(part, 1.0, 1000 + i);
    certifier.partition(part, rep);
    versus_oracle(rep.cost, opt.cost);
    if (rep.cost <= 2 * opt.cost) ++ok;
  }
  const double secs = seconds_since(t0);
  const double rate = double(ok) / double(runs);
  return {rate >= 0.95 && secs < 120.0,
          fmt("%.1f%% of %.0f runs within (1+eps) OPT, need 95%% (%.1f s, limit 120 s)",
              100.0 * rate, double(runs), secs)};
}

// 5. solve_rank end to end with an enumerated family.
Result exact_family_rank() {
  const auto t0 = Clock::now();
  constexpr std::size_t kSketchDim = 3;
  std::size_t ok = 0;
  const std::size_t runs = 100;
  for (std::size_t seed = 0; seed < runs; ++seed) {
    Gen gen(5000 + seed);
    const BitMatrix a = gen.matrix(8, 6);
    PipelineOptions po;
    po.epsilon = 1.0;
    po.seed = seed;
    po.mode = FamilyMode::exact;
    po.lambda = 2.0;
    po.sketch_dim = kSketchDim;
    po.budgets.family = std::uint64_t{1} << 20;
    po.budgets.guess = std::uint64_t{1} << 20;
    po.budgets.exhaustive = std::uint64_t{1} << 22;
    const auto sol = solve_rank(a, 1, po);
    certifier.kcenter(encode_gf2_rank(a, 1), sol.report);
    const std::size_t opt = oracle_rank(a, 1).cost;
    versus_oracle(sol.cost, opt);
    if (sol.rank_check && sol.cost <= 2 * opt) ++ok;
  }
  const double secs = seconds_since(t0);
  const double rate = double(ok) / double(runs);
  return {rate >= 0.90 && secs < 300.0,
          fmt("%.0f%% of %.0f seeds within 2 OPT, need 90%%; sketch dim %.0f (%.1f s)",
              100.0 * rate, double(runs), double(kSketchDim), secs)};
}

// 6a. Rounding marginals; 6b. exhaustive path equals brute force.
Result rounding_marginals() {
  // Four positions over k = 2, three of them fractional.
  std::vector<Relation> rels = {Relation(2, {0, 3}), Relation(2, {0, 1, 2}),
                                Relation(2, {0, 1, 2, 3}), Relation(2, {1, 2})};
  auto base = std::make_shared<const KCenterInstance>(std::vector<BitVec>{BitVec::from_string("0110")},
                                                      2, rels, 4);
  const PartitionStarInstance inst(PartitionInstance(base, {0}), {0});
  FractionalSolution frac;
  frac.y = {{0.3, 0.7}, {0.2, 0.5, 0.3}, {0.1, 0.2, 0.3, 0.4}, {1.0, 0.0}};
  const std::size_t trials = 10000;
  std::vector<std::vector<std::size_t>> counts;
  for (const auto& pos : frac.y) counts.emplace_back(pos.size(), 0);
  for (std::size_t t = 0; t < trials; ++t) {
    Rng rng(606, "marginals", {t});
    const CenterTuple c = round_once(frac, inst, rng);
    for (std::size_t j = 0; j < rels.size(); ++j) {
      const TupleWord w = c.column_word(j);
      for (std::size_t i = 0; i < rels[j].size(); ++i) {
        if (rels[j][i] == w) ++counts[j][i];
      }
    }
  }
  std::size_t cells = 0;
  std::size_t inside = 0;
  double worst_z = 0.0;
  for (std::size_t j = 0; j < frac.y.size(); ++j) {
    for (std::size_t i = 0; i < frac.y[j].size(); ++i) {
      const double p = frac.y[j][i];
      const double mean = p * trials;
      const double sd = std::sqrt(trials * p * (1 - p));
      const double dev = std::abs(double(counts[j][i]) - mean);
      ++cells;
      if (sd == 0.0 ? dev == 0.0 : dev <= 3.0 * sd) ++inside;
      if (sd > 0.0) worst_z = std::max(worst_z, dev / sd);
    }
  }

  Gen gen(607);
  std::size_t exact = 0;
  const std::size_t tiny = 300;
  for (std::size_t i = 0; i < tiny; ++i) {
    const std::size_t k = gen.range(1, 2);
    const auto inst2 = gen.instance(gen.range(1, 5), gen.range(0, 6), k);
    std::vector<std::size_t> offsets(inst2->n());
    for (auto& d : offsets) d = gen.range(0, 3);
    const PartitionStarInstance star(PartitionInstance(inst2, gen.partition(inst2->n(), k)),
                                     offsets);
    const auto rep = solve_star(star, 0.1, 2.0, i);
    certifier.star(star, rep);
    const std::size_t opt = naive_star(star);
    versus_oracle(rep.cost, opt);
    if (rep.path != SolvePath::lp_rounding && rep.cost == opt) ++exact;
  }
  return {inside == cells && exact == tiny,
          fmt("%.0f/%.0f cells within 3 sd (max z %.2f); exhaustive exact on %.0f tiny instances",
              double(inside), double(cells), worst_z, double(exact)) +
              fmt(" of %.0f", double(tiny))};
}

// 7. Exceedance of d' - d_x + eps m falls as m grows. One base block of
// positions and vectors is replicated, so the fractional point is fixed.
Result chernoff_trend() {
  const double eps = 0.05;
  const std::size_t block = 10;
  const std::size_t n = 8;
  const std::size_t trials = 1000;
  Gen gen(700);
  const auto base_vectors = gen.vectors(n, block);
  std::vector<double> base_one(block);
  for (auto& p : base_one) p = 0.2 + 0.6 * gen.uniform();

  std::vector<double> fractions;
  for (std::size_t m : {50u, 100u, 200u}) {
    std::vector<BitVec> vectors(n, BitVec(m));
    FractionalSolution frac;
    for (std::size_t j = 0; j < m; ++j) {
      for (std::size_t x = 0; x < n; ++x) vectors[x].set(j, base_vectors[x].get(j % block));
      frac.y.push_back({1.0 - base_one[j % block], base_one[j % block]});
    }
    auto base = std::make_shared<const KCenterInstance>(vectors, 1,
                                                        std::vector<Relation>(m, Relation::full(1)), m);
    const PartitionStarInstance inst(PartitionInstance(base, Partition(n, 0)),
                                     std::vector<std::size_t>(n, 0));
    std::vector<double> expected(n, 0.0);
    for (std::size_t x = 0; x < n; ++x) {
      for (std::size_t j = 0; j < m; ++j) expected[x] += frac.y[j][vectors[x].get(j) ? 0 : 1];
    }
    const double d_prime = *std::max_element(expected.begin(), expected.end());
    std::size_t exceed = 0;
    for (std::size_t t = 0; t < trials; ++t) {
      Rng rng(777, "chernoff", {m, t});
      const CenterTuple c = round_once(frac, inst, rng);
      bool any = false;
      for (std::size_t x = 0; x < n && !any; ++x) {
        any = double(naive_distance(vectors[x], c[0])) > d_prime + eps * double(m);
      }
      exceed += any;
    }
    fractions.push_back(double(exceed) / double(trials));
  }
  const bool monotone = fractions[0] >= fractions[1] && fractions[1] >= fractions[2];
  return {monotone, fmt("exceedance at m = 50, 100, 200: %.3f, %.3f, %.3f", fractions[0],
                        fractions[1], fractions[2])};
}

// 8. gf2_rank against subset enumeration.
Result rank_oracle() {
  std::size_t agree = 0;
  std::size_t total = 0;
  for (std::uint32_t bits = 0; bits < 512; ++bits) {
    std::vector<BitVec> rows(3, BitVec(3));
    for (std::size_t i = 0; i < 9; ++i) rows[i / 3].set(i % 3, (bits >> i) & 1u);
    const BitMatrix m = BitMatrix::from_rows(rows, 3);
    ++total;
    agree += gf2_rank(m) == naive_rank(m);
  }
  Gen gen(808);
  for (std::size_t i = 0; i < 1000; ++i) {
    const BitMatrix m = gen.matrix(gen.range(1, 5), gen.range(1, 5));
    ++total;
    agree += gf2_rank(m) == naive_rank(m);
  }
  return {agree == total, fmt("%.0f/%.0f matrices agree (512 exhaustive 3x3, 1000 random)",
                              double(agree), double(total))};
}

// 9. Closest string through the encoding at eps = 0.5.
Result closest_string() {
  Gen gen(909);
  std::size_t ok = 0;
  double slowest = 0.0;
  const std::size_t runs = 100;
  for (std::size_t i = 0; i < runs; ++i) {
    const std::size_t n = gen.range(2, 6);
    const std::size_t m = gen.range(2, 10);
    const auto strings = gen.vectors(n, m);
    PipelineOptions po;
    po.epsilon = 0.5;
    po.seed = i;
    const auto sol = solve_closest_string(strings, po);
    certifier.kcenter(encode_closest_string(strings), sol.report);
    const auto t0 = Clock::now();
    const std::size_t opt = oracle_closest_string(strings).cost;
    slowest = std::max(slowest, seconds_since(t0));
    if (opt != naive_closest_string(strings)) ++certifier.violations;
    versus_oracle(sol.cost, opt);
    if (2 * sol.cost <= 3 * opt) ++ok;
  }
  const double rate = double(ok) / double(runs);
  return {rate >= 0.90 && slowest < 10.0,
          fmt("%.0f%% of %.0f sets within 1.5 OPT, need 90%%; slowest oracle %.4f s", 100.0 * rate,
              double(runs), slowest)};
}

// 10. Two bench runs with the same config give identical CSV bytes.
Result bench_determinism() {
  namespace fs = std::filesystem;
  const fs::path dir = fs::temp_directory_path() / "l1rank_acceptance_bench";
  fs::create_directories(dir);
  const std::string config = R"({
  "instances": [
    {"name": "planted", "problem": "rank", "r": 1, "generate": {"m": 6, "n": 5, "s": 1, "seed": 3}},
    {"name": "strings", "problem": "closest-string", "generate": {"m": 7, "n": 4, "seed": 9}},
    {"name": "random", "problem": "kcenter", "k": 2, "generate": {"m": 5, "n": 4, "seed": 4}}
  ],
  "eps": [0.5, 1.0],
  "seeds": [1, 2],
  "oracle": true,
  "budgets": {"family": 512}
})";
  write_text_file((dir / "config.json").string(), config);
  std::ostringstream sink;
  std::string csv[2];
  int codes[2];
  for (int run = 0; run < 2; ++run) {
    cli::BenchArgs args;
    args.config = (dir / "config.json").string();
    args.out = (dir / ("run" + std::to_string(run) + ".csv")).string();
    codes[run] = cli::cmd_bench(args, sink, sink);
    csv[run] = codes[run] == 0 ? read_text_file(args.out) : "";
  }
  const std::size_t lines = std::count(csv[0].begin(), csv[0].end(), '\n');
  const bool same = codes[0] == 0 && codes[1] == 0 && !csv[0].empty() && csv[0] == csv[1];
  return {same, std::string("identical CSV: ") + (same ? "yes" : "no") +
                    fmt(" (%.0f lines)", double(lines))};
}

}  // namespace

Result timed(const std::function<Result()>& run) {
  const auto t0 = Clock::now();
  Result r = run();
  r.detail += fmt(" [%.1f s]", seconds_since(t0));
  return r;
}

int main() {
  const auto start = Clock::now();
  std::vector<std::pair<std::string, Result>> results;

  results.emplace_back("reduction equivalence", timed(reduction_equivalence));
  const auto sweep_start = Clock::now();
  certification_sweep();
  const double sweep_secs = seconds_since(sweep_start);
  const Result c4 = timed(partition_guarantee);
  const Result c5 = timed(exact_family_rank);
  const Result c6 = timed(rounding_marginals);
  const Result c7 = timed(chernoff_trend);
  const Result c8 = timed(rank_oracle);
  const Result c9 = timed(closest_string);
  const Result c10 = timed(bench_determinism);

  results.emplace_back("feasibility and certification",
                       Result{certifier.violations == 0,
                              fmt("%.0f certified solver answers, %.0f violations",
                                  double(certifier.checked), double(certifier.violations)) +
                                  fmt("; dedicated sweep %.1f s", sweep_secs) +
                                  (certifier.first_failure.empty()
                                       ? ""
                                       : "; first: " + certifier.first_failure)});
  results.emplace_back("never better than optimal",
                       Result{below_optimum == 0 && oracle_comparisons > 0,
                              fmt("%.0f oracle comparisons, %.0f below the optimum",
                                  double(oracle_comparisons), double(below_optimum))});
  results.emplace_back("partition solver guarantee", c4);
  results.emplace_back("exact-family rank pipeline", c5);
  results.emplace_back("rounding marginals and exhaustive path", c6);
  results.emplace_back("concentration trend", c7);
  results.emplace_back("GF(2) rank oracle", c8);
  results.emplace_back("closest string", c9);
  results.emplace_back("bench determinism", c10);

  bool all = true;
  for (std::size_t i = 0; i < results.size(); ++i) {
    const auto& [name, r] = results[i];
    all = all && r.pass;
    std::printf("[%s] %2zu %s: %s\n", r.pass ? "PASS" : "FAIL", i + 1, name.c_str(),
                r.detail.c_str());
  }
  std::printf("acceptance: %s in %.1f s\n", all ? "all criteria passed" : "FAILURES",
              seconds_since(start));
  return all ? 0 : 1;
}
