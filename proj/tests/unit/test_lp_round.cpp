#include <cmath>
#include <limits>

#include "doctest.h"
#include "l1rank/error.hpp"
#include "l1rank/lp_round.hpp"
#include "l1rank/oracle.hpp"
#include "support/certify.hpp"
#include "support/gen.hpp"
#include "support/naive.hpp"

using namespace l1rank;
using l1rank::testing::Certifier;
using l1rank::testing::Gen;

namespace {

PartitionStarInstance random_star(Gen& gen, std::size_t n_max, std::size_t m_max, std::size_t k) {
  const auto inst = gen.instance(gen.range(1, n_max), gen.range(1, m_max), k);
  std::vector<std::size_t> offsets(inst->n());
  for (auto& d : offsets) d = gen.range(0, 3);
  return PartitionStarInstance(PartitionInstance(inst, gen.partition(inst->n(), k)), offsets);
}

}  // namespace

TEST_CASE("simplex: small programs") {
  // min -x - y, x + 2y <= 4, 3x + y <= 6
  lp::LinearProgram p;
  p.var_names = {"x", "y"};
  p.objective = {-1, -1};
  p.rows = {{"a", {1, 2}, lp::Sense::le, 4}, {"b", {3, 1}, lp::Sense::le, 6}};
  const auto r = lp::solve(p);
  REQUIRE(r.status == lp::Status::optimal);
  CHECK(r.objective == doctest::Approx(-2.8));
  CHECK(r.x[0] == doctest::Approx(1.6));
  CHECK(r.x[1] == doctest::Approx(1.2));

  lp::LinearProgram inf = p;
  inf.rows.push_back({"c", {1, 1}, lp::Sense::ge, 10});
  CHECK(lp::solve(inf).status == lp::Status::infeasible);

  lp::LinearProgram unb;
  unb.var_names = {"x"};
  unb.objective = {-1};
  unb.rows = {{"a", {1}, lp::Sense::ge, 1}};
  CHECK(lp::solve(unb).status == lp::Status::unbounded);

  lp::LinearProgram eq;
  eq.var_names = {"x", "y"};
  eq.objective = {1, 2};
  eq.rows = {{"s", {1, 1}, lp::Sense::eq, 3}};
  const auto e = lp::solve(eq);
  CHECK(e.objective == doctest::Approx(3.0));
}

TEST_CASE("simplex: text dump") {
  lp::LinearProgram p;
  p.var_names = {"x", "y"};
  p.objective = {1, 0};
  p.upper = {1, std::numeric_limits<double>::infinity()};
  p.rows = {{"r1", {1, 1}, lp::Sense::eq, 1}};
  const auto text = lp::to_cplex_lp(p);
  CHECK(text.find("Minimize") != std::string::npos);
  CHECK(text.find("Subject To") != std::string::npos);
  CHECK(text.find("r1:") != std::string::npos);
  CHECK(text.find("Bounds") != std::string::npos);
  CHECK(text.find("End") != std::string::npos);
}

TEST_CASE("formulation shape") {
  Gen gen(61);
  const auto star = random_star(gen, 4, 5, 2);
  const auto f = build_lp(star);
  std::size_t vars = 1;
  for (const auto& r : star.relations()) vars += r.size();
  CHECK(f.program.num_vars() == vars);
  CHECK(f.position_rows == star.m());
  CHECK(f.distance_rows == star.n());
  CHECK(f.program.rows.size() == star.m() + star.n());
}

TEST_CASE("relaxation bounds the integer optimum from below") {
  Gen gen(62);
  for (int i = 0; i < 60; ++i) {
    const auto star = random_star(gen, 5, 7, gen.range(1, 2));
    const auto frac = solve_relaxation(star);
    for (const auto& pos : frac.y) {
      double sum = 0.0;
      for (double v : pos) {
        CHECK(v >= 0.0);
        sum += v;
      }
      CHECK(sum == doctest::Approx(1.0));
    }
    CHECK(certified_lower_bound(frac) <= double(testing::naive_star(star)) + 1e-9);
    CHECK(certified_lower_bound(frac) >= double(star.max_offset()) - 1e-9);
  }
}

TEST_CASE("exhaustive path equals brute force on tiny instances") {
  Gen gen(63);
  for (int i = 0; i < 100; ++i) {
    const auto star = random_star(gen, 4, 6, gen.range(1, 2));
    const auto rep = solve_star_exhaustive(star, 1u << 20);
    REQUIRE(rep);
    CHECK(rep->cost == testing::naive_star(star));
    CHECK(satisfies(rep->centers, star.relations()));
  }
  // m = 4, n = 3, k = 2, |R_j| = 2: 16 combinations.
  const std::vector<BitVec> xs = {BitVec::from_string("0110"), BitVec::from_string("1100"),
                                  BitVec::from_string("0011")};
  std::vector<Relation> rels = {Relation(2, {0, 3}), Relation(2, {1, 2}), Relation(2, {0, 1}),
                                Relation(2, {2, 3})};
  auto base = std::make_shared<const KCenterInstance>(xs, 2, rels);
  const PartitionStarInstance star(PartitionInstance(base, {0, 1, 1}), {0, 0, 1});
  CHECK(tuple_product(star.relations(), 100) == 16);
  CHECK(solve_star_exhaustive(star, 16)->cost == testing::naive_star(star));
  CHECK_FALSE(solve_star_exhaustive(star, 15));
}

TEST_CASE("forced rounding path is feasible and certified") {
  Gen gen(64);
  Certifier cert;
  for (int i = 0; i < 40; ++i) {
    const auto star = random_star(gen, 6, 12, gen.range(1, 2));
    StarOptions opt;
    opt.force_lp = true;
    opt.repeats = 100;
    const auto rep = solve_star(star, 0.1, 2.0, i, opt);
    CHECK(rep.path == SolvePath::lp_rounding);
    // An integral relaxation is returned without rounding.
    CHECK((rep.roundings == 100 || solve_relaxation(star).integral()));
    cert.star(star, rep);
    CHECK(rep.cost >= oracle_star(star).cost);
  }
  INFO(cert.first_failure);
  CHECK(cert.violations == 0);
}

TEST_CASE("rounding marginals match the fractional point") {
  std::vector<Relation> rels = {Relation(2, {0, 3}), Relation(2, {0, 1, 2})};
  auto base = std::make_shared<const KCenterInstance>(std::vector<BitVec>{BitVec::from_string("01")}, 2,
                                                      rels);
  const PartitionStarInstance star(PartitionInstance(base, {0}), {0});
  FractionalSolution frac;
  frac.y = {{0.25, 0.75}, {0.5, 0.1, 0.4}};
  const std::size_t trials = 10000;
  std::vector<std::vector<std::size_t>> counts = {{0, 0}, {0, 0, 0}};
  for (std::size_t t = 0; t < trials; ++t) {
    Rng rng(65, "marginals", {t});
    const auto c = round_once(frac, star, rng);
    for (std::size_t j = 0; j < 2; ++j) {
      for (std::size_t i = 0; i < rels[j].size(); ++i) counts[j][i] += c.column_word(j) == rels[j][i];
    }
  }
  for (std::size_t j = 0; j < 2; ++j) {
    for (std::size_t i = 0; i < rels[j].size(); ++i) {
      const double p = frac.y[j][i];
      CHECK(std::abs(counts[j][i] - p * trials) <= 3.0 * std::sqrt(trials * p * (1 - p)));
    }
  }
}

TEST_CASE("rounding near the LP value on a planted instance") {
  // k = 1, full relations, strings at distance 2d from a planted center.
  Gen gen(66);
  const std::size_t m = 200;
  const std::size_t n = 8;
  const std::size_t d = 10;
  std::size_t ok = 0;
  const std::size_t runs = 10;
  for (std::size_t run = 0; run < runs; ++run) {
    const auto center = gen.bits(m);
    std::vector<BitVec> xs;
    for (std::size_t i = 0; i < n; ++i) {
      BitVec v = center;
      for (std::size_t f = 0; f < 2 * d; ++f) v.set((i * 2 * d + f) % m, !center.get((i * 2 * d + f) % m));
      xs.push_back(v);
    }
    auto base = std::make_shared<const KCenterInstance>(xs, 1, std::vector<Relation>(m, Relation::full(1)));
    const PartitionStarInstance star(PartitionInstance(base, Partition(n, 0)),
                                     std::vector<std::size_t>(n, 0));
    StarOptions opt;
    opt.force_lp = true;
    const auto rep = solve_star(star, 0.3, 3.0, run, opt);
    REQUIRE(rep.lp_lower_bound);
    ok += double(rep.cost) <= 1.3 * *rep.lp_lower_bound + 1e-9;
  }
  CHECK(ok >= 9);
}

TEST_CASE("thresholds and repeats") {
  CHECK(default_repeats(1, 2.0, 0.5) == static_cast<std::size_t>(std::ceil(3 * std::log(3.0) * 16)));
  CHECK(below_lp_threshold(10, 1, 2.0, 0.1) == below_lp_threshold(10, 2, 2.0, 0.1));
  CHECK(below_lp_threshold(10, 4, 2.0, 0.1));
  CHECK_FALSE(below_lp_threshold(1000000, 4, 2.0, 0.5));
  CHECK(tuple_product({Relation::full(3), Relation::full(3)}, 10) == 11);
  Gen gen(67);
  const auto star = random_star(gen, 3, 3, 1);
  CHECK_THROWS_AS(solve_star(star, 0.6, 2.0, 1), ParameterError);
}

TEST_CASE("serial and parallel rounding agree") {
  Gen gen(68);
  const auto star = random_star(gen, 6, 14, 2);
  StarOptions opt;
  opt.force_lp = true;
  opt.repeats = 300;
  const auto par = solve_star(star, 0.1, 2.0, 5, opt);
  opt.exec = Exec::serial;
  const auto ser = solve_star(star, 0.1, 2.0, 5, opt);
  CHECK(par.cost == ser.cost);
  CHECK(par.centers == ser.centers);
}
