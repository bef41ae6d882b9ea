#include <algorithm>
#include <filesystem>
#include <sstream>
#include <string>
#include <vector>

#include "cli.hpp"
#include "doctest.h"
#include "l1rank/io.hpp"
#include "l1rank/matrix_io.hpp"
#include "l1rank/oracle.hpp"
#include "support/gen.hpp"

using namespace l1rank;
namespace fs = std::filesystem;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  args.insert(args.begin(), "l1rank");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out;
  std::ostringstream err;
  const int code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

fs::path scratch() {
  const fs::path dir = fs::temp_directory_path() / "l1rank_cli_test";
  fs::create_directories(dir);
  return dir;
}

std::string path(const std::string& name) { return (scratch() / name).string(); }

}  // namespace

TEST_CASE("generate: planted matrices") {
  const auto a = run({"generate", "--m", "6", "--n", "5", "--r", "1", "--s", "0", "--seed", "3",
                      "--out", path("g0.mat")});
  REQUIRE(a.code == cli::kOk);
  CHECK(gf2_rank(read_matrix_file(path("g0.mat"))) <= 1);

  run({"generate", "--m", "5", "--n", "4", "--r", "1", "--s", "2", "--seed", "9", "--out",
       path("g1.mat")});
  run({"generate", "--m", "5", "--n", "4", "--r", "1", "--s", "2", "--seed", "9", "--out",
       path("g2.mat")});
  CHECK(read_text_file(path("g1.mat")) == read_text_file(path("g2.mat")));
  const auto sidecar = Json::parse(read_text_file(path("g1.mat") + ".json"));
  CHECK(sidecar["planted_bound"] == 2);
  CHECK(oracle_rank(read_matrix_file(path("g1.mat")), 1).cost <= 2);
}

TEST_CASE("solve: rank report") {
  write_text_file(path("a.mat"), "4 4\n1000\n0100\n0010\n0001\n");
  const auto r = run({"solve", "rank", "--in", path("a.mat"), "--r", "1", "--eps", "0.5", "--seed",
                      "7", "--budget-family", "128"});
  REQUIRE(r.code == cli::kOk);
  const auto j = Json::parse(r.out);
  CHECK(j["seed"] == 7);
  CHECK(j["rank_check"] == true);
  CHECK(j["cost"].get<int>() >= 1);
  CHECK_FALSE(j.contains("wall_ms"));
  // Reports are reproducible byte for byte.
  const auto again = run({"solve", "rank", "--in", path("a.mat"), "--r", "1", "--eps", "0.5",
                          "--seed", "7", "--budget-family", "128"});
  CHECK(again.out == r.out);
  // Costs are re-derivable from the serialized matrix.
  std::vector<std::string> rows;
  for (const auto& row : j["b"]) rows.push_back(row.get<std::string>());
  const auto b = BitMatrix::from_strings(rows);
  CHECK(column_sum_norm(read_matrix_file(path("a.mat")) ^ b) == j["cost"].get<std::size_t>());
}

TEST_CASE("solve: kcenter with oracle check") {
  testing::Gen gen(91);
  const auto inst = gen.instance(4, 5, 2);
  write_text_file(path("inst.json"), dump_json(instance_to_json(*inst)));
  const auto r = run({"solve", "kcenter", "--in", path("inst.json"), "--eps", "1.0", "--seed", "1",
                      "--oracle-check", "--budget-family", "128"});
  REQUIRE(r.code == cli::kOk);
  const auto j = Json::parse(r.out);
  CHECK(j.contains("oracle_cost"));
  CHECK(j["ratio"].get<double>() >= 1.0);
}

TEST_CASE("solve: a drawn seed is printed") {
  write_text_file(path("s.mat"), "2 2\n10\n01\n");
  const auto r = run({"solve", "rank", "--in", path("s.mat"), "--r", "1", "--budget-family", "64"});
  CHECK(r.code == cli::kOk);
  CHECK(r.err.find("seed: ") != std::string::npos);
}

TEST_CASE("exit codes") {
  write_text_file(path("bad.mat"), "2 3\n101\n0x1\n");
  const auto parse = run({"solve", "rank", "--in", path("bad.mat"), "--r", "1", "--seed", "1"});
  CHECK(parse.code == cli::kParseFailure);
  CHECK(parse.err.find("line 3") != std::string::npos);

  CHECK(run({"solve", "unknown-problem", "--in", path("bad.mat")}).code == cli::kParseFailure);
  CHECK(run({"frobnicate"}).code == cli::kParseFailure);

  write_text_file(path("e.mat"), "4 3\n101\n011\n110\n001\n");
  const auto budget = run({"solve", "rank", "--in", path("e.mat"), "--r", "1", "--seed", "1",
                           "--mode", "exact"});
  CHECK(budget.code == cli::kBudgetExceeded);

  const auto missing = run({"solve", "rank", "--in", path("does-not-exist.mat"), "--seed", "1"});
  CHECK(missing.code != cli::kOk);
}

TEST_CASE("encode, decode, family and lp-dump") {
  write_text_file(path("m.mat"), "3 4\n1010\n0110\n1111\n");
  const auto enc = run({"encode", "rank", "--in", path("m.mat"), "--r", "1", "--out",
                        path("m.json")});
  REQUIRE(enc.code == cli::kOk);
  const auto doc = read_instance_file(path("m.json"));
  CHECK(doc.instance->k() == 2);
  CHECK(doc.instance->n() == 4);

  const auto solved = run({"solve", "kcenter", "--in", path("m.json"), "--seed", "2", "--eps", "1",
                           "--budget-family", "64", "--out", path("m.report.json")});
  REQUIRE(solved.code == cli::kOk);
  const auto dec = run({"decode", "rank", "--in", path("m.mat"), "--centers",
                        path("m.report.json"), "--r", "1"});
  REQUIRE(dec.code == cli::kOk);
  const auto dj = Json::parse(dec.out);
  CHECK(dj["cost"] == Json::parse(read_text_file(path("m.report.json")))["cost"]);

  const auto fam = run({"family", "--in", path("m.json"), "--seed", "4", "--budget-family", "32"});
  REQUIRE(fam.code == cli::kOk);
  CHECK(Json::parse(fam.out)["members"].size() >= 1);

  auto j = instance_to_json(*doc.instance);
  j["partition"] = {1, 2, 1, 2};
  write_text_file(path("p.json"), dump_json(j));
  const auto lp = run({"lp-dump", "--in", path("p.json")});
  REQUIRE(lp.code == cli::kOk);
  CHECK(lp.out.find("Minimize") != std::string::npos);
  CHECK(lp.out.find("End") != std::string::npos);
}

TEST_CASE("bench: empty grid and oracle ratios") {
  write_text_file(path("empty.json"), R"({"instances": [], "eps": [0.5], "seeds": [1]})");
  const auto empty = run({"bench", "--config", path("empty.json"), "--out", path("empty.csv")});
  REQUIRE(empty.code == cli::kOk);
  const auto csv = read_text_file(path("empty.csv"));
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 2);  // schema line and header
  CHECK(csv.rfind("# l1rank-bench-csv v1\n", 0) == 0);

  write_text_file(path("grid.json"), R"({
  "instances": [
    {"name": "a", "problem": "rank", "r": 1, "generate": {"m": 5, "n": 4, "s": 1, "seed": 1}},
    {"name": "b", "problem": "closest-string", "generate": {"m": 6, "n": 3, "seed": 2}}
  ],
  "eps": [1.0],
  "seeds": [1, 2],
  "oracle": true,
  "budgets": {"family": 128}
})");
  const auto grid = run({"bench", "--config", path("grid.json"), "--out", path("grid.csv")});
  REQUIRE(grid.code == cli::kOk);
  std::istringstream lines(read_text_file(path("grid.csv")));
  std::string line;
  std::getline(lines, line);
  std::getline(lines, line);
  CHECK(line.rfind("instance,problem,eps,seed,rep,cost,oracle_cost", 0) == 0);
  std::size_t rows = 0;
  while (std::getline(lines, line)) {
    std::vector<std::string> cells;
    std::istringstream cs(line);
    std::string cell;
    while (std::getline(cs, cell, ',')) cells.push_back(cell);
    REQUIRE(cells.size() >= 9);
    CHECK(std::stod(cells[8]) >= 1.0);
    ++rows;
  }
  CHECK(rows == 4);

  write_text_file(path("unknown.json"), R"({"instances": [], "colour": 1})");
  CHECK(run({"bench", "--config", path("unknown.json")}).code == cli::kParseFailure);
}
