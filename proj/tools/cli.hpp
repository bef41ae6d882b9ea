#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>

#include "l1rank/pipeline.hpp"

namespace l1rank::cli {

// Exit codes.
inline constexpr int kOk = 0;
inline constexpr int kParseFailure = 1;
inline constexpr int kBudgetExceeded = 2;
inline constexpr int kOtherFailure = 3;

struct SolverFlags {
  double eps = 0.5;
  std::optional<std::uint64_t> seed;
  int threads = 0;
  Budgets budgets;
  std::string mode = "sampled";
  std::optional<std::size_t> sketch_dim;
  double lambda = 2.0;
  bool timing = false;
};

struct SolveArgs {
  std::string problem;  // rank, boolean-rank, kcenter, projective, closest-string
  std::string in;
  std::string out;
  std::size_t r = 1;
  std::size_t k = 1;
  bool oracle_check = false;
  std::uint64_t oracle_budget = std::uint64_t{1} << 24;
  SolverFlags flags;
};

struct GenerateArgs {
  std::size_t m = 0;
  std::size_t n = 0;
  std::size_t r = 1;
  std::size_t s = 0;
  std::uint64_t seed = 0;
  bool boolean = false;
  std::string out;
  std::string sidecar;  // defaults to out + ".json"
};

struct BenchArgs {
  std::string config;
  std::string out;      // CSV; stdout when empty
  std::string summary;  // defaults to out + ".summary.json" or stdout after the CSV
  bool timing = false;
  int threads = 0;
};

struct EncodeArgs {
  std::string problem;
  std::string in;
  std::string out;
  std::size_t r = 1;
  std::size_t k = 1;
};

struct DecodeArgs {
  std::string problem;
  std::string in;
  std::string centers;  // a report JSON with a "centers" array
  std::string out;
  std::size_t r = 1;
  std::size_t k = 1;
};

struct FamilyArgs {
  std::string in;
  std::string out;
  double eps = 0.25;
  std::uint64_t seed = 0;
  std::string mode = "sampled";
  std::uint64_t budget = 4096;
  std::optional<std::size_t> sketch_dim;
  double lambda = 2.0;
};

struct LpDumpArgs {
  std::string in;
  std::string out;
};

int cmd_solve(const SolveArgs& args, std::ostream& out, std::ostream& err);
int cmd_generate(const GenerateArgs& args, std::ostream& out, std::ostream& err);
int cmd_bench(const BenchArgs& args, std::ostream& out, std::ostream& err);
int cmd_encode(const EncodeArgs& args, std::ostream& out, std::ostream& err);
int cmd_decode(const DecodeArgs& args, std::ostream& out, std::ostream& err);
int cmd_family(const FamilyArgs& args, std::ostream& out, std::ostream& err);
int cmd_lp_dump(const LpDumpArgs& args, std::ostream& out, std::ostream& err);

// Parses argv and dispatches.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace l1rank::cli
