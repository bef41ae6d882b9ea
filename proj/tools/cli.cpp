#include "cli.hpp"

#include <algorithm>
#include <chrono>
#include <filesystem>
#include <iomanip>
#include <iostream>
#include <limits>
#include <random>
#include <set>
#include <sstream>

#include <CLI11.hpp>

#include "l1rank/encode.hpp"
#include "l1rank/error.hpp"
#include "l1rank/exec.hpp"
#include "l1rank/io.hpp"
#include "l1rank/lp_round.hpp"
#include "l1rank/matrix_io.hpp"
#include "l1rank/oracle.hpp"
#include "l1rank/random.hpp"

namespace l1rank::cli {

namespace {

const std::set<std::string> kProblems = {"rank", "boolean-rank", "kcenter", "projective",
                                         "closest-string"};

template <class F>
int guarded(std::ostream& err, F&& body) {
  try {
    return body();
  } catch (const BudgetError& e) {
    err << "budget exceeded (" << e.stage() << "): " << e.what() << '\n';
    return kBudgetExceeded;
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << '\n';
    return kParseFailure;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kOtherFailure;
  }
}

void emit(const std::string& path, const std::string& text, std::ostream& out) {
  if (path.empty()) {
    out << text;
  } else {
    write_text_file(path, text);
  }
}

Json matrix_rows(const BitMatrix& m) {
  Json rows = Json::array();
  for (const auto& r : m.row_vectors()) rows.push_back(r.to_string());
  return rows;
}

std::string fmt(double v) {
  std::ostringstream s;
  s << std::setprecision(12) << v;
  return s.str();
}

// Matrix problems read a matrix file; kcenter reads an instance file.
struct ProblemInput {
  std::string problem;
  std::optional<BitMatrix> matrix;
  KCenterPtr instance;
  std::size_t r = 1;
  std::size_t k = 1;
};

ProblemInput load_input(const std::string& problem, const std::string& path, std::size_t r,
                        std::size_t k) {
  if (!kProblems.count(problem)) throw ParameterError("unknown problem '" + problem + "'");
  ProblemInput in{problem, std::nullopt, nullptr, r, k};
  if (problem == "kcenter") {
    in.instance = read_instance_file(path).instance;
  } else {
    in.matrix = read_matrix_file(path);
  }
  return in;
}

struct Solved {
  SolveReport report;
  std::size_t cost = 0;
  Json extras = Json::object();
};

PipelineOptions pipeline_options(const SolverFlags& f, std::uint64_t seed) {
  PipelineOptions o;
  o.epsilon = f.eps;
  o.seed = seed;
  o.budgets = f.budgets;
  o.mode = parse_family_mode(f.mode);
  o.sketch_dim = f.sketch_dim;
  o.lambda = f.lambda;
  return o;
}

Solved solve_input(const ProblemInput& in, const PipelineOptions& o) {
  Solved s;
  if (in.problem == "kcenter") {
    s.report = solve_kcenter(in.instance, o);
    s.cost = s.report.cost;
  } else if (in.problem == "rank") {
    auto sol = solve_rank(*in.matrix, in.r, o);
    s.report = std::move(sol.report);
    s.cost = sol.cost;
    s.extras["rank_check"] = sol.rank_check;
    s.extras["b"] = matrix_rows(sol.b);
    s.extras["basis"] = matrix_rows(sol.basis);
  } else if (in.problem == "boolean-rank") {
    auto sol = solve_boolean_rank(*in.matrix, in.r, o);
    s.report = std::move(sol.report);
    s.cost = sol.cost;
    s.extras["factor_check"] = sol.factor_check;
    s.extras["b"] = matrix_rows(sol.b);
    s.extras["u"] = matrix_rows(sol.u);
    s.extras["v"] = matrix_rows(sol.v);
  } else if (in.problem == "projective") {
    auto sol = solve_projective(in.matrix->columns(), in.r, in.k, o);
    s.report = std::move(sol.report);
    s.cost = sol.cost;
    s.extras["dimension_check"] = sol.dimension_check;
    Json bases = Json::array();
    for (const auto& b : sol.bases) bases.push_back(matrix_rows(b));
    s.extras["bases"] = std::move(bases);
  } else {
    auto sol = solve_closest_string(in.matrix->row_vectors(), o);
    s.report = std::move(sol.report);
    s.cost = sol.cost;
    s.extras["string"] = sol.center.to_string();
  }
  return s;
}

std::size_t oracle_value(const ProblemInput& in, std::uint64_t budget) {
  if (in.problem == "kcenter") return oracle_kcenter(*in.instance, budget).cost;
  if (in.problem == "rank") return oracle_rank(*in.matrix, in.r, budget).cost;
  if (in.problem == "boolean-rank") {
    return oracle_kcenter(encode_boolean_rank(*in.matrix, in.r), budget).cost;
  }
  if (in.problem == "projective") {
    return oracle_kcenter(encode_projective(in.matrix->columns(), in.r, in.k), budget).cost;
  }
  return oracle_closest_string(in.matrix->row_vectors(), budget).cost;
}

std::optional<double> ratio_of(std::size_t cost, std::size_t opt) {
  if (opt == 0) return cost == 0 ? std::optional<double>(1.0) : std::nullopt;
  return static_cast<double>(cost) / static_cast<double>(opt);
}

BitMatrix planted_matrix(std::size_t m, std::size_t n, std::size_t r, std::size_t s,
                         std::uint64_t seed, bool boolean) {
  Rng rng(seed, "planted");
  std::vector<BitVec> urows(m, BitVec(r));
  for (auto& row : urows) {
    for (std::size_t t = 0; t < r; ++t) row.set(t, rng.next() & 1u);
  }
  std::vector<BitVec> vrows(r, BitVec(n));
  for (auto& row : vrows) {
    for (std::size_t j = 0; j < n; ++j) row.set(j, rng.next() & 1u);
  }
  const BitMatrix u = BitMatrix::from_rows(std::move(urows), r);
  const BitMatrix v = BitMatrix::from_rows(std::move(vrows), n);
  const BitMatrix b = boolean ? boolean_matmul(u, v) : gf2_matmul(u, v);

  std::vector<BitVec> cols = b.columns();
  for (auto& col : cols) {
    const std::size_t flips = static_cast<std::size_t>(rng.below(std::min(s, m) + 1));
    std::vector<std::size_t> pos(m);
    for (std::size_t i = 0; i < m; ++i) pos[i] = i;
    for (std::size_t t = 0; t < flips; ++t) {
      std::swap(pos[t], pos[t + rng.below(m - t)]);
      col.set(pos[t], !col.get(pos[t]));
    }
  }
  return BitMatrix::from_columns(cols, m);
}

BitMatrix random_matrix(std::size_t m, std::size_t n, std::uint64_t seed) {
  Rng rng(seed, "random-matrix");
  std::vector<BitVec> rows(m, BitVec(n));
  for (auto& row : rows) {
    for (std::size_t j = 0; j < n; ++j) row.set(j, rng.next() & 1u);
  }
  return BitMatrix::from_rows(std::move(rows), n);
}

std::uint64_t fresh_seed() {
  std::random_device rd;
  return (std::uint64_t{rd()} << 32) ^ rd();
}

// ---- bench configuration ----

void reject_unknown(const Json& j, const std::set<std::string>& allowed, const std::string& where) {
  for (const auto& [key, value] : j.items()) {
    if (!allowed.count(key)) throw ParseError(where + ": unknown field '" + key + "'");
  }
}

template <class T>
T get_or(const Json& j, const char* key, T fallback) {
  auto it = j.find(key);
  if (it == j.end()) return fallback;
  try {
    return it->get<T>();
  } catch (const nlohmann::json::exception&) {
    throw ParseError(std::string("field '") + key + "' has the wrong type");
  }
}

struct BenchInstance {
  std::string name;
  ProblemInput input;
};

BenchInstance load_bench_instance(const Json& j, const std::filesystem::path& base) {
  if (!j.is_object()) throw ParseError("instances entries must be objects");
  reject_unknown(j, {"name", "problem", "r", "k", "file", "generate"}, "instance");
  BenchInstance bi;
  bi.name = get_or<std::string>(j, "name", "");
  const auto problem = get_or<std::string>(j, "problem", "");
  if (!kProblems.count(problem)) throw ParseError("instance '" + bi.name + "': unknown problem");
  const auto r = get_or<std::size_t>(j, "r", 1);
  const auto k = get_or<std::size_t>(j, "k", 1);
  if (j.contains("file") == j.contains("generate")) {
    throw ParseError("instance '" + bi.name + "': give exactly one of file, generate");
  }
  if (j.contains("file")) {
    std::filesystem::path p = get_or<std::string>(j, "file", "");
    if (p.is_relative()) p = base / p;
    bi.input = load_input(problem, p.string(), r, k);
    return bi;
  }
  const Json& g = j["generate"];
  if (!g.is_object()) throw ParseError("generate must be an object");
  reject_unknown(g, {"m", "n", "s", "seed"}, "generate");
  const auto m = get_or<std::size_t>(g, "m", 0);
  const auto n = get_or<std::size_t>(g, "n", 0);
  const auto s = get_or<std::size_t>(g, "s", 0);
  const auto seed = get_or<std::uint64_t>(g, "seed", 0);
  if (m == 0 || n == 0) throw ParseError("generate needs positive m and n");
  bi.input = ProblemInput{problem, std::nullopt, nullptr, r, k};
  if (problem == "closest-string") {
    bi.input.matrix = random_matrix(n, m, seed);  // n strings of length m
  } else if (problem == "kcenter") {
    const BitMatrix a = random_matrix(m, n, seed);
    std::vector<Relation> rels(m, Relation::full(k));
    bi.input.instance = std::make_shared<const KCenterInstance>(a.columns(), k, std::move(rels), m);
  } else {
    bi.input.matrix = planted_matrix(m, n, r, s, seed,
                                     problem == "boolean-rank");
  }
  return bi;
}

}  // namespace

int cmd_solve(const SolveArgs& args, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    set_thread_count(args.flags.threads);
    const ProblemInput in = load_input(args.problem, args.in, args.r, args.k);
    std::uint64_t seed;
    if (args.flags.seed) {
      seed = *args.flags.seed;
    } else {
      seed = fresh_seed();
      err << "seed: " << seed << '\n';
    }
    const Solved s = solve_input(in, pipeline_options(args.flags, seed));
    Json j = report_to_json(s.report, args.flags.timing);
    j["cost"] = s.cost;
    for (const auto& [key, value] : s.extras.items()) j[key] = value;
    if (args.oracle_check) {
      const std::size_t opt = oracle_value(in, args.oracle_budget);
      j["oracle_cost"] = opt;
      const auto ratio = ratio_of(s.cost, opt);
      j["ratio"] = ratio ? Json(*ratio) : Json(nullptr);
    }
    emit(args.out, dump_json(j), out);
    return kOk;
  });
}

int cmd_generate(const GenerateArgs& args, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    if (args.m == 0 || args.n == 0) throw ParameterError("m and n must be positive");
    if (args.r == 0) throw ParameterError("r must be positive");
    const BitMatrix a = planted_matrix(args.m, args.n, args.r, args.s, args.seed, args.boolean);
    Json side;
    side["m"] = args.m;
    side["n"] = args.n;
    side["r"] = args.r;
    side["s"] = args.s;
    side["seed"] = args.seed;
    side["product"] = args.boolean ? "boolean" : "gf2";
    side["planted_bound"] = args.s;
    if (args.out.empty()) {
      out << format_matrix(a);
      if (!args.sidecar.empty()) write_text_file(args.sidecar, dump_json(side));
    } else {
      write_matrix_file(args.out, a);
      write_text_file(args.sidecar.empty() ? args.out + ".json" : args.sidecar, dump_json(side));
    }
    return kOk;
  });
}

int cmd_bench(const BenchArgs& args, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    set_thread_count(args.threads);
    Json cfg;
    try {
      cfg = Json::parse(read_text_file(args.config));
    } catch (const nlohmann::json::parse_error& e) {
      throw ParseError(std::string("bench config: ") + e.what());
    }
    if (!cfg.is_object()) throw ParseError("bench config must be an object");
    reject_unknown(cfg,
                   {"instances", "eps", "seeds", "repetitions", "oracle", "oracle_budget", "mode",
                    "budgets", "sketch_dim", "lambda"},
                   "bench config");
    const auto base = std::filesystem::path(args.config).parent_path();

    std::vector<BenchInstance> instances;
    if (auto it = cfg.find("instances"); it != cfg.end()) {
      if (!it->is_array()) throw ParseError("instances must be an array");
      for (const auto& item : *it) instances.push_back(load_bench_instance(item, base));
    }
    const auto eps_list = get_or<std::vector<double>>(cfg, "eps", {0.5});
    const auto seeds = get_or<std::vector<std::uint64_t>>(cfg, "seeds", {0});
    const auto reps = get_or<std::size_t>(cfg, "repetitions", 1);
    const bool with_oracle = get_or<bool>(cfg, "oracle", false);
    const auto oracle_budget = get_or<std::uint64_t>(cfg, "oracle_budget", std::uint64_t{1} << 24);

    SolverFlags flags;
    flags.mode = get_or<std::string>(cfg, "mode", "sampled");
    flags.lambda = get_or<double>(cfg, "lambda", 2.0);
    if (cfg.contains("sketch_dim")) flags.sketch_dim = get_or<std::size_t>(cfg, "sketch_dim", 1);
    if (auto it = cfg.find("budgets"); it != cfg.end()) {
      if (!it->is_object()) throw ParseError("budgets must be an object");
      reject_unknown(*it, {"family", "guess", "exhaustive", "lp_repeats", "max_repeats"}, "budgets");
      flags.budgets.family = get_or<std::uint64_t>(*it, "family", flags.budgets.family);
      flags.budgets.guess = get_or<std::uint64_t>(*it, "guess", flags.budgets.guess);
      flags.budgets.exhaustive = get_or<std::uint64_t>(*it, "exhaustive", flags.budgets.exhaustive);
      flags.budgets.max_repeats = get_or<std::size_t>(*it, "max_repeats", flags.budgets.max_repeats);
      if (it->contains("lp_repeats")) {
        flags.budgets.lp_repeats = get_or<std::size_t>(*it, "lp_repeats", 1);
      }
    }

    std::ostringstream csv;
    csv << "# l1rank-bench-csv v1\n";
    csv << "instance,problem,eps,seed,rep,cost,oracle_cost,lp_lower_bound,ratio,wall_ms,"
           "budget_family,budget_guess,budget_exhaustive,lp_repeats,mode\n";

    std::size_t rows = 0;
    std::size_t oracle_rows = 0;
    std::size_t within = 0;
    double ratio_min = std::numeric_limits<double>::infinity();
    double ratio_max = 0.0;
    double ratio_sum = 0.0;
    double wall_total = 0.0;

    for (const auto& bi : instances) {
      std::optional<std::size_t> opt;
      if (with_oracle) opt = oracle_value(bi.input, oracle_budget);
      for (double eps : eps_list) {
        for (auto seed : seeds) {
          for (std::size_t rep = 0; rep < reps; ++rep) {
            SolverFlags f = flags;
            f.eps = eps;
            const std::uint64_t run_seed = rep == 0 ? seed : derive_seed(seed, "rep", {rep});
            const auto t0 = std::chrono::steady_clock::now();
            const Solved s = solve_input(bi.input, pipeline_options(f, run_seed));
            const double wall =
                std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0)
                    .count();
            wall_total += wall;
            ++rows;

            std::optional<double> ratio;
            if (opt) {
              ratio = ratio_of(s.cost, *opt);
              ++oracle_rows;
              if (ratio) {
                ratio_min = std::min(ratio_min, *ratio);
                ratio_max = std::max(ratio_max, *ratio);
                ratio_sum += *ratio;
                if (*ratio <= 1.0 + eps + 1e-12) ++within;
              }
            }
            csv << bi.name << ',' << bi.input.problem << ',' << fmt(eps) << ',' << seed << ','
                << rep << ',' << s.cost << ',' << (opt ? std::to_string(*opt) : "") << ','
                << (s.report.lp_lower_bound ? fmt(*s.report.lp_lower_bound) : "") << ','
                << (ratio ? fmt(*ratio) : "") << ',' << (args.timing ? fmt(wall) : "") << ','
                << f.budgets.family << ',' << f.budgets.guess << ',' << f.budgets.exhaustive << ','
                << (f.budgets.lp_repeats ? std::to_string(*f.budgets.lp_repeats) : "auto") << ','
                << f.mode << '\n';
          }
        }
      }
    }

    Json summary;
    summary["rows"] = rows;
    summary["oracle_rows"] = oracle_rows;
    if (oracle_rows > 0) {
      summary["ratio_min"] = ratio_min;
      summary["ratio_max"] = ratio_max;
      summary["ratio_mean"] = ratio_sum / static_cast<double>(oracle_rows);
      summary["within_one_plus_eps"] =
          static_cast<double>(within) / static_cast<double>(oracle_rows);
    }
    summary["wall_ms_total"] = wall_total;

    if (args.out.empty()) {
      out << csv.str();
      if (args.summary.empty()) {
        err << dump_json(summary);
      } else {
        write_text_file(args.summary, dump_json(summary));
      }
    } else {
      write_text_file(args.out, csv.str());
      write_text_file(args.summary.empty() ? args.out + ".summary.json" : args.summary,
                      dump_json(summary));
    }
    return kOk;
  });
}

int cmd_encode(const EncodeArgs& args, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    if (args.problem == "kcenter" || !kProblems.count(args.problem)) {
      throw ParameterError("encode takes rank, boolean-rank, projective or closest-string");
    }
    const BitMatrix a = read_matrix_file(args.in);
    KCenterInstance inst = [&] {
      if (args.problem == "rank") return encode_gf2_rank(a, args.r);
      if (args.problem == "boolean-rank") return encode_boolean_rank(a, args.r);
      if (args.problem == "projective") return encode_projective(a.columns(), args.r, args.k);
      return encode_closest_string(a.row_vectors());
    }();
    Json prov;
    prov["encoding"] = args.problem;
    prov["r"] = args.problem == "closest-string" ? 1 : args.r;
    if (args.problem == "projective") prov["k"] = args.k;
    emit(args.out, dump_json(instance_to_json(inst, nullptr, nullptr, &prov)), out);
    return kOk;
  });
}

int cmd_decode(const DecodeArgs& args, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const BitMatrix a = read_matrix_file(args.in);
    Json cj;
    try {
      cj = Json::parse(read_text_file(args.centers));
    } catch (const nlohmann::json::parse_error& e) {
      throw ParseError(std::string("centers JSON: ") + e.what());
    }
    const CenterTuple centers = centers_from_json(cj);
    Json j;
    j["problem"] = args.problem;
    if (args.problem == "rank") {
      auto dec = decode_gf2_rank(a, args.r, centers);
      j["cost"] = column_sum_norm(a ^ dec.b);
      j["rank_check"] = gf2_rank(dec.b) <= args.r;
      j["b"] = matrix_rows(dec.b);
      j["basis"] = matrix_rows(dec.basis);
    } else if (args.problem == "boolean-rank") {
      auto dec = decode_boolean_rank(a, args.r, centers);
      j["cost"] = column_sum_norm(a ^ dec.b);
      j["factor_check"] = boolean_matmul(dec.u, dec.v) == dec.b;
      j["b"] = matrix_rows(dec.b);
      j["u"] = matrix_rows(dec.u);
      j["v"] = matrix_rows(dec.v);
    } else if (args.problem == "projective") {
      auto dec = decode_projective(a.columns(), args.r, args.k, centers);
      j["cost"] = projective_cost(a.columns(), dec.bases);
      Json bases = Json::array();
      for (const auto& b : dec.bases) bases.push_back(matrix_rows(b));
      j["bases"] = std::move(bases);
    } else if (args.problem == "closest-string") {
      const auto strings = a.row_vectors();
      const BitVec s = decode_closest_string(strings, centers);
      std::size_t cost = 0;
      for (const auto& x : strings) cost = std::max(cost, hamming(x, s));
      j["cost"] = cost;
      j["string"] = s.to_string();
    } else {
      throw ParameterError("decode takes rank, boolean-rank, projective or closest-string");
    }
    emit(args.out, dump_json(j), out);
    return kOk;
  });
}

int cmd_family(const FamilyArgs& args, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const InstanceDocument doc = read_instance_file(args.in);
    FamilyOptions fo;
    fo.mode = parse_family_mode(args.mode);
    fo.budget = args.budget;
    fo.params.epsilon = args.eps;
    fo.params.lambda = args.lambda;
    fo.params.dim = args.sketch_dim;
    fo.seed = args.seed;
    emit(args.out, dump_json(family_to_json(generate_family(doc.instance, fo))), out);
    return kOk;
  });
}

int cmd_lp_dump(const LpDumpArgs& args, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const InstanceDocument doc = read_instance_file(args.in);
    if (!doc.partition) throw ParseError("lp-dump needs an instance with a partition");
    auto offsets = doc.offsets.value_or(std::vector<std::size_t>(doc.instance->n(), 0));
    const PartitionStarInstance star(PartitionInstance(doc.instance, *doc.partition),
                                     std::move(offsets));
    emit(args.out, lp::to_cplex_lp(build_lp(star).program), out);
    return kOk;
  });
}

namespace {

void add_solver_flags(CLI::App* app, SolverFlags& f) {
  app->add_option("--eps", f.eps, "approximation parameter in (0, 1]");
  app->add_option("--seed", f.seed, "random seed; drawn and printed when omitted");
  app->add_option("--threads", f.threads, "OpenMP threads (0 = runtime default)");
  app->add_option("--budget-family", f.budgets.family, "partitions in the sketch family");
  app->add_option("--budget-guess", f.budgets.guess, "subset guesses per partition");
  app->add_option("--budget-exhaustive", f.budgets.exhaustive,
                  "tuple combinations for exhaustive sub-solves");
  app->add_option("--lp-repeats", f.budgets.lp_repeats, "roundings per LP solve");
  app->add_option("--mode", f.mode, "family mode")->check(CLI::IsMember({"exact", "sampled"}));
  app->add_option("--sketch-dim", f.sketch_dim, "override the sketch dimension");
  app->add_option("--lambda", f.lambda, "sketch dimension multiplier");
  app->add_flag("--timing", f.timing, "include wall time in the report");
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"l1rank: column-sum low-rank approximation over GF(2)"};
  app.require_subcommand(1);

  SolveArgs solve;
  auto* s = app.add_subcommand("solve", "solve a problem instance");
  s->add_option("problem", solve.problem, "problem")->required()->check(CLI::IsMember(kProblems));
  s->add_option("--in", solve.in, "input matrix or instance file")->required();
  s->add_option("--out", solve.out, "report path (stdout when omitted)");
  s->add_option("--r", solve.r, "rank");
  s->add_option("--k", solve.k, "number of subspaces (projective)");
  s->add_flag("--oracle-check", solve.oracle_check, "compare against the exact oracle");
  s->add_option("--oracle-budget", solve.oracle_budget, "oracle enumeration budget");
  add_solver_flags(s, solve.flags);

  GenerateArgs gen;
  auto* g = app.add_subcommand("generate", "write a planted low-rank matrix");
  g->add_option("--m", gen.m, "rows")->required();
  g->add_option("--n", gen.n, "columns")->required();
  g->add_option("--r", gen.r, "planted rank")->required();
  g->add_option("--s", gen.s, "maximum flips per column")->required();
  g->add_option("--seed", gen.seed, "random seed")->required();
  g->add_flag("--boolean", gen.boolean, "use the Boolean product");
  g->add_option("--out", gen.out, "matrix path (stdout when omitted)");
  g->add_option("--sidecar", gen.sidecar, "sidecar JSON path");

  BenchArgs bench;
  auto* b = app.add_subcommand("bench", "run a benchmark grid");
  b->add_option("--config", bench.config, "bench config JSON")->required();
  b->add_option("--out", bench.out, "CSV path (stdout when omitted)");
  b->add_option("--summary", bench.summary, "summary JSON path");
  b->add_flag("--timing", bench.timing, "fill the wall_ms column");
  b->add_option("--threads", bench.threads, "OpenMP threads");

  EncodeArgs enc;
  auto* e = app.add_subcommand("encode", "encode a matrix problem as a k-center instance");
  e->add_option("problem", enc.problem, "problem")->required();
  e->add_option("--in", enc.in, "matrix file")->required();
  e->add_option("--out", enc.out, "instance path");
  e->add_option("--r", enc.r, "rank");
  e->add_option("--k", enc.k, "number of subspaces");

  DecodeArgs dec;
  auto* d = app.add_subcommand("decode", "decode centers back to a matrix solution");
  d->add_option("problem", dec.problem, "problem")->required();
  d->add_option("--in", dec.in, "matrix file")->required();
  d->add_option("--centers", dec.centers, "JSON with a centers array")->required();
  d->add_option("--out", dec.out, "output path");
  d->add_option("--r", dec.r, "rank");
  d->add_option("--k", dec.k, "number of subspaces");

  FamilyArgs fam;
  auto* f = app.add_subcommand("family", "generate the sketch partition family");
  f->add_option("--in", fam.in, "instance file")->required();
  f->add_option("--out", fam.out, "output path");
  f->add_option("--eps", fam.eps, "sketch epsilon");
  f->add_option("--seed", fam.seed, "random seed");
  f->add_option("--mode", fam.mode, "family mode")->check(CLI::IsMember({"exact", "sampled"}));
  f->add_option("--budget-family", fam.budget, "partition budget");
  f->add_option("--sketch-dim", fam.sketch_dim, "override the sketch dimension");
  f->add_option("--lambda", fam.lambda, "sketch dimension multiplier");

  LpDumpArgs lpd;
  auto* l = app.add_subcommand("lp-dump", "write the LP relaxation in CPLEX LP format");
  l->add_option("--in", lpd.in, "instance file with a partition")->required();
  l->add_option("--out", lpd.out, "output path");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& ex) {
    const int code = app.exit(ex, out, err);
    return code == 0 ? kOk : kParseFailure;
  }

  if (s->parsed()) return cmd_solve(solve, out, err);
  if (g->parsed()) return cmd_generate(gen, out, err);
  if (b->parsed()) return cmd_bench(bench, out, err);
  if (e->parsed()) return cmd_encode(enc, out, err);
  if (d->parsed()) return cmd_decode(dec, out, err);
  if (f->parsed()) return cmd_family(fam, out, err);
  return cmd_lp_dump(lpd, out, err);
}

}  // namespace l1rank::cli
