#pragma once

#include <cstddef>
#include <string>
#include <vector>

namespace l1rank::lp {

enum class Sense { le, ge, eq };

struct Row {
  std::string name;
  std::vector<double> coeffs;  // dense, one entry per variable
  Sense sense = Sense::le;
  double rhs = 0.0;
};

// minimize objective . x  subject to rows, x >= 0 (plus optional upper bounds,
// which are only emitted in the text dump; the solver relies on the rows).
struct LinearProgram {
  std::vector<std::string> var_names;
  std::vector<double> objective;
  std::vector<double> upper;  // empty, or one entry per variable (inf = none)
  std::vector<Row> rows;

  std::size_t num_vars() const noexcept { return var_names.size(); }
};

enum class Status { optimal, infeasible, unbounded, iteration_limit };

struct Result {
  Status status = Status::iteration_limit;
  std::vector<double> x;
  double objective = 0.0;
  std::size_t iterations = 0;
};

// Dense two-phase tableau simplex. Dantzig pricing, switching to Bland's rule
// after a run of degenerate pivots so that cycling cannot occur.
Result solve(const LinearProgram& program, double tolerance = 1e-9);

// CPLEX LP text format: Minimize / Subject To / Bounds / End.
std::string to_cplex_lp(const LinearProgram& program);

const char* to_string(Status s) noexcept;

}  // namespace l1rank::lp
