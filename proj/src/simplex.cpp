#include "l1rank/simplex.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "l1rank/error.hpp"

namespace l1rank::lp {

namespace {

constexpr std::size_t kDegenerateRunBeforeBland = 64;

class Tableau {
 public:
  Tableau(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), data_((rows + 1) * (cols + 1), 0.0), basis_(rows, 0) {}

  double& at(std::size_t r, std::size_t c) { return data_[r * (cols_ + 1) + c]; }
  double& rhs(std::size_t r) { return at(r, cols_); }
  double& cost(std::size_t c) { return at(rows_, c); }
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  std::vector<std::size_t>& basis() { return basis_; }

  void pivot(std::size_t r, std::size_t c) {
    const double inv = 1.0 / at(r, c);
    double* prow = &data_[r * (cols_ + 1)];
    for (std::size_t j = 0; j <= cols_; ++j) prow[j] *= inv;
    prow[c] = 1.0;
    for (std::size_t i = 0; i <= rows_; ++i) {
      if (i == r) continue;
      double* row = &data_[i * (cols_ + 1)];
      const double f = row[c];
      if (f == 0.0) continue;
      for (std::size_t j = 0; j <= cols_; ++j) row[j] -= f * prow[j];
      row[c] = 0.0;
    }
    basis_[r] = c;
  }

  // Rewrites the cost row as reduced costs for `costs` under the current basis.
  void price(const std::vector<double>& costs) {
    for (std::size_t j = 0; j <= cols_; ++j) cost(j) = j < cols_ ? costs[j] : 0.0;
    for (std::size_t i = 0; i < rows_; ++i) {
      const double cb = costs[basis_[i]];
      if (cb == 0.0) continue;
      for (std::size_t j = 0; j <= cols_; ++j) cost(j) -= cb * at(i, j);
    }
  }

  // Runs simplex iterations on the current cost row. Columns at or beyond
  // `allowed_cols` never enter.
  Status optimize(std::size_t allowed_cols, double tol, std::size_t& iterations,
                  std::size_t limit) {
    bool bland = false;
    std::size_t degenerate_run = 0;
    while (iterations < limit) {
      std::size_t enter = allowed_cols;
      double best = -tol;
      for (std::size_t j = 0; j < allowed_cols; ++j) {
        const double z = cost(j);
        if (bland) {
          if (z < -tol) {
            enter = j;
            break;
          }
        } else if (z < best) {
          best = z;
          enter = j;
        }
      }
      if (enter == allowed_cols) return Status::optimal;

      std::size_t leave = rows_;
      double ratio = std::numeric_limits<double>::infinity();
      for (std::size_t i = 0; i < rows_; ++i) {
        const double a = at(i, enter);
        if (a <= tol) continue;
        const double q = rhs(i) / a;
        if (q < ratio - tol || (q <= ratio + tol && leave < rows_ && basis_[i] < basis_[leave])) {
          ratio = q;
          leave = i;
        }
      }
      if (leave == rows_) return Status::unbounded;

      if (ratio <= tol) {
        if (++degenerate_run > kDegenerateRunBeforeBland) bland = true;
      } else {
        degenerate_run = 0;
      }
      pivot(leave, enter);
      ++iterations;
    }
    return Status::iteration_limit;
  }

 private:
  std::size_t rows_;
  std::size_t cols_;
  std::vector<double> data_;
  std::vector<std::size_t> basis_;
};

}  // namespace

Result solve(const LinearProgram& program, double tolerance) {
  const std::size_t n = program.num_vars();
  const std::size_t m = program.rows.size();
  if (program.objective.size() != n) throw DimensionError("LP objective length mismatch");

  // Normalize every row to a non-negative right-hand side.
  std::vector<Sense> sense(m);
  std::vector<double> sign(m, 1.0);
  std::size_t slacks = 0;
  std::size_t artificials = 0;
  for (std::size_t i = 0; i < m; ++i) {
    const Row& row = program.rows[i];
    if (row.coeffs.size() != n) throw DimensionError("LP row length mismatch in " + row.name);
    sense[i] = row.sense;
    if (row.rhs < 0) {
      sign[i] = -1.0;
      if (sense[i] == Sense::le) {
        sense[i] = Sense::ge;
      } else if (sense[i] == Sense::ge) {
        sense[i] = Sense::le;
      }
    }
    if (sense[i] != Sense::eq) ++slacks;
    if (sense[i] != Sense::le) ++artificials;
  }

  const std::size_t cols = n + slacks + artificials;
  Tableau tab(m, cols);
  std::size_t next_slack = n;
  std::size_t next_art = n + slacks;
  for (std::size_t i = 0; i < m; ++i) {
    const Row& row = program.rows[i];
    for (std::size_t j = 0; j < n; ++j) tab.at(i, j) = sign[i] * row.coeffs[j];
    tab.rhs(i) = sign[i] * row.rhs;
    if (sense[i] == Sense::le) {
      tab.at(i, next_slack) = 1.0;
      tab.basis()[i] = next_slack++;
    } else {
      if (sense[i] == Sense::ge) tab.at(i, next_slack++) = -1.0;
      tab.at(i, next_art) = 1.0;
      tab.basis()[i] = next_art++;
    }
  }

  Result result;
  const std::size_t limit = 50000 + 20 * (m + cols);

  if (artificials > 0) {
    std::vector<double> phase1(cols, 0.0);
    for (std::size_t j = n + slacks; j < cols; ++j) phase1[j] = 1.0;
    tab.price(phase1);
    const Status s = tab.optimize(cols, tolerance, result.iterations, limit);
    if (s == Status::iteration_limit) {
      result.status = s;
      return result;
    }
    if (-tab.rhs(m) > 1e-7) {
      result.status = Status::infeasible;
      return result;
    }
    // Pivot artificials out of the basis where possible; rows where that
    // fails are redundant and keep a zero-valued artificial.
    for (std::size_t i = 0; i < m; ++i) {
      if (tab.basis()[i] < n + slacks) continue;
      for (std::size_t j = 0; j < n + slacks; ++j) {
        if (std::abs(tab.at(i, j)) > tolerance) {
          tab.pivot(i, j);
          break;
        }
      }
    }
  }

  std::vector<double> phase2(cols, 0.0);
  for (std::size_t j = 0; j < n; ++j) phase2[j] = program.objective[j];
  tab.price(phase2);
  result.status = tab.optimize(n + slacks, tolerance, result.iterations, limit);
  if (result.status != Status::optimal) return result;

  result.x.assign(n, 0.0);
  for (std::size_t i = 0; i < m; ++i) {
    if (tab.basis()[i] < n) result.x[tab.basis()[i]] = std::max(0.0, tab.rhs(i));
  }
  result.objective = 0.0;
  for (std::size_t j = 0; j < n; ++j) result.objective += program.objective[j] * result.x[j];
  return result;
}

namespace {

void write_term(std::ostringstream& out, double coeff, const std::string& name, bool& first) {
  if (coeff == 0.0) return;
  if (coeff < 0) {
    out << (first ? "- " : " - ");
  } else if (!first) {
    out << " + ";
  }
  const double mag = std::abs(coeff);
  if (mag != 1.0) out << mag << ' ';
  out << name;
  first = false;
}

}  // namespace

std::string to_cplex_lp(const LinearProgram& program) {
  std::ostringstream out;
  out.precision(17);
  out << "Minimize\n obj: ";
  bool first = true;
  for (std::size_t j = 0; j < program.num_vars(); ++j) {
    write_term(out, program.objective[j], program.var_names[j], first);
  }
  if (first) out << "0 " << (program.num_vars() ? program.var_names[0] : "x");
  out << "\nSubject To\n";
  for (const auto& row : program.rows) {
    out << ' ' << row.name << ": ";
    first = true;
    for (std::size_t j = 0; j < program.num_vars(); ++j) {
      write_term(out, row.coeffs[j], program.var_names[j], first);
    }
    if (first) out << "0 " << program.var_names[0];
    switch (row.sense) {
      case Sense::le: out << " <= "; break;
      case Sense::ge: out << " >= "; break;
      case Sense::eq: out << " = "; break;
    }
    out << row.rhs << '\n';
  }
  out << "Bounds\n";
  for (std::size_t j = 0; j < program.num_vars(); ++j) {
    const double ub = program.upper.empty() ? std::numeric_limits<double>::infinity()
                                            : program.upper[j];
    if (std::isinf(ub)) {
      out << ' ' << program.var_names[j] << " >= 0\n";
    } else {
      out << " 0 <= " << program.var_names[j] << " <= " << ub << '\n';
    }
  }
  out << "End\n";
  return out.str();
}

const char* to_string(Status s) noexcept {
  switch (s) {
    case Status::optimal: return "optimal";
    case Status::infeasible: return "infeasible";
    case Status::unbounded: return "unbounded";
    case Status::iteration_limit: return "iteration_limit";
  }
  return "unknown";
}

}  // namespace l1rank::lp
