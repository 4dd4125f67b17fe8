#pragma once

#include <Eigen/Dense>
#include <vector>

namespace ader::lp {

enum class Status { Optimal, Infeasible, Unbounded };

enum class Rel { Le, Eq, Ge };

struct Result {
  Status status = Status::Infeasible;
  Eigen::VectorXd x;             // solution in the caller's variables
  double objective = 0.0;        // c^T x at the final point
  double infeasibility = 0.0;    // phase-1 optimum (0 when feasible)
};

/// Dense two-phase simplex over a row-built problem:
///   minimize c^T x  subject to  a_i^T x {<=,=,>=} b_i,
/// with every variable nonnegative unless marked free.
///
/// Pivoting uses Bland's rule (lowest eligible index enters, ties on the
/// ratio test break toward the lowest basic index), so the method always
/// terminates and runs bit-deterministically for identical input.
class Problem {
 public:
  explicit Problem(int num_vars);

  int num_vars() const { return n_; }
  int num_rows() const { return static_cast<int>(rows_.size()); }

  void set_objective(const Eigen::VectorXd& c);
  void set_free(int var);
  void add_row(const Eigen::VectorXd& coeffs, Rel rel, double rhs);

  Result solve() const;

  /// Phase-1 only: decide feasibility and return a basic feasible point.
  Result solve_feasibility() const;

 private:
  struct Row {
    Eigen::VectorXd a;
    Rel rel;
    double b;
  };

  Result run(bool feasibility_only) const;

  int n_;
  Eigen::VectorXd c_;
  std::vector<bool> free_;
  std::vector<Row> rows_;
};

}  // namespace ader::lp
