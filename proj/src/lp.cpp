#include "ader/lp.hpp"

#include <cmath>
#include <limits>

namespace ader::lp {

namespace {

constexpr double kCostTol = 1e-11;   // reduced-cost threshold for entering
constexpr double kPivotTol = 1e-11;  // smallest usable pivot element
constexpr double kFeasTol = 1e-9;    // phase-1 optimum below this counts as feasible

// Dense tableau with an explicit objective row.  basis_[i] is the variable
// occupying row i.  Column layout is fixed by the caller; the last column is
// the right-hand side.
class Tableau {
 public:
  Tableau(Eigen::MatrixXd t, std::vector<int> basis, int num_cols)
      : t_(std::move(t)), basis_(std::move(basis)), ncols_(num_cols) {}

  // Runs simplex until optimal or unbounded.  Objective row must be priced
  // for the current basis on entry.  Columns at index >= col_limit may not
  // enter the basis (used to bar artificials in phase 2).
  Status iterate(int col_limit = -1) {
    const int m = static_cast<int>(basis_.size());
    const int limit = col_limit < 0 ? ncols_ : col_limit;
    for (;;) {
      int enter = -1;
      for (int j = 0; j < limit; ++j) {
        if (t_(m, j) < -kCostTol) {
          enter = j;
          break;  // Bland: lowest index
        }
      }
      if (enter < 0) return Status::Optimal;

      int leave = -1;
      double best_ratio = std::numeric_limits<double>::infinity();
      for (int i = 0; i < m; ++i) {
        const double aij = t_(i, enter);
        if (aij > kPivotTol) {
          const double ratio = t_(i, ncols_) / aij;
          if (ratio < best_ratio - 1e-15 ||
              (ratio < best_ratio + 1e-15 && (leave < 0 || basis_[i] < basis_[leave]))) {
            best_ratio = ratio;
            leave = i;
          }
        }
      }
      if (leave < 0) return Status::Unbounded;
      pivot(leave, enter);
    }
  }

  void pivot(int r, int s) {
    const int m = static_cast<int>(basis_.size());
    t_.row(r) /= t_(r, s);
    for (int i = 0; i <= m; ++i) {
      if (i == r) continue;
      const double f = t_(i, s);
      if (f != 0.0) t_.row(i) -= f * t_.row(r);
    }
    basis_[r] = s;
  }

  Eigen::MatrixXd& data() { return t_; }
  std::vector<int>& basis() { return basis_; }
  int ncols() const { return ncols_; }

 private:
  Eigen::MatrixXd t_;
  std::vector<int> basis_;
  int ncols_;
};

}  // namespace

Problem::Problem(int num_vars) : n_(num_vars), c_(Eigen::VectorXd::Zero(num_vars)), free_(num_vars, false) {}

void Problem::set_objective(const Eigen::VectorXd& c) { c_ = c; }

void Problem::set_free(int var) { free_[var] = true; }

void Problem::add_row(const Eigen::VectorXd& coeffs, Rel rel, double rhs) {
  rows_.push_back({coeffs, rel, rhs});
}

Result Problem::solve() const { return run(false); }

Result Problem::solve_feasibility() const { return run(true); }

Result Problem::run(bool feasibility_only) const {
  const int m = num_rows();

  // Standard-form layout: split free variables, then one slack/surplus per
  // inequality row, then one artificial per row.
  int n_std = 0;
  std::vector<int> pos_col(n_), neg_col(n_, -1);
  for (int j = 0; j < n_; ++j) {
    pos_col[j] = n_std++;
    if (free_[j]) neg_col[j] = n_std++;
  }
  std::vector<int> slack_col(m, -1);
  for (int i = 0; i < m; ++i) {
    if (rows_[i].rel != Rel::Eq) slack_col[i] = n_std++;
  }
  const int art0 = n_std;
  const int ncols = n_std + m;

  Eigen::MatrixXd t = Eigen::MatrixXd::Zero(m + 1, ncols + 1);
  for (int i = 0; i < m; ++i) {
    double b = rows_[i].b;
    Eigen::VectorXd a = rows_[i].a;
    // Flip the row so the rhs is nonnegative (keeps artificials feasible).
    double slack = (rows_[i].rel == Rel::Le) ? 1.0 : (rows_[i].rel == Rel::Ge ? -1.0 : 0.0);
    if (b < 0) {
      b = -b;
      a = -a;
      slack = -slack;
    }
    for (int j = 0; j < n_; ++j) {
      t(i, pos_col[j]) = a(j);
      if (neg_col[j] >= 0) t(i, neg_col[j]) = -a(j);
    }
    if (slack_col[i] >= 0) t(i, slack_col[i]) = slack;
    t(i, art0 + i) = 1.0;
    t(i, ncols) = b;
  }

  std::vector<int> basis(m);
  for (int i = 0; i < m; ++i) basis[i] = art0 + i;

  // Phase 1: minimize the sum of artificials.
  for (int j = 0; j < ncols; ++j) {
    double z = 0.0;
    for (int i = 0; i < m; ++i)
      if (basis[i] >= art0) z += t(i, j);
    t(m, j) = (j >= art0 ? 1.0 : 0.0) - z;
  }
  double rhs_obj = 0.0;
  for (int i = 0; i < m; ++i) rhs_obj += t(i, ncols);
  t(m, ncols) = -rhs_obj;

  Tableau tab(std::move(t), std::move(basis), ncols);
  tab.iterate();  // phase 1 cannot be unbounded

  const double phase1 = -tab.data()(tab.basis().size(), ncols);
  Result res;
  res.infeasibility = std::max(0.0, phase1);

  auto extract = [&](Result& r) {
    r.x = Eigen::VectorXd::Zero(n_);
    const auto& b = tab.basis();
    for (int i = 0; i < m; ++i) {
      const double v = tab.data()(i, ncols);
      for (int j = 0; j < n_; ++j) {
        if (b[i] == pos_col[j]) r.x(j) += v;
        if (b[i] == neg_col[j]) r.x(j) -= v;
      }
    }
    r.objective = c_.dot(r.x);
  };

  const double feas_scale = std::max(1.0, std::abs(rhs_obj));
  if (phase1 > kFeasTol * feas_scale) {
    res.status = Status::Infeasible;
    extract(res);
    return res;
  }

  // Drive any artificial still basic (at zero) out of the basis when a
  // non-artificial pivot exists; rows with none are redundant and inert.
  for (int i = 0; i < m; ++i) {
    if (tab.basis()[i] >= art0) {
      for (int j = 0; j < art0; ++j) {
        if (std::abs(tab.data()(i, j)) > 1e-8) {
          tab.pivot(i, j);
          break;
        }
      }
    }
  }

  if (feasibility_only) {
    res.status = Status::Optimal;
    extract(res);
    return res;
  }

  // Phase 2: price the real objective over the current basis; artificials
  // are barred from re-entering.
  {
    auto& td = tab.data();
    Eigen::VectorXd cost = Eigen::VectorXd::Zero(ncols);
    for (int j = 0; j < n_; ++j) {
      cost(pos_col[j]) = c_(j);
      if (neg_col[j] >= 0) cost(neg_col[j]) = -c_(j);
    }
    for (int j = 0; j < ncols; ++j) {
      double z = 0.0;
      for (int i = 0; i < m; ++i) z += cost(tab.basis()[i]) * td(i, j);
      td(m, j) = cost(j) - z;
    }
    double obj = 0.0;
    for (int i = 0; i < m; ++i) obj += cost(tab.basis()[i]) * td(i, ncols);
    td(m, ncols) = -obj;
  }

  const Status st = tab.iterate(art0);
  res.status = (st == Status::Unbounded) ? Status::Unbounded : Status::Optimal;
  extract(res);
  return res;
}

}  // namespace ader::lp
