#include "ader/separation.hpp"

#include <cmath>
#include <stdexcept>

#include "ader/errors.hpp"
#include "ader/lp.hpp"

namespace ader {

namespace {

double point_scale(const PointSet& k, const PointSet& l) {
  double s = 1.0;
  for (const auto& p : k.points) s = std::max(s, p.norm());
  for (const auto& p : l.points) s = std::max(s, p.norm());
  return s;
}

// Rows of the intersection feasibility system over weights (p, q):
//   sum p_i x_i - sum q_j y_j = 0
//   C^T (sum p_i x_i) = 0            (C = orthonormal basis of U^perp)
//   sum p = 1, sum q = 1
void add_intersection_rows(lp::Problem& prob, const PointSet& k, const PointSet& l, const Matrix& comp) {
  const int nk = static_cast<int>(k.points.size());
  const int nl = static_cast<int>(l.points.size());
  const int d = k.dim();

  for (int r = 0; r < d; ++r) {
    Vector row(nk + nl);
    for (int i = 0; i < nk; ++i) row(i) = k.points[i](r);
    for (int j = 0; j < nl; ++j) row(nk + j) = -l.points[j](r);
    prob.add_row(row, lp::Rel::Eq, 0.0);
  }
  for (int r = 0; r < comp.cols(); ++r) {
    Vector row(nk + nl);
    for (int i = 0; i < nk; ++i) row(i) = comp.col(r).dot(k.points[i]);
    for (int j = 0; j < nl; ++j) row(nk + j) = 0.0;
    prob.add_row(row, lp::Rel::Eq, 0.0);
  }
  Vector sk = Vector::Zero(nk + nl), sl = Vector::Zero(nk + nl);
  sk.head(nk).setOnes();
  sl.tail(nl).setOnes();
  prob.add_row(sk, lp::Rel::Eq, 1.0);
  prob.add_row(sl, lp::Rel::Eq, 1.0);
}

Intersecting witness_from_weights(const Vector& x, const PointSet& k, const PointSet& l, const Subspace& u) {
  const int nk = static_cast<int>(k.points.size());
  const int nl = static_cast<int>(l.points.size());
  Intersecting w;
  w.combo_k = x.head(nk).cwiseMax(0.0);
  w.combo_l = x.tail(nl).cwiseMax(0.0);
  Vector pt = Vector::Zero(k.dim());
  for (int i = 0; i < nk; ++i) pt += w.combo_k(i) * k.points[i];
  // Project onto U to strip numerical dust in the complement.
  w.point = u.basis * (u.basis.transpose() * pt);
  return w;
}

}  // namespace

int support_size(const Vector& weights, double tol) {
  int c = 0;
  for (int i = 0; i < weights.size(); ++i)
    if (weights(i) > tol) ++c;
  return c;
}

SeparationWitness separate(const PointSet& k, const PointSet& l, const Subspace& u,
                           const SeparateOptions& opts) {
  if (k.points.empty() || l.points.empty()) throw std::invalid_argument("point sets must be non-empty");
  const int d = k.dim();
  if (l.dim() != d || u.ambient_dim() != d) throw std::invalid_argument("dimension mismatch");

  const double scale = point_scale(k, l);
  const Matrix comp = linalg::orthonormal_complement(u.basis, d);

  const int nk = static_cast<int>(k.points.size());
  const int nl = static_cast<int>(l.points.size());

  lp::Problem feas(nk + nl);
  add_intersection_rows(feas, k, l, comp);
  auto res = feas.solve_feasibility();
  if (res.infeasibility <= opts.feas_tol * scale) {
    return witness_from_weights(res.x, k, l, u);
  }

  // Separated: maximize the margin delta subject to
  //   <a+v, x> <= s           for x in K
  //   <a+w, y> >= s + delta   for y in L
  //   ||(a, v, w)||_1 <= 1  (coefficients over the U / U^perp bases)
  // Layout: alpha (ku), beta (kc), gamma (kc), s, delta, then one absolute-
  // value variable t_i per coefficient with z_i <= t_i, -z_i <= t_i.
  const int ku = u.dim();
  const int kc = static_cast<int>(comp.cols());
  const int ncoef = ku + 2 * kc;
  const int s_idx = ncoef;
  const int delta_idx = ncoef + 1;
  const int nv = ncoef + 2 + ncoef;
  lp::Problem marg(nv);
  for (int i = 0; i <= s_idx; ++i) marg.set_free(i);
  Vector obj = Vector::Zero(nv);
  obj(delta_idx) = -1.0;  // maximize delta
  marg.set_objective(obj);

  for (const auto& x : k.points) {
    Vector row = Vector::Zero(nv);
    for (int r = 0; r < ku; ++r) row(r) = u.basis.col(r).dot(x);
    for (int r = 0; r < kc; ++r) row(ku + r) = comp.col(r).dot(x);
    row(s_idx) = -1.0;
    marg.add_row(row, lp::Rel::Le, 0.0);
  }
  for (const auto& y : l.points) {
    Vector row = Vector::Zero(nv);
    for (int r = 0; r < ku; ++r) row(r) = u.basis.col(r).dot(y);
    for (int r = 0; r < kc; ++r) row(ku + kc + r) = comp.col(r).dot(y);
    row(s_idx) = -1.0;
    row(delta_idx) = -1.0;
    marg.add_row(row, lp::Rel::Ge, 0.0);
  }
  for (int i = 0; i < ncoef; ++i) {
    Vector up = Vector::Zero(nv);
    up(i) = 1.0;
    up(delta_idx + 1 + i) = -1.0;
    marg.add_row(up, lp::Rel::Le, 0.0);
    Vector dn = Vector::Zero(nv);
    dn(i) = -1.0;
    dn(delta_idx + 1 + i) = -1.0;
    marg.add_row(dn, lp::Rel::Le, 0.0);
  }
  Vector budget = Vector::Zero(nv);
  budget.tail(ncoef).setOnes();
  marg.add_row(budget, lp::Rel::Le, 1.0);

  auto mres = marg.solve();
  if (mres.status != lp::Status::Optimal)
    throw SolverError("margin LP failed (status not optimal); phase-1 residual " +
                      std::to_string(res.infeasibility));

  Separated sep;
  sep.a = Vector::Zero(d);
  for (int r = 0; r < ku; ++r) sep.a += mres.x(r) * u.basis.col(r);
  sep.v = Vector::Zero(d);
  sep.w = Vector::Zero(d);
  for (int r = 0; r < kc; ++r) {
    sep.v += mres.x(ku + r) * comp.col(r);
    sep.w += mres.x(ku + kc + r) * comp.col(r);
  }
  sep.margin = -mres.objective;
  if (sep.margin <= 0)
    throw SolverError("separation margin not positive despite infeasible intersection LP");
  return sep;
}

Intersecting reduce_support(const Intersecting& witness, const PointSet& k, const PointSet& l,
                            const Subspace& u, int cap) {
  const int d = k.dim();
  const int nk = static_cast<int>(k.points.size());
  const int nl = static_cast<int>(l.points.size());
  if (witness.combo_k.size() != nk || witness.combo_l.size() != nl)
    throw std::invalid_argument("witness does not match the point sets");
  if (cap < 0) cap = 2 * (d + 1) - u.dim();

  // Feasibility system with the reconstructed point pinned, so the reduced
  // witness certifies the same intersection point.
  lp::Problem prob(nk + nl);
  for (int r = 0; r < d; ++r) {
    Vector row_k(nk + nl), row_l(nk + nl);
    row_k.setZero();
    row_l.setZero();
    for (int i = 0; i < nk; ++i) row_k(i) = k.points[i](r);
    for (int j = 0; j < nl; ++j) row_l(nk + j) = l.points[j](r);
    prob.add_row(row_k, lp::Rel::Eq, witness.point(r));
    prob.add_row(row_l, lp::Rel::Eq, witness.point(r));
  }
  Vector sk = Vector::Zero(nk + nl), sl = Vector::Zero(nk + nl);
  sk.head(nk).setOnes();
  sl.tail(nl).setOnes();
  prob.add_row(sk, lp::Rel::Eq, 1.0);
  prob.add_row(sl, lp::Rel::Eq, 1.0);

  auto res = prob.solve_feasibility();
  const double scale = point_scale(k, l);
  if (res.infeasibility > 1e-8 * scale)
    throw SolverError("support reduction: pinned feasibility system unexpectedly infeasible");

  Intersecting out = witness_from_weights(res.x, k, l, u);
  const int sup = support_size(out.combo_k) + support_size(out.combo_l);
  if (sup > cap)
    throw ReductionInfeasible("support " + std::to_string(sup) + " exceeds cap " + std::to_string(cap));
  return out;
}

TightnessInstance tightness_instance(int n, int d) {
  if (n < 1 || d < 0 || d > n) throw std::invalid_argument("need n >= 1 and 0 <= d <= n");
  TightnessInstance t;
  Vector ones_comb = Vector::Zero(n);
  for (int i = 0; i < n; ++i) ones_comb(i) = 1.0;
  ones_comb /= (2.0 * n);

  for (int i = 0; i < n; ++i) t.k.points.push_back(Vector::Unit(n, i));
  t.k.points.push_back(-ones_comb);
  for (int i = d; i < n; ++i) t.l.points.push_back(-Vector::Unit(n, i));
  t.l.points.push_back(ones_comb);

  t.u = Subspace::coordinate(n, d);
  t.intersection = Vector::Zero(n);
  for (int i = 0; i < d; ++i) t.intersection(i) = 1.0 / (3.0 * n - d);
  return t;
}

}  // namespace ader
