#include "copos/simplex_lp.hpp"

#include <cmath>

namespace copos {

namespace {

constexpr double kPivotEps = 1e-11;
constexpr double kFeasTol = 1e-9;
constexpr int kMaxIter = 20000;

struct Tableau {
  Matrix t;                // m x (ncols + 1); last column is the RHS
  Vector red;              // reduced-cost row, length ncols
  double obj = 0.0;        // current objective value
  std::vector<int> basis;  // basis variable per row
  int ncols = 0;

  void pivot(int row, int col) {
    double p = t(row, col);
    t.row(row) /= p;
    for (int i = 0; i < t.rows(); ++i) {
      if (i == row) continue;
      double f = t(i, col);
      if (f != 0.0) t.row(i) -= f * t.row(row);
    }
    double rf = red[col];
    if (rf != 0.0) {
      for (int j = 0; j < ncols; ++j) red[j] -= rf * t(row, j);
      obj -= rf * t(row, ncols);
    }
    basis[row] = col;
  }

  // Bland: entering = lowest-index improving column among `allowed`,
  // leaving = smallest ratio with ties broken by lowest basis index.
  // Returns false at optimum; throws nothing; *unbounded set on ray.
  bool step(const std::vector<char>& allowed, bool* unbounded) {
    int enter = -1;
    for (int j = 0; j < ncols; ++j) {
      if (!allowed[j]) continue;
      if (red[j] < -kPivotEps) {
        enter = j;
        break;
      }
    }
    if (enter < 0) return false;
    int leave = -1;
    double best_ratio = 0.0;
    for (int i = 0; i < t.rows(); ++i) {
      double a = t(i, enter);
      if (a <= kPivotEps) continue;
      double ratio = t(i, ncols) / a;
      if (leave < 0 || ratio < best_ratio - 1e-15 ||
          (std::abs(ratio - best_ratio) <= 1e-15 && basis[i] < basis[leave])) {
        leave = i;
        best_ratio = ratio;
      }
    }
    if (leave < 0) {
      *unbounded = true;
      return false;
    }
    pivot(leave, enter);
    return true;
  }
};

}  // namespace

LpResult lp_solve_geq(const Vector& c, const Matrix& G, const Vector& h) {
  const int m = static_cast<int>(G.rows());
  const int nu = static_cast<int>(G.cols());
  if (h.size() != m || c.size() != nu) throw Error(Err::DimensionMismatch, "LP shape mismatch");

  // Equality form: sigma_i (G u - s)_i = sigma_i h_i with RHS >= 0,
  // columns ordered [u | s | a].
  Vector sigma(m);
  for (int i = 0; i < m; ++i) sigma[i] = (h[i] >= 0.0) ? 1.0 : -1.0;

  Tableau tab;
  tab.ncols = nu + m + m;
  tab.t = Matrix::Zero(m, tab.ncols + 1);
  tab.basis.resize(m);
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < nu; ++j) tab.t(i, j) = sigma[i] * G(i, j);
    tab.t(i, nu + i) = -sigma[i];
    tab.t(i, nu + m + i) = 1.0;
    tab.t(i, tab.ncols) = sigma[i] * h[i];
    tab.basis[i] = nu + m + i;
  }

  // Phase 1: minimize the artificial sum.
  tab.red = Vector::Zero(tab.ncols);
  for (int j = 0; j < nu + m; ++j) {
    double colsum = 0.0;
    for (int i = 0; i < m; ++i) colsum += tab.t(i, j);
    tab.red[j] = -colsum;
  }
  tab.obj = -tab.t.col(tab.ncols).sum();

  std::vector<char> allowed(tab.ncols, 1);
  bool unbounded = false;
  for (int it = 0; it < kMaxIter && tab.step(allowed, &unbounded); ++it) {
  }

  LpResult out;
  double phase1 = -tab.obj;  // obj tracks -(artificial sum)
  if (phase1 > kFeasTol) {
    out.status = LpResult::Status::Infeasible;
    // Dual multipliers from the artificial reduced costs: w_i = 1 - red[a_i];
    // y = sigma .* w is the Farkas certificate for the original system.
    out.farkas = Vector(m);
    for (int i = 0; i < m; ++i) out.farkas[i] = sigma[i] * (1.0 - tab.red[nu + m + i]);
    return out;
  }

  // Drive any residual artificials out of the basis; rows that cannot pivot
  // are redundant and harmless since their artificial sits at zero.
  for (int i = 0; i < m; ++i) {
    if (tab.basis[i] < nu + m) continue;
    for (int j = 0; j < nu + m; ++j) {
      if (std::abs(tab.t(i, j)) > kPivotEps) {
        tab.pivot(i, j);
        break;
      }
    }
  }

  // Phase 2 over the real objective, artificial columns frozen.
  for (int j = nu + m; j < tab.ncols; ++j) allowed[j] = 0;
  tab.red = Vector::Zero(tab.ncols);
  tab.obj = 0.0;
  for (int j = 0; j < nu; ++j) tab.red[j] = c[j];
  for (int i = 0; i < m; ++i) {
    int b = tab.basis[i];
    double cb = (b < nu) ? c[b] : 0.0;
    if (cb != 0.0) {
      for (int j = 0; j < tab.ncols; ++j) tab.red[j] -= cb * tab.t(i, j);
      tab.obj -= cb * tab.t(i, tab.ncols);
    }
  }
  for (int i = 0; i < m; ++i)
    if (tab.basis[i] < tab.ncols) tab.red[tab.basis[i]] = 0.0;

  unbounded = false;
  for (int it = 0; it < kMaxIter && tab.step(allowed, &unbounded); ++it) {
  }
  if (unbounded) {
    out.status = LpResult::Status::Unbounded;
    return out;
  }

  out.status = LpResult::Status::Optimal;
  out.x = Vector::Zero(nu);
  for (int i = 0; i < m; ++i)
    if (tab.basis[i] < nu) out.x[tab.basis[i]] = tab.t(i, tab.ncols);
  out.objective = c.dot(out.x);
  return out;
}

}  // namespace copos
