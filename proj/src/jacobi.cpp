#include "copos/jacobi.hpp"

#include <algorithm>
#include <array>
#include <cmath>

namespace copos {

namespace {

EigenSym eigen_2x2(const SymMat& A) {
  double a = A(0, 0), b = A(0, 1), c = A(1, 1);
  EigenSym out;
  out.values = Vector(2);
  out.vectors = Matrix::Identity(2, 2);
  if (b == 0.0) {
    if (a <= c) {
      out.values << a, c;
    } else {
      out.values << c, a;
      out.vectors << 0, 1, 1, 0;
    }
    return out;
  }
  double mean = 0.5 * (a + c);
  double rad = std::hypot(0.5 * (a - c), b);
  double lo = mean - rad, hi = mean + rad;
  out.values << lo, hi;
  // (A - hi I) annihilates (b, hi - a); it is nonzero since b != 0.
  Vector vhi(2);
  vhi << b, hi - a;
  vhi.normalize();
  Vector vlo(2);
  vlo << -vhi[1], vhi[0];
  out.vectors.col(0) = vlo;
  out.vectors.col(1) = vhi;
  return out;
}

double off_diag_norm(const Matrix& m) {
  double s = 0.0;
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j)
      if (i != j) s += m(i, j) * m(i, j);
  return std::sqrt(s);
}

EigenSym eigen_jacobi(const SymMat& A) {
  int n = A.order();
  Matrix a = A.mat();
  Matrix v = Matrix::Identity(n, n);
  double threshold = 1e-13 * std::max(1.0, a.norm());

  for (int sweep = 0; sweep < 64 && off_diag_norm(a) > threshold; ++sweep) {
    for (int p = 0; p < n - 1; ++p) {
      for (int q = p + 1; q < n; ++q) {
        double apq = a(p, q);
        if (apq == 0.0) continue;
        double theta = 0.5 * (a(q, q) - a(p, p)) / apq;
        double t = (theta >= 0.0 ? 1.0 : -1.0) /
                   (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        double c = 1.0 / std::sqrt(t * t + 1.0);
        double s = t * c;
        Matrix g = Matrix::Identity(n, n);
        g(p, p) = c;
        g(q, q) = c;
        g(p, q) = s;
        g(q, p) = -s;
        a = g.transpose() * a * g;
        a(p, q) = 0.0;
        a(q, p) = 0.0;
        v = v * g;
      }
    }
  }

  std::array<int, 4> idx{0, 1, 2, 3};
  std::sort(idx.begin(), idx.begin() + n, [&](int i, int j) { return a(i, i) < a(j, j); });
  EigenSym out;
  out.values = Vector(n);
  out.vectors = Matrix(n, n);
  for (int k = 0; k < n; ++k) {
    out.values[k] = a(idx[k], idx[k]);
    out.vectors.col(k) = v.col(idx[k]);
  }
  return out;
}

}  // namespace

EigenSym sym_eigen(const SymMat& A) {
  if (A.order() == 2) return eigen_2x2(A);
  return eigen_jacobi(A);
}

double min_eigenvalue(const SymMat& A) { return sym_eigen(A).values[0]; }

SymMat psd_project(const SymMat& A) {
  EigenSym e = sym_eigen(A);
  int n = A.order();
  Matrix m = Matrix::Zero(n, n);
  for (int k = 0; k < n; ++k) {
    double lam = e.values[k];
    if (lam <= 0.0) continue;
    m += lam * (e.vectors.col(k) * e.vectors.col(k).transpose());
  }
  return SymMat::from_upper(m);
}

}  // namespace copos
