#include "copos/symspace.hpp"

#include <cmath>

namespace copos {

void require_order(int n) {
  if (n < 2 || n > 4) throw Error(Err::DimensionMismatch, "matrix order must be 2..4");
}

namespace {
int order_from_dim(int d) {
  for (int n = 2; n <= 4; ++n)
    if (sym_dim(n) == d) return n;
  throw Error(Err::DimensionMismatch, "coordinate dim must be n(n+1)/2 for n=2..4");
}
}  // namespace

std::vector<std::pair<int, int>> sym_index_pairs(int n) {
  std::vector<std::pair<int, int>> p;
  p.reserve(sym_dim(n));
  for (int i = 0; i < n; ++i) p.emplace_back(i, i);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) p.emplace_back(i, j);
  return p;
}

SymMat SymMat::zero(int n) {
  require_order(n);
  return SymMat(Matrix::Zero(n, n));
}

SymMat SymMat::identity(int n) {
  require_order(n);
  return SymMat(Matrix::Identity(n, n));
}

SymMat SymMat::ones(int n) {
  require_order(n);
  return SymMat(Matrix::Ones(n, n));
}

SymMat SymMat::basis(int n, int i, int j) {
  require_order(n);
  if (i < 0 || j < 0 || i >= n || j >= n) throw Error(Err::BadInput, "basis index out of range");
  Matrix m = Matrix::Zero(n, n);
  m(i, j) = 1.0;
  m(j, i) = 1.0;
  return SymMat(m);
}

SymMat SymMat::from_rows(const std::vector<std::vector<double>>& rows) {
  int n = static_cast<int>(rows.size());
  require_order(n);
  Matrix m(n, n);
  for (int i = 0; i < n; ++i) {
    if (static_cast<int>(rows[i].size()) != n) throw Error(Err::BadInput, "ragged matrix rows");
    for (int j = 0; j < n; ++j) {
      if (!std::isfinite(rows[i][j])) throw Error(Err::BadInput, "non-finite matrix entry");
      m(i, j) = rows[i][j];
    }
  }
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (m(i, j) != m(j, i)) throw Error(Err::BadInput, "matrix is not symmetric");
  return SymMat(m);
}

SymMat SymMat::from_upper(const Matrix& m) {
  int n = static_cast<int>(m.rows());
  require_order(n);
  Matrix out(n, n);
  for (int i = 0; i < n; ++i) {
    out(i, i) = m(i, i);
    for (int j = i + 1; j < n; ++j) {
      out(i, j) = m(i, j);
      out(j, i) = m(i, j);
    }
  }
  return SymMat(out);
}

SymMat SymMat::operator+(const SymMat& o) const {
  if (order() != o.order()) throw Error(Err::DimensionMismatch, "order mismatch");
  return SymMat(Matrix(m_ + o.m_));
}

SymMat SymMat::operator-(const SymMat& o) const {
  if (order() != o.order()) throw Error(Err::DimensionMismatch, "order mismatch");
  return SymMat(Matrix(m_ - o.m_));
}

SymMat SymMat::operator*(double s) const { return SymMat(Matrix(m_ * s)); }

CoordVec sym_to_svec(const SymMat& A) {
  int n = A.order();
  auto pairs = sym_index_pairs(n);
  Vector v(sym_dim(n));
  for (int k = 0; k < static_cast<int>(pairs.size()); ++k) {
    auto [i, j] = pairs[k];
    v[k] = (i == j) ? A(i, j) : A(i, j) * kSqrt2;
  }
  return CoordVec{Frame::Svec, v};
}

SymMat svec_to_sym(const CoordVec& v) {
  if (v.frame != Frame::Svec) throw Error(Err::BadInput, "expected an svec-frame vector");
  int n = order_from_dim(v.dim());
  auto pairs = sym_index_pairs(n);
  Matrix m = Matrix::Zero(n, n);
  for (int k = 0; k < static_cast<int>(pairs.size()); ++k) {
    auto [i, j] = pairs[k];
    m(i, j) = (i == j) ? v.values[k] : v.values[k] / kSqrt2;
  }
  return SymMat::from_upper(m);
}

CoordVec sym_to_tvec(const SymMat& A) {
  int n = A.order();
  auto pairs = sym_index_pairs(n);
  Vector v(sym_dim(n));
  for (int k = 0; k < static_cast<int>(pairs.size()); ++k) {
    auto [i, j] = pairs[k];
    v[k] = A(i, j);
  }
  return CoordVec{Frame::Tvec, v};
}

SymMat tvec_to_sym(const CoordVec& v) {
  if (v.frame != Frame::Tvec) throw Error(Err::BadInput, "expected a tvec-frame vector");
  int n = order_from_dim(v.dim());
  auto pairs = sym_index_pairs(n);
  Matrix m = Matrix::Zero(n, n);
  for (int k = 0; k < static_cast<int>(pairs.size()); ++k) {
    auto [i, j] = pairs[k];
    m(i, j) = v.values[k];
  }
  return SymMat::from_upper(m);
}

double trace_inner(const SymMat& A, const SymMat& B) {
  if (A.order() != B.order()) throw Error(Err::DimensionMismatch, "order mismatch");
  int n = A.order();
  double s = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) s += A(i, j) * B(i, j);
  return s;
}

SymMat lorentz_to_psd(const Vector& x) {
  if (x.size() != 3) throw Error(Err::DimensionMismatch, "T1 expects a 3-vector");
  Matrix m(2, 2);
  m(0, 0) = x[2] - x[0];
  m(0, 1) = x[1];
  m(1, 1) = x[2] + x[0];
  return SymMat::from_upper(m);
}

Vector psd_to_lorentz(const SymMat& A) {
  if (A.order() != 2) throw Error(Err::DimensionMismatch, "T1 inverse expects order 2");
  Vector x(3);
  x[0] = (A(1, 1) - A(0, 0)) / 2.0;
  x[1] = A(0, 1);
  x[2] = (A(1, 1) + A(0, 0)) / 2.0;
  return x;
}

Matrix lorentz_to_psd_svec_matrix() {
  Matrix m(3, 3);
  m << -1.0, 0.0, 1.0,
        1.0, 0.0, 1.0,
        0.0, kSqrt2, 0.0;
  return m;
}

Vector orthant_to_lorentz(const Vector& x) {
  if (x.size() != 3) throw Error(Err::DimensionMismatch, "S expects a 3-vector");
  Vector y(3);
  y[0] = x[0];
  y[1] = x[1];
  y[2] = x[0] + x[1] + x[2];
  return y;
}

Matrix orthant_to_lorentz_matrix() {
  Matrix m(3, 3);
  m << 1.0, 0.0, 0.0,
       0.0, 1.0, 0.0,
       1.0, 1.0, 1.0;
  return m;
}

Matrix tvec_from_svec_scaling(int n) {
  require_order(n);
  int d = sym_dim(n);
  Matrix m = Matrix::Zero(d, d);
  for (int k = 0; k < d; ++k) m(k, k) = (k < n) ? 1.0 : 1.0 / kSqrt2;
  return m;
}

}  // namespace copos
