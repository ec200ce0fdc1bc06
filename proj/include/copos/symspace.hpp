#pragma once

#include <Eigen/Dense>
#include <utility>
#include <vector>

#include "copos/errors.hpp"

namespace copos {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

inline constexpr double kSqrt2 = 1.41421356237309504880168872420969808;
inline constexpr double kDefaultTol = 1e-9;

inline int sym_dim(int n) { return n * (n + 1) / 2; }

// Throws DimensionMismatch unless 2 <= n <= 4, the supported matrix orders.
void require_order(int n);

// Coordinate ordering shared by SVEC and TVEC: diagonal entries in index
// order, then off-diagonal pairs (i < j) row-major. Fixed once; file formats
// and operator matrices rely on it bit-identically.
std::vector<std::pair<int, int>> sym_index_pairs(int n);

// Symmetric matrix of order 2..4. Construction enforces exact symmetry:
// entries are stored mirrored, never recomputed per side.
class SymMat {
 public:
  SymMat() : m_(Matrix::Zero(2, 2)) {}

  static SymMat zero(int n);
  static SymMat identity(int n);
  static SymMat ones(int n);  // the all-ones matrix J_n
  static SymMat basis(int n, int i, int j);  // E_ii, or E_ij + E_ji for i != j
  // Validates exact symmetry and finiteness; rejects anything else.
  static SymMat from_rows(const std::vector<std::vector<double>>& rows);
  // Mirrors the upper triangle of m; for internally computed products.
  static SymMat from_upper(const Matrix& m);

  int order() const { return static_cast<int>(m_.rows()); }
  double operator()(int i, int j) const { return m_(i, j); }
  void set(int i, int j, double v) {
    m_(i, j) = v;
    m_(j, i) = v;
  }
  const Matrix& mat() const { return m_; }

  double norm() const { return m_.norm(); }
  double max_abs() const { return m_.cwiseAbs().maxCoeff(); }
  double min_entry() const { return m_.minCoeff(); }

  SymMat operator+(const SymMat& o) const;
  SymMat operator-(const SymMat& o) const;
  SymMat operator*(double s) const;

 private:
  explicit SymMat(Matrix m) : m_(std::move(m)) {}
  Matrix m_;
};

enum class Frame { Svec, Tvec, Ambient };

struct CoordVec {
  Frame frame = Frame::Ambient;
  Vector values;
  int dim() const { return static_cast<int>(values.size()); }
};

// Orthonormal coordinates: diagonal entries, then off-diagonals scaled by
// sqrt(2). Dot products of SVEC vectors equal the trace inner product.
CoordVec sym_to_svec(const SymMat& A);
SymMat svec_to_sym(const CoordVec& v);

// Orthant-aligned coordinates (the isomorphism T): plain upper-triangle
// entries, so entrywise-nonnegative matrices map exactly onto the
// nonnegative orthant. Round trip is exact.
CoordVec sym_to_tvec(const SymMat& A);
SymMat tvec_to_sym(const CoordVec& v);

double trace_inner(const SymMat& A, const SymMat& B);

// The isomorphism T1: (x1,x2,x3) -> [[x3-x1, x2],[x2, x3+x1]]. Maps the
// Lorentz cone of R^3 onto the PSD cone of S^2, interiors to interiors.
SymMat lorentz_to_psd(const Vector& x);
Vector psd_to_lorentz(const SymMat& A);
// T1 as a 3x3 matrix from ambient R^3 into SVEC coordinates of S^2.
// Satisfies M^t M = 2I, so the inverse is M^t / 2.
Matrix lorentz_to_psd_svec_matrix();

// The embedding S: (x1,x2,x3) -> (x1, x2, x1+x2+x3); maps the nonnegative
// orthant into the Lorentz cone.
Vector orthant_to_lorentz(const Vector& x);
Matrix orthant_to_lorentz_matrix();

// Diagonal change of frame D with tvec = D * svec (entries 1 on diagonal
// positions, 1/sqrt(2) on off-diagonal positions).
Matrix tvec_from_svec_scaling(int n);

}  // namespace copos
