#include "copos/linmaps.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <functional>

#include "copos/errors.hpp"

namespace copos {

namespace {

void check_square(const Matrix& R, const char* what) {
  if (R.rows() != R.cols())
    throw Error(Err::DimensionMismatch, std::string(what) + " must be square");
  if (R.rows() < 2 || R.rows() > 4)
    throw Error(Err::Unsupported, std::string(what) + " order out of range 2..4");
  if (!R.allFinite()) throw Error(Err::BadInput, std::string(what) + " has non-finite entries");
}

// k-th orthonormal basis element of the svec frame.
SymMat svec_basis(int n, int k) {
  auto pairs = sym_index_pairs(n);
  auto [i, j] = pairs[static_cast<size_t>(k)];
  SymMat B = SymMat::zero(n);
  if (i == j)
    B.set(i, i, 1.0);
  else
    B.set(i, j, 1.0 / kSqrt2);
  return B;
}

// Assembles the operator matrix column-by-column from basis images.
Matrix matrix_from_images(int n, const std::function<SymMat(const SymMat&)>& f) {
  const int d = sym_dim(n);
  Matrix m(d, d);
  for (int k = 0; k < d; ++k) m.col(k) = sym_to_svec(f(svec_basis(n, k))).values;
  return m;
}

Matrix rebuild_matrix(int n, const Provenance& p);

// Keeps a candidate tag only when it actually reproduces the matrix; the
// algebraic rules below are exact, so this guards against conditioning, not
// against wrong rules.
Provenance checked(int n, Provenance cand, const Matrix& m) {
  if (std::holds_alternative<ProvGeneral>(cand)) return cand;
  Matrix r = rebuild_matrix(n, cand);
  double scale = 1.0 + m.cwiseAbs().maxCoeff();
  if ((r - m).cwiseAbs().maxCoeff() <= 1e-12 * scale) return cand;
  return ProvGeneral{};
}

}  // namespace

SymMat congruence(const Matrix& R, const SymMat& X) {
  Matrix W = R * X.mat() * R.transpose();
  return SymMat::from_upper(W);
}

SymMat lyapunov_apply(const Matrix& A, const SymMat& X) {
  Matrix W = A * X.mat();
  Matrix S = W + W.transpose();  // exactly symmetric: both sides add the same pair
  return SymMat::from_upper(S);
}

SymMat gen_lyapunov_apply(const Matrix& A, const Matrix& B, const SymMat& X) {
  Matrix W = A * X.mat() * B;
  Matrix S = W + W.transpose();
  return SymMat::from_upper(S);
}

SymMat SymMap::apply(const SymMat& X) const {
  if (X.order() != order) throw Error(Err::DimensionMismatch, "operator/argument order mismatch");
  CoordVec v = sym_to_svec(X);
  CoordVec out{Frame::Svec, m * v.values};
  return svec_to_sym(out);
}

SymMap standard_map(const Matrix& R) {
  check_square(R, "congruence factor");
  const int n = static_cast<int>(R.rows());
  SymMap L;
  L.order = n;
  L.m = matrix_from_images(n, [&](const SymMat& B) { return congruence(R, B); });
  L.prov = ProvStandard{R};
  return L;
}

SymMap lyapunov_map(const Matrix& A) {
  check_square(A, "lyapunov coefficient");
  const int n = static_cast<int>(A.rows());
  SymMap L;
  L.order = n;
  L.m = matrix_from_images(n, [&](const SymMat& B) { return lyapunov_apply(A, B); });
  L.prov = ProvLyapunov{A};
  return L;
}

SymMap gen_lyapunov_map(const Matrix& A, const Matrix& B) {
  check_square(A, "left coefficient");
  check_square(B, "right coefficient");
  if (A.rows() != B.rows()) throw Error(Err::DimensionMismatch, "coefficient orders differ");
  const int n = static_cast<int>(A.rows());
  SymMap L;
  L.order = n;
  L.m = matrix_from_images(n, [&](const SymMat& X) { return gen_lyapunov_apply(A, B, X); });
  L.prov = ProvGenLyapunov{A, B};
  return L;
}

SymMap rank_one_map(const SymMat& A, const SymMat& B) {
  if (A.order() != B.order()) throw Error(Err::DimensionMismatch, "rank-one factor orders differ");
  const int n = A.order();
  SymMap L;
  L.order = n;
  // <A, X> B has matrix svec(B) svec(A)^t in any orthonormal frame.
  L.m = sym_to_svec(B).values * sym_to_svec(A).values.transpose();
  L.prov = ProvRankOne{A, B};
  return L;
}

SymMap monomial_congruence(const std::vector<int>& perm, const std::vector<double>& scales) {
  const int n = static_cast<int>(perm.size());
  if (n < 2 || n > 4) throw Error(Err::Unsupported, "permutation length out of range 2..4");
  if (scales.size() != perm.size())
    throw Error(Err::DimensionMismatch, "permutation/scale length mismatch");
  std::vector<bool> seen(static_cast<size_t>(n), false);
  for (int v : perm) {
    if (v < 0 || v >= n || seen[static_cast<size_t>(v)])
      throw Error(Err::BadInput, "permutation is not a bijection on 0..n-1");
    seen[static_cast<size_t>(v)] = true;
  }
  for (double s : scales) {
    if (!(s > 0.0) || !std::isfinite(s)) throw Error(Err::BadInput, "scales must be positive");
  }
  Matrix M = Matrix::Zero(n, n);
  for (int i = 0; i < n; ++i) M(perm[static_cast<size_t>(i)], i) = scales[static_cast<size_t>(i)];
  SymMap L = standard_map(M);
  L.prov = ProvMonomial{M};
  return L;
}

SymMap identity_map(int n) {
  require_order(n);
  SymMap L;
  L.order = n;
  L.m = Matrix::Identity(sym_dim(n), sym_dim(n));
  L.prov = ProvStandard{Matrix::Identity(n, n)};
  return L;
}

namespace {

Matrix rebuild_matrix(int n, const Provenance& p) {
  if (auto* s = std::get_if<ProvStandard>(&p)) return standard_map(s->R).m;
  if (auto* l = std::get_if<ProvLyapunov>(&p)) return lyapunov_map(l->A).m;
  if (auto* g = std::get_if<ProvGenLyapunov>(&p)) return gen_lyapunov_map(g->A, g->B).m;
  if (auto* r = std::get_if<ProvRankOne>(&p)) return rank_one_map(r->A, r->B).m;
  if (auto* mo = std::get_if<ProvMonomial>(&p)) return standard_map(mo->M).m;
  return Matrix::Zero(sym_dim(n), sym_dim(n));
}

}  // namespace

SymMap adjoint(const SymMap& L) {
  SymMap out;
  out.order = L.order;
  out.m = L.m.transpose();
  // The svec frame is orthonormal, so the adjoint is the plain transpose and
  // every tag transposes along with it.
  Provenance cand = ProvGeneral{};
  if (auto* s = std::get_if<ProvStandard>(&L.prov))
    cand = ProvStandard{s->R.transpose()};
  else if (auto* l = std::get_if<ProvLyapunov>(&L.prov))
    cand = ProvLyapunov{l->A.transpose()};
  else if (auto* g = std::get_if<ProvGenLyapunov>(&L.prov))
    cand = ProvGenLyapunov{g->A.transpose(), g->B.transpose()};
  else if (auto* r = std::get_if<ProvRankOne>(&L.prov))
    cand = ProvRankOne{r->B, r->A};
  else if (auto* mo = std::get_if<ProvMonomial>(&L.prov))
    cand = ProvMonomial{mo->M.transpose()};
  out.prov = checked(out.order, cand, out.m);
  return out;
}

namespace {

bool is_monomial_matrix(const Matrix& M) {
  for (int j = 0; j < M.cols(); ++j) {
    int nz = 0;
    for (int i = 0; i < M.rows(); ++i) {
      if (M(i, j) != 0.0) {
        if (M(i, j) < 0.0) return false;
        ++nz;
      }
    }
    if (nz != 1) return false;
  }
  for (int i = 0; i < M.rows(); ++i) {
    int nz = 0;
    for (int j = 0; j < M.cols(); ++j)
      if (M(i, j) != 0.0) ++nz;
    if (nz != 1) return false;
  }
  return true;
}

const Matrix* congruence_factor(const Provenance& p) {
  if (auto* s = std::get_if<ProvStandard>(&p)) return &s->R;
  if (auto* m = std::get_if<ProvMonomial>(&p)) return &m->M;
  return nullptr;
}

}  // namespace

SymMap compose(const SymMap& L1, const SymMap& L2) {
  if (L1.order != L2.order) throw Error(Err::DimensionMismatch, "composition order mismatch");
  SymMap out;
  out.order = L1.order;
  out.m = L1.m * L2.m;
  Provenance cand = ProvGeneral{};
  const Matrix* R1 = congruence_factor(L1.prov);
  const Matrix* R2 = congruence_factor(L2.prov);
  if (R1 && R2) {
    Matrix P = (*R1) * (*R2);
    if (is_monomial_matrix(P))
      cand = ProvMonomial{P};
    else
      cand = ProvStandard{P};
  }
  out.prov = checked(out.order, cand, out.m);
  return out;
}

SymMap invert(const SymMap& L) {
  Eigen::FullPivLU<Matrix> lu(L.m);
  if (std::abs(lu.determinant()) <= 1e-12)
    throw Error(Err::NotInvertible, "operator is singular");
  SymMap out;
  out.order = L.order;
  out.m = lu.inverse();
  Provenance cand = ProvGeneral{};
  if (const Matrix* R = congruence_factor(L.prov)) {
    Eigen::FullPivLU<Matrix> rlu(*R);
    if (std::abs(rlu.determinant()) > 1e-12) {
      Matrix Ri = rlu.inverse();
      if (is_monomial_matrix(*R) && is_monomial_matrix(Ri))
        cand = ProvMonomial{Ri};
      else
        cand = ProvStandard{Ri};
    }
  }
  out.prov = checked(out.order, cand, out.m);
  return out;
}

SymMap map_add(const SymMap& L1, const SymMap& L2) {
  if (L1.order != L2.order) throw Error(Err::DimensionMismatch, "sum order mismatch");
  SymMap out;
  out.order = L1.order;
  out.m = L1.m + L2.m;
  out.prov = ProvGeneral{};
  return out;
}

SymMap map_scale(const SymMap& L, double s) {
  SymMap out;
  out.order = L.order;
  out.m = s * L.m;
  out.prov = ProvGeneral{};
  return out;
}

GenLyapReduction genlyap_reduce(const Matrix& A, const Matrix& B) {
  check_square(A, "left coefficient");
  check_square(B, "right coefficient");
  if (A.rows() != B.rows()) throw Error(Err::DimensionMismatch, "coefficient orders differ");
  Eigen::FullPivLU<Matrix> lu(B.transpose());
  if (std::abs(lu.determinant()) <= 1e-12)
    throw Error(Err::SingularMatrix, "right coefficient is singular");
  GenLyapReduction out;
  out.C = A * lu.inverse();
  // L_{A,B}(X) = C (B^t X B) + (B^t X B) C^t holds exactly; the residual
  // only measures roundoff.
  Matrix lhs = gen_lyapunov_map(A, B).m;
  Matrix rhs = lyapunov_map(out.C).m * standard_map(B.transpose()).m;
  out.residual = (lhs - rhs).norm();
  return out;
}

Matrix transport_map(const Matrix& L, const Matrix& iso, bool inward) {
  if (L.rows() != L.cols() || iso.rows() != iso.cols() || L.rows() != iso.rows())
    throw Error(Err::DimensionMismatch, "transport shapes disagree");
  Eigen::FullPivLU<Matrix> lu(iso);
  if (std::abs(lu.determinant()) <= 1e-12)
    throw Error(Err::SingularMatrix, "transport iso is singular");
  Matrix inv = lu.inverse();
  return inward ? Matrix(inv * L * iso) : Matrix(iso * L * inv);
}

Matrix to_tvec_matrix(const SymMap& L) {
  Matrix D = tvec_from_svec_scaling(L.order);
  Matrix Dinv = D;
  for (int i = 0; i < D.rows(); ++i) Dinv(i, i) = 1.0 / D(i, i);
  return D * L.m * Dinv;
}

SymMap from_tvec_matrix(int n, const Matrix& tm) {
  require_order(n);
  const int d = sym_dim(n);
  if (tm.rows() != d || tm.cols() != d)
    throw Error(Err::DimensionMismatch, "tvec matrix has wrong size");
  Matrix D = tvec_from_svec_scaling(n);
  Matrix Dinv = D;
  for (int i = 0; i < d; ++i) Dinv(i, i) = 1.0 / D(i, i);
  SymMap out;
  out.order = n;
  out.m = Dinv * tm * D;
  out.prov = ProvGeneral{};
  return out;
}

const char* provenance_kind(const Provenance& p) {
  if (std::holds_alternative<ProvStandard>(p)) return "standard";
  if (std::holds_alternative<ProvLyapunov>(p)) return "lyapunov";
  if (std::holds_alternative<ProvGenLyapunov>(p)) return "genlyap";
  if (std::holds_alternative<ProvRankOne>(p)) return "rankone";
  if (std::holds_alternative<ProvMonomial>(p)) return "monomial";
  return "general";
}

}  // namespace copos
