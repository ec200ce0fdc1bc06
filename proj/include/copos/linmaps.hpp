#pragma once

#include <variant>
#include <vector>

#include "copos/symspace.hpp"

namespace copos {

// Provenance tags record how an operator was built. When present, rebuilding
// from the tag reproduces the stored matrix (to roundoff); operations that
// cannot guarantee that drop to General.
struct ProvGeneral {};
struct ProvStandard {
  Matrix R;  // X -> R X R^t
};
struct ProvLyapunov {
  Matrix A;  // X -> A X + X A^t
};
struct ProvGenLyapunov {
  Matrix A, B;  // X -> A X B + B^t X A^t
};
struct ProvRankOne {
  SymMat A, B;  // X -> <A, X> B
};
struct ProvMonomial {
  Matrix M;  // congruence by a monomial matrix
};
using Provenance = std::variant<ProvGeneral, ProvStandard, ProvLyapunov, ProvGenLyapunov,
                                ProvRankOne, ProvMonomial>;

// Linear operator on symmetric matrices of one order, stored as its
// d x d matrix in SVEC coordinates (d = n(n+1)/2). All operator algebra
// happens in this one frame; TVEC realizations exist only as explicit
// conjugations.
struct SymMap {
  int order = 2;
  Matrix m;  // d x d, SVEC frame
  Provenance prov = ProvGeneral{};

  int dim() const { return sym_dim(order); }
  SymMat apply(const SymMat& X) const;
};

// Exact symmetric products; results are mirrored from the upper triangle so
// symmetry is bit-exact.
SymMat congruence(const Matrix& R, const SymMat& X);
SymMat lyapunov_apply(const Matrix& A, const SymMat& X);
SymMat gen_lyapunov_apply(const Matrix& A, const Matrix& B, const SymMat& X);

SymMap standard_map(const Matrix& R);
SymMap lyapunov_map(const Matrix& A);
SymMap gen_lyapunov_map(const Matrix& A, const Matrix& B);
SymMap rank_one_map(const SymMat& A, const SymMat& B);
// perm is 0-based; builds M with M[perm[i]][i] = scales[i] > 0.
SymMap monomial_congruence(const std::vector<int>& perm, const std::vector<double>& scales);
SymMap identity_map(int n);

SymMap adjoint(const SymMap& L);
SymMap compose(const SymMap& L1, const SymMap& L2);  // L1 after L2
SymMap invert(const SymMap& L);                      // throws NotInvertible
SymMap map_add(const SymMap& L1, const SymMap& L2);
SymMap map_scale(const SymMap& L, double s);

struct GenLyapReduction {
  Matrix C;  // A (B^t)^{-1}
  double residual;  // Frobenius gap of L_{A,B} = L_C o cong_{B^t}
};
// Throws SingularMatrix when B is not invertible.
GenLyapReduction genlyap_reduce(const Matrix& A, const Matrix& B);

// Conjugation T^{-1} L T (inward) or T L T^{-1} (outward); spectra are
// preserved. Throws SingularMatrix on a singular iso.
Matrix transport_map(const Matrix& L, const Matrix& iso, bool inward);

// TVEC realization D m D^{-1} of an operator (and back); entrywise
// nonnegativity of the TVEC matrix is exactly cone-nonnegativity on the
// tvec image of the nonnegative symmetric cone.
Matrix to_tvec_matrix(const SymMap& L);
SymMap from_tvec_matrix(int n, const Matrix& tm);

const char* provenance_kind(const Provenance& p);

}  // namespace copos
