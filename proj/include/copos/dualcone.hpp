#pragma once

#include <vector>

#include "copos/cones.hpp"
#include "copos/linmaps.hpp"
#include "copos/rng.hpp"

namespace copos {

// Rank-one tensor operators y -> <l, y> k and the generators of pi(K)*,
// built from samples of K and its dual. Pairings use the trace inner
// product of operator matrices in the svec frame.

struct TensorOpVec {
  Vector k, l;
  Matrix op;  // k l^t
};
struct TensorOpMap {
  SymMat k, l;
  SymMap op;  // X -> <l, X> k
};
TensorOpVec tensor_op(const Vector& k, const Vector& l);
TensorOpMap tensor_op(const SymMat& k, const SymMat& l);

double operator_pairing(const Matrix& G, const Matrix& S);    // tr(G^t S)
double operator_pairing(const SymMap& G, const SymMap& S);

ConeRef dual_cone(ConeRef cone);

// `count` random combinations of at most 5 tensor generators each, with
// k from K and l from K*. Vector cones yield plain matrices, matrix cones
// yield SymMaps; call the one matching the cone kind.
std::vector<Matrix> pi_dual_generate_vec(ConeRef cone, int count, Rng& rng);
std::vector<SymMap> pi_dual_generate_map(ConeRef cone, int count, Rng& rng);

// Exact membership in pi(N^2_+): the TVEC realization must be entrywise
// nonnegative; margin is its minimum entry.
struct PiNonnegSym {
  bool member;
  double margin;
  Matrix tvec;
};
PiNonnegSym pi_nonnegsym_member(const SymMap& L);

// Nonnegative combinations of Lorentz-frame conjugated congruences
// T1^{-1} cong_P T1; each term preserves the Lorentz cone, so the sum does.
struct LorentzPiElement {
  Matrix op;  // 3x3 on Lorentz coordinates
  std::vector<double> alphas;
  std::vector<Matrix> ps;  // 2x2 factors, singular allowed
};
LorentzPiElement lorentz_pi_generate(int terms, Rng& rng);

// The printed dual-side conjugation of a lorentz_pi_generate element back to
// operators on S^2. Algebraically it collapses to sum alpha_i cong_{P_i},
// which lies in pi(S^2_+) itself rather than its dual; the pairing claim
// this was meant to support fails on rotation congruences, and the tests
// document that counterexample.
struct Psd2DualElement {
  SymMap op;
  std::vector<double> alphas;
  std::vector<Matrix> ps;
};
Psd2DualElement psd2_pi_dual_element(int terms, Rng& rng);

}  // namespace copos
