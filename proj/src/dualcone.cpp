#include "copos/dualcone.hpp"

#include <Eigen/Dense>

#include "copos/errors.hpp"

namespace copos {

TensorOpVec tensor_op(const Vector& k, const Vector& l) {
  if (k.size() != l.size()) throw Error(Err::DimensionMismatch, "tensor factor sizes differ");
  TensorOpVec out;
  out.k = k;
  out.l = l;
  out.op = k * l.transpose();
  return out;
}

TensorOpMap tensor_op(const SymMat& k, const SymMat& l) {
  if (k.order() != l.order()) throw Error(Err::DimensionMismatch, "tensor factor orders differ");
  TensorOpMap out;
  out.k = k;
  out.l = l;
  out.op = rank_one_map(l, k);
  return out;
}

double operator_pairing(const Matrix& G, const Matrix& S) {
  if (G.rows() != S.rows() || G.cols() != S.cols())
    throw Error(Err::DimensionMismatch, "pairing shapes differ");
  return (G.transpose() * S).trace();
}

double operator_pairing(const SymMap& G, const SymMap& S) {
  if (G.order != S.order) throw Error(Err::DimensionMismatch, "pairing orders differ");
  return (G.m.transpose() * S.m).trace();
}

ConeRef dual_cone(ConeRef cone) {
  switch (cone.kind) {
    case ConeKind::Orthant:
    case ConeKind::Lorentz:
    case ConeKind::Psd:
    case ConeKind::NonnegSym:
      return cone;  // self-dual
    case ConeKind::Cp:
      return ConeRef::cop(cone.param);
    case ConeKind::Cop:
      return ConeRef::cp(cone.param);
  }
  throw Error(Err::Unsupported, "unknown cone");
}

std::vector<Matrix> pi_dual_generate_vec(ConeRef cone, int count, Rng& rng) {
  if (cone.matrix_cone()) throw Error(Err::Unsupported, "matrix cone: use the SymMap generator");
  ConeRef dual = dual_cone(cone);
  std::vector<Matrix> out;
  out.reserve(static_cast<size_t>(count));
  for (int c = 0; c < count; ++c) {
    Rng local(seed_for(rng.next_u64(), "pidualv", static_cast<uint64_t>(c)));
    int terms = 1 + local.uniform_int(0, 4);
    Matrix G = Matrix::Zero(cone.ambient_dim(), cone.ambient_dim());
    for (int t = 0; t < terms; ++t) {
      double alpha = 1.0 - local.uniform();  // (0, 1]
      Vector k = std::get<Vector>(random_element(cone, local, false));
      Vector l = std::get<Vector>(random_element(dual, local, false));
      G += alpha * tensor_op(k, l).op;
    }
    out.push_back(G);
  }
  return out;
}

std::vector<SymMap> pi_dual_generate_map(ConeRef cone, int count, Rng& rng) {
  if (!cone.matrix_cone()) throw Error(Err::Unsupported, "vector cone: use the matrix generator");
  ConeRef dual = dual_cone(cone);
  std::vector<SymMap> out;
  out.reserve(static_cast<size_t>(count));
  for (int c = 0; c < count; ++c) {
    Rng local(seed_for(rng.next_u64(), "pidualm", static_cast<uint64_t>(c)));
    int terms = 1 + local.uniform_int(0, 4);
    SymMap G;
    G.order = cone.param;
    G.m = Matrix::Zero(G.dim(), G.dim());
    for (int t = 0; t < terms; ++t) {
      double alpha = 1.0 - local.uniform();
      SymMat k = std::get<SymMat>(random_element(cone, local, false));
      SymMat l = std::get<SymMat>(random_element(dual, local, false));
      G.m += alpha * tensor_op(k, l).op.m;
    }
    out.push_back(G);
  }
  return out;
}

PiNonnegSym pi_nonnegsym_member(const SymMap& L) {
  if (L.order != 2) throw Error(Err::Unsupported, "membership test is order 2");
  PiNonnegSym out;
  out.tvec = to_tvec_matrix(L);
  out.margin = out.tvec.minCoeff();
  out.member = out.margin >= 0.0;
  return out;
}

LorentzPiElement lorentz_pi_generate(int terms, Rng& rng) {
  if (terms < 1) throw Error(Err::BadInput, "need at least one term");
  LorentzPiElement out;
  Matrix T1 = lorentz_to_psd_svec_matrix();
  Matrix T1inv = T1.transpose() / 2.0;  // T1^t T1 = 2I
  out.op = Matrix::Zero(3, 3);
  for (int t = 0; t < terms; ++t) {
    double alpha = 1.0 - rng.uniform();
    Matrix P(2, 2);
    P << rng.gaussian(), rng.gaussian(), rng.gaussian(), rng.gaussian();
    out.alphas.push_back(alpha);
    out.ps.push_back(P);
    out.op += alpha * (T1inv * standard_map(P).m * T1);
  }
  return out;
}

Psd2DualElement psd2_pi_dual_element(int terms, Rng& rng) {
  LorentzPiElement base = lorentz_pi_generate(terms, rng);
  Matrix T1 = lorentz_to_psd_svec_matrix();
  Matrix T1invT = T1 / 2.0;  // (T1^{-1})^t
  Psd2DualElement out;
  out.alphas = base.alphas;
  out.ps = base.ps;
  out.op.order = 2;
  out.op.m = T1invT * base.op * T1.transpose();
  out.op.prov = ProvGeneral{};
  return out;
}

}  // namespace copos
