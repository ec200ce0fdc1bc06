#include "copos/semipos.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <functional>

#include "copos/errors.hpp"

namespace copos {

namespace {

double interior_margin(ConeRef cone, const Point& p) {
  if (std::holds_alternative<Vector>(p)) return member(cone, std::get<Vector>(p)).margin;
  return member(cone, std::get<SymMat>(p)).margin;
}

double point_norm(const Point& p) {
  if (std::holds_alternative<Vector>(p)) return std::get<Vector>(p).norm();
  return std::get<SymMat>(p).norm();
}

// Greedy coordinate ascent with shrinking steps on a margin function over
// ambient coordinates. Deterministic given the start.
double coordinate_ascent(Vector& x, const std::function<double(const Vector&)>& f) {
  double best = f(x);
  double h = 0.25;
  int guard = 0;
  while (h >= 1e-6 && guard < 100000) {
    bool improved = false;
    for (int i = 0; i < x.size(); ++i) {
      for (double sgn : {1.0, -1.0}) {
        ++guard;
        Vector y = x;
        y[i] += sgn * h;
        double v = f(y);
        if (v > best + 1e-15) {
          best = v;
          x = y;
          improved = true;
        }
      }
    }
    if (!improved) h *= 0.5;
  }
  return best;
}

}  // namespace

OrthantSemResult sem_check_orthant(const Matrix& M) {
  if (M.rows() != M.cols()) throw Error(Err::DimensionMismatch, "matrix must be square");
  const int d = static_cast<int>(M.rows());
  if (d > 10) throw Error(Err::Unsupported, "dimension cap is 10");
  // x = 1 + u, u >= 0: feasibility of M u >= 1 - M 1.
  Vector ones = Vector::Ones(d);
  Vector h = ones - M * ones;
  LpResult lp = lp_feasible_geq(M, h);
  OrthantSemResult out;
  if (lp.status == LpResult::Status::Optimal) {
    out.semipositive = true;
    out.x = ones + lp.x;
    Vector img = M * out.x;
    double nrm = out.x.norm();
    out.margin = std::min(out.x.minCoeff(), img.minCoeff()) / nrm;
  } else {
    out.semipositive = false;
    out.margin = -1.0;
    out.farkas = lp.farkas;
  }
  return out;
}

OrthantGen sem_generate_orthant(int d, Rng& rng) {
  if (d < 1) throw Error(Err::BadInput, "dimension must be positive");
  OrthantGen out;
  Matrix X(d, d), Y(d, d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) Y(i, j) = rng.uniform(0.1, 1.1);
  // Regenerate X until comfortably invertible. The floor keeps Y X^{-1}
  // and the downstream X1 = x 1^t + eps I well enough conditioned that the
  // factorization residual stays near roundoff.
  for (;;) {
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j) X(i, j) = rng.uniform(0.1, 1.1);
    if (std::abs(Eigen::FullPivLU<Matrix>(X).determinant()) > 0.05) break;
  }
  out.factors.X = X;
  out.factors.Y = Y;
  out.M = Y * X.inverse();
  return out;
}

namespace {

SemSearchResult search_pair(ConeRef source, ConeRef target,
                            const std::function<Point(const Point&)>& apply,
                            const std::function<Point(const Vector&)>& from_coords,
                            const std::function<Vector(const Point&)>& to_coords, Rng& rng,
                            int starts) {
  auto margin_of = [&](const Point& p) -> double {
    double nrm = point_norm(p);
    if (!(nrm > 1e-12)) return -1.0;
    Point q = p;
    if (std::holds_alternative<Vector>(q))
      std::get<Vector>(q) /= nrm;
    else
      std::get<SymMat>(q) = std::get<SymMat>(q) * (1.0 / nrm);
    return std::min(interior_margin(source, q), interior_margin(target, apply(q)));
  };
  SemSearchResult best;
  for (int s = 0; s < starts; ++s) {
    Rng local(seed_for(rng.next_u64(), "semstart", static_cast<uint64_t>(s)));
    Point p0 = random_element(source, local, true);
    Vector x = to_coords(p0);
    double nrm = x.norm();
    if (nrm > 1e-12) x /= nrm;
    double v = coordinate_ascent(x, [&](const Vector& c) { return margin_of(from_coords(c)); });
    if (v > best.margin) {
      best.margin = v;
      best.x = from_coords(x);
      best.start_index = s;
    }
  }
  if (best.margin > 0.0) {
    // Re-verify on the normalized witness with fresh membership calls.
    double nrm = point_norm(best.x);
    if (std::holds_alternative<Vector>(best.x))
      std::get<Vector>(best.x) /= nrm;
    else
      std::get<SymMat>(best.x) = std::get<SymMat>(best.x) * (1.0 / nrm);
    double recheck =
        std::min(interior_margin(source, best.x), interior_margin(target, apply(best.x)));
    best.margin = recheck;
    best.found = recheck > 0.0;
  }
  return best;
}

}  // namespace

SemSearchResult sem_check(ConeRef source, ConeRef target, const Matrix& M, Rng& rng, int starts) {
  if (source.ambient_dim() != M.cols() || target.ambient_dim() != M.rows())
    throw Error(Err::DimensionMismatch, "map shape does not match cone pair");
  if (source.matrix_cone() || target.matrix_cone())
    throw Error(Err::Unsupported, "matrix cones take a SymMap");
  if (source.kind == ConeKind::Orthant && target.kind == ConeKind::Orthant) {
    OrthantSemResult lp = sem_check_orthant(M);
    SemSearchResult out;
    out.exact = true;
    out.found = lp.semipositive;
    out.margin = lp.semipositive ? lp.margin : -1.0;
    if (lp.semipositive) out.x = Vector(lp.x);
    return out;
  }
  return search_pair(
      source, target, [&](const Point& p) -> Point { return Vector(M * std::get<Vector>(p)); },
      [](const Vector& c) -> Point { return c; },
      [](const Point& p) { return std::get<Vector>(p); }, rng, starts);
}

SemSearchResult sem_check(ConeRef source, ConeRef target, const SymMap& L, Rng& rng, int starts) {
  if (!source.matrix_cone() || !target.matrix_cone())
    throw Error(Err::Unsupported, "vector cones take a plain matrix");
  if (source.param != L.order || target.param != L.order)
    throw Error(Err::DimensionMismatch, "operator order does not match cone pair");
  if (source.kind == ConeKind::NonnegSym && target.kind == ConeKind::NonnegSym) {
    // TVEC carries the nonnegative symmetric cone onto the orthant exactly.
    OrthantSemResult lp = sem_check_orthant(to_tvec_matrix(L));
    SemSearchResult out;
    out.exact = true;
    out.found = lp.semipositive;
    if (lp.semipositive) {
      SymMat W = tvec_to_sym(CoordVec{Frame::Tvec, lp.x});
      out.x = W;
      out.margin = std::min(member(source, W).margin, member(target, L.apply(W)).margin);
      out.found = out.margin > 0.0;
    }
    return out;
  }
  return search_pair(
      source, target, [&](const Point& p) -> Point { return L.apply(std::get<SymMat>(p)); },
      [](const Vector& c) -> Point { return svec_to_sym(CoordVec{Frame::Svec, c}); },
      [](const Point& p) { return sym_to_svec(std::get<SymMat>(p)).values; }, rng, starts);
}

VecTransport sem_transport(const Matrix& S, const Matrix& A, ConeRef k2, const Vector& witness) {
  Eigen::FullPivLU<Matrix> lu(S);
  if (std::abs(lu.determinant()) <= 1e-12)
    throw Error(Err::SingularMatrix, "transport map is singular");
  VecTransport out;
  out.B = S * A * lu.inverse();
  out.witness = S * witness;
  out.margin =
      std::min(member(k2, out.witness).margin, member(k2, Vector(out.B * out.witness)).margin);
  out.verified = out.margin > 0.0;
  return out;
}

MapTransport sem_transport(const SymMap& S, const SymMap& A, ConeRef k2, const SymMat& witness) {
  MapTransport out;
  out.B = compose(S, compose(A, invert(S)));
  out.witness = S.apply(witness);
  out.margin =
      std::min(member(k2, out.witness).margin, member(k2, out.B.apply(out.witness)).margin);
  out.verified = out.margin > 0.0;
  return out;
}

NonnegSymGen sem_generate_nonnegsym(Rng& rng) {
  OrthantGen g = sem_generate_orthant(3, rng);
  NonnegSymGen out;
  out.L = from_tvec_matrix(2, g.M);
  OrthantSemResult lp = sem_check_orthant(g.M);
  if (!lp.semipositive)
    throw Error(Err::NotSemipositive, "generated factor pair failed its own witness check");
  out.witness = tvec_to_sym(CoordVec{Frame::Tvec, lp.x});
  ConeRef nn = ConeRef::nonneg_sym(2);
  out.margin =
      std::min(member(nn, out.witness).margin, member(nn, out.L.apply(out.witness)).margin);
  return out;
}

Psd2Gen sem_generate_psd2(Rng& rng) {
  OrthantGen g = sem_generate_orthant(3, rng);
  Psd2Gen out;
  out.B = g.M;
  // Conjugation frame C = S^t T1^{-1} on ambient coordinates, with T1 the
  // Lorentz isomorphism and S the orthant-to-Lorentz map; the operator is
  // C^{-1} B C exactly as printed.
  Matrix T1_tvec = tvec_from_svec_scaling(2) * lorentz_to_psd_svec_matrix();
  Matrix C = orthant_to_lorentz_matrix().transpose() * T1_tvec.inverse();
  Matrix Ltvec = C.inverse() * g.M * C;
  out.L = from_tvec_matrix(2, Ltvec);
  Rng verify(seed_for(rng.next_u64(), "psd2check", 0));
  SemSearchResult sr = sem_check(ConeRef::psd(2), ConeRef::psd(2), out.L, verify);
  out.witness_found = sr.found;
  out.margin = sr.margin;
  if (sr.found) out.witness = std::get<SymMat>(sr.x);
  return out;
}

PiCharReport pi_char_test(const Matrix& A, ConeRef source, ConeRef target, int trials, Rng& rng) {
  PiCharReport out;
  out.trials = trials;
  if (source.kind == ConeKind::Orthant && target.kind == ConeKind::Orthant &&
      source.param == target.param) {
    const int d = source.param;
    if (A.rows() != d || A.cols() != d)
      throw Error(Err::DimensionMismatch, "map shape does not match cone pair");
    // pi(R^d_+) is exactly the entrywise-nonnegative matrices.
    out.pi_margin = A.minCoeff();
    out.pi_member = out.pi_margin >= 0.0;
    for (int t = 0; t < trials; ++t) {
      Rng local(seed_for(rng.next_u64(), "picharb", static_cast<uint64_t>(t)));
      OrthantGen g = sem_generate_orthant(d, local);
      OrthantSemResult r = sem_check_orthant(A + g.M);
      if (!r.semipositive) out.failures.push_back(g.M);
    }
    // A nonnegative A must keep every shift semipositive; any failure would
    // contradict the characterization. For a non-member the sampler can only
    // confirm by finding a failure, so an empty list is inconclusive.
    out.any_inconclusive = !out.pi_member && out.failures.empty();
    out.consistent = out.pi_member ? out.failures.empty() : true;
    return out;
  }
  throw Error(Err::Unsupported, "cone pair not supported by the shift test");
}

}  // namespace copos
