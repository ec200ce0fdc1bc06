#include "copos/preserver.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <functional>

#include "copos/errors.hpp"
#include "copos/semipos.hpp"
#include "copos/sweep.hpp"

namespace copos {

namespace {

double golden_min(const std::function<double(double)>& f, double a, double b, double width) {
  const double gr = (std::sqrt(5.0) - 1.0) / 2.0;
  double c = b - gr * (b - a);
  double d = a + gr * (b - a);
  double fc = f(c), fd = f(d);
  while (b - a > width) {
    if (fc < fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - gr * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + gr * (b - a);
      fd = f(d);
    }
  }
  return 0.5 * (a + b);
}

// Grid scan plus golden-section refinement of an output-margin function over
// a ray parameter interval. The margin is a trigonometric polynomial of low
// degree, so the grid cannot straddle a hidden sign change at desk scale.
struct SweepResult {
  double theta;
  double margin;
};
SweepResult sweep_min(const std::function<double(double)>& f, double lo, double hi, int probes) {
  if (probes < 8) probes = 8;
  const double h = (hi - lo) / (probes - 1);
  MinLoc loc = min_sweep(static_cast<size_t>(probes),
                         [&](size_t j) { return f(lo + h * static_cast<double>(j)); });
  double t0 = lo + h * static_cast<double>(loc.index);
  double a = std::max(lo, t0 - h);
  double b = std::min(hi, t0 + h);
  double t = golden_min(f, a, b, 1e-10);
  double v = f(t);
  if (loc.value < v) {
    t = t0;
    v = loc.value;
  }
  return {t, v};
}

PreserverVerdict ray_family_verdict(ConeRef cone, const std::function<Point(double)>& ray,
                                    const std::function<Point(const Point&)>& apply, double lo,
                                    double hi, int probes, double tol) {
  auto f = [&](double t) { return member(cone, apply(ray(t)), tol).margin; };
  SweepResult s = sweep_min(f, lo, hi, probes);
  PreserverVerdict out;
  out.probes = probes;
  out.worst_margin = s.margin;
  if (s.margin < -tol) {
    out.preserves = false;
    Point x = ray(s.theta);
    out.counterexample = x;
    out.cx_input_margin = member(cone, x, tol).margin;
    out.cx_output_margin = member(cone, apply(x), tol).margin;
  }
  return out;
}

}  // namespace

PreserverVerdict into_preserver_check(const SymMap& L, ConeRef cone, int probes, double tol,
                                      Rng* rng) {
  if (!cone.matrix_cone()) throw Error(Err::Unsupported, "vector cones take a plain matrix");
  if (cone.param != L.order) throw Error(Err::DimensionMismatch, "operator/cone order mismatch");
  const int n = L.order;
  auto apply = [&](const Point& p) -> Point { return L.apply(std::get<SymMat>(p)); };

  if (cone.kind == ConeKind::NonnegSym) {
    // E_ii and E_ij + E_ji generate the cone; linearity makes this exact.
    PreserverVerdict out;
    out.exact = true;
    double worst = std::numeric_limits<double>::infinity();
    SymMat worst_ray = SymMat::zero(n);
    for (int i = 0; i < n; ++i)
      for (int j = i; j < n; ++j) {
        SymMat ray = SymMat::basis(n, i, j);
        double m = member(cone, L.apply(ray), tol).margin;
        ++out.probes;
        if (m < worst) {
          worst = m;
          worst_ray = ray;
        }
      }
    out.worst_margin = worst;
    if (worst < -tol) {
      out.preserves = false;
      out.counterexample = worst_ray;
      out.cx_input_margin = member(cone, worst_ray, tol).margin;
      out.cx_output_margin = member(cone, L.apply(worst_ray), tol).margin;
    }
    return out;
  }
  if (cone.kind == ConeKind::Cp && n == 2)
    return ray_family_verdict(
        cone, [](double t) -> Point { return cp2_ray(t); }, apply, 0.0,
        std::acos(-1.0) / 2.0, probes, tol);
  if (cone.kind == ConeKind::Psd && n == 2)
    return ray_family_verdict(
        cone, [](double t) -> Point { return psd2_ray(t); }, apply, 0.0, std::acos(-1.0), probes,
        tol);
  if (cone.kind == ConeKind::Cop && n == 2) {
    // Extreme rays of COP are not enumerable here; probe random members,
    // the nonnegative basis, and PSD rays. Evidence only.
    Rng fallback(seed_for(0x0c0eull, "copprobe", 0));
    Rng& r = rng ? *rng : fallback;
    std::vector<SymMat> pool;
    pool.push_back(SymMat::basis(2, 0, 0));
    pool.push_back(SymMat::basis(2, 1, 1));
    pool.push_back(SymMat::ones(2));
    for (int k = 0; k < 64; ++k)
      pool.push_back(psd2_ray(std::acos(-1.0) * k / 64.0));
    int randoms = std::max(0, probes - static_cast<int>(pool.size()));
    for (int k = 0; k < randoms; ++k)
      pool.push_back(std::get<SymMat>(random_element(cone, r, false)));
    PreserverVerdict out;
    out.probes = static_cast<int>(pool.size());
    double worst = std::numeric_limits<double>::infinity();
    size_t worst_at = 0;
    for (size_t k = 0; k < pool.size(); ++k) {
      double m = member(cone, L.apply(pool[k]), tol).margin;
      if (m < worst) {
        worst = m;
        worst_at = k;
      }
    }
    out.worst_margin = worst;
    if (worst < -tol) {
      out.preserves = false;
      out.counterexample = pool[worst_at];
      out.cx_input_margin = member(cone, pool[worst_at], tol).margin;
      out.cx_output_margin = member(cone, L.apply(pool[worst_at]), tol).margin;
    }
    return out;
  }
  throw Error(Err::Unsupported, "cone not supported by the preserver check");
}

PreserverVerdict into_preserver_check(const Matrix& M, ConeRef cone, int probes, double tol) {
  if (cone.matrix_cone()) throw Error(Err::Unsupported, "matrix cones take a SymMap");
  if (M.rows() != cone.ambient_dim() || M.cols() != cone.ambient_dim())
    throw Error(Err::DimensionMismatch, "matrix/cone dimension mismatch");
  if (cone.kind == ConeKind::Orthant) {
    PreserverVerdict out;
    out.exact = true;
    out.probes = static_cast<int>(M.cols());
    int bi = 0, bj = 0;
    double worst = M.minCoeff(&bi, &bj);
    out.worst_margin = worst;
    if (worst < -tol) {
      out.preserves = false;
      Vector e = Vector::Zero(M.cols());
      e[bj] = 1.0;
      out.counterexample = e;
      out.cx_input_margin = 0.0;
      out.cx_output_margin = member(cone, Vector(M * e), tol).margin;
    }
    return out;
  }
  if (cone.kind == ConeKind::Lorentz && cone.param == 3) {
    auto apply = [&](const Point& p) -> Point { return Vector(M * std::get<Vector>(p)); };
    return ray_family_verdict(
        cone, [](double t) -> Point { return lorentz3_ray(t); }, apply, 0.0,
        2.0 * std::acos(-1.0), probes, tol);
  }
  throw Error(Err::Unsupported, "cone not supported by the preserver check");
}

LyapClassify lyapunov_cp_classify(const Matrix& A, double tol) {
  if (A.rows() != A.cols()) throw Error(Err::DimensionMismatch, "coefficient must be square");
  const int n = static_cast<int>(A.rows());
  if (n < 2 || n > 4) throw Error(Err::Unsupported, "order out of range 2..4");
  if (!A.allFinite()) throw Error(Err::BadInput, "coefficient has non-finite entries");
  const double eta = tol * (1.0 + A.cwiseAbs().maxCoeff());
  bool structural = true;
  for (int i = 0; i < n && structural; ++i) {
    if (A(i, i) < -eta) structural = false;
    for (int j = 0; j < n; ++j)
      if (i != j && std::abs(A(i, j)) > eta) structural = false;
  }
  for (int i = 1; i < n && structural; ++i)
    if (std::abs(A(i, i) - A(0, 0)) > eta) structural = false;

  LyapClassify out;
  if (structural) {
    out.scalar = true;
    out.alpha = A(0, 0);
    return out;
  }
  // Scan the proof's basis matrices for the first image leaving the cone.
  // Near-scalar inputs damp the margins quadratically, so the structural
  // test above decides and this scan only names the witness.
  ConeRef cp = ConeRef::cp(n);
  std::vector<SymMat> basis;
  for (int i = 0; i < n; ++i) basis.push_back(SymMat::basis(n, i, i));
  basis.push_back(SymMat::ones(n));
  double worst = std::numeric_limits<double>::infinity();
  for (const SymMat& B : basis) {
    SymMat img = lyapunov_apply(A, B);
    double m = member(cp, img, tol).margin;
    if (m < 0.0) {
      out.witness = B;
      out.image = img;
      out.image_margin = m;
      return out;
    }
    if (m < worst) {
      worst = m;
      out.witness = B;
      out.image = img;
      out.image_margin = m;
    }
  }
  return out;  // non-scalar but no strictly negative basis image: worst kept
}

MonomialDetect monomial_detect(const SymMap& L, double tol) {
  const int n = L.order;
  MonomialDetect out;
  std::vector<SymMat> diag_images;
  for (int i = 0; i < n; ++i) diag_images.push_back(L.apply(SymMat::basis(n, i, i)));
  const double scale = 1.0 + L.m.cwiseAbs().maxCoeff();
  std::vector<int> sigma(static_cast<size_t>(n));
  for (int i = 0; i < n; ++i) sigma[static_cast<size_t>(i)] = i;
  do {
    std::vector<double> scales(static_cast<size_t>(n));
    bool viable = true;
    for (int i = 0; i < n && viable; ++i) {
      double c = diag_images[static_cast<size_t>(i)](sigma[static_cast<size_t>(i)],
                                                     sigma[static_cast<size_t>(i)]);
      if (c <= 1e-12)
        viable = false;
      else
        scales[static_cast<size_t>(i)] = std::sqrt(c);
    }
    if (!viable) continue;
    Matrix M = Matrix::Zero(n, n);
    for (int i = 0; i < n; ++i) M(sigma[static_cast<size_t>(i)], i) = scales[static_cast<size_t>(i)];
    double err = (standard_map(M).m - L.m).cwiseAbs().maxCoeff();
    if (err <= tol * scale) {
      out.found = true;
      out.M = M;
      out.perm = sigma;
      out.scales = scales;
      out.max_err = err;
      return out;
    }
  } while (std::next_permutation(sigma.begin(), sigma.end()));
  return out;
}

StrongCheck strong_preserver_check(const SymMap& L, ConeRef cone, int probes, double tol,
                                   Rng* rng) {
  if (cone.kind != ConeKind::Cop && cone.kind != ConeKind::Cp)
    throw Error(Err::Unsupported, "strong check targets Cop(2) or Cp(2)");
  StrongCheck out;
  out.forward = into_preserver_check(L, cone, probes, tol, rng);
  try {
    SymMap Linv = invert(L);
    out.invertible = true;
    out.inverse = into_preserver_check(Linv, cone, probes, tol, rng);
  } catch (const Error&) {
    out.invertible = false;
  }
  out.strong = out.invertible && out.forward.preserves && out.inverse.preserves;
  out.monomial = monomial_detect(L);
  out.agreement = out.strong == out.monomial.found;
  return out;
}

ZPropertyResult z_property_check(const SymMap& L, int samples, Rng& rng, double tol) {
  if (L.order != 2) throw Error(Err::Unsupported, "Z-property probe is order 2");
  ZPropertyResult out;
  SymMat offdiag = SymMat::basis(2, 0, 1);
  auto test = [&](const SymMat& x, const SymMat& y) -> bool {
    double v = trace_inner(L.apply(x), y);
    ++out.checked;
    if (v > tol * (1.0 + x.norm() * y.norm() * (1.0 + L.m.norm()))) {
      out.violation = true;
      out.x = x;
      out.y = y;
      out.value = v;
      return true;
    }
    return false;
  };
  // Deterministic corner pairs first: they catch the classical examples.
  std::vector<std::pair<SymMat, SymMat>> fixed = {
      {SymMat::basis(2, 1, 1), SymMat::basis(2, 0, 0)},
      {SymMat::basis(2, 0, 0), SymMat::basis(2, 1, 1)},
      {SymMat::basis(2, 0, 0), offdiag},
      {SymMat::basis(2, 1, 1), offdiag},
  };
  for (auto& [x, y] : fixed)
    if (test(x, y)) return out;
  for (int s = 0; s < samples && out.checked < samples + 4; ++s) {
    Rng local(seed_for(rng.next_u64(), "zpair", static_cast<uint64_t>(s)));
    if (local.uniform() < 0.5) {
      Vector u(2);
      u << local.uniform(0.05, 1.0), local.uniform(0.05, 1.0);
      u.normalize();
      SymMat x = SymMat::from_upper(u * u.transpose());
      Vector w(2);
      w << u[1], -u[0];
      double c = local.uniform(0.1, 1.1);
      SymMat y = SymMat::from_upper(Matrix(c * w * w.transpose()));
      if (test(x, y)) return out;
    } else {
      int i = local.uniform_int(0, 1);
      SymMat x = SymMat::basis(2, i, i);
      double beta = local.uniform(0.0, 1.0), gamma = local.uniform(0.0, 1.0);
      SymMat y = SymMat::basis(2, 1 - i, 1 - i) * beta + offdiag * gamma;
      if (test(x, y)) return out;
    }
  }
  return out;
}

std::vector<AutShiftEntry> aut_shift_probe(const SymMap& L, const std::vector<double>& ts,
                                           int probes, double tol) {
  std::vector<AutShiftEntry> out;
  ConeRef cp = ConeRef::cp(2);
  for (double t : ts) {
    SymMap shifted = map_add(L, map_scale(identity_map(L.order), t));
    StrongCheck sc = strong_preserver_check(shifted, cp, probes, tol);
    out.push_back({t, sc.strong, sc.monomial.found, sc.agreement});
  }
  return out;
}

namespace {

// Z = Y X^{-1} with one step of residual correction; the plain product
// loses cond(X) digits, which matters because small eps makes X1 stiff.
Matrix solve_right(const Matrix& Y, const Matrix& X) {
  Eigen::PartialPivLU<Matrix> lu(Matrix(X.transpose()));
  Matrix Z = lu.solve(Matrix(Y.transpose())).transpose();
  Matrix E = Y - Z * X;
  Z += lu.solve(Matrix(E.transpose())).transpose();
  return Z;
}

}  // namespace

FactorResult semipositive_factor(const Matrix& M) {
  OrthantSemResult sem = sem_check_orthant(M);
  if (!sem.semipositive) throw Error(Err::NotSemipositive, "matrix has no orthant witness");
  const int d = static_cast<int>(M.rows());
  const Vector& x = sem.x;
  Vector mx = M * x;
  const double floor = 1e-6 * mx.minCoeff();
  FactorResult out;
  out.witness = x;
  double eps = 1.0;
  for (int k = 0; k <= 60; ++k) {
    Matrix X1 = x * Matrix::Ones(1, d) + eps * Matrix::Identity(d, d);
    Matrix Y1 = M * X1;
    if (Y1.minCoeff() >= floor) {
      out.X1 = X1;
      out.Y1 = Y1;
      out.epsilon = eps;
      out.residual = (M - solve_right(Y1, X1)).norm();
      return out;
    }
    eps *= 0.5;
  }
  throw Error(Err::BadInput, "epsilon search failed to clear the positivity floor");
}

DecomposeOutcome structure_decompose(const SymMap& L, const Matrix& X, const Matrix& Y,
                                     int probes, double tol) {
  if (L.order != 2) throw Error(Err::Unsupported, "decomposition is order 2");
  if (X.rows() != 3 || X.cols() != 3 || Y.rows() != 3 || Y.cols() != 3)
    throw Error(Err::DimensionMismatch, "factor pair must be 3x3");
  if (!(X.minCoeff() > 0.0) || !(Y.minCoeff() > 0.0))
    throw Error(Err::BadInput, "factor pair must be entrywise positive");
  Eigen::FullPivLU<Matrix> lux(X);
  if (std::abs(lux.determinant()) <= 1e-12)
    throw Error(Err::SingularMatrix, "X is singular");
  invert(L);  // throws NotInvertible when L is singular
  PreserverVerdict pv = into_preserver_check(L, ConeRef::cp(2), probes, tol);
  if (!pv.preserves)
    throw Error(Err::NotInCone, "operator fails the Cp(2) preserver check");

  Matrix YXinv = Y * lux.inverse();
  Matrix M = to_tvec_matrix(L) + YXinv;
  OrthantSemResult sem = sem_check_orthant(M);
  if (!sem.semipositive) {
    TheoremViolation tv;
    tv.X = X;
    tv.Y = Y;
    tv.farkas = sem.farkas;
    return tv;
  }
  FactorResult f = semipositive_factor(M);
  Decomposition dec;
  dec.X = X;
  dec.Y = Y;
  dec.X1 = f.X1;
  dec.Y1 = f.Y1;
  dec.epsilon = f.epsilon;
  dec.witness = f.witness;
  SymMap rebuilt = from_tvec_matrix(2, Matrix(solve_right(f.Y1, f.X1) - YXinv));
  dec.reconstruction_error = (L.m - rebuilt.m).norm();
  return dec;
}

}  // namespace copos
