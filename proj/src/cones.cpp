#include "copos/cones.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "copos/jacobi.hpp"
#include "copos/sweep.hpp"

namespace copos {

namespace {

constexpr double kPi = 3.14159265358979323846;

void require_matrix_order(int n) {
  if (n < 2 || n > 4) throw Error(Err::Unsupported, "matrix cones support orders 2..4");
}

MemberStatus status_of(double margin, double scaled_tol) {
  if (margin > scaled_tol) return MemberStatus::Interior;
  if (margin < -scaled_tol) return MemberStatus::Outside;
  return MemberStatus::Boundary;
}

}  // namespace

ConeRef ConeRef::orthant(int d) {
  if (d < 1 || d > 10) throw Error(Err::Unsupported, "orthant dimension must be 1..10");
  return ConeRef{ConeKind::Orthant, d};
}

ConeRef ConeRef::lorentz(int d) {
  if (d < 2 || d > 10) throw Error(Err::Unsupported, "Lorentz dimension must be 2..10");
  return ConeRef{ConeKind::Lorentz, d};
}

ConeRef ConeRef::psd(int n) {
  require_matrix_order(n);
  return ConeRef{ConeKind::Psd, n};
}

ConeRef ConeRef::nonneg_sym(int n) {
  require_matrix_order(n);
  return ConeRef{ConeKind::NonnegSym, n};
}

ConeRef ConeRef::cop(int n) {
  require_matrix_order(n);
  return ConeRef{ConeKind::Cop, n};
}

ConeRef ConeRef::cp(int n) {
  require_matrix_order(n);
  return ConeRef{ConeKind::Cp, n};
}

std::string ConeRef::token() const {
  switch (kind) {
    case ConeKind::Orthant: return "orthant" + std::to_string(param);
    case ConeKind::Lorentz: return "lorentz" + std::to_string(param);
    case ConeKind::Psd: return "psd" + std::to_string(param);
    case ConeKind::NonnegSym: return "nn" + std::to_string(param);
    case ConeKind::Cop: return "cop" + std::to_string(param);
    case ConeKind::Cp: return "cp" + std::to_string(param);
  }
  return "?";
}

ConeRef parse_cone(const std::string& token) {
  auto split = [&](const std::string& prefix) -> int {
    if (token.size() <= prefix.size() || token.compare(0, prefix.size(), prefix) != 0) return -1;
    int v = 0;
    for (std::size_t k = prefix.size(); k < token.size(); ++k) {
      if (token[k] < '0' || token[k] > '9') return -1;
      v = v * 10 + (token[k] - '0');
    }
    return v;
  };
  // Longest prefixes first so "cop2" is not read as "cp" + garbage.
  if (int d = split("orthant"); d > 0) return ConeRef::orthant(d);
  if (int d = split("lorentz"); d > 0) return ConeRef::lorentz(d);
  if (int n = split("cop"); n > 0) return ConeRef::cop(n);
  if (int n = split("psd"); n > 0) return ConeRef::psd(n);
  if (int n = split("nn"); n > 0) return ConeRef::nonneg_sym(n);
  if (int n = split("cp"); n > 0) return ConeRef::cp(n);
  throw Error(Err::Unsupported, "unknown cone token: " + token);
}

std::pair<double, Vector> cop2_min(const SymMat& A) {
  if (A.order() != 2) throw Error(Err::DimensionMismatch, "cop2_min expects order 2");
  double a = A(0, 0), b = A(0, 1), c = A(1, 1);
  double best = a;
  Vector x(2);
  x << 1.0, 0.0;
  if (c < best) {
    best = c;
    x << 0.0, 1.0;
  }
  double denom = a - 2.0 * b + c;
  if (denom > 0.0) {
    double t = (a - b) / denom;
    if (t > 0.0 && t < 1.0) {
      double q = (a * c - b * b) / denom;
      if (q < best) {
        best = q;
        x << 1.0 - t, t;
      }
    }
  }
  return {best, x};
}

namespace {

double quadform(const SymMat& A, const Vector& x) { return x.dot(A.mat() * x); }

// Stationary point of the quadratic form on one face of the simplex:
// A_S x = lambda 1, sum x = 1 restricted to the support set.
bool face_candidate(const SymMat& A, unsigned mask, Vector* out) {
  int n = A.order();
  std::vector<int> sup;
  for (int i = 0; i < n; ++i)
    if (mask & (1u << i)) sup.push_back(i);
  int k = static_cast<int>(sup.size());
  Matrix sys = Matrix::Zero(k + 1, k + 1);
  Vector rhs = Vector::Zero(k + 1);
  for (int r = 0; r < k; ++r) {
    for (int cidx = 0; cidx < k; ++cidx) sys(r, cidx) = A(sup[r], sup[cidx]);
    sys(r, k) = -1.0;
    sys(k, r) = 1.0;
  }
  rhs[k] = 1.0;
  Eigen::FullPivLU<Matrix> lu(sys);
  if (!lu.isInvertible()) return false;
  Vector sol = lu.solve(rhs);
  Vector x = Vector::Zero(n);
  double sum = 0.0;
  for (int r = 0; r < k; ++r) {
    double v = std::max(sol[r], 0.0);
    x[sup[r]] = v;
    sum += v;
  }
  if (sum <= 1e-14) return false;
  x /= sum;
  *out = x;
  return true;
}

void refine_on_simplex(const SymMat& A, Vector* x, double* value) {
  int n = A.order();
  for (int pass = 0; pass < 200; ++pass) {
    double before = *value;
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        if (i == j) continue;
        // Move mass along e_i - e_j; the form is an exact quadratic in t.
        Vector ax = A.mat() * (*x);
        double c2 = A(i, i) - 2.0 * A(i, j) + A(j, j);
        double c1 = 2.0 * (ax[i] - ax[j]);
        double tlo = -(*x)[i], thi = (*x)[j];
        double t;
        if (c2 > 0.0) {
          t = std::clamp(-c1 / (2.0 * c2), tlo, thi);
        } else {
          t = (c1 * tlo + c2 * tlo * tlo < c1 * thi + c2 * thi * thi) ? tlo : thi;
        }
        if (t == 0.0) continue;
        Vector cand = *x;
        cand[i] += t;
        cand[j] -= t;
        cand[i] = std::max(cand[i], 0.0);
        cand[j] = std::max(cand[j], 0.0);
        cand /= cand.sum();
        double val = quadform(A, cand);
        if (val < *value) {
          *x = cand;
          *value = val;
        }
      }
    }
    if (before - *value < 1e-12) break;
  }
}

}  // namespace

std::pair<double, Vector> quadform_min_simplex(const SymMat& A) {
  int n = A.order();
  require_matrix_order(n);

  Vector best_x = Vector::Zero(n);
  best_x[0] = 1.0;
  double best = quadform(A, best_x);

  for (unsigned mask = 1; mask < (1u << n); ++mask) {
    Vector x;
    if (!face_candidate(A, mask, &x)) continue;
    double v = quadform(A, x);
    if (v < best) {
      best = v;
      best_x = x;
    }
  }

  // Uniform grid at resolution 1/64, evaluated with the sweep kernel.
  constexpr int kGrid = 64;
  std::vector<Vector> pts;
  Vector comp = Vector::Zero(n);
  // Enumerate compositions of kGrid into n parts, lexicographically.
  std::vector<int> k(n, 0);
  while (true) {
    int rem = kGrid;
    for (int i = 0; i + 1 < n; ++i) rem -= k[i];
    if (rem >= 0) {
      Vector x(n);
      for (int i = 0; i + 1 < n; ++i) x[i] = static_cast<double>(k[i]) / kGrid;
      x[n - 1] = static_cast<double>(rem) / kGrid;
      pts.push_back(x);
    }
    int carry = n - 2;
    while (carry >= 0) {
      ++k[carry];
      int used = 0;
      for (int i = 0; i <= carry; ++i) used += k[i];
      if (used <= kGrid) break;
      k[carry] = 0;
      --carry;
    }
    if (carry < 0) break;
  }
  MinLoc grid_best = min_sweep(pts.size(), [&](std::size_t i) { return quadform(A, pts[i]); });
  if (grid_best.value < best) {
    best = grid_best.value;
    best_x = pts[grid_best.index];
  }

  refine_on_simplex(A, &best_x, &best);
  return {best, best_x};
}

namespace {

MembershipReport member_matrix(const ConeRef& cone, const SymMat& A, double tol) {
  if (A.order() != cone.param) throw Error(Err::DimensionMismatch, "matrix order mismatch");
  double scaled_tol = tol * (1.0 + A.norm());
  MembershipReport rep{MemberStatus::Boundary, 0.0, scaled_tol, std::nullopt};

  auto entry_argmin = [&](int* oi, int* oj) {
    int n = A.order();
    double mn = A(0, 0);
    *oi = 0;
    *oj = 0;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        if (A(i, j) < mn) {
          mn = A(i, j);
          *oi = i;
          *oj = j;
        }
    return mn;
  };

  switch (cone.kind) {
    case ConeKind::Psd: {
      EigenSym e = sym_eigen(A);
      rep.margin = e.values[0];
      rep.status = status_of(rep.margin, scaled_tol);
      if (rep.status == MemberStatus::Outside)
        rep.certificate = EigViolationCert{e.vectors.col(0), e.values[0]};
      return rep;
    }
    case ConeKind::NonnegSym: {
      int i, j;
      rep.margin = entry_argmin(&i, &j);
      rep.status = status_of(rep.margin, scaled_tol);
      if (rep.status == MemberStatus::Outside)
        rep.certificate = EntryViolationCert{i, j, A(i, j)};
      return rep;
    }
    case ConeKind::Cp: {
      EigenSym e = sym_eigen(A);
      int i, j;
      double entry_margin = entry_argmin(&i, &j);
      double psd_margin = e.values[0];
      rep.margin = std::min(psd_margin, entry_margin);
      rep.status = status_of(rep.margin, scaled_tol);
      if (rep.status == MemberStatus::Outside) {
        if (entry_margin <= psd_margin)
          rep.certificate = EntryViolationCert{i, j, A(i, j)};
        else
          rep.certificate = EigViolationCert{e.vectors.col(0), e.values[0]};
      } else if (cone.param == 2) {
        rep.certificate = cp_factor_2x2(A, tol);
      }
      return rep;
    }
    case ConeKind::Cop: {
      auto [mn, x] = (cone.param == 2) ? cop2_min(A) : quadform_min_simplex(A);
      rep.margin = mn;
      rep.status = status_of(rep.margin, scaled_tol);
      if (rep.status == MemberStatus::Outside)
        rep.certificate = SimplexViolationCert{x, mn};
      return rep;
    }
    default:
      throw Error(Err::DimensionMismatch, "cone expects a vector point");
  }
}

MembershipReport member_vector(const ConeRef& cone, const Vector& x, double tol) {
  if (x.size() != cone.param) throw Error(Err::DimensionMismatch, "vector dimension mismatch");
  double scaled_tol = tol * (1.0 + x.norm());
  MembershipReport rep{MemberStatus::Boundary, 0.0, scaled_tol, std::nullopt};
  switch (cone.kind) {
    case ConeKind::Orthant: {
      int arg = 0;
      rep.margin = x[0];
      for (int i = 1; i < x.size(); ++i)
        if (x[i] < rep.margin) {
          rep.margin = x[i];
          arg = i;
        }
      rep.status = status_of(rep.margin, scaled_tol);
      if (rep.status == MemberStatus::Outside)
        rep.certificate = EntryViolationCert{arg, arg, x[arg]};
      return rep;
    }
    case ConeKind::Lorentz: {
      int d = cone.param;
      double head = x.head(d - 1).norm();
      rep.margin = x[d - 1] - head;
      rep.status = status_of(rep.margin, scaled_tol);
      if (rep.status == MemberStatus::Outside) {
        // Dual direction z in the Lorentz cone with <z, x> = margin < 0.
        Vector z(d);
        if (head > 0.0) {
          z.head(d - 1) = -x.head(d - 1) / head;
          z[d - 1] = 1.0;
        } else {
          z.setZero();
          z[d - 1] = 1.0;
        }
        rep.certificate = EigViolationCert{z, rep.margin};
      }
      return rep;
    }
    default:
      throw Error(Err::DimensionMismatch, "cone expects a matrix point");
  }
}

}  // namespace

MembershipReport member(const ConeRef& cone, const SymMat& A, double tol) {
  if (!cone.matrix_cone()) throw Error(Err::DimensionMismatch, "cone expects a vector point");
  return member_matrix(cone, A, tol);
}

MembershipReport member(const ConeRef& cone, const Vector& x, double tol) {
  if (cone.matrix_cone()) throw Error(Err::DimensionMismatch, "cone expects a matrix point");
  return member_vector(cone, x, tol);
}

MembershipReport member(const ConeRef& cone, const Point& p, double tol) {
  if (std::holds_alternative<SymMat>(p)) return member(cone, std::get<SymMat>(p), tol);
  return member(cone, std::get<Vector>(p), tol);
}

CpFactorCert cp_factor_2x2(const SymMat& A, double tol) {
  if (A.order() != 2) throw Error(Err::DimensionMismatch, "cp_factor_2x2 expects order 2");
  double scaled_tol = tol * (1.0 + A.norm());
  double psd_margin = min_eigenvalue(A);
  double entry_margin = A.min_entry();
  if (psd_margin < -scaled_tol || entry_margin < -scaled_tol)
    throw Error(Err::NotInCone, "matrix is not completely positive");

  double a11 = A(0, 0), a12 = A(0, 1), a22 = A(1, 1);
  if (a11 <= scaled_tol) {
    Matrix B = Matrix::Zero(2, 2);
    B(1, 1) = std::sqrt(std::max(a22, 0.0));
    return CpFactorCert{B};
  }
  double b11 = std::sqrt(a11);
  double b21 = a12 / b11;
  double b22 = std::sqrt(std::max(a22 - (a12 * a12) / a11, 0.0));
  Matrix B(2, 2);
  B << b11, 0.0, b21, b22;
  if (b22 == 0.0) {
    // The second column is identically zero; emit the slim factor.
    Matrix slim(2, 1);
    slim << b11, b21;
    return CpFactorCert{slim};
  }
  return CpFactorCert{B};
}

CopSplitResult cop_split(const SymMat& A, double tol) {
  int n = A.order();
  require_matrix_order(n);
  ConeRef cop = ConeRef::cop(n);
  MembershipReport rep = member(cop, A, tol);
  if (rep.status == MemberStatus::Outside)
    throw Error(Err::NotInCone, "matrix is not copositive");

  CopSplitResult out{true, SymMat::zero(n), SymMat::zero(n), 0, 0.0, 0.0};
  if (n == 2) {
    if (A.min_entry() >= 0.0) {
      out.N = A;
    } else {
      // Copositivity with a negative off-diagonal forces det >= 0, so A
      // itself is PSD.
      out.P = A;
    }
  } else {
    SymMat P = A;
    int it = 0;
    for (; it < 10000; ++it) {
      Matrix z = P.mat().cwiseMin(A.mat());
      P = psd_project(SymMat::from_upper(z));
      double viol = (A.mat() - P.mat()).minCoeff();
      if (viol >= -1e-11) break;
    }
    out.iterations = it;
    Matrix nmat = (A.mat() - P.mat()).cwiseMax(0.0);
    out.N = SymMat::from_upper(nmat);
    out.P = A - out.N;
  }
  out.psd_margin = min_eigenvalue(out.P);
  out.entry_margin = out.N.min_entry();
  out.ok = out.psd_margin >= -1e-10 && out.entry_margin >= 0.0;
  return out;
}

SymMat random_gaussian_sym(int n, Rng& rng) {
  Matrix m(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) m(i, j) = rng.gaussian();
  return SymMat::from_upper(m);
}

Point random_element(const ConeRef& cone, Rng& rng, bool interior) {
  int n = cone.param;
  switch (cone.kind) {
    case ConeKind::Orthant: {
      Vector x(n);
      if (interior) {
        for (int i = 0; i < n; ++i) x[i] = rng.uniform(0.1, 1.1);
      } else {
        for (int i = 0; i < n; ++i) x[i] = rng.uniform();
        for (int i = 0; i < n; ++i)
          if (rng.uniform() < 0.25) x[i] = 0.0;
      }
      return x;
    }
    case ConeKind::Lorentz: {
      Vector x(n);
      for (int i = 0; i + 1 < n; ++i) x[i] = rng.gaussian();
      double head = x.head(n - 1).norm();
      x[n - 1] = head + (interior ? rng.uniform(0.1, 1.0) : 0.0);
      return x;
    }
    case ConeKind::Psd: {
      Matrix g(n, n);
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) g(i, j) = rng.gaussian();
      Matrix m = g * g.transpose();
      if (interior) m += 0.1 * Matrix::Identity(n, n);
      return SymMat::from_upper(m);
    }
    case ConeKind::NonnegSym: {
      Matrix m(n, n);
      for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j)
          m(i, j) = interior ? rng.uniform(0.1, 1.1) : rng.uniform();
      return SymMat::from_upper(m);
    }
    case ConeKind::Cp: {
      // B B^t + delta I with B entrywise nonnegative, delta = 0.1.
      Matrix b(n, n);
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) b(i, j) = interior ? rng.uniform(0.1, 1.1) : rng.uniform();
      Matrix m = b * b.transpose();
      if (interior) m += 0.1 * Matrix::Identity(n, n);
      return SymMat::from_upper(m);
    }
    case ConeKind::Cop: {
      // PSD part plus a nonnegative symmetric part.
      Matrix g(n, n);
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) g(i, j) = rng.gaussian();
      Matrix m = g * g.transpose();
      for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j) {
          double add = interior ? rng.uniform(0.1, 1.1) : rng.uniform();
          m(i, j) += add;
          if (i != j) m(j, i) += add;
        }
      return SymMat::from_upper(m);
    }
  }
  throw Error(Err::Unsupported, "unsupported cone");
}

SymMat cp2_ray(double theta) {
  Vector x(2);
  x << std::cos(theta), std::sin(theta);
  Matrix m = x * x.transpose();
  return SymMat::from_upper(m);
}

SymMat psd2_ray(double theta) { return cp2_ray(theta); }

Vector lorentz3_ray(double phi) {
  Vector x(3);
  x << std::cos(phi), std::sin(phi), 1.0;
  return x;
}

Point extreme_ray_sample(const ConeRef& cone, Rng& rng) {
  int n = cone.param;
  switch (cone.kind) {
    case ConeKind::Cp: {
      if (n == 2) return cp2_ray(rng.uniform(0.0, kPi / 2.0));
      Vector x(n);
      for (int i = 0; i < n; ++i) x[i] = std::abs(rng.gaussian());
      x.normalize();
      Matrix m = x * x.transpose();
      return SymMat::from_upper(m);
    }
    case ConeKind::Psd: {
      Vector x(n);
      for (int i = 0; i < n; ++i) x[i] = rng.gaussian();
      x.normalize();
      Matrix m = x * x.transpose();
      return SymMat::from_upper(m);
    }
    case ConeKind::NonnegSym: {
      auto pairs = sym_index_pairs(n);
      auto [i, j] = pairs[static_cast<std::size_t>(rng.uniform_int(0, sym_dim(n) - 1))];
      return SymMat::basis(n, i, j);
    }
    case ConeKind::Lorentz: {
      Vector x(n);
      for (int i = 0; i + 1 < n; ++i) x[i] = rng.gaussian();
      x[n - 1] = x.head(n - 1).norm();
      return x;
    }
    case ConeKind::Orthant: {
      Vector x = Vector::Zero(n);
      x[rng.uniform_int(0, n - 1)] = 1.0;
      return x;
    }
    case ConeKind::Cop:
      throw Error(Err::ExtremeRaysUnknown, "extreme rays of COP are not enumerated");
  }
  throw Error(Err::Unsupported, "unsupported cone");
}

}  // namespace copos
