#pragma once

#include <optional>
#include <string>
#include <utility>
#include <variant>

#include "copos/rng.hpp"
#include "copos/symspace.hpp"

namespace copos {

enum class ConeKind { Orthant, Lorentz, Psd, NonnegSym, Cop, Cp };

// Tagged cone reference. param is the ambient dimension for Orthant/Lorentz
// and the matrix order for the rest. Cop/Cp are confined to n <= 4, the
// regime where COP = PSD + N and CP = PSD intersect N hold.
struct ConeRef {
  ConeKind kind;
  int param;

  static ConeRef orthant(int d);
  static ConeRef lorentz(int d);
  static ConeRef psd(int n);
  static ConeRef nonneg_sym(int n);
  static ConeRef cop(int n);
  static ConeRef cp(int n);

  bool matrix_cone() const {
    return kind != ConeKind::Orthant && kind != ConeKind::Lorentz;
  }
  // Dimension of the ambient coordinate space.
  int ambient_dim() const { return matrix_cone() ? sym_dim(param) : param; }
  std::string token() const;
};

// Parses tokens like "cp2", "cop3", "psd2", "nn2", "orthant3", "lorentz3".
ConeRef parse_cone(const std::string& token);

struct CpFactorCert {
  Matrix B;  // entrywise >= 0 with B B^t reproducing the matrix
};
struct CopSplitCert {
  SymMat P, N;  // P PSD, N entrywise >= 0, P + N = A
};
struct SimplexViolationCert {
  Vector x;  // x >= 0, sum 1, with x^t A x = value < 0
  double value;
};
struct EntryViolationCert {
  int i, j;  // offending entry (component i when certifying a vector)
  double value;
};
struct EigViolationCert {
  Vector v;  // for PSD: unit eigenvector with v^t A v = value < 0;
             // for Lorentz: dual-cone direction with <v, x> = value < 0
  double value;
};

using Certificate = std::variant<CpFactorCert, CopSplitCert, SimplexViolationCert,
                                 EntryViolationCert, EigViolationCert>;

enum class MemberStatus { Interior, Boundary, Outside };

struct MembershipReport {
  MemberStatus status;
  double margin;      // cone-specific scale, see member()
  double scaled_tol;  // tol * (1 + norm of the point); status cutoff
  std::optional<Certificate> certificate;
};

// Margins: Orthant, min component; Lorentz, x_d - |x_head|; Psd, minimum
// eigenvalue; NonnegSym, min entry; Cp, min of the Psd and NonnegSym
// margins; Cop, minimum of the quadratic form over the standard simplex
// (closed form for order 2). Outside reports carry a violation certificate;
// Cp reports of order 2 that are not Outside carry a CpFactor.
MembershipReport member(const ConeRef& cone, const SymMat& A, double tol = kDefaultTol);
MembershipReport member(const ConeRef& cone, const Vector& x, double tol = kDefaultTol);

using Point = std::variant<Vector, SymMat>;
MembershipReport member(const ConeRef& cone, const Point& p, double tol = kDefaultTol);

// Minimum of x^t A x over {x >= 0, sum x = 1} to 1e-7 absolute, with a
// minimizing point. Exhaustive face enumeration (stationarity system per
// support, clamped), a 1/64 grid scan, then coordinate-descent refinement.
// A is copositive iff the returned value >= -tol.
std::pair<double, Vector> quadform_min_simplex(const SymMat& A);

// Closed-form COP_2 margin and minimizer.
std::pair<double, Vector> cop2_min(const SymMat& A);

// Nonnegative B with B B^t = A for A in CP_2. Generic branch is the
// closed-form Cholesky with tiny negatives clamped, exact-zero columns
// dropped; if a11 is within tolerance of zero the result is diag(0,
// sqrt(a22)). Throws NotInCone outside CP_2.
CpFactorCert cp_factor_2x2(const SymMat& A, double tol = kDefaultTol);

struct CopSplitResult {
  bool ok;  // false = best-effort failure (inconclusive, never a disproof)
  SymMat P, N;
  int iterations;
  double psd_margin;
  double entry_margin;
};

// Splits copositive A as P + N with P PSD and N >= 0. Closed form for
// order 2; alternating projections (entrywise min with A, then PSD
// projection) for orders 3 and 4, capped at 1e4 iterations.
CopSplitResult cop_split(const SymMat& A, double tol = kDefaultTol);

// Samples with member(...) status Interior when interior = true;
// deterministic given the Rng state.
Point random_element(const ConeRef& cone, Rng& rng, bool interior = true);

// One extreme ray: Cp/Psd rank-one xx^t, NonnegSym basis elements, Lorentz
// boundary vectors, Orthant coordinate axes. Cop is refused
// (ExtremeRaysUnknown): its extreme rays are not enumerated.
Point extreme_ray_sample(const ConeRef& cone, Rng& rng);

// Deterministic one-parameter extreme-ray families used by the sweeps.
SymMat cp2_ray(double theta);      // (cos, sin)(cos, sin)^t, theta in [0, pi/2]
SymMat psd2_ray(double theta);     // same form, theta in [0, pi)
Vector lorentz3_ray(double phi);   // (cos phi, sin phi, 1)

SymMat random_gaussian_sym(int n, Rng& rng);

}  // namespace copos
