#pragma once

#include <optional>
#include <variant>
#include <vector>

#include "copos/cones.hpp"
#include "copos/linmaps.hpp"
#include "copos/rng.hpp"

namespace copos {

// Into-preserver checking. Polyhedral cones are decided exactly on their
// finite extreme-ray sets; Cp(2), Psd(2), Lorentz(3) use a dense parameter
// sweep over extreme rays with golden-section refinement; Cop(2) is
// evidence-only (its extreme rays have no usable enumeration).
struct PreserverVerdict {
  bool preserves = true;
  bool exact = false;  // finite ray set decided the answer
  int probes = 0;
  double worst_margin = 0.0;  // smallest output margin encountered
  std::optional<Point> counterexample;
  double cx_input_margin = 0.0;
  double cx_output_margin = 0.0;
};

PreserverVerdict into_preserver_check(const SymMap& L, ConeRef cone, int probes = 2048,
                                      double tol = kDefaultTol, Rng* rng = nullptr);
PreserverVerdict into_preserver_check(const Matrix& M, ConeRef cone, int probes = 2048,
                                      double tol = kDefaultTol);

// Classification of X -> AX + XA^t against complete positivity, following
// the basis-image argument: off-diagonal entries of A must vanish, the
// diagonal must be nonnegative and equal. witness/image are meaningful only
// when scalar is false.
struct LyapClassify {
  bool scalar = false;
  double alpha = 0.0;
  SymMat witness;
  SymMat image;
  double image_margin = 0.0;
};
LyapClassify lyapunov_cp_classify(const Matrix& A, double tol = kDefaultTol);

struct MonomialDetect {
  bool found = false;
  Matrix M;
  std::vector<int> perm;
  std::vector<double> scales;
  double max_err = 0.0;  // deviation of the rebuilt operator matrix
};
MonomialDetect monomial_detect(const SymMap& L, double tol = 1e-9);

struct StrongCheck {
  bool invertible = false;
  PreserverVerdict forward;
  PreserverVerdict inverse;
  bool strong = false;
  MonomialDetect monomial;
  bool agreement = false;  // strong == monomial.found
};
StrongCheck strong_preserver_check(const SymMap& L, ConeRef cone, int probes = 2048,
                                   double tol = kDefaultTol, Rng* rng = nullptr);

// Z-property probe on Cp(2): searches orthogonal boundary pairs x = uu^t,
// y copositive with <x,y> = 0 for a positive pairing <L(x), y>.
struct ZPropertyResult {
  bool violation = false;
  SymMat x, y;
  double value = 0.0;
  int checked = 0;
};
ZPropertyResult z_property_check(const SymMap& L, int samples, Rng& rng,
                                 double tol = kDefaultTol);

struct AutShiftEntry {
  double t;
  bool strong;
  bool monomial_found;
  bool agreement;
};
std::vector<AutShiftEntry> aut_shift_probe(const SymMap& L, const std::vector<double>& ts,
                                           int probes = 512, double tol = kDefaultTol);

// Constructive positive factorization M = Y1 X1^{-1} from an LP witness:
// X1 = x 1^t + eps I, Y1 = M X1, with eps halved until Y1 clears an
// entrywise floor tied to min(Mx).
struct FactorResult {
  Matrix X1, Y1;
  double epsilon;
  Vector witness;
  double residual;  // ||M - Y1 X1^{-1}||_F
};
FactorResult semipositive_factor(const Matrix& M);

// Decomposition L = T^{-1}(Y1 X1^{-1} - Y X^{-1})T in the TVEC frame.
// The required semipositivity of T L T^{-1} + Y X^{-1} is treated as
// falsifiable: an LP refusal is returned as evidence, not an exception.
struct Decomposition {
  Matrix X, Y, X1, Y1;
  double epsilon;
  Vector witness;
  double reconstruction_error;
};
struct TheoremViolation {
  Matrix X, Y;
  Vector farkas;
};
using DecomposeOutcome = std::variant<Decomposition, TheoremViolation>;
DecomposeOutcome structure_decompose(const SymMap& L, const Matrix& X, const Matrix& Y,
                                     int probes = 2048, double tol = kDefaultTol);

}  // namespace copos
