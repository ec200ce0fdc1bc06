#pragma once

#include <vector>

#include "copos/cones.hpp"
#include "copos/linmaps.hpp"
#include "copos/rng.hpp"
#include "copos/simplex_lp.hpp"

namespace copos {

// Witness search for semipositivity: some interior point of the source cone
// whose image lies in the interior of the target cone. Polyhedral pairs are
// decided exactly by LP; the rest get a sound one-sided search (a positive
// margin proves Sem, absence proves nothing).

struct OrthantSemResult {
  bool semipositive = false;
  Vector x;       // witness with x >= 1 and Mx >= 1 when semipositive
  double margin;  // normalized interior margin of the witness pair
  Vector farkas;  // y >= 0, M^t y <= 0, y != 0 when not semipositive
};

// Decides existence of x >= 1 with Mx >= 1 (d <= 10).
OrthantSemResult sem_check_orthant(const Matrix& M);

struct SemFactorPair {
  Matrix X;  // entrywise positive, invertible
  Matrix Y;  // entrywise positive
};

struct OrthantGen {
  Matrix M;  // Y X^{-1}
  SemFactorPair factors;
};

OrthantGen sem_generate_orthant(int d, Rng& rng);

struct SemSearchResult {
  bool found = false;  // margin > 0 after re-verification
  bool exact = false;  // decided by LP (absence is then a proof)
  Point x;             // witness in source cone
  double margin = -1.0;
  int start_index = -1;
};

SemSearchResult sem_check(ConeRef source, ConeRef target, const Matrix& M, Rng& rng,
                          int starts = 32);
SemSearchResult sem_check(ConeRef source, ConeRef target, const SymMap& L, Rng& rng,
                          int starts = 32);

// B = S A S^{-1} with the transported witness S x; verified means the new
// margin re-checked positive in the target cone.
struct VecTransport {
  Matrix B;
  Vector witness;
  double margin;
  bool verified;
};
VecTransport sem_transport(const Matrix& S, const Matrix& A, ConeRef k2, const Vector& witness);

struct MapTransport {
  SymMap B;
  SymMat witness;
  double margin;
  bool verified;
};
MapTransport sem_transport(const SymMap& S, const SymMap& A, ConeRef k2, const SymMat& witness);

// Conjugates an orthant-semipositive 3x3 sample into an operator on 2x2
// symmetric matrices that is NonnegSym-semipositive; witness re-verified by
// the TVEC LP.
struct NonnegSymGen {
  SymMap L;
  SymMat witness;
  double margin;
};
NonnegSymGen sem_generate_nonnegsym(Rng& rng);

// Conjugates an orthant sample by the printed frame change into a candidate
// element of Sem(S^2_+); the witness search re-verifies each output and
// failures are reported, not dropped.
struct Psd2Gen {
  SymMap L;
  Matrix B;  // the orthant factor Y X^{-1}
  bool witness_found;
  SymMat witness;  // valid when witness_found
  double margin;
};
Psd2Gen sem_generate_psd2(Rng& rng);

// Probes the dual characterization: A is cone-nonnegative iff A + B stays
// semipositive for every semipositive B.
struct PiCharReport {
  bool pi_member = false;
  double pi_margin = 0.0;
  int trials = 0;
  std::vector<Matrix> failures;  // sampled B with A + B not semipositive
  bool any_inconclusive = false;
  bool consistent = false;
};
PiCharReport pi_char_test(const Matrix& A, ConeRef source, ConeRef target, int trials, Rng& rng);

}  // namespace copos
