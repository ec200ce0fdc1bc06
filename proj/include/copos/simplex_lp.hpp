#pragma once

#include "copos/symspace.hpp"

namespace copos {

struct LpResult {
  enum class Status { Optimal, Infeasible, Unbounded };
  Status status = Status::Infeasible;
  Vector x;           // minimizer over the u variables when Optimal
  double objective = 0.0;
  // When Infeasible: y >= 0 with G^t y <= 0 and h^t y > 0, certifying that
  // no u >= 0 satisfies G u >= h.
  Vector farkas;
};

// min c.u  subject to  G u >= h, u >= 0.
// Dense two-phase simplex on the equality form (surplus + artificial
// variables), Bland's rule for both the entering and leaving choices, so the
// method cannot cycle. Sized for the d <= 10 systems used here.
LpResult lp_solve_geq(const Vector& c, const Matrix& G, const Vector& h);

inline LpResult lp_feasible_geq(const Matrix& G, const Vector& h) {
  return lp_solve_geq(Vector::Zero(G.cols()), G, h);
}

}  // namespace copos
