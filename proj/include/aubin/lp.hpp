#pragma once

#include <limits>
#include <optional>
#include <string_view>
#include <vector>

#include "aubin/numerics.hpp"

namespace aubin {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

/// maximize objective·x  s.t.  eq_lhs·x = eq_rhs,  lower <= x <= upper.
/// Missing bounds are the sentinels -kInf / +kInf, never large finite values.
struct LinearProgram {
  Vector objective;
  Matrix eq_lhs;
  Vector eq_rhs;
  std::vector<double> lower;
  std::vector<double> upper;

  std::size_t num_vars() const { return objective.dim(); }
};

/// LP over `n` variables with no constraints yet and bounds (-inf, +inf).
LinearProgram make_free_lp(std::size_t n);

enum class LpStatus { optimal, infeasible, unbounded };

std::string_view to_string(LpStatus s);

struct LpOutcome {
  LpStatus status = LpStatus::infeasible;
  std::optional<Vector> solution;
  std::optional<double> objective_value;
  int pivots = 0;
};

inline constexpr double kDefaultLpTol = 1e-9;

/// Dense two-phase primal simplex with Bland's rule. Rows are scaled to unit
/// max-norm, so `tol` acts relative to row scale. Throws LpStalled when the
/// pivot count exceeds `max_pivots`; throws DimensionError for a malformed
/// program.
LpOutcome lp_solve(const LinearProgram& lp, double tol = kDefaultLpTol, int max_pivots = 20000);

/// Largest violation of the equality rows and bounds at x.
double lp_residual(const LinearProgram& lp, const Vector& x);

}  // namespace aubin
