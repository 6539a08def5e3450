#pragma once

#include <functional>
#include <optional>

#include "aubin/certify.hpp"
#include "aubin/numerics.hpp"
#include "aubin/sets.hpp"

namespace aubin {

struct SolveResult {
  Vector x;
  /// SEP only.
  std::optional<Vector> y;
  /// SFP: ‖Ax − P_Q(Ax)‖; SEP: ‖Ax − By‖.
  double residual = 0.0;
  int iterations = 0;
  bool converged = false;
  /// Stopped early because the residual stopped moving (likely infeasible).
  bool stalled = false;
};

enum class SepStepRule {
  /// One step γ for both blocks, 0 < γ < 2/(‖A‖² + ‖B‖²).
  scalar,
  /// γₓ = 1/(2‖A‖²), γᵧ = 1/(2‖B‖²): projected gradient in the metric
  /// diag(2‖A‖² I, 2‖B‖² I), where the gradient is 1-Lipschitz. Far faster
  /// when ‖A‖ and ‖B‖ differ by orders of magnitude.
  block,
};

struct SolveOptions {
  /// Step size; 0 selects 1/‖A‖² (SFP) or 1/(‖A‖² + ‖B‖²) (SEP).
  double step = 0.0;
  SepStepRule sep_rule = SepStepRule::scalar;
  int max_iters = 100000;
  double tol = 1e-8;
  /// Called with (k, x_k, y_k) before each update; y_k is null for SFP.
  std::function<void(int, const Vector&, const Vector*)> observer;
};

double default_sfp_step(const Matrix& A);
double default_sep_step(const Matrix& A, const Matrix& B);

/// CQ iteration x ← P_C(x − γAᵀ(Ax − P_Q(Ax))). Throws Error when the step
/// is outside (0, 2/‖A‖²).
SolveResult solve_sfp(const Matrix& A, const ConvexSet& C, const ConvexSet& Q, const Vector& x0,
                      const SolveOptions& options = {});

/// Simultaneous projected gradient on ½‖Ax − By‖² over C × Q:
/// x ← P_C(x − γAᵀr), y ← P_Q(y + γBᵀr), r = Ax − By.
SolveResult solve_sep(const Matrix& A, const Matrix& B, const ConvexSet& C, const ConvexSet& Q,
                      const Vector& x0, const Vector& y0, const SolveOptions& options = {});

struct NearestSolution {
  SolveResult solve;
  /// Distance from the anchor to the returned solution; an upper bound on
  /// dist(anchor, S), reliable only when solve.converged.
  double distance = 0.0;
};

/// Runs the projection solver of `problem` from `anchor` (x for SFP, the
/// concatenation (x, y) for SEP; SEP always uses SepStepRule::block).
/// Projection errors are reported as non-convergence.
NearestSolution nearest_solution(const ProblemSpec& problem, const Vector& anchor,
                                 const SolveOptions& options = {});

}  // namespace aubin
