#include "aubin/solve.hpp"

#include <cmath>
#include <sstream>

#include "aubin/errors.hpp"

namespace aubin {
namespace {

// Residual floor: a change below this over kFloorWindow iterations stops
// the solver.
constexpr double kFloorChange = 1e-14;
constexpr int kFloorWindow = 100;

double resolve_step(double requested, double sq_norm, double fallback) {
  const double limit = sq_norm > 0.0 ? 2.0 / sq_norm : kInf;
  const double step = requested == 0.0 ? fallback : requested;
  if (!(step > 0.0) || !(step < limit)) {
    std::ostringstream os;
    os << "step " << step << " outside (0, " << limit << ")";
    throw Error(os.str());
  }
  return step;
}

class FloorDetector {
 public:
  bool update(int k, double residual) {
    if (k % kFloorWindow != 0) return false;
    const bool flat = k > 0 && std::abs(anchor_ - residual) < kFloorChange;
    anchor_ = residual;
    return flat;
  }

 private:
  double anchor_ = 0.0;
};

}  // namespace

double default_sfp_step(const Matrix& A) {
  const double a = operator_norm(A);
  return a > 0.0 ? 1.0 / (a * a) : 1.0;
}

double default_sep_step(const Matrix& A, const Matrix& B) {
  const double a = operator_norm(A);
  const double b = operator_norm(B);
  const double s = a * a + b * b;
  return s > 0.0 ? 1.0 / s : 1.0;
}

SolveResult solve_sfp(const Matrix& A, const ConvexSet& C, const ConvexSet& Q, const Vector& x0,
                      const SolveOptions& options) {
  if (A.cols() != C.dim() || A.rows() != Q.dim() || x0.dim() != C.dim()) {
    throw DimensionError("solve_sfp: A is " + shape_string(A) + ", C in dim " + std::to_string(C.dim()) +
                         ", Q in dim " + std::to_string(Q.dim()) + ", start in dim " + std::to_string(x0.dim()));
  }
  const double a = operator_norm(A);
  const double step = resolve_step(options.step, a * a, default_sfp_step(A));

  SolveResult out{x0, std::nullopt, 0.0, 0, false, false};
  Vector& x = out.x;
  FloorDetector floor;
  for (int k = 0;; ++k) {
    const Vector ax = matvec(A, x);
    const Vector gap = ax - project(Q, ax);
    out.residual = norm2(gap);
    out.iterations = k;
    if (out.residual <= options.tol && contains(C, x, options.tol)) {
      out.converged = true;
      return out;
    }
    if (k == options.max_iters) return out;
    if (floor.update(k, out.residual)) {
      out.stalled = true;
      return out;
    }
    if (options.observer) options.observer(k, x, nullptr);
    x = project(C, x - step * matvec_transposed(A, gap));
  }
}

SolveResult solve_sep(const Matrix& A, const Matrix& B, const ConvexSet& C, const ConvexSet& Q,
                      const Vector& x0, const Vector& y0, const SolveOptions& options) {
  if (A.cols() != C.dim() || B.cols() != Q.dim() || A.rows() != B.rows() || x0.dim() != C.dim() ||
      y0.dim() != Q.dim()) {
    throw DimensionError("solve_sep: A is " + shape_string(A) + ", B is " + shape_string(B) +
                         ", start dims " + std::to_string(x0.dim()) + "/" + std::to_string(y0.dim()));
  }
  const double a = operator_norm(A);
  const double b = operator_norm(B);
  double step_x = 0.0;
  double step_y = 0.0;
  if (options.sep_rule == SepStepRule::block) {
    step_x = a > 0.0 ? 0.5 / (a * a) : 1.0;
    step_y = b > 0.0 ? 0.5 / (b * b) : 1.0;
  } else {
    step_x = step_y = resolve_step(options.step, a * a + b * b, default_sep_step(A, B));
  }

  SolveResult out{x0, y0, 0.0, 0, false, false};
  Vector& x = out.x;
  Vector& y = *out.y;
  FloorDetector floor;
  for (int k = 0;; ++k) {
    const Vector r = matvec(A, x) - matvec(B, y);
    out.residual = norm2(r);
    out.iterations = k;
    if (out.residual <= options.tol && contains(C, x, options.tol) && contains(Q, y, options.tol)) {
      out.converged = true;
      return out;
    }
    if (k == options.max_iters) return out;
    if (floor.update(k, out.residual)) {
      out.stalled = true;
      return out;
    }
    if (options.observer) options.observer(k, x, &y);
    Vector x_next = project(C, x - step_x * matvec_transposed(A, r));
    y = project(Q, y + step_y * matvec_transposed(B, r));
    x = std::move(x_next);
  }
}

NearestSolution nearest_solution(const ProblemSpec& problem, const Vector& anchor, const SolveOptions& options) {
  validate_shapes(problem);
  const std::size_t n = problem.C.dim();
  NearestSolution out;
  try {
    if (problem.kind == ProblemKind::sfp) {
      if (anchor.dim() != n) throw DimensionError("nearest_solution: anchor dimension mismatch");
      out.solve = solve_sfp(problem.A, problem.C, problem.Q, anchor, options);
      out.distance = distance(out.solve.x, anchor);
    } else {
      const std::size_t m = problem.Q.dim();
      if (anchor.dim() != n + m) throw DimensionError("nearest_solution: anchor dimension mismatch");
      SolveOptions block = options;
      block.sep_rule = SepStepRule::block;
      out.solve = solve_sep(problem.A, *problem.B, problem.C, problem.Q, slice(anchor, 0, n), slice(anchor, n, m),
                            block);
      out.distance = distance(concat(out.solve.x, *out.solve.y), anchor);
    }
  } catch (const ProjectionError& e) {
    out.solve = SolveResult{anchor, std::nullopt, e.residual(), 0, false, false};
    out.distance = kInf;
  }
  return out;
}

}  // namespace aubin
