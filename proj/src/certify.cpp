#include "aubin/certify.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "aubin/errors.hpp"

namespace aubin {
namespace {

void require(bool ok, const std::string& what) {
  if (!ok) throw DimensionError(what);
}

const Vector& xbar_of(const ProblemSpec& spec) {
  if (!spec.xbar) throw SpecError("problem has no reference point xbar");
  return *spec.xbar;
}

const Vector& ybar_of(const ProblemSpec& spec) {
  if (!spec.ybar) throw SpecError("SEP problem has no reference point ybar");
  return *spec.ybar;
}

FGCone normal_cone_or_throw(const ConvexSet& s, const Vector& x, double tol, const char* name) {
  try {
    return normal_cone(s, x, tol);
  } catch (const NotInSet& e) {
    throw NotASolution(std::string("not a solution: reference point outside ") + name + " (" + e.what() + ")");
  }
}

}  // namespace

ProblemSpec make_sep(Matrix A, Matrix B, ConvexSet C, ConvexSet Q, Vector xbar, Vector ybar) {
  ProblemSpec spec{ProblemKind::sep, std::move(A),    std::move(B),    std::move(C),
                   std::move(Q),     std::move(xbar), std::move(ybar)};
  validate_shapes(spec);
  return spec;
}

ProblemSpec make_sfp(Matrix A, ConvexSet C, ConvexSet Q, Vector xbar) {
  ProblemSpec spec{ProblemKind::sfp, std::move(A), std::nullopt, std::move(C), std::move(Q), std::move(xbar),
                   std::nullopt};
  validate_shapes(spec);
  return spec;
}

void validate_shapes(const ProblemSpec& spec) {
  const std::size_t n = spec.C.dim();
  const std::size_t m = spec.Q.dim();
  require(spec.A.cols() == n && spec.A.rows() > 0,
          "A is " + shape_string(spec.A) + " but C lives in dimension " + std::to_string(n));
  if (spec.kind == ProblemKind::sep) {
    require(spec.B.has_value(), "SEP problem needs a matrix B");
    require(spec.B->cols() == m, "B is " + shape_string(*spec.B) + " but Q lives in dimension " + std::to_string(m));
    require(spec.B->rows() == spec.A.rows(),
            "A is " + shape_string(spec.A) + " but B is " + shape_string(*spec.B) + "; row counts must match");
    if (spec.ybar) require(spec.ybar->dim() == m, "ybar has dim " + std::to_string(spec.ybar->dim()) + ", expected " + std::to_string(m));
  } else {
    require(!spec.B.has_value() && !spec.ybar.has_value(), "SFP problem must not carry B or ybar");
    require(spec.A.rows() == m, "A is " + shape_string(spec.A) + " but Q lives in dimension " + std::to_string(m));
  }
  if (spec.xbar) require(spec.xbar->dim() == n, "xbar has dim " + std::to_string(spec.xbar->dim()) + ", expected " + std::to_string(n));
  if (spec.kind == ProblemKind::sep && spec.xbar.has_value() != spec.ybar.has_value()) {
    throw SpecError("SEP reference point needs both xbar and ybar");
  }
}

void validate_reference(const ProblemSpec& spec, double tol) {
  validate_shapes(spec);
  const Vector& x = xbar_of(spec);
  if (!contains(spec.C, x, tol)) {
    std::ostringstream os;
    os << "not a solution: xbar is outside C (distance " << distance_to(spec.C, x) << ")";
    throw NotASolution(os.str());
  }
  const Vector ax = matvec(spec.A, x);
  if (spec.kind == ProblemKind::sfp) {
    if (!contains(spec.Q, ax, tol)) {
      std::ostringstream os;
      os << "not a solution: A·xbar is outside Q (distance " << distance_to(spec.Q, ax) << ")";
      throw NotASolution(os.str());
    }
    return;
  }
  const Vector& y = ybar_of(spec);
  if (!contains(spec.Q, y, tol)) {
    std::ostringstream os;
    os << "not a solution: ybar is outside Q (distance " << distance_to(spec.Q, y) << ")";
    throw NotASolution(os.str());
  }
  const Vector by = matvec(*spec.B, y);
  const double gap = norm_inf(ax - by);
  if (gap > tol * std::max({1.0, norm_inf(ax), norm_inf(by)})) {
    std::ostringstream os;
    os << "not a solution: ‖A·xbar − B·ybar‖∞ = " << gap;
    throw NotASolution(os.str());
  }
}

TrivialityResult check_sep_condition(const ProblemSpec& spec, double tol) {
  if (spec.kind != ProblemKind::sep) throw SpecError("check_sep_condition needs an SEP problem");
  validate_reference(spec, tol);
  const FGCone nc = normal_cone_or_throw(spec.C, *spec.xbar, tol, "C");
  const FGCone nq = normal_cone_or_throw(spec.Q, *spec.ybar, tol, "Q");
  return intersection_trivial(build_preimage(spec.A, negate(nc)), build_preimage(*spec.B, nq), tol);
}

TrivialityResult check_sfp_condition(const ProblemSpec& spec, double tol) {
  if (spec.kind != ProblemKind::sfp) throw SpecError("check_sfp_condition needs an SFP problem");
  validate_reference(spec, tol);
  const FGCone nc = normal_cone_or_throw(spec.C, *spec.xbar, tol, "C");
  const FGCone nq = normal_cone_or_throw(spec.Q, matvec(spec.A, *spec.xbar), tol, "Q");
  return intersection_trivial(build_preimage(spec.A, negate(nc)),
                              build_preimage(Matrix::identity(spec.Q.dim()), nq), tol);
}

std::string_view to_string(Shortcut s) {
  switch (s) {
    case Shortcut::interior_kernel_C:
      return "interior_kernel_C";
    case Shortcut::interior_kernel_Q:
      return "interior_kernel_Q";
    case Shortcut::interior_Q_image:
      return "interior_Q_image";
  }
  return "?";
}

std::string_view to_string(Verdict v) {
  switch (v) {
    case Verdict::lipschitz_like:
      return "lipschitz_like";
    case Verdict::not_lipschitz_like:
      return "not_lipschitz_like";
    case Verdict::inconclusive:
      return "inconclusive";
  }
  return "?";
}

std::optional<Shortcut> shortcut(const ProblemSpec& spec, double tol) {
  const Vector& x = xbar_of(spec);
  if (is_interior(spec.C, x, tol) && kernel_is_trivial(transpose(spec.A), tol)) {
    return Shortcut::interior_kernel_C;
  }
  if (spec.kind == ProblemKind::sep) {
    if (is_interior(spec.Q, ybar_of(spec), tol) && kernel_is_trivial(transpose(*spec.B), tol)) {
      return Shortcut::interior_kernel_Q;
    }
  } else if (is_interior(spec.Q, matvec(spec.A, x), tol)) {
    return Shortcut::interior_Q_image;
  }
  return std::nullopt;
}

Certificate certify(const ProblemSpec& spec, const CertifyOptions& options) {
  const double tol = options.tol;
  validate_reference(spec, tol);
  const Vector& x = *spec.xbar;
  const Vector q_point = spec.kind == ProblemKind::sep ? *spec.ybar : matvec(spec.A, x);

  Certificate cert;
  CertificateDetails& d = cert.details;
  const FGCone nc = normal_cone_or_throw(spec.C, x, tol, "C");
  const FGCone nq = normal_cone_or_throw(spec.Q, q_point, tol, "Q");
  d.active_C = active_constraints(spec.C, x, tol);
  d.active_Q = active_constraints(spec.Q, q_point, tol);
  d.c_rays = nc.rays().size();
  d.c_lineality = nc.lineality().size();
  d.q_rays = nq.rays().size();
  d.q_lineality = nq.lineality().size();
  d.solution_norm_inf = spec.kind == ProblemKind::sep ? std::max(norm_inf(x), norm_inf(*spec.ybar)) : norm_inf(x);

  cert.shortcut = shortcut(spec, tol);
  std::optional<TrivialityResult> condition;
  if (!cert.shortcut || options.debug_both) {
    condition = spec.kind == ProblemKind::sep ? check_sep_condition(spec, tol) : check_sfp_condition(spec, tol);
    d.condition_evaluated = true;
    d.lp_calls = condition->lp_calls;
    d.max_optimum = condition->max_optimum;
    d.max_violation = condition->max_violation;
    cert.marginal = condition->marginal;
    if (cert.shortcut && !condition->trivial) {
      throw Error("shortcut " + std::string(to_string(*cert.shortcut)) +
                  " fired but the LP battery found a nonzero witness");
    }
  }

  cert.condition_holds = cert.shortcut.has_value() || condition->trivial;
  if (cert.condition_holds) {
    cert.verdict = Verdict::lipschitz_like;
    return cert;
  }
  cert.witness = condition->witness;
  const double norm = d.solution_norm_inf;
  if (norm > tol / 10.0 && norm <= 10.0 * tol) cert.marginal = true;
  cert.verdict = norm > tol ? Verdict::not_lipschitz_like : Verdict::inconclusive;
  return cert;
}

ProblemSpec sfp_as_sep(const ProblemSpec& spec) {
  if (spec.kind != ProblemKind::sfp) throw SpecError("sfp_as_sep needs an SFP problem");
  const std::size_t m = spec.Q.dim();
  std::optional<Vector> ybar;
  if (spec.xbar) ybar = matvec(spec.A, *spec.xbar);
  ProblemSpec sep{ProblemKind::sep, spec.A, Matrix::identity(m), spec.C, spec.Q, spec.xbar, std::move(ybar)};
  validate_shapes(sep);
  return sep;
}

}  // namespace aubin
