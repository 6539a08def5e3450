#include "aubin/sets.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "aubin/errors.hpp"

namespace aubin {
namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

void require_dim(const ConvexSet& s, const Vector& x, const char* op) {
  if (x.dim() != s.dim()) {
    std::ostringstream os;
    os << op << ": point of dim " << x.dim() << " for " << s.kind_name() << " in dim " << s.dim();
    throw DimensionError(os.str());
  }
}

bool is_active_bound(double slack, double bound, double tol) {
  return slack <= tol * (1.0 + std::abs(bound));
}

// Largest distance from x to a violated halfspace of the polyhedron.
double halfspace_violation(const HPolyhedron& p, const Vector& x) {
  double worst = 0.0;
  for (std::size_t i = 0; i < p.G.rows(); ++i) {
    const Vector gi = p.G.row_vector(i);
    const double n = norm2(gi);
    if (n == 0.0) continue;
    worst = std::max(worst, (dot(gi, x) - p.g[i]) / n);
  }
  return worst;
}

Vector dykstra(const HPolyhedron& p, const Vector& x0) {
  const std::size_t rows = p.G.rows();
  std::vector<Vector> normals;
  std::vector<double> sq_norms;
  for (std::size_t i = 0; i < rows; ++i) {
    normals.push_back(p.G.row_vector(i));
    sq_norms.push_back(dot(normals.back(), normals.back()));
  }
  std::vector<Vector> increments(rows, Vector(x0.dim()));
  Vector x = x0;
  double change = 0.0;
  double violation = 0.0;
  for (int sweep = 0; sweep < kMaxDykstraSweeps; ++sweep) {
    change = 0.0;
    for (std::size_t i = 0; i < rows; ++i) {
      if (sq_norms[i] == 0.0) continue;
      Vector y = x + increments[i];
      const double excess = dot(normals[i], y) - p.g[i];
      Vector next = excess > 0.0 ? y - (excess / sq_norms[i]) * normals[i] : y;
      increments[i] = y - next;
      change += distance(next, x);
      x = std::move(next);
    }
    violation = halfspace_violation(p, x);
    if (violation <= kDykstraResidual && change <= kDykstraResidual * (1.0 + norm2(x))) {
      return x;
    }
  }
  std::ostringstream os;
  os << "Dykstra projection did not converge in " << kMaxDykstraSweeps
     << " sweeps (violation " << violation << ", last sweep change " << change << ")";
  throw ProjectionError(os.str(), x.std(), std::max(violation, change));
}

}  // namespace

ConvexSet ConvexSet::box(std::vector<double> lower, std::vector<double> upper) {
  if (lower.size() != upper.size() || lower.empty()) {
    throw DimensionError("box: bound arrays must be nonempty and of equal length");
  }
  for (std::size_t i = 0; i < lower.size(); ++i) {
    if (std::isnan(lower[i]) || std::isnan(upper[i]) || lower[i] == kInf || upper[i] == -kInf ||
        lower[i] > upper[i]) {
      std::ostringstream os;
      os << "box: invalid bounds [" << lower[i] << ", " << upper[i] << "] at coordinate " << i;
      throw Error(os.str());
    }
  }
  const std::size_t dim = lower.size();
  return ConvexSet(Box{std::move(lower), std::move(upper)}, dim);
}

ConvexSet ConvexSet::polyhedron(Matrix G, Vector g) {
  if (G.rows() != g.dim() || G.cols() == 0) {
    throw DimensionError("polyhedron: G is " + shape_string(G) + " but g has dim " +
                         std::to_string(g.dim()));
  }
  // Nonemptiness: find x, s >= 0 with Gx + s = g.
  const std::size_t n = G.cols();
  const std::size_t r = G.rows();
  LinearProgram lp = make_free_lp(n + r);
  lp.eq_lhs = Matrix(r, n + r);
  for (std::size_t i = 0; i < r; ++i) {
    for (std::size_t j = 0; j < n; ++j) lp.eq_lhs(i, j) = G(i, j);
    lp.eq_lhs(i, n + i) = 1.0;
    lp.lower[n + i] = 0.0;
  }
  lp.eq_rhs = g;
  if (lp_solve(lp).status == LpStatus::infeasible) throw Error("polyhedron: {x : Gx <= g} is empty");
  return ConvexSet(HPolyhedron{std::move(G), std::move(g)}, n);
}

ConvexSet ConvexSet::singleton(Vector point) {
  if (point.empty()) throw DimensionError("singleton: empty point");
  const std::size_t dim = point.dim();
  return ConvexSet(Singleton{std::move(point)}, dim);
}

ConvexSet ConvexSet::ball(Vector center, double radius) {
  if (center.empty()) throw DimensionError("ball: empty center");
  if (!(radius > 0.0) || !std::isfinite(radius)) throw Error("ball: radius must be positive and finite");
  const std::size_t dim = center.dim();
  return ConvexSet(Ball{std::move(center), radius}, dim);
}

ConvexSet ConvexSet::whole_space(std::size_t dim) {
  if (dim == 0) throw DimensionError("whole_space: dim must be positive");
  return ConvexSet(WholeSpace{dim}, dim);
}

ConvexSet ConvexSet::nonnegative_orthant(std::size_t dim) {
  return box(std::vector<double>(dim, 0.0), std::vector<double>(dim, kInf));
}

ConvexSet ConvexSet::nonpositive_orthant(std::size_t dim) {
  return box(std::vector<double>(dim, -kInf), std::vector<double>(dim, 0.0));
}

std::string_view ConvexSet::kind_name() const {
  return std::visit(overloaded{[](const Box&) { return "box"; },
                               [](const HPolyhedron&) { return "polyhedron"; },
                               [](const Singleton&) { return "singleton"; },
                               [](const Ball&) { return "ball"; },
                               [](const WholeSpace&) { return "whole_space"; }},
                    variant_);
}

FGCone::FGCone(std::size_t dim, std::vector<Vector> rays, std::vector<Vector> lineality) : dim_(dim) {
  auto add = [dim](std::vector<Vector>& dst, std::vector<Vector>& src) {
    for (auto& v : src) {
      if (v.dim() != dim) throw DimensionError("cone generator has wrong dimension");
      const double n = norm2(v);
      if (n == 0.0) throw Error("cone generator must be nonzero");
      dst.push_back((1.0 / n) * std::move(v));
    }
  };
  add(rays_, rays);
  add(lineality_, lineality);
}

FGCone negate(const FGCone& k) {
  std::vector<Vector> rays;
  for (const auto& r : k.rays()) rays.push_back(-r);
  return FGCone(k.dim(), std::move(rays), k.lineality());
}

double distance_to(const ConvexSet& s, const Vector& x) {
  require_dim(s, x, "distance_to");
  return std::visit(
      overloaded{[&](const Box& b) {
                   double sq = 0.0;
                   for (std::size_t i = 0; i < x.dim(); ++i) {
                     const double d = std::max({0.0, b.lower[i] - x[i], x[i] - b.upper[i]});
                     sq += d * d;
                   }
                   return std::sqrt(sq);
                 },
                 [&](const HPolyhedron&) { return distance(x, project(s, x)); },
                 [&](const Singleton& p) { return distance(x, p.point); },
                 [&](const Ball& b) { return std::max(0.0, distance(x, b.center) - b.radius); },
                 [](const WholeSpace&) { return 0.0; }},
      s.variant());
}

bool contains(const ConvexSet& s, const Vector& x, double tol) {
  require_dim(s, x, "contains");
  if (const auto* p = std::get_if<HPolyhedron>(&s.variant())) return halfspace_violation(*p, x) <= tol;
  return distance_to(s, x) <= tol;
}

bool is_interior(const ConvexSet& s, const Vector& x, double tol) {
  require_dim(s, x, "is_interior");
  return std::visit(
      overloaded{[&](const Box& b) {
                   for (std::size_t i = 0; i < x.dim(); ++i) {
                     if (x[i] - b.lower[i] < tol || b.upper[i] - x[i] < tol) return false;
                   }
                   return true;
                 },
                 [&](const HPolyhedron& p) {
                   for (std::size_t i = 0; i < p.G.rows(); ++i) {
                     const Vector gi = p.G.row_vector(i);
                     const double n = norm2(gi);
                     if (n == 0.0) continue;
                     if (p.g[i] - dot(gi, x) < tol * n) return false;
                   }
                   return true;
                 },
                 [](const Singleton&) { return false; },
                 [&](const Ball& b) { return distance(x, b.center) + tol <= b.radius; },
                 [](const WholeSpace&) { return true; }},
      s.variant());
}

Vector project(const ConvexSet& s, const Vector& x) {
  require_dim(s, x, "project");
  return std::visit(
      overloaded{[&](const Box& b) {
                   Vector y = x;
                   for (std::size_t i = 0; i < y.dim(); ++i) y[i] = std::clamp(y[i], b.lower[i], b.upper[i]);
                   return y;
                 },
                 [&](const HPolyhedron& p) {
                   if (halfspace_violation(p, x) <= kDykstraResidual) return x;
                   return dykstra(p, x);
                 },
                 [](const Singleton& p) { return p.point; },
                 [&](const Ball& b) {
                   const Vector d = x - b.center;
                   const double n = norm2(d);
                   if (n <= b.radius) return x;
                   return b.center + (b.radius / n) * d;
                 },
                 [&](const WholeSpace&) { return x; }},
      s.variant());
}

FGCone normal_cone(const ConvexSet& s, const Vector& x, double tol) {
  require_dim(s, x, "normal_cone");
  if (!contains(s, x, tol)) {
    std::ostringstream os;
    os << "normal_cone: point not in set (" << s.kind_name() << ", distance "
       << distance_to(s, x) << ")";
    throw NotInSet(os.str());
  }
  const std::size_t n = s.dim();
  std::vector<Vector> rays;
  std::vector<Vector> lineality;
  std::visit(overloaded{[&](const Box& b) {
                          for (std::size_t i = 0; i < n; ++i) {
                            if (b.lower[i] == b.upper[i]) {
                              lineality.push_back(Vector::unit(n, i));
                              continue;
                            }
                            if (std::isfinite(b.upper[i]) && is_active_bound(b.upper[i] - x[i], b.upper[i], tol))
                              rays.push_back(Vector::unit(n, i));
                            if (std::isfinite(b.lower[i]) && is_active_bound(x[i] - b.lower[i], b.lower[i], tol))
                              rays.push_back(-Vector::unit(n, i));
                          }
                        },
                        [&](const HPolyhedron& p) {
                          for (std::size_t i = 0; i < p.G.rows(); ++i) {
                            Vector gi = p.G.row_vector(i);
                            if (norm2(gi) == 0.0) continue;
                            if (is_active_bound(p.g[i] - dot(gi, x), p.g[i], tol)) rays.push_back(std::move(gi));
                          }
                        },
                        [&](const Singleton&) {
                          for (std::size_t i = 0; i < n; ++i) lineality.push_back(Vector::unit(n, i));
                        },
                        [&](const Ball& b) {
                          Vector d = x - b.center;
                          if (norm2(d) >= b.radius - tol && norm2(d) > 0.0) rays.push_back(std::move(d));
                        },
                        [](const WholeSpace&) {}},
             s.variant());
  return FGCone(n, std::move(rays), std::move(lineality));
}

std::vector<long> active_constraints(const ConvexSet& s, const Vector& x, double tol) {
  require_dim(s, x, "active_constraints");
  std::vector<long> out;
  if (const auto* b = std::get_if<Box>(&s.variant())) {
    for (std::size_t i = 0; i < s.dim(); ++i) {
      const long idx = static_cast<long>(i) + 1;
      if (std::isfinite(b->upper[i]) && is_active_bound(b->upper[i] - x[i], b->upper[i], tol)) out.push_back(idx);
      if (std::isfinite(b->lower[i]) && is_active_bound(x[i] - b->lower[i], b->lower[i], tol)) out.push_back(-idx);
    }
  } else if (const auto* p = std::get_if<HPolyhedron>(&s.variant())) {
    for (std::size_t i = 0; i < p->G.rows(); ++i) {
      if (is_active_bound(p->g[i] - dot(p->G.row_vector(i), x), p->g[i], tol)) out.push_back(static_cast<long>(i));
    }
  }
  return out;
}

}  // namespace aubin
