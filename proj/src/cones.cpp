#include "aubin/cones.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <queue>
#include <sstream>

#include "aubin/errors.hpp"
#include "aubin/lp.hpp"

namespace aubin {
namespace {

// Appends the columns -R, -L of one membership system to `lp` starting at
// column `first`, in rows [row0, row0 + K.dim). Returns the next free column.
std::size_t place_generators(LinearProgram& lp, const FGCone& k, std::size_t row0, std::size_t first,
                             double sign) {
  std::size_t col = first;
  for (const auto& r : k.rays()) {
    for (std::size_t i = 0; i < k.dim(); ++i) lp.eq_lhs(row0 + i, col) = sign * r[i];
    lp.lower[col] = 0.0;
    ++col;
  }
  for (const auto& l : k.lineality()) {
    for (std::size_t i = 0; i < k.dim(); ++i) lp.eq_lhs(row0 + i, col) = sign * l[i];
    ++col;
  }
  return col;
}

LinearProgram with_shape(std::size_t rows, std::size_t vars) {
  LinearProgram lp = make_free_lp(vars);
  lp.eq_lhs = Matrix(rows, vars);
  lp.eq_rhs = Vector(rows);
  return lp;
}

// Residual ‖Mᵀz − Rλ − Lμ‖∞ for multipliers starting at `first` in `sol`.
double system_residual(const PreimageCone& p, const Vector& z, const Vector& sol, std::size_t first,
                       double scale) {
  Vector r = matvec_transposed(p.map(), z);
  std::size_t col = first;
  for (const auto& g : p.target().rays()) r -= (scale * sol[col++]) * g;
  for (const auto& g : p.target().lineality()) r -= (scale * sol[col++]) * g;
  return norm_inf(r);
}

}  // namespace

double cone_distance_l1(const FGCone& k, const Vector& v) {
  if (v.dim() != k.dim()) {
    throw DimensionError("cone_membership: vector of dim " + std::to_string(v.dim()) +
                         " for cone in dim " + std::to_string(k.dim()));
  }
  if (!k.has_generators()) {
    double s = 0.0;
    for (double x : v) s += std::abs(x);
    return s;
  }
  const std::size_t d = k.dim();
  const std::size_t gens = k.rays().size() + k.lineality().size();
  LinearProgram lp = with_shape(d, gens + 2 * d);
  place_generators(lp, k, 0, 0, 1.0);
  for (std::size_t i = 0; i < d; ++i) {
    lp.eq_lhs(i, gens + i) = 1.0;
    lp.eq_lhs(i, gens + d + i) = -1.0;
    lp.lower[gens + i] = 0.0;
    lp.lower[gens + d + i] = 0.0;
    lp.objective[gens + i] = -1.0;
    lp.objective[gens + d + i] = -1.0;
  }
  lp.eq_rhs = v;
  const LpOutcome out = lp_solve(lp);
  if (out.status != LpStatus::optimal) {
    throw Error("cone_membership: residual LP returned " + std::string(to_string(out.status)));
  }
  return std::max(0.0, -*out.objective_value);
}

bool cone_membership(const FGCone& k, const Vector& v, double tol) {
  return cone_distance_l1(k, v) <= tol;
}

PreimageCone::PreimageCone(Matrix map, FGCone target) : map_(std::move(map)), target_(std::move(target)) {
  if (target_.dim() != map_.cols()) {
    std::ostringstream os;
    os << "build_preimage: cone in dim " << target_.dim() << " but map is " << shape_string(map_);
    throw DimensionError(os.str());
  }
}

PreimageCone build_preimage(const Matrix& m, const FGCone& k) { return PreimageCone(m, k); }

TrivialityResult intersection_trivial(const PreimageCone& p1, const PreimageCone& p2, double tol) {
  if (!(tol > 0.0)) throw Error("intersection_trivial: tol must be positive");
  if (p1.z_dim() != p2.z_dim()) {
    throw DimensionError("intersection_trivial: preimage variables of dim " + std::to_string(p1.z_dim()) +
                         " and " + std::to_string(p2.z_dim()));
  }
  const std::size_t l = p1.z_dim();
  const std::size_t rows1 = p1.target().dim();
  const std::size_t rows2 = p2.target().dim();
  const std::size_t first1 = l;
  const std::size_t first2 = first1 + p1.num_multipliers();
  const std::size_t vars = first2 + p2.num_multipliers();

  LinearProgram lp = with_shape(rows1 + rows2, vars);
  for (std::size_t i = 0; i < l; ++i) {
    lp.lower[i] = -1.0;
    lp.upper[i] = 1.0;
    for (std::size_t j = 0; j < rows1; ++j) lp.eq_lhs(j, i) = p1.map()(i, j);
    for (std::size_t j = 0; j < rows2; ++j) lp.eq_lhs(rows1 + j, i) = p2.map()(i, j);
  }
  place_generators(lp, p1.target(), 0, first1, -1.0);
  place_generators(lp, p2.target(), rows1, first2, -1.0);

  TrivialityResult result;
  std::optional<Vector> best;
  for (std::size_t k = 0; k < l; ++k) {
    for (double sign : {1.0, -1.0}) {
      lp.objective = Vector(vars);
      lp.objective[k] = sign;
      const LpOutcome out = lp_solve(lp, tol);
      ++result.lp_calls;
      if (out.status != LpStatus::optimal) {
        // z = 0 is always feasible and the box bounds the objective.
        throw Error("intersection_trivial: battery LP returned " + std::string(to_string(out.status)));
      }
      const double value = *out.objective_value;
      if (value > tol / 10.0 && value < 10.0 * tol) result.marginal = true;
      if (value > result.max_optimum) {
        result.max_optimum = value;
        best = out.solution;
      }
    }
  }

  if (result.max_optimum <= 10.0 * tol) return result;

  const Vector z = slice(*best, 0, l);
  const double scale = 1.0 / norm_inf(z);
  const Vector w = scale * z;
  result.trivial = false;
  result.max_violation = std::max(system_residual(p1, w, *best, first1, scale),
                                  system_residual(p2, w, *best, first2, scale));
  result.witness = w;
  return result;
}

double sphere_grid_spacing(std::size_t z_dim, int resolution) {
  const double step = std::numbers::pi / resolution;
  switch (z_dim) {
    case 1:
      return 0.0;
    case 2:
      return step;
    case 3:
      return std::hypot(step, step / 2.0);
    default:
      throw DimensionError("sphere_oracle: unsupported dimension " + std::to_string(z_dim));
  }
}

double transpose_norm_2_to_1(const Matrix& m) {
  const std::size_t c = m.cols();
  if (c > 16) return std::sqrt(static_cast<double>(c)) * m.frobenius_norm();
  double best = 0.0;
  Vector s(c);
  for (unsigned long mask = 0; mask < (1ul << c); ++mask) {
    for (std::size_t j = 0; j < c; ++j) s[j] = (mask >> j) & 1ul ? -1.0 : 1.0;
    best = std::max(best, norm2(matvec(m, s)));
  }
  return best;
}

namespace {

// A patch of the sphere in angle coordinates: an arc (2-D) or a (θ, φ)
// rectangle (3-D). Every point of it lies within `radius` of its center.
struct Cell {
  double theta = 0.0;
  double phi = 0.0;
  double half_theta = 0.0;
  double half_phi = 0.0;
  double d1 = 0.0;
  double d2 = 0.0;

  double radius() const { return std::hypot(half_theta, half_phi); }
  bool operator<(const Cell& o) const { return d1 + d2 > o.d1 + o.d2; }
};

Vector direction(std::size_t l, double theta, double phi) {
  if (l == 2) return Vector{std::cos(phi), std::sin(phi)};
  return Vector{std::sin(theta) * std::cos(phi), std::sin(theta) * std::sin(phi), std::cos(theta)};
}

}  // namespace

std::optional<Vector> sphere_oracle(const PreimageCone& p1, const PreimageCone& p2, int resolution,
                                    double tol) {
  const std::size_t l = p1.z_dim();
  if (p2.z_dim() != l) throw DimensionError("sphere_oracle: preimage dimensions differ");
  if (l == 0 || l > 3) throw DimensionError("sphere_oracle: unsupported dimension " + std::to_string(l));
  if (resolution < 16) throw Error("sphere_oracle: resolution must be at least 16");
  if (!(tol > 0.0)) throw Error("sphere_oracle: tol must be positive");

  auto dist1 = [&](const Vector& d) { return cone_distance_l1(p1.target(), matvec_transposed(p1.map(), d)); };
  auto dist2 = [&](const Vector& d) { return cone_distance_l1(p2.target(), matvec_transposed(p2.map(), d)); };

  if (l == 1) {
    for (double s : {1.0, -1.0}) {
      Vector d{s};
      if (dist1(d) <= tol && dist2(d) <= tol) return d;
    }
    return std::nullopt;
  }

  const double lip1 = transpose_norm_2_to_1(p1.map());
  const double lip2 = transpose_norm_2_to_1(p2.map());
  // Slack for the LP's own error in the computed distances.
  const double slack1 = 1e-9 * (1.0 + lip1);
  const double slack2 = 1e-9 * (1.0 + lip2);

  std::priority_queue<Cell> open;
  int evaluations = 0;
  std::optional<Vector> hit;
  // Evaluates the center; returns true when it is a hit. Cells that cannot
  // contain a common direction are dropped.
  auto visit = [&](Cell c) {
    if (++evaluations > kSphereOracleBudget) throw Error("sphere_oracle: refinement budget exhausted");
    const Vector d = direction(l, c.theta, c.phi);
    c.d1 = dist1(d);
    c.d2 = dist2(d);
    if (c.d1 <= tol && c.d2 <= tol) {
      hit = d;
      return true;
    }
    const double r = c.radius();
    if (c.d1 - lip1 * r > std::max(tol, slack1) || c.d2 - lip2 * r > std::max(tol, slack2)) return false;
    open.push(c);
    return false;
  };

  const double pi = std::numbers::pi;
  const double half_phi = pi / resolution;
  const int bands = l == 2 ? 1 : resolution;
  const double half_theta = l == 2 ? 0.0 : pi / (2.0 * resolution);
  for (int i = 0; i < bands; ++i) {
    const double theta = l == 2 ? 0.0 : (2 * i + 1) * half_theta;
    for (int j = 0; j < resolution; ++j) {
      if (visit({theta, 2.0 * j * half_phi, half_theta, half_phi})) return hit;
    }
  }
  while (!open.empty()) {
    const Cell c = open.top();
    open.pop();
    const double qp = c.half_phi / 2.0;
    if (l == 2) {
      for (double s : {-1.0, 1.0})
        if (visit({0.0, c.phi + s * qp, 0.0, qp})) return hit;
      continue;
    }
    const double qt = c.half_theta / 2.0;
    for (double st : {-1.0, 1.0})
      for (double sp : {-1.0, 1.0})
        if (visit({c.theta + st * qt, c.phi + sp * qp, qt, qp})) return hit;
  }
  return std::nullopt;
}

}  // namespace aubin
