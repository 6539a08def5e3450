#pragma once

#include <string_view>
#include <variant>
#include <vector>

#include "aubin/lp.hpp"
#include "aubin/numerics.hpp"

namespace aubin {

/// {x : lower <= x <= upper}; bounds may be ±kInf, so orthants are boxes.
struct Box {
  std::vector<double> lower;
  std::vector<double> upper;
  bool operator==(const Box&) const = default;
};

/// {x : G x <= g}.
struct HPolyhedron {
  Matrix G;
  Vector g;
  bool operator==(const HPolyhedron&) const = default;
};

struct Singleton {
  Vector point;
  bool operator==(const Singleton&) const = default;
};

struct Ball {
  Vector center;
  double radius = 1.0;
  bool operator==(const Ball&) const = default;
};

struct WholeSpace {
  std::size_t dim = 0;
  bool operator==(const WholeSpace&) const = default;
};

/// Nonempty closed convex set in ℝⁿ from a small structured vocabulary whose
/// normal cones are finitely generated everywhere. Construction validates
/// the variant's invariants; an empty polyhedron is rejected via an LP.
class ConvexSet {
 public:
  using Variant = std::variant<Box, HPolyhedron, Singleton, Ball, WholeSpace>;

  static ConvexSet box(std::vector<double> lower, std::vector<double> upper);
  static ConvexSet polyhedron(Matrix G, Vector g);
  static ConvexSet singleton(Vector point);
  static ConvexSet ball(Vector center, double radius);
  static ConvexSet whole_space(std::size_t dim);
  /// ℝⁿ₊ and ℝⁿ₋ as boxes.
  static ConvexSet nonnegative_orthant(std::size_t dim);
  static ConvexSet nonpositive_orthant(std::size_t dim);

  std::size_t dim() const { return dim_; }
  const Variant& variant() const { return variant_; }
  std::string_view kind_name() const;

  bool operator==(const ConvexSet&) const = default;

 private:
  ConvexSet(Variant v, std::size_t dim) : variant_(std::move(v)), dim_(dim) {}

  Variant variant_;
  std::size_t dim_;
};

/// Finitely generated cone {Σ λᵢ rᵢ + Σ μⱼ lⱼ : λ >= 0, μ free}. Generators
/// are stored with unit Euclidean norm; no generators means the cone {0}.
class FGCone {
 public:
  explicit FGCone(std::size_t dim) : dim_(dim) {}
  FGCone(std::size_t dim, std::vector<Vector> rays, std::vector<Vector> lineality);

  static FGCone trivial(std::size_t dim) { return FGCone(dim); }

  std::size_t dim() const { return dim_; }
  const std::vector<Vector>& rays() const { return rays_; }
  const std::vector<Vector>& lineality() const { return lineality_; }
  bool has_generators() const { return !rays_.empty() || !lineality_.empty(); }

 private:
  std::size_t dim_;
  std::vector<Vector> rays_;
  std::vector<Vector> lineality_;
};

/// Rays negated, lineality kept.
FGCone negate(const FGCone& k);

/// Distance-based membership: Box/Ball/Singleton use the exact Euclidean
/// distance; HPolyhedron uses the largest distance to a violated halfspace.
bool contains(const ConvexSet& s, const Vector& x, double tol);

/// Euclidean distance from x to s for the closed-form variants; for an
/// HPolyhedron the distance to the Dykstra projection.
double distance_to(const ConvexSet& s, const Vector& x);

/// True iff the ball B(x, tol) lies in s.
bool is_interior(const ConvexSet& s, const Vector& x, double tol);

inline constexpr int kMaxDykstraSweeps = 10000;
inline constexpr double kDykstraResidual = 1e-10;

/// Euclidean projection. Closed form for every variant except HPolyhedron,
/// which runs Dykstra's method over its halfspaces and throws
/// ProjectionError on non-convergence.
Vector project(const ConvexSet& s, const Vector& x);

/// Convex-analysis normal cone N(x; s). Constraint i of a polyhedron (or a
/// box bound) is active when its slack is at most tol * (1 + |bound|).
/// Throws NotInSet unless contains(s, x, tol).
FGCone normal_cone(const ConvexSet& s, const Vector& x, double tol);

/// Indices of active constraints at x (box: signed coordinate index + 1,
/// negative for lower bounds; polyhedron: row index). For diagnostics.
std::vector<long> active_constraints(const ConvexSet& s, const Vector& x, double tol);

}  // namespace aubin
