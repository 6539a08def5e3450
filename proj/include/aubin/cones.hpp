#pragma once

#include <optional>

#include "aubin/numerics.hpp"
#include "aubin/sets.hpp"

namespace aubin {

/// True iff dist₁(v, K) <= tol, decided by one LP that minimizes the ℓ₁
/// residual of Σλᵢrᵢ + Σμⱼlⱼ = v over λ >= 0, μ free.
bool cone_membership(const FGCone& k, const Vector& v, double tol);

/// ℓ₁ distance from v to K (the optimum of the LP behind cone_membership).
double cone_distance_l1(const FGCone& k, const Vector& v);

/// The implicit cone {z : Mᵀz ∈ K}. With M = identity it is K itself.
class PreimageCone {
 public:
  PreimageCone(Matrix map, FGCone target);

  const Matrix& map() const { return map_; }
  const FGCone& target() const { return target_; }
  std::size_t z_dim() const { return map_.rows(); }

  /// Number of (z, λ, μ) variables in the feasibility system.
  std::size_t num_multipliers() const {
    return target_.rays().size() + target_.lineality().size();
  }

 private:
  Matrix map_;
  FGCone target_;
};

/// Throws DimensionError unless K.dim = M.cols.
PreimageCone build_preimage(const Matrix& m, const FGCone& k);

struct TrivialityResult {
  bool trivial = true;
  /// Nonzero point of the intersection scaled to ‖z‖∞ = 1; present iff !trivial.
  std::optional<Vector> witness;
  int lp_calls = 0;
  /// Largest residual of the two membership systems at the witness.
  double max_violation = 0.0;
  /// Largest optimum over the battery.
  double max_optimum = 0.0;
  /// Some battery optimum fell in (tol/10, 10·tol).
  bool marginal = false;
};

/// Decides P1 ∩ P2 = {0} with a battery of 2l LPs: for every coordinate k
/// and sign s maximize s·z_k over both membership systems and the box
/// -1 <= z <= 1. Optima at most 10·tol count as zero (those above tol/10
/// flag the result marginal); LP stalls propagate as LpStalled.
TrivialityResult intersection_trivial(const PreimageCone& p1, const PreimageCone& p2, double tol);

/// Largest angular gap between a unit vector and the center of its cell in
/// the initial sphere_oracle grid at `resolution`.
double sphere_grid_spacing(std::size_t z_dim, int resolution);

/// Upper bound on max ‖Mᵀu‖₁ over unit u: exact (max over sign vectors s
/// of ‖Ms‖₂) for up to 16 columns.
double transpose_norm_2_to_1(const Matrix& m);

inline constexpr int kSphereOracleBudget = 200000;

/// Brute-force check of the same question for z_dim <= 3, independent of
/// the LP battery: scans the unit sphere (the directions ±1 in 1-D,
/// `resolution` arcs in 2-D, resolution x resolution (θ, φ) cells in 3-D)
/// and returns a direction d with dist₁(Mᵢᵀd, Kᵢ) <= tol for both systems,
/// or none. Cells that cannot hold such a point are discarded using the
/// Lipschitz bound dist₁(Mᵢᵀd, Kᵢ) >= dist₁(Mᵢᵀc, Kᵢ) − ‖Mᵢᵀ‖₂→₁·‖d − c‖;
/// the rest are split, best first. So `none` proves the intersection is
/// {0} (up to LP accuracy) even when the cones pass closer than the grid
/// spacing. Throws Error after kSphereOracleBudget cell evaluations.
std::optional<Vector> sphere_oracle(const PreimageCone& p1, const PreimageCone& p2, int resolution,
                                    double tol);

}  // namespace aubin
