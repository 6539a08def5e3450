#pragma once

#include <cstdint>
#include <vector>

#include "aubin/certify.hpp"
#include "aubin/solve.hpp"

namespace aubin {

/// r0·2^{-k}, k = 0..count-1.
std::vector<double> default_radii(double r0 = 0.1, int count = 6);

struct ProbeConfig {
  /// Strictly decreasing, positive.
  std::vector<double> radii = default_radii();
  int samples_per_radius = 64;
  /// Radius ρ of the neighborhood around the reference point in which the
  /// perturbed solution must fall to be counted.
  double neighborhood = 1.0;
  std::uint64_t seed = 0;
  /// Worker threads; reports do not depend on this.
  int threads = 1;
  SolveOptions solver = {0.0, SepStepRule::block, 20000, 1e-10, {}};
};

/// Throws Error unless radii are strictly decreasing and positive,
/// samples_per_radius >= 1, neighborhood > 0, threads >= 1.
void validate(const ProbeConfig& cfg);

struct ProbeSample {
  /// dist(anchor′, S(A)) as returned by nearest_solution.
  double numerator = 0.0;
  /// ‖(A′, B′) − (A, B)‖_F.
  double denominator = 0.0;
  bool converged = false;
  bool in_neighborhood = false;
};

struct RadiusStats {
  double radius = 0.0;
  double max_ratio = 0.0;
  double mean_ratio = 0.0;
  /// Samples where a solver did not converge.
  int failures = 0;
  /// Samples whose perturbed solution left the neighborhood.
  int outside = 0;
  std::vector<ProbeSample> samples;
};

/// Heuristic: it can neither prove nor refute the Aubin property.
struct ProbeReport {
  std::vector<RadiusStats> per_radius;
  double modulus_estimate = 0.0;
  /// Max ratio at the smallest radius exceeds 10x the max ratio at the
  /// largest radius.
  bool diverging = false;
};

inline constexpr double kDivergenceFactor = 10.0;

/// For each radius r draws perturbations (A′, A) (SEP: also B′, B) uniformly
/// in the Frobenius ball of radius r around the reference matrices, finds
/// anchor′ ∈ S(A′) near the reference point, and records
/// dist(anchor′, S(A)) / ‖(A′,B′) − (A,B)‖_F. Deterministic in cfg.seed;
/// each (radius, sample) pair owns its own RNG stream.
ProbeReport run_probe(const ProblemSpec& spec, const ProbeConfig& cfg);

/// Recomputes modulus_estimate and diverging from per_radius.
void summarize(ProbeReport& report);

}  // namespace aubin
