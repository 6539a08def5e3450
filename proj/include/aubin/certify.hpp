#pragma once

#include <optional>
#include <string_view>
#include <vector>

#include "aubin/cones.hpp"
#include "aubin/numerics.hpp"
#include "aubin/sets.hpp"

namespace aubin {

enum class ProblemKind { sep, sfp };

/// A split equality problem (find x ∈ C, y ∈ Q with Ax = By) or split
/// feasibility problem (find x ∈ C with Ax ∈ Q) together with the reference
/// solution at which stability is examined. For SFP, `B` and `ybar` are
/// absent. The reference point is optional only for solver-only use.
struct ProblemSpec {
  ProblemKind kind = ProblemKind::sfp;
  Matrix A;
  std::optional<Matrix> B;
  ConvexSet C;
  ConvexSet Q;
  std::optional<Vector> xbar;
  std::optional<Vector> ybar;

  bool operator==(const ProblemSpec&) const = default;
};

inline constexpr double kDefaultTol = 1e-9;

ProblemSpec make_sep(Matrix A, Matrix B, ConvexSet C, ConvexSet Q, Vector xbar, Vector ybar);
ProblemSpec make_sfp(Matrix A, ConvexSet C, ConvexSet Q, Vector xbar);

/// Shape checks only: A/B against C/Q and the reference point dimensions.
void validate_shapes(const ProblemSpec& spec);

/// Shape checks plus reference-point feasibility at tol. Throws NotASolution
/// naming the violated residual.
void validate_reference(const ProblemSpec& spec, double tol);

/// SEP: (Āᵀ)⁻¹(−N(x̄;C)) ∩ (B̄ᵀ)⁻¹(N(ȳ;Q)) = {0}.
TrivialityResult check_sep_condition(const ProblemSpec& spec, double tol = kDefaultTol);
/// SFP: (Āᵀ)⁻¹(−N(x̄;C)) ∩ N(Āx̄;Q) = {0}.
TrivialityResult check_sfp_condition(const ProblemSpec& spec, double tol = kDefaultTol);

enum class Shortcut { interior_kernel_C, interior_kernel_Q, interior_Q_image };

std::string_view to_string(Shortcut s);

/// Cheap sufficient conditions: x̄ ∈ int C with ker Āᵀ = {0}; for SEP also
/// ȳ ∈ int Q with ker B̄ᵀ = {0}; for SFP also Āx̄ ∈ int Q.
std::optional<Shortcut> shortcut(const ProblemSpec& spec, double tol = kDefaultTol);

enum class Verdict { lipschitz_like, not_lipschitz_like, inconclusive };

std::string_view to_string(Verdict v);

struct CertificateDetails {
  std::vector<long> active_C;
  std::vector<long> active_Q;
  std::size_t c_rays = 0;
  std::size_t c_lineality = 0;
  std::size_t q_rays = 0;
  std::size_t q_lineality = 0;
  int lp_calls = 0;
  double max_optimum = 0.0;
  double max_violation = 0.0;
  double solution_norm_inf = 0.0;
  bool condition_evaluated = false;
};

struct Certificate {
  bool condition_holds = false;
  Verdict verdict = Verdict::inconclusive;
  std::optional<Vector> witness;
  std::optional<Shortcut> shortcut;
  bool marginal = false;
  CertificateDetails details;
};

struct CertifyOptions {
  double tol = kDefaultTol;
  /// Run the LP battery even when a shortcut fires and require agreement.
  bool debug_both = false;
};

/// Three-way verdict. The condition (or a shortcut) licenses
/// lipschitz_like; failure at a nonzero reference point licenses
/// not_lipschitz_like; failure at the zero point is inconclusive.
Certificate certify(const ProblemSpec& spec, const CertifyOptions& options = {});

/// The SEP instance with B = I_m and ȳ = Āx̄.
ProblemSpec sfp_as_sep(const ProblemSpec& spec);

}  // namespace aubin
