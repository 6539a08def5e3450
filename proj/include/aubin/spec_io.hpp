#pragma once

#include <json.hpp>
#include <optional>
#include <string>

#include "aubin/certify.hpp"
#include "aubin/probe.hpp"
#include "aubin/solve.hpp"

namespace aubin {

inline constexpr const char* kToolVersion = "0.1.0";

struct ReadOptions {
  double tol = kDefaultTol;
  /// Require xbar (and ybar for SEP) and check that they form a solution.
  bool require_reference = true;
};

/// Problem-spec JSON:
///   {"kind": "SEP"|"SFP", "A": [[..],..], "B": [[..],..],
///    "C": <set>, "Q": <set>, "xbar": [..], "ybar": [..], "comment": ".."}
/// with sets
///   {"type":"box","lower":[..],"upper":[..]}  (bounds may be "inf"/"-inf")
///   {"type":"polyhedron","G":[[..],..],"g":[..]}
///   {"type":"singleton","point":[..]}
///   {"type":"ball","center":[..],"radius":r}
///   {"type":"whole_space","dim":n}
/// Errors are SpecError naming the offending field, or NotASolution.
ProblemSpec parse_spec(const nlohmann::json& doc, const ReadOptions& options = {});
ProblemSpec parse_spec_text(const std::string& text, const ReadOptions& options = {});
ProblemSpec parse_spec_file(const std::string& path, const ReadOptions& options = {});

nlohmann::json to_json(const ConvexSet& s);
/// Canonical form: fixed key set, no comment.
nlohmann::json to_json(const ProblemSpec& spec);

/// FNV-1a 64 of the canonical serialization, as 16 hex digits.
std::string spec_digest(const ProblemSpec& spec);

nlohmann::json to_json(const Vector& v);
nlohmann::json to_json(const Certificate& cert);
nlohmann::json to_json(const ProbeReport& report);
nlohmann::json to_json(const SolveResult& result);

struct RunReport {
  std::string spec_digest;
  std::optional<Certificate> certificate;
  std::optional<ProbeReport> probe;
  std::optional<SolveResult> solve;
  nlohmann::json settings;
  double wall_time_seconds = 0.0;
};

nlohmann::json to_json(const RunReport& report);

}  // namespace aubin
