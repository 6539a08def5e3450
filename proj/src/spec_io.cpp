#include "aubin/spec_io.hpp"

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "aubin/errors.hpp"

namespace aubin {
namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& field, const std::string& what) {
  throw SpecError("field '" + field + "': " + what);
}

const json& member(const json& obj, const char* key, const std::string& where) {
  auto it = obj.find(key);
  if (it == obj.end()) fail(where.empty() ? key : where + "." + key, "missing");
  return *it;
}

void check_keys(const json& obj, std::initializer_list<const char*> allowed, const std::string& where) {
  for (auto it = obj.begin(); it != obj.end(); ++it) {
    bool ok = false;
    for (const char* k : allowed) ok = ok || it.key() == k;
    if (!ok) fail(where.empty() ? it.key() : where + "." + it.key(), "unknown field");
  }
}

double number(const json& v, const std::string& field, bool allow_infinite) {
  if (v.is_number()) {
    const double d = v.get<double>();
    if (!std::isfinite(d)) fail(field, "not finite");
    return d;
  }
  if (allow_infinite && v.is_string()) {
    const auto s = v.get<std::string>();
    if (s == "inf" || s == "+inf") return kInf;
    if (s == "-inf") return -kInf;
  }
  fail(field, allow_infinite ? "expected a number or \"inf\"/\"-inf\"" : "expected a number");
}

std::vector<double> numbers(const json& v, const std::string& field, bool allow_infinite = false) {
  if (!v.is_array() || v.empty()) fail(field, "expected a nonempty array of numbers");
  std::vector<double> out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    out.push_back(number(v[i], field + "[" + std::to_string(i) + "]", allow_infinite));
  }
  return out;
}

Vector vector_field(const json& v, const std::string& field) { return Vector(numbers(v, field)); }

Matrix matrix_field(const json& v, const std::string& field) {
  if (!v.is_array() || v.empty()) fail(field, "expected a nonempty array of rows");
  std::vector<std::vector<double>> rows;
  for (std::size_t i = 0; i < v.size(); ++i) {
    rows.push_back(numbers(v[i], field + "[" + std::to_string(i) + "]"));
    if (rows.back().size() != rows.front().size()) {
      fail(field + "[" + std::to_string(i) + "]", "row length " + std::to_string(rows.back().size()) +
                                                      " differs from " + std::to_string(rows.front().size()));
    }
  }
  return Matrix::from_rows(rows);
}

ConvexSet set_field(const json& v, const std::string& field) {
  if (!v.is_object()) fail(field, "expected a set object");
  const json& type = member(v, "type", field);
  if (!type.is_string()) fail(field + ".type", "expected a string");
  const auto t = type.get<std::string>();
  try {
    if (t == "box") {
      check_keys(v, {"type", "lower", "upper"}, field);
      auto lower = numbers(member(v, "lower", field), field + ".lower", true);
      auto upper = numbers(member(v, "upper", field), field + ".upper", true);
      if (lower.size() != upper.size()) fail(field, "lower and upper differ in length");
      return ConvexSet::box(std::move(lower), std::move(upper));
    }
    if (t == "polyhedron") {
      check_keys(v, {"type", "G", "g"}, field);
      return ConvexSet::polyhedron(matrix_field(member(v, "G", field), field + ".G"),
                                   vector_field(member(v, "g", field), field + ".g"));
    }
    if (t == "singleton") {
      check_keys(v, {"type", "point"}, field);
      return ConvexSet::singleton(vector_field(member(v, "point", field), field + ".point"));
    }
    if (t == "ball") {
      check_keys(v, {"type", "center", "radius"}, field);
      return ConvexSet::ball(vector_field(member(v, "center", field), field + ".center"),
                             number(member(v, "radius", field), field + ".radius", false));
    }
    if (t == "whole_space") {
      check_keys(v, {"type", "dim"}, field);
      const json& d = member(v, "dim", field);
      if (!d.is_number_unsigned() || d.get<std::size_t>() == 0) fail(field + ".dim", "expected a positive integer");
      return ConvexSet::whole_space(d.get<std::size_t>());
    }
  } catch (const SpecError&) {
    throw;
  } catch (const Error& e) {
    fail(field, e.what());
  }
  fail(field + ".type", "unknown set type \"" + t + "\"");
}

json bound_json(double b) {
  if (b == kInf) return "inf";
  if (b == -kInf) return "-inf";
  return b;
}

json matrix_json(const Matrix& m) {
  json rows = json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    auto r = m.row(i);
    rows.push_back(std::vector<double>(r.begin(), r.end()));
  }
  return rows;
}

}  // namespace

ProblemSpec parse_spec(const json& doc, const ReadOptions& options) {
  if (!doc.is_object()) throw SpecError("problem spec must be a JSON object");
  check_keys(doc, {"kind", "A", "B", "C", "Q", "xbar", "ybar", "comment", "name"}, "");
  const json& kind_field = member(doc, "kind", "");
  if (!kind_field.is_string()) fail("kind", "expected \"SEP\" or \"SFP\"");
  const auto kind = kind_field.get<std::string>();
  if (kind != "SEP" && kind != "SFP") fail("kind", "expected \"SEP\" or \"SFP\", got \"" + kind + "\"");
  const bool sep = kind == "SEP";

  Matrix A = matrix_field(member(doc, "A", ""), "A");
  std::optional<Matrix> B;
  if (sep) {
    B = matrix_field(member(doc, "B", ""), "B");
  } else if (doc.contains("B") || doc.contains("ybar")) {
    fail(doc.contains("B") ? "B" : "ybar", "not allowed for SFP");
  }
  ConvexSet C = set_field(member(doc, "C", ""), "C");
  ConvexSet Q = set_field(member(doc, "Q", ""), "Q");

  std::optional<Vector> xbar;
  std::optional<Vector> ybar;
  if (doc.contains("xbar")) xbar = vector_field(doc["xbar"], "xbar");
  if (sep && doc.contains("ybar")) ybar = vector_field(doc["ybar"], "ybar");
  if (options.require_reference) {
    if (!xbar) fail("xbar", "missing");
    if (sep && !ybar) fail("ybar", "missing");
  }

  ProblemSpec spec{sep ? ProblemKind::sep : ProblemKind::sfp,
                   std::move(A),
                   std::move(B),
                   std::move(C),
                   std::move(Q),
                   std::move(xbar),
                   std::move(ybar)};
  try {
    validate_shapes(spec);
  } catch (const DimensionError& e) {
    throw SpecError(std::string("dimension mismatch: ") + e.what());
  }
  if (spec.xbar) validate_reference(spec, options.tol);
  return spec;
}

ProblemSpec parse_spec_text(const std::string& text, const ReadOptions& options) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw SpecError(std::string("malformed JSON: ") + e.what());
  }
  return parse_spec(doc, options);
}

ProblemSpec parse_spec_file(const std::string& path, const ReadOptions& options) {
  std::ifstream in(path);
  if (!in) throw SpecError("cannot read " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  try {
    return parse_spec_text(buf.str(), options);
  } catch (const SpecError& e) {
    throw SpecError(path + ": " + e.what());
  }
}

json to_json(const ConvexSet& s) {
  return std::visit(
      [](const auto& v) -> json {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, Box>) {
          json lower = json::array();
          json upper = json::array();
          for (double b : v.lower) lower.push_back(bound_json(b));
          for (double b : v.upper) upper.push_back(bound_json(b));
          return {{"type", "box"}, {"lower", lower}, {"upper", upper}};
        } else if constexpr (std::is_same_v<T, HPolyhedron>) {
          return {{"type", "polyhedron"}, {"G", matrix_json(v.G)}, {"g", v.g.std()}};
        } else if constexpr (std::is_same_v<T, Singleton>) {
          return {{"type", "singleton"}, {"point", v.point.std()}};
        } else if constexpr (std::is_same_v<T, Ball>) {
          return {{"type", "ball"}, {"center", v.center.std()}, {"radius", v.radius}};
        } else {
          return {{"type", "whole_space"}, {"dim", v.dim}};
        }
      },
      s.variant());
}

json to_json(const ProblemSpec& spec) {
  json doc = {{"kind", spec.kind == ProblemKind::sep ? "SEP" : "SFP"},
              {"A", matrix_json(spec.A)},
              {"C", to_json(spec.C)},
              {"Q", to_json(spec.Q)}};
  if (spec.B) doc["B"] = matrix_json(*spec.B);
  if (spec.xbar) doc["xbar"] = spec.xbar->std();
  if (spec.ybar) doc["ybar"] = spec.ybar->std();
  return doc;
}

std::string spec_digest(const ProblemSpec& spec) {
  const std::string canonical = to_json(spec).dump();
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : canonical) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

json to_json(const Vector& v) { return v.std(); }

json to_json(const Certificate& cert) {
  const auto& d = cert.details;
  json out = {{"condition_holds", cert.condition_holds},
              {"verdict", std::string(to_string(cert.verdict))},
              {"witness", cert.witness ? to_json(*cert.witness) : json(nullptr)},
              {"shortcut", cert.shortcut ? json(std::string(to_string(*cert.shortcut))) : json(nullptr)},
              {"marginal", cert.marginal},
              {"details",
               {{"active_C", d.active_C},
                {"active_Q", d.active_Q},
                {"normal_cone_C", {{"rays", d.c_rays}, {"lineality", d.c_lineality}}},
                {"normal_cone_Q", {{"rays", d.q_rays}, {"lineality", d.q_lineality}}},
                {"condition_evaluated", d.condition_evaluated},
                {"lp_calls", d.lp_calls},
                {"max_optimum", d.max_optimum},
                {"max_violation", d.max_violation},
                {"solution_norm_inf", d.solution_norm_inf}}}};
  return out;
}

json to_json(const ProbeReport& report) {
  json radii = json::array();
  for (const auto& r : report.per_radius) {
    json samples = json::array();
    for (const auto& s : r.samples) {
      samples.push_back({{"numerator", s.numerator},
                         {"denominator", s.denominator},
                         {"converged", s.converged},
                         {"in_neighborhood", s.in_neighborhood}});
    }
    radii.push_back({{"radius", r.radius},
                     {"max_ratio", r.max_ratio},
                     {"mean_ratio", r.mean_ratio},
                     {"failures", r.failures},
                     {"outside", r.outside},
                     {"samples", samples}});
  }
  return {{"heuristic", true},
          {"per_radius", radii},
          {"modulus_estimate", report.modulus_estimate},
          {"diverging", report.diverging}};
}

json to_json(const SolveResult& result) {
  json out = {{"x", to_json(result.x)},
              {"residual", result.residual},
              {"iterations", result.iterations},
              {"converged", result.converged},
              {"stalled", result.stalled}};
  if (result.y) out["y"] = to_json(*result.y);
  return out;
}

json to_json(const RunReport& report) {
  json out = {{"spec_digest", report.spec_digest},
              {"tool_version", kToolVersion},
              {"settings", report.settings},
              {"wall_time_seconds", report.wall_time_seconds}};
  if (report.certificate) out["certificate"] = to_json(*report.certificate);
  if (report.probe) out["probe"] = to_json(*report.probe);
  if (report.solve) out["solve"] = to_json(*report.solve);
  return out;
}

}  // namespace aubin
