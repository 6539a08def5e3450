// aubin: certify Lipschitz-like stability of split equality / split
// feasibility solution maps under matrix perturbations.
//
//   aubin check <spec> [--tol T] [--debug-both] [--out FILE]
//   aubin probe <spec> [--seed S] [--samples N] [--r0 R] [--threads K] [--out FILE]
//   aubin solve <spec> [--start FILE] [--max-iters K] [--tol T] [--out FILE]
//
// check exits 0 (lipschitz_like), 1 (not_lipschitz_like), 2 (inconclusive);
// solve exits 0 iff the solver converged; every error exits above 2.

#include <CLI11.hpp>
#include <chrono>
#include <fstream>
#include <iostream>

#include "aubin/errors.hpp"
#include "aubin/spec_io.hpp"

namespace {

using aubin::RunReport;
using nlohmann::json;

enum ExitCode : int {
  kInputError = 3,
  kNumericalError = 4,
  kInternalError = 5,
};

int verdict_exit_code(aubin::Verdict v) {
  switch (v) {
    case aubin::Verdict::lipschitz_like:
      return 0;
    case aubin::Verdict::not_lipschitz_like:
      return 1;
    case aubin::Verdict::inconclusive:
      return 2;
  }
  return kInternalError;
}

void emit(const json& doc, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << doc.dump(2) << "\n";
    return;
  }
  std::ofstream out(out_path);
  if (!out) throw aubin::SpecError("cannot write " + out_path);
  out << doc.dump(2) << "\n";
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

// Start point file: {"x": [..], "y": [..]} or a bare array for x.
std::pair<aubin::Vector, std::optional<aubin::Vector>> read_start(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw aubin::SpecError("cannot read start file " + path);
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    throw aubin::SpecError(path + ": malformed JSON: " + e.what());
  }
  auto as_vector = [&](const json& v, const char* field) {
    if (!v.is_array()) throw aubin::SpecError(path + ": field '" + field + "' must be an array");
    try {
      return aubin::Vector(v.get<std::vector<double>>());
    } catch (const json::exception&) {
      throw aubin::SpecError(path + ": field '" + field + "' must hold numbers");
    }
  };
  if (doc.is_array()) return {as_vector(doc, "x"), std::nullopt};
  if (!doc.is_object() || !doc.contains("x")) throw aubin::SpecError(path + ": expected {\"x\": [..]}");
  std::optional<aubin::Vector> y;
  if (doc.contains("y")) y = as_vector(doc["y"], "y");
  return {as_vector(doc["x"], "x"), y};
}

struct CheckArgs {
  std::string spec;
  std::string out;
  double tol = aubin::kDefaultTol;
  bool debug_both = false;
};

struct ProbeArgs {
  std::string spec;
  std::string out;
  double tol = aubin::kDefaultTol;
  std::uint64_t seed = 0;
  int samples = 64;
  double r0 = 0.1;
  int threads = 1;
};

struct SolveArgs {
  std::string spec;
  std::string out;
  std::string start;
  double tol = 1e-8;
  int max_iters = 100000;
};

int run_check(const CheckArgs& args) {
  const auto t0 = std::chrono::steady_clock::now();
  const aubin::ProblemSpec spec = aubin::parse_spec_file(args.spec, {args.tol, true});
  RunReport report;
  report.spec_digest = aubin::spec_digest(spec);
  report.certificate = aubin::certify(spec, {args.tol, args.debug_both});
  report.settings = {{"command", "check"}, {"tol", args.tol}, {"debug_both", args.debug_both}};
  report.wall_time_seconds = seconds_since(t0);
  emit(to_json(report), args.out);
  return verdict_exit_code(report.certificate->verdict);
}

int run_probe(const ProbeArgs& args) {
  const auto t0 = std::chrono::steady_clock::now();
  const aubin::ProblemSpec spec = aubin::parse_spec_file(args.spec, {args.tol, true});
  aubin::ProbeConfig cfg;
  cfg.radii = aubin::default_radii(args.r0);
  cfg.samples_per_radius = args.samples;
  cfg.seed = args.seed;
  cfg.threads = args.threads;
  RunReport report;
  report.spec_digest = aubin::spec_digest(spec);
  report.certificate = aubin::certify(spec, {args.tol, false});
  report.probe = aubin::run_probe(spec, cfg);
  report.settings = {{"command", "probe"},   {"tol", args.tol},         {"seed", args.seed},
                     {"samples", args.samples}, {"radii", cfg.radii},   {"neighborhood", cfg.neighborhood},
                     {"solver_tol", cfg.solver.tol}, {"solver_max_iters", cfg.solver.max_iters}};
  report.wall_time_seconds = seconds_since(t0);
  emit(to_json(report), args.out);
  return 0;
}

int run_solve(const SolveArgs& args) {
  const auto t0 = std::chrono::steady_clock::now();
  const aubin::ProblemSpec spec = aubin::parse_spec_file(args.spec, {aubin::kDefaultTol, false});
  aubin::Vector x0(spec.C.dim());
  std::optional<aubin::Vector> y0;
  if (spec.kind == aubin::ProblemKind::sep) y0 = aubin::Vector(spec.Q.dim());
  if (!args.start.empty()) {
    auto [x, y] = read_start(args.start);
    x0 = std::move(x);
    if (y) y0 = std::move(y);
  }
  aubin::SolveOptions opts;
  opts.tol = args.tol;
  opts.max_iters = args.max_iters;
  RunReport report;
  report.spec_digest = aubin::spec_digest(spec);
  report.solve = spec.kind == aubin::ProblemKind::sfp
                     ? aubin::solve_sfp(spec.A, spec.C, spec.Q, x0, opts)
                     : aubin::solve_sep(spec.A, *spec.B, spec.C, spec.Q, x0, *y0, opts);
  report.settings = {{"command", "solve"}, {"tol", args.tol}, {"max_iters", args.max_iters},
                     {"start", args.start.empty() ? json("zeros") : json(args.start)}};
  report.wall_time_seconds = seconds_since(t0);
  emit(to_json(report), args.out);
  return report.solve->converged ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Lipschitz-like stability certificates for split feasibility problems"};
  app.require_subcommand(1);

  CheckArgs check;
  auto* check_cmd = app.add_subcommand("check", "certify the solution map at the reference point");
  check_cmd->add_option("spec", check.spec, "problem spec JSON")->required();
  check_cmd->add_option("--tol", check.tol, "feasibility / activity / LP tolerance")->check(CLI::PositiveNumber);
  check_cmd->add_flag("--debug-both", check.debug_both, "run the LP battery even when a shortcut fires");
  check_cmd->add_option("--out", check.out, "write the report here instead of stdout");

  ProbeArgs probe;
  auto* probe_cmd = app.add_subcommand("probe", "empirical perturbation probe (heuristic)");
  probe_cmd->add_option("spec", probe.spec, "problem spec JSON")->required();
  probe_cmd->add_option("--tol", probe.tol, "tolerance for the certificate")->check(CLI::PositiveNumber);
  probe_cmd->add_option("--seed", probe.seed, "RNG seed");
  probe_cmd->add_option("--samples", probe.samples, "samples per radius")->check(CLI::PositiveNumber);
  probe_cmd->add_option("--r0", probe.r0, "largest perturbation radius")->check(CLI::PositiveNumber);
  probe_cmd->add_option("--threads", probe.threads, "worker threads")->check(CLI::PositiveNumber);
  probe_cmd->add_option("--out", probe.out, "write the report here instead of stdout");

  SolveArgs solve;
  auto* solve_cmd = app.add_subcommand("solve", "find a solution with a projection method");
  solve_cmd->add_option("spec", solve.spec, "problem spec JSON")->required();
  solve_cmd->add_option("--start", solve.start, "start point JSON ({\"x\":[..],\"y\":[..]})");
  solve_cmd->add_option("--max-iters", solve.max_iters, "iteration cap")->check(CLI::NonNegativeNumber);
  solve_cmd->add_option("--tol", solve.tol, "residual tolerance")->check(CLI::PositiveNumber);
  solve_cmd->add_option("--out", solve.out, "write the report here instead of stdout");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kInputError;
  }

  try {
    if (*check_cmd) return run_check(check);
    if (*probe_cmd) return run_probe(probe);
    if (*solve_cmd) return run_solve(solve);
  } catch (const aubin::SpecError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInputError;
  } catch (const aubin::NotASolution& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInputError;
  } catch (const aubin::DimensionError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInputError;
  } catch (const aubin::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kNumericalError;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kInternalError;
  }
  return kInternalError;
}
