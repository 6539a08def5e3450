#include "aubin/probe.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <thread>

#include "aubin/errors.hpp"

namespace aubin {
namespace {

// Uniform point of the ball of radius r in ℝᵈ: Gaussian direction times
// r·u^{1/d}.
std::vector<double> sample_ball(std::mt19937_64& rng, std::size_t d, double r) {
  std::normal_distribution<double> normal(0.0, 1.0);
  std::uniform_real_distribution<double> uniform(0.0, 1.0);
  std::vector<double> v(d);
  double sq = 0.0;
  do {
    sq = 0.0;
    for (double& x : v) {
      x = normal(rng);
      sq += x * x;
    }
  } while (sq == 0.0);
  const double scale = r * std::pow(uniform(rng), 1.0 / static_cast<double>(d)) / std::sqrt(sq);
  for (double& x : v) x *= scale;
  return v;
}

// Adds the first A.size() entries of `delta` to A and the rest to B.
ProblemSpec perturbed(const ProblemSpec& spec, const std::vector<double>& delta) {
  ProblemSpec out = spec;
  const std::size_t na = spec.A.rows() * spec.A.cols();
  std::vector<double> a(spec.A.values().begin(), spec.A.values().end());
  for (std::size_t k = 0; k < na; ++k) a[k] += delta[k];
  out.A = Matrix(spec.A.rows(), spec.A.cols(), std::move(a));
  if (spec.B) {
    std::vector<double> b(spec.B->values().begin(), spec.B->values().end());
    for (std::size_t k = 0; k < b.size(); ++k) b[k] += delta[na + k];
    out.B = Matrix(spec.B->rows(), spec.B->cols(), std::move(b));
  }
  return out;
}

ProbeSample run_sample(const ProblemSpec& spec, const Vector& reference, const ProbeConfig& cfg,
                       std::size_t radius_index, std::size_t sample_index) {
  std::seed_seq seq{static_cast<std::uint32_t>(cfg.seed), static_cast<std::uint32_t>(cfg.seed >> 32),
                    static_cast<std::uint32_t>(radius_index), static_cast<std::uint32_t>(sample_index)};
  std::mt19937_64 rng(seq);

  const double r = cfg.radii[radius_index];
  const std::size_t dims = spec.A.rows() * spec.A.cols() + (spec.B ? spec.B->rows() * spec.B->cols() : 0);
  const std::vector<double> d1 = sample_ball(rng, dims, r);
  const std::vector<double> d2 = sample_ball(rng, dims, r);

  ProbeSample sample;
  double sq = 0.0;
  for (std::size_t k = 0; k < dims; ++k) sq += (d1[k] - d2[k]) * (d1[k] - d2[k]);
  sample.denominator = std::sqrt(sq);

  const ProblemSpec moved = perturbed(spec, d1);
  const NearestSolution first = nearest_solution(moved, reference, cfg.solver);
  if (!first.solve.converged) return sample;
  const Vector anchor = spec.kind == ProblemKind::sep ? concat(first.solve.x, *first.solve.y) : first.solve.x;
  sample.in_neighborhood = distance(anchor, reference) <= cfg.neighborhood;

  const NearestSolution second = nearest_solution(perturbed(spec, d2), anchor, cfg.solver);
  if (!second.solve.converged) return sample;
  sample.converged = true;
  sample.numerator = second.distance;
  return sample;
}

}  // namespace

std::vector<double> default_radii(double r0, int count) {
  std::vector<double> radii;
  for (int k = 0; k < count; ++k) radii.push_back(std::ldexp(r0, -k));
  return radii;
}

void validate(const ProbeConfig& cfg) {
  if (cfg.radii.empty()) throw Error("probe: no radii");
  for (std::size_t i = 0; i < cfg.radii.size(); ++i) {
    if (!(cfg.radii[i] > 0.0) || !std::isfinite(cfg.radii[i]) || (i > 0 && !(cfg.radii[i] < cfg.radii[i - 1]))) {
      throw Error("probe: radii must be positive and strictly decreasing");
    }
  }
  if (cfg.samples_per_radius < 1) throw Error("probe: samples_per_radius must be at least 1");
  if (!(cfg.neighborhood > 0.0)) throw Error("probe: neighborhood must be positive");
  if (cfg.threads < 1) throw Error("probe: threads must be at least 1");
}

void summarize(ProbeReport& report) {
  report.modulus_estimate = 0.0;
  for (auto& stats : report.per_radius) {
    stats.max_ratio = 0.0;
    stats.mean_ratio = 0.0;
    stats.failures = 0;
    stats.outside = 0;
    int counted = 0;
    for (const auto& s : stats.samples) {
      if (!s.converged) {
        ++stats.failures;
        continue;
      }
      if (!s.in_neighborhood) {
        ++stats.outside;
        continue;
      }
      if (s.denominator == 0.0) continue;
      const double ratio = s.numerator / s.denominator;
      stats.max_ratio = std::max(stats.max_ratio, ratio);
      stats.mean_ratio += ratio;
      ++counted;
    }
    if (counted > 0) stats.mean_ratio /= counted;
    report.modulus_estimate = std::max(report.modulus_estimate, stats.max_ratio);
  }
  report.diverging = !report.per_radius.empty() &&
                     report.per_radius.back().max_ratio > kDivergenceFactor * report.per_radius.front().max_ratio;
}

ProbeReport run_probe(const ProblemSpec& spec, const ProbeConfig& cfg) {
  validate(cfg);
  validate_shapes(spec);
  if (!spec.xbar) throw SpecError("probe needs a reference point");
  const Vector reference = spec.kind == ProblemKind::sep ? concat(*spec.xbar, *spec.ybar) : *spec.xbar;

  const std::size_t per = static_cast<std::size_t>(cfg.samples_per_radius);
  const std::size_t total = cfg.radii.size() * per;
  std::vector<ProbeSample> samples(total);

  auto work = [&](std::size_t begin, std::size_t stride) {
    for (std::size_t t = begin; t < total; t += stride) {
      try {
        samples[t] = run_sample(spec, reference, cfg, t / per, t % per);
      } catch (const Error&) {
        samples[t] = ProbeSample{};
      }
    }
  };
  const std::size_t workers = std::min<std::size_t>(static_cast<std::size_t>(cfg.threads), total);
  if (workers <= 1) {
    work(0, 1);
  } else {
    std::vector<std::jthread> pool;
    for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(work, w, workers);
  }

  ProbeReport report;
  for (std::size_t i = 0; i < cfg.radii.size(); ++i) {
    RadiusStats stats;
    stats.radius = cfg.radii[i];
    stats.samples.assign(samples.begin() + static_cast<std::ptrdiff_t>(i * per),
                         samples.begin() + static_cast<std::ptrdiff_t>((i + 1) * per));
    report.per_radius.push_back(std::move(stats));
  }
  summarize(report);
  return report;
}

}  // namespace aubin
