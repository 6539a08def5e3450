#pragma once

// Seeded random generators for property and acceptance tests. Data is small
// integer or half-integer so that degenerate configurations are exact.

#include <cmath>
#include <random>
#include <vector>

#include "aubin/certify.hpp"
#include "aubin/sets.hpp"

namespace aubin::testing {

using Rng = std::mt19937_64;

inline int uniform_int(Rng& rng, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }

inline double uniform_real(Rng& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

inline bool coin(Rng& rng, double p = 0.5) { return std::bernoulli_distribution(p)(rng); }

inline Vector random_vector(Rng& rng, std::size_t n, double scale = 1.0) {
  std::normal_distribution<double> normal(0.0, scale);
  Vector v(n);
  for (std::size_t i = 0; i < n; ++i) v[i] = normal(rng);
  return v;
}

inline Matrix random_matrix(Rng& rng, std::size_t r, std::size_t c, double scale = 1.0) {
  std::normal_distribution<double> normal(0.0, scale);
  Matrix m(r, c);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j) m(i, j) = normal(rng);
  return m;
}

inline Matrix random_int_matrix(Rng& rng, std::size_t r, std::size_t c, int lo = -2, int hi = 2) {
  Matrix m(r, c);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j) m(i, j) = uniform_int(rng, lo, hi);
  return m;
}

/// A set together with a point of it (often on the boundary).
struct SetAndPoint {
  ConvexSet set;
  Vector point;
};

/// Box with integer bounds, some infinite or degenerate; the point sits on
/// a bound in each coordinate with probability `boundary`.
inline SetAndPoint random_box_with_point(Rng& rng, std::size_t n, double boundary = 0.6) {
  std::vector<double> lower(n);
  std::vector<double> upper(n);
  Vector p(n);
  for (std::size_t i = 0; i < n; ++i) {
    const int lo = uniform_int(rng, -2, 1);
    const int kind = uniform_int(rng, 0, 9);
    if (kind == 0) {
      lower[i] = upper[i] = lo;
    } else if (kind <= 2) {
      lower[i] = lo;
      upper[i] = kInf;
    } else if (kind <= 4) {
      lower[i] = -kInf;
      upper[i] = lo;
    } else if (kind == 5) {
      lower[i] = -kInf;
      upper[i] = kInf;
    } else {
      lower[i] = lo;
      upper[i] = lo + uniform_int(rng, 1, 3);
    }
    const bool finite_lo = std::isfinite(lower[i]);
    const bool finite_hi = std::isfinite(upper[i]);
    if (coin(rng, boundary) && (finite_lo || finite_hi)) {
      p[i] = finite_lo && (!finite_hi || coin(rng)) ? lower[i] : upper[i];
    } else if (finite_lo && finite_hi) {
      p[i] = 0.5 * (lower[i] + upper[i]);
    } else if (finite_lo) {
      p[i] = lower[i] + 0.5 * uniform_int(rng, 1, 4);
    } else if (finite_hi) {
      p[i] = upper[i] - 0.5 * uniform_int(rng, 1, 4);
    } else {
      p[i] = 0.5 * uniform_int(rng, -4, 4);
    }
  }
  return {ConvexSet::box(std::move(lower), std::move(upper)), p};
}

/// {x : Gx <= g} with integer G and a half-integer point p at which a random
/// subset of rows is active.
inline SetAndPoint random_polyhedron_with_point(Rng& rng, std::size_t n, double boundary = 0.6) {
  const std::size_t rows = static_cast<std::size_t>(uniform_int(rng, 1, 4));
  Vector p(n);
  for (std::size_t i = 0; i < n; ++i) p[i] = 0.5 * uniform_int(rng, -4, 4);
  Matrix G(rows, n);
  Vector g(rows);
  for (std::size_t r = 0; r < rows; ++r) {
    bool nonzero = false;
    while (!nonzero) {
      for (std::size_t j = 0; j < n; ++j) {
        G(r, j) = uniform_int(rng, -2, 2);
        nonzero = nonzero || G(r, j) != 0.0;
      }
    }
    g[r] = dot(G.row_vector(r), p) + (coin(rng, boundary) ? 0.0 : uniform_int(rng, 1, 2));
  }
  return {ConvexSet::polyhedron(std::move(G), std::move(g)), p};
}

inline SetAndPoint random_ball_with_point(Rng& rng, std::size_t n, double boundary = 0.6) {
  Vector c(n);
  for (std::size_t i = 0; i < n; ++i) c[i] = uniform_int(rng, -2, 2);
  const double radius = uniform_int(rng, 1, 3);
  Vector dir = random_vector(rng, n);
  dir *= 1.0 / norm2(dir);
  const double t = coin(rng, boundary) ? radius : uniform_real(rng, 0.0, 0.9) * radius;
  return {ConvexSet::ball(c, radius), c + t * dir};
}

inline SetAndPoint random_singleton_with_point(Rng& rng, std::size_t n) {
  Vector p(n);
  for (std::size_t i = 0; i < n; ++i) p[i] = uniform_int(rng, -2, 2);
  return {ConvexSet::singleton(p), p};
}

inline SetAndPoint random_whole_space_with_point(Rng& rng, std::size_t n) {
  return {ConvexSet::whole_space(n), random_vector(rng, n)};
}

/// Box or polyhedron (the polyhedral vocabulary).
inline SetAndPoint random_polyhedral_with_point(Rng& rng, std::size_t n) {
  return coin(rng) ? random_box_with_point(rng, n) : random_polyhedron_with_point(rng, n);
}

/// Points of S: projections of Gaussian points (plus the given point).
inline std::vector<Vector> sample_members(Rng& rng, const ConvexSet& s, const Vector& known, std::size_t count,
                                          double spread = 4.0) {
  std::vector<Vector> out{known};
  while (out.size() < count) out.push_back(project(s, known + random_vector(rng, s.dim(), spread)));
  return out;
}

/// Makes rank-one corrections so that A x = B y holds exactly in the
/// constructed data (B is corrected when y != 0, else A when x != 0).
inline bool make_consistent(Matrix& A, Matrix& B, const Vector& x, const Vector& y) {
  const Vector r = matvec(A, x) - matvec(B, y);
  const double yy = dot(y, y);
  const double xx = dot(x, x);
  if (yy > 0.0) {
    for (std::size_t i = 0; i < B.rows(); ++i)
      for (std::size_t j = 0; j < B.cols(); ++j) B(i, j) += r[i] * y[j] / yy;
    return true;
  }
  if (xx > 0.0) {
    for (std::size_t i = 0; i < A.rows(); ++i)
      for (std::size_t j = 0; j < A.cols(); ++j) A(i, j) -= r[i] * x[j] / xx;
    return true;
  }
  return true;
}

/// SEP with l, n, m in [1, max_dim] over boxes / polyhedra, with a feasible
/// reference point typically on the boundary of both sets.
inline ProblemSpec random_polyhedral_sep(Rng& rng, std::size_t max_dim = 3) {
  const auto l = static_cast<std::size_t>(uniform_int(rng, 1, static_cast<int>(max_dim)));
  const auto n = static_cast<std::size_t>(uniform_int(rng, 1, static_cast<int>(max_dim)));
  const auto m = static_cast<std::size_t>(uniform_int(rng, 1, static_cast<int>(max_dim)));
  auto [C, x] = random_polyhedral_with_point(rng, n);
  auto [Q, y] = random_polyhedral_with_point(rng, m);
  Matrix A = random_int_matrix(rng, l, n);
  Matrix B = random_int_matrix(rng, l, m);
  make_consistent(A, B, x, y);
  return make_sep(std::move(A), std::move(B), std::move(C), std::move(Q), std::move(x), std::move(y));
}

/// Q is built around A x̄ so the reference point is feasible.
inline SetAndPoint set_around(Rng& rng, const Vector& center) {
  const std::size_t m = center.dim();
  switch (uniform_int(rng, 0, 2)) {
    case 0: {
      std::vector<double> lower(m);
      std::vector<double> upper(m);
      for (std::size_t i = 0; i < m; ++i) {
        lower[i] = coin(rng, 0.2) ? -kInf : center[i] - (coin(rng, 0.6) ? 0.0 : 1.0);
        upper[i] = coin(rng, 0.2) ? kInf : center[i] + (coin(rng, 0.6) ? 0.0 : 1.0);
      }
      return {ConvexSet::box(std::move(lower), std::move(upper)), center};
    }
    case 1: {
      auto [P, p] = random_polyhedron_with_point(rng, m);
      const auto& h = std::get<HPolyhedron>(P.variant());
      return {ConvexSet::polyhedron(h.G, h.g + matvec(h.G, center - p)), center};
    }
    default: {
      Vector dir = random_vector(rng, m);
      dir *= 1.0 / norm2(dir);
      const double radius = uniform_int(rng, 1, 2);
      return {ConvexSet::ball(center - radius * dir, radius), center};
    }
  }
}

/// SFP with m, n in [1, max_dim], a feasible x̄ and Q built around Āx̄.
inline ProblemSpec random_feasible_sfp(Rng& rng, std::size_t max_dim = 3) {
  const auto n = static_cast<std::size_t>(uniform_int(rng, 1, static_cast<int>(max_dim)));
  const auto m = static_cast<std::size_t>(uniform_int(rng, 1, static_cast<int>(max_dim)));
  auto [C, x] = random_polyhedral_with_point(rng, n);
  Matrix A = random_int_matrix(rng, m, n);
  auto [Q, ax] = set_around(rng, matvec(A, x));
  return make_sfp(std::move(A), std::move(C), std::move(Q), std::move(x));
}

}  // namespace aubin::testing
