#include <doctest.h>

#include <cmath>
#include <functional>

#include "aubin/cones.hpp"
#include "aubin/errors.hpp"
#include "aubin/sets.hpp"
#include "support.hpp"

using namespace aubin;
using namespace aubin::testing;

namespace {

using Generator = std::function<SetAndPoint(Rng&, std::size_t)>;

const std::vector<std::pair<const char*, Generator>>& generators() {
  static const std::vector<std::pair<const char*, Generator>> all = {
      {"box", [](Rng& r, std::size_t n) { return random_box_with_point(r, n); }},
      {"polyhedron", [](Rng& r, std::size_t n) { return random_polyhedron_with_point(r, n); }},
      {"ball", [](Rng& r, std::size_t n) { return random_ball_with_point(r, n); }},
      {"singleton", [](Rng& r, std::size_t n) { return random_singleton_with_point(r, n); }},
      {"whole_space", [](Rng& r, std::size_t n) { return random_whole_space_with_point(r, n); }},
  };
  return all;
}

double max_inner(const FGCone& k, const Vector& d) {
  double worst = -kInf;
  for (const auto& r : k.rays()) worst = std::max(worst, dot(r, d));
  for (const auto& l : k.lineality()) worst = std::max(worst, std::abs(dot(l, d)));
  return worst;
}

}  // namespace

TEST_CASE("construction errors") {
  CHECK_THROWS_AS(ConvexSet::box({0.0}, {0.0, 1.0}), DimensionError);
  CHECK_THROWS_AS(ConvexSet::box({1.0}, {0.0}), Error);
  CHECK_THROWS_AS(ConvexSet::polyhedron(Matrix{{1.0}, {-1.0}}, Vector{-1.0, -1.0}), Error);
  CHECK_THROWS_AS(ConvexSet::polyhedron(Matrix{{1.0}}, Vector{1.0, 2.0}), DimensionError);
  CHECK_THROWS_AS(ConvexSet::ball(Vector{0.0}, 0.0), Error);
  CHECK_THROWS_AS(ConvexSet::whole_space(0), DimensionError);
  CHECK_THROWS_AS(FGCone(2, {Vector{0.0, 0.0}}, {}), Error);
  CHECK_THROWS_AS(FGCone(2, {Vector{1.0}}, {}), DimensionError);
}

TEST_CASE("box projections and normal cones") {
  const ConvexSet box = ConvexSet::box({-1.0, 0.0}, {1.0, kInf});
  CHECK(project(box, Vector{3.0, -2.0}) == Vector{1.0, 0.0});
  CHECK(project(box, Vector{0.5, 7.0}) == Vector{0.5, 7.0});
  CHECK(distance_to(box, Vector{3.0, -2.0}) == doctest::Approx(std::sqrt(8.0)));

  const FGCone corner = normal_cone(box, Vector{1.0, 0.0}, 1e-9);
  CHECK(corner.rays().size() == 2);
  CHECK(cone_membership(corner, Vector{2.0, -3.0}, 1e-9));
  CHECK_FALSE(cone_membership(corner, Vector{-1.0, 0.0}, 1e-9));
  CHECK_FALSE(normal_cone(box, Vector{0.0, 1.0}, 1e-9).has_generators());
  CHECK(is_interior(box, Vector{0.0, 1.0}, 1e-9));
  CHECK_FALSE(is_interior(box, Vector{1.0, 1.0}, 1e-9));
  CHECK_THROWS_AS(normal_cone(box, Vector{2.0, 0.0}, 1e-9), NotInSet);

  // a degenerate coordinate contributes a lineality direction
  const FGCone flat = normal_cone(ConvexSet::box({0.0}, {0.0}), Vector{0.0}, 1e-9);
  CHECK(flat.lineality().size() == 1);
  CHECK(active_constraints(box, Vector{1.0, 0.0}, 1e-9) == std::vector<long>{1, -2});
}

TEST_CASE("ball, singleton and whole space") {
  const ConvexSet ball = ConvexSet::ball(Vector{1.0, 0.0}, 2.0);
  CHECK(distance(project(ball, Vector{5.0, 0.0}), Vector{3.0, 0.0}) < 1e-15);
  const FGCone nb = normal_cone(ball, Vector{1.0, 2.0}, 1e-9);
  REQUIRE(nb.rays().size() == 1);
  CHECK(distance(nb.rays()[0], Vector{0.0, 1.0}) < 1e-15);
  CHECK_FALSE(normal_cone(ball, Vector{1.0, 1.0}, 1e-9).has_generators());

  const ConvexSet point = ConvexSet::singleton(Vector{1.0, 2.0});
  CHECK(project(point, Vector{-4.0, 0.0}) == Vector{1.0, 2.0});
  CHECK(normal_cone(point, Vector{1.0, 2.0}, 1e-9).lineality().size() == 2);
  CHECK_FALSE(is_interior(point, Vector{1.0, 2.0}, 1e-9));

  const ConvexSet all = ConvexSet::whole_space(3);
  CHECK(is_interior(all, Vector{1e6, 0.0, 0.0}, 1e-9));
  CHECK_FALSE(normal_cone(all, Vector{1.0, 1.0, 1.0}, 1e-9).has_generators());
}

TEST_CASE("polyhedron projection by Dykstra") {
  // the simplex x + y <= 1, x >= 0, y >= 0
  const ConvexSet tri = ConvexSet::polyhedron(Matrix{{1.0, 1.0}, {-1.0, 0.0}, {0.0, -1.0}}, Vector{1.0, 0.0, 0.0});
  CHECK(distance(project(tri, Vector{1.0, 1.0}), Vector{0.5, 0.5}) < 1e-9);
  CHECK(distance(project(tri, Vector{2.0, -1.0}), Vector{1.0, 0.0}) < 1e-9);
  CHECK(distance(project(tri, Vector{-1.0, -1.0}), Vector{0.0, 0.0}) < 1e-9);
  const FGCone nc = normal_cone(tri, Vector{1.0, 0.0}, 1e-9);
  CHECK(nc.rays().size() == 2);
  CHECK(active_constraints(tri, Vector{1.0, 0.0}, 1e-9) == std::vector<long>{0, 2});
}

TEST_CASE("projection characterization, idempotence and nonexpansiveness") {
  Rng rng(31);
  for (const auto& [name, make] : generators()) {
    for (int t = 0; t < 60; ++t) {
      const auto n = static_cast<std::size_t>(uniform_int(rng, 1, 4));
      const auto [s, p] = make(rng, n);
      const Vector x = p + random_vector(rng, n, 3.0);
      const Vector px = project(s, x);
      INFO(name << " trial " << t);
      CHECK(contains(s, px, 1e-8));
      CHECK(distance(project(s, px), px) <= 1e-9);
      CHECK(distance_to(s, x) == doctest::Approx(distance(x, px)).epsilon(1e-9).scale(1.0));
      for (const Vector& m : sample_members(rng, s, p, 20)) CHECK(dot(x - px, m - px) <= 1e-7 * (1.0 + norm2(x - px)));
      const Vector y = p + random_vector(rng, n, 3.0);
      CHECK(distance(project(s, x), project(s, y)) <= distance(x, y) + 1e-8);
    }
  }
}

TEST_CASE("normal cones are sound and complete") {
  Rng rng(32);
  for (const auto& [name, make] : generators()) {
    for (int t = 0; t < 60; ++t) {
      const auto n = static_cast<std::size_t>(uniform_int(rng, 1, 4));
      const auto [s, p] = make(rng, n);
      INFO(name << " trial " << t);
      // soundness: every generator v satisfies <v, m - p> <= 0 on members m
      const FGCone k = normal_cone(s, p, 1e-9);
      for (const Vector& m : sample_members(rng, s, p, 30)) CHECK(max_inner(k, m - p) <= 1e-9);
      // completeness: x - P(x) is normal at P(x)
      const Vector x = p + random_vector(rng, n, 3.0);
      const Vector px = project(s, x);
      const Vector d = x - px;
      CHECK(cone_distance_l1(normal_cone(s, px, 1e-7), d) <= 1e-6 * (1.0 + norm2(d)));
    }
  }
}

TEST_CASE("interior points have trivial normal cones") {
  Rng rng(33);
  for (const auto& [name, make] : generators()) {
    for (int t = 0; t < 60; ++t) {
      const auto n = static_cast<std::size_t>(uniform_int(rng, 1, 4));
      const auto [s, p] = make(rng, n);
      INFO(name << " trial " << t);
      if (is_interior(s, p, 1e-9)) CHECK_FALSE(normal_cone(s, p, 1e-9).has_generators());
      if (normal_cone(s, p, 1e-9).has_generators()) CHECK_FALSE(is_interior(s, p, 1e-9));
    }
  }
}

TEST_CASE("negate") {
  const FGCone k(2, {Vector{1.0, 0.0}}, {Vector{0.0, 2.0}});
  const FGCone m = negate(k);
  CHECK(m.rays()[0] == Vector{-1.0, 0.0});
  CHECK(cone_membership(m, Vector{-3.0, 5.0}, 1e-9));
  CHECK_FALSE(cone_membership(m, Vector{3.0, 5.0}, 1e-9));
}
