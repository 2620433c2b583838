#include <cmath>
#include <sstream>
#include <vector>

#include "doctest.h"
#include "oracles.hpp"
#include "orbitcone/cone.hpp"
#include "orbitcone/random.hpp"

using namespace orbitcone;

namespace {

Vec v3(double x, double y, double z) { return Eigen::Vector3d(x, y, z); }

}  // namespace

TEST_CASE("named cone membership") {
  const auto np = ConeDescription::exact(NamedCone::Nplus, 3);
  CHECK(cone_contains(np, v3(1, 0, 1)));
  CHECK_FALSE(cone_contains(np, v3(1, 0, -1)));
  CHECK_FALSE(cone_contains(np, v3(0, 0, 1)));
  const auto hyp = ConeDescription::exact(NamedCone::HypClosure, 3);
  CHECK(cone_contains(hyp, v3(1, 0, 0)));
  CHECK(cone_contains(hyp, v3(0, 1, -1)));
  CHECK_FALSE(cone_contains(hyp, v3(0, 0, 1)));
  const auto ell = ConeDescription::exact(NamedCone::EllMinusClosure, 3);
  CHECK(cone_contains(ell, v3(0.1, 0, -1)));
  CHECK_FALSE(cone_contains(ell, v3(0.1, 0, 1)));
  CHECK(cone_contains(ConeDescription::exact(NamedCone::Zero, 3), Vec::Zero(3)));
  CHECK_FALSE(cone_contains(ConeDescription::exact(NamedCone::Zero, 3), v3(1, 0, 0)));
  CHECK(ConeDescription::exact(NamedCone::Zero, 3).is_zero());
  CHECK(named_cone_from_string(to_string(NamedCone::EllPlusClosure)) == NamedCone::EllPlusClosure);
}

TEST_CASE("angular distance to named cones") {
  const auto n = ConeDescription::exact(NamedCone::N, 3);
  CHECK(angular_distance(n, v3(0, 0, 1)) == doctest::Approx(M_PI / 4).epsilon(1e-9));
  CHECK(angular_distance(n, v3(1, 0, 0)) == doctest::Approx(M_PI / 4).epsilon(1e-9));
  CHECK(angular_distance(n, v3(1, 1, std::sqrt(2.0))) < 1e-9);
  CHECK(angular_distance(ConeDescription::exact(NamedCone::Full, 3), v3(1, 2, 3)) < 1e-12);
}

TEST_CASE("Hausdorff distance between named cones") {
  const auto np = ConeDescription::exact(NamedCone::Nplus, 3);
  const auto nm = ConeDescription::exact(NamedCone::Nminus, 3);
  CHECK(hausdorff_distance(np, np) < 1e-9);
  CHECK(hausdorff_distance(np, nm) == doctest::Approx(M_PI / 2).epsilon(0.02));
  CHECK(cone_equal(ConeDescription::exact(NamedCone::N, 3), cone_union({np, nm}), 0.02));
  const auto ep = ConeDescription::exact(NamedCone::EllPlusClosure, 3);
  CHECK(hausdorff_distance(ep, np) == doctest::Approx(M_PI / 4).epsilon(0.02));
  CHECK(cone_equal(np, np, 1e-9));
  CHECK_FALSE(cone_equal(np, nm, 0.1));
}

TEST_CASE("ray distance closed form") {
  CHECK(ray_distance(v3(1, 0, 0), v3(2, 0, 0)) < 1e-15);
  CHECK(ray_distance(v3(1, 0, 0), v3(-1, 0, 0)) == doctest::Approx(1.0));
  CHECK(ray_distance(v3(1, 0, 0), v3(1, 1, 0)) == doctest::Approx(std::sqrt(0.5)));
  CHECK(ray_distance(v3(0, 1, 0), v3(1, 0, 0)) == doctest::Approx(1.0));
  CHECK(conic_neighborhood_contains(v3(1, 0, 0), 0.8, v3(1, 1, 0)));
  CHECK_FALSE(conic_neighborhood_contains(v3(1, 0, 0), 0.7, v3(1, 1, 0)));
}

TEST_CASE("trivial dual cones") {
  const auto of_zero = dual_cone(ConeDescription::polyhedral({}, 3));
  CHECK(of_zero.as_polyhedral().generators.size() == 6);
  std::vector<Vec> full;
  for (int i = 0; i < 3; ++i) {
    full.push_back(Vec::Unit(3, i));
    full.push_back(-Vec::Unit(3, i));
  }
  for (const auto& g : dual_cone(ConeDescription::polyhedral(full, 3)).as_polyhedral().generators)
    CHECK(g.norm() < 1e-12);
  const auto third = dual_cone(ConeDescription::polyhedral({Eigen::Vector2d(1, 0), Eigen::Vector2d(0, 1)}, 2));
  CHECK(cone_contains(third, Eigen::Vector2d(-1, -2)));
  CHECK_FALSE(cone_contains(third, Eigen::Vector2d(-1, 0.5)));
}

TEST_CASE("dual cone of the positive orthant") {
  for (int n = 1; n <= 5; ++n) {
    std::vector<Vec> gens;
    for (int i = 0; i < n; ++i) gens.push_back(Vec::Unit(n, i));
    const auto d = dual_cone(ConeDescription::polyhedral(gens, n));
    for (const auto& g : d.as_polyhedral().generators) {
      CHECK((g.array() <= 1e-12).all());
      CHECK(oracle::in_generated_cone(gens, -g, 1e-9));
    }
    for (const auto& g : gens) CHECK(oracle::in_generated_cone(d.as_polyhedral().generators, -g, 1e-9));
  }
}

TEST_CASE("double dual recovers random cones") {
  Rng rng(41);
  for (int t = 0; t < 60; ++t) {
    const int n = 2 + t % 4;
    const int m = 1 + static_cast<int>(rng() % (n + 3));
    std::vector<Vec> gens;
    for (int i = 0; i < m; ++i) gens.push_back(gaussian_vector(rng, n));
    const auto c = ConeDescription::polyhedral(gens, n);
    const auto d = dual_cone(c);
    const auto dd = dual_cone(d);
    const auto& dg = d.as_polyhedral().generators;
    const auto& ddg = dd.as_polyhedral().generators;
    CAPTURE(n);
    CAPTURE(m);
    for (const auto& y : gens)
      for (const auto& x : dg) CHECK(x.dot(y) <= 1e-9 * x.norm() * y.norm());
    for (const auto& g : gens) CHECK(oracle::in_generated_cone(ddg, g, 1e-9));
    for (const auto& g : ddg) CHECK(oracle::in_generated_cone(gens, g, 1e-9));
  }
}

TEST_CASE("dual cone rejects large dimensions") {
  std::vector<Vec> gens = {Vec::Ones(9)};
  CHECK_THROWS_AS(dual_cone(ConeDescription::polyhedral(gens, 9)), Error);
}

TEST_CASE("polyhedral membership and union") {
  const auto c = ConeDescription::polyhedral({v3(1, 0, 0), v3(0, 1, 0)}, 3);
  CHECK(cone_contains(c, v3(1, 1, 0)));
  CHECK_FALSE(cone_contains(c, v3(1, -1, 0)));
  CHECK_FALSE(cone_contains(c, v3(1, 1, 0.1)));
  const auto u = cone_union({c, ConeDescription::polyhedral({v3(0, 0, 1)}, 3)});
  CHECK(angular_distance(u, v3(0, 0, 1)) < 1e-6);
  CHECK(angular_distance(u, v3(1, 1, 0)) < 0.02);
  CHECK(angular_distance(u, v3(-1, 0, 0)) > 1.0);
}

TEST_CASE("nonnegative least squares") {
  Mat a(2, 2);
  a << 1, 0, 0, 1;
  const Vec w = linalg::nonnegative_least_squares(a, Eigen::Vector2d(1, -1));
  CHECK(w(0) == doctest::Approx(1.0));
  CHECK(w(1) == doctest::Approx(0.0));
}

TEST_CASE("direction dedupe and index") {
  std::vector<Vec> dirs = {v3(1, 0, 0), v3(1, 1e-4, 0).normalized(), v3(0, 1, 0)};
  const auto kept = dedupe_directions(dirs, 0.01);
  CHECK(kept.size() == 2);
  DirectionIndex idx(kept);
  CHECK(idx.nearest_angle(v3(0, 1, 0)) < 1e-12);
  CHECK(idx.nearest_angle(v3(0, 0, 1)) == doctest::Approx(M_PI / 2));
  CHECK(idx.within(v3(1, 0.005, 0).normalized(), 0.01));
  CHECK(DirectionIndex().nearest_angle(v3(1, 0, 0)) == doctest::Approx(M_PI));
}

TEST_CASE("directions CSV header") {
  std::ostringstream os;
  write_directions_csv(os, ConeDescription::exact(NamedCone::Nplus, 3), {"x", "y", "z"}, 0.2);
  const std::string s = os.str();
  CHECK(s.rfind("x,y,z\n", 0) == 0);
  CHECK(s.size() > 20);
}
