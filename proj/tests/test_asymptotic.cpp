#include <cmath>
#include <limits>
#include <vector>

#include "doctest.h"
#include "orbitcone/asymptotic.hpp"
#include "orbitcone/orbits.hpp"

using namespace orbitcone;

namespace {

AcOptions small_options() {
  AcOptions o;
  o.samples_per_radius = 5000;
  o.allow_exact = false;
  return o;
}

}  // namespace

TEST_CASE("ray family has the ray as asymptotic cone") {
  const Vec d = Eigen::Vector3d(1, 2, -2);
  const auto r = asymptotic_cone_report(ray_family(d), small_options(), 3);
  REQUIRE(r.cone.is_sampled());
  CHECK(r.cone.as_sampled().directions.size() == 1);
  CHECK(angular_distance(r.cone, d) < 1e-9);
  CHECK(r.counts.size() == 4);
}

TEST_CASE("bounded family has zero asymptotic cone") {
  const auto c = asymptotic_cone(bounded_family(3, 50.0), {10.0, 100.0, 1000.0}, 2000, 1, 0.02, false);
  CHECK(c.is_zero());
  // The exact tag is used when allowed.
  const auto e = asymptotic_cone_report(bounded_family(3, 50.0), AcOptions{}, 1);
  CHECK(e.exact);
  CHECK(e.cone.is_zero());
}

TEST_CASE("scaling does not change the asymptotic cone") {
  const auto f = cap_family(Eigen::Vector3d(0, 0, 1), 0.3);
  const auto a = asymptotic_cone_report(f, small_options(), 5).cone;
  const auto b = asymptotic_cone_report(scaled_family(f, 7.5), small_options(), 5).cone;
  CHECK(hausdorff_distance(a, b) < 0.05);
  CHECK(angular_distance(a, Eigen::Vector3d(0, 0, 1)) < 0.02);
  CHECK(angular_distance(a, Eigen::Vector3d(1, 0, 0)) > 1.0);
}

TEST_CASE("union lemma on a small family") {
  const std::vector<PointFamily> members = {cap_family(Eigen::Vector3d(1, 0, 0), 0.2),
                                            ray_family(Eigen::Vector3d(0, 0, -1)), bounded_family(3, 20.0)};
  const auto u = ac_union_check(members, small_options(), 9);
  CHECK(u.max_defect <= 0.05);
  CHECK(u.passed);
}

TEST_CASE("orbit family asymptotic cones by sampling") {
  const OrbitFamily f{"ell+", make_sl2r(),
                      {SupportBranch{SupportBranch::Kind::Finite, {sl2_orbit(Sl2Kind::EllPlus, 2.0)}}}};
  const auto c = asymptotic_cone_report(to_point_family(f), small_options(), 2).cone;
  CHECK(hausdorff_distance(c, ConeDescription::exact(NamedCone::Nplus, 3)) < 0.05);
}

TEST_CASE("quadric family examples") {
  const auto L = make_sl2r();
  const OrbitFamily hyp{"O_1", L, {SupportBranch{SupportBranch::Kind::Finite, {sl2_orbit(Sl2Kind::Hyp, 1.0)}}}};
  const auto exact = asymptotic_cone_report(to_point_family(hyp), AcOptions{}, 1);
  CHECK(exact.exact);
  CHECK(exact.cone.as_exact().name == NamedCone::N);

  SupportBranch lattice;
  lattice.kind = SupportBranch::Kind::IntegerLattice;
  lattice.orbit_kind = Sl2Kind::EllPlus;
  lattice.lo = 1.0;
  lattice.hi = std::numeric_limits<double>::infinity();
  const auto ell = asymptotic_cone_report(to_point_family(OrbitFamily{"sum", L, {lattice}}), small_options(), 1).cone;
  CHECK(hausdorff_distance(ell, ConeDescription::exact(NamedCone::EllPlusClosure, 3)) <= 0.05);

  SupportBranch interval;
  interval.kind = SupportBranch::Kind::RealInterval;
  interval.orbit_kind = Sl2Kind::Hyp;
  interval.lo = 0.0;
  interval.hi = std::numeric_limits<double>::infinity();
  AcOptions o = small_options();
  o.samples_per_radius = 50000;
  const auto hc = asymptotic_cone_report(to_point_family(OrbitFamily{"int", L, {interval}}), o, 1).cone;
  CHECK(hausdorff_distance(hc, ConeDescription::exact(NamedCone::HypClosure, 3)) <= 0.05);

  CHECK(asymptotic_cone(bounded_family(3, 5.0), {10.0, 30.0, 100.0}, 1000, 1, 0.02, false).is_zero());
}

TEST_CASE("radius schedule validation") {
  const auto f = ray_family(Eigen::Vector3d(1, 0, 0));
  CHECK_THROWS_AS(asymptotic_cone(f, {10.0, 100.0}, 100, 1), Error);
  CHECK_THROWS_AS(asymptotic_cone(f, {10.0, 5.0, 100.0}, 100, 1), Error);
  CHECK_THROWS_AS(asymptotic_cone(f, {-1.0, 5.0, 100.0}, 100, 1), Error);
  try {
    asymptotic_cone(f, {10.0, 100.0}, 100, 1);
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::InsufficientRadii);
  }
  CHECK_THROWS_AS(union_family({}), Error);
  CHECK_THROWS_AS(ray_family(Vec::Zero(3)), Error);
}

TEST_CASE("asymptotic cones are deterministic in the seed") {
  const auto f = cap_family(Eigen::Vector3d(0, 1, 0), 0.4);
  const auto a = asymptotic_cone_report(f, small_options(), 11).cone.as_sampled().directions;
  const auto b = asymptotic_cone_report(f, small_options(), 11).cone.as_sampled().directions;
  REQUIRE(a.size() == b.size());
  for (size_t i = 0; i < a.size(); ++i) CHECK((a[i] - b[i]).norm() == 0.0);
}
