#include <cmath>
#include <map>
#include <string>
#include <vector>

#include "doctest.h"
#include "orbitcone/catalog.hpp"
#include "orbitcone/random.hpp"
#include "orbitcone/tempered.hpp"

using namespace orbitcone;

namespace {

std::map<int, int> one_dim_weights(const WeightSystem& w) {
  std::map<int, int> out;
  for (const auto& x : w.weights) out[static_cast<int>(std::lround(x.functional(0)))] += x.multiplicity;
  return out;
}

}  // namespace

TEST_CASE("adjoint weights of sl2R on the split torus") {
  const auto e = build_pair("pair(sl2R, diag)");
  const Mat a = split_abelian(e);
  REQUIRE(a.cols() == 1);
  const auto w = adjoint_weights(e.ambient, e.inclusion * a);
  CHECK(w.integral);
  CHECK(one_dim_weights(w) == std::map<int, int>{{-2, 1}, {0, 1}, {2, 1}});
  CHECK(rho(w, Vec::Constant(1, 1.0)) == doctest::Approx(2.0));
  CHECK(rho(w, Vec::Constant(1, -3.0)) == doctest::Approx(6.0));
  CHECK(rho(w, Vec::Constant(1, 0.0)) == 0.0);
}

TEST_CASE("weights of an explicit commuting action") {
  Mat d1 = Vec(Eigen::Vector3d(1, -1, 0)).asDiagonal();
  Mat d2 = Vec(Eigen::Vector3d(0, 1, 1)).asDiagonal();
  Mat s = Mat::Random(3, 3) + 3.0 * Mat::Identity(3, 3);
  const Mat si = s.inverse();
  const auto w = weights_of_action({s * d1 * si, s * d2 * si}, 3);
  CHECK(w.ambient_dim == 2);
  CHECK(w.integral);
  CHECK(w.weights.size() == 3);
  Vec y(2);
  y << 2, -1;
  // Values 2, -3, -1: only the first is positive.
  CHECK(rho(w, y) == doctest::Approx(2.0));

  Mat n1(2, 2), n2(2, 2);
  n1 << 1, 0, 0, -1;
  n2 << 0, 1, 1, 0;
  CHECK_THROWS_AS(weights_of_action({n1, n2}, 2), Error);
}

TEST_CASE("rho is convex, positively homogeneous and basis independent") {
  const auto e = build_pair("pair(so(3,2), blocks[(2,1),(1,1)])");
  const Mat a = split_abelian(e);
  REQUIRE(a.cols() == 2);
  const auto w = adjoint_weights(e.ambient, e.inclusion * a);
  Mat m(2, 2);
  m << 2, 1, -1, 3;
  const auto wm = adjoint_weights(e.ambient, e.inclusion * a * m);
  Rng rng(5);
  for (int t = 0; t < 1000; ++t) {
    const Vec y1 = gaussian_vector(rng, 2), y2 = gaussian_vector(rng, 2);
    CHECK(rho(w, 0.5 * (y1 + y2)) <= 0.5 * (rho(w, y1) + rho(w, y2)) + 1e-10);
    CHECK(rho(w, 2.5 * y1) == doctest::Approx(2.5 * rho(w, y1)));
    CHECK(rho(wm, m.inverse() * y1) == doctest::Approx(rho(w, y1)));
  }
}

TEST_CASE("verdicts do not depend on the basis of a") {
  Rng rng(12);
  for (const std::string pair : {"pair(so(3,2), blocks[(2,1),(1,1)])", "pair(so(2,2), blocks[(1,1),(1,1)])",
                                 "pair(so(3,3), blocks[(2,2),(1,1)])", "pair(so(4,2), blocks[(3,1),(1,1)])"}) {
    CAPTURE(pair);
    const auto e = build_pair(pair);
    const auto base = bk_weak_containment(e);
    const Mat a = split_abelian(e);
    Mat m = Mat::Identity(a.cols(), a.cols()) + 0.3 * Mat::NullaryExpr(a.cols(), a.cols(), [&] { return uniform(rng, -1, 1); });
    const auto moved = bk_check(adjoint_weights(e.sub, a * m), adjoint_weights(e.ambient, e.inclusion * a * m));
    CHECK(moved.verdict == base.verdict);
  }
}

TEST_CASE("split abelian subspaces") {
  CHECK(split_abelian(build_pair("pair(so(2,2), blocks[(1,1),(1,1)])")).cols() == 2);
  CHECK(split_abelian(build_pair("pair(sl2R, so(2))")).cols() == 0);
  CHECK(split_abelian(build_pair("pair(su(2,1), so(2,1))")).cols() == 1);
}

TEST_CASE("Benoist-Kobayashi examples") {
  const auto c = bk_weak_containment(build_pair("so(3,1)|blocks[(1,1),(2,0)]"));
  CHECK(c.verdict == BKVerdict::Contained);
  CHECK(c.exact);
  std::map<int, int> gw;
  for (const auto& x : c.g_weights.weights) gw[static_cast<int>(std::lround(x.functional(0)))] += x.multiplicity;
  CHECK(gw == std::map<int, int>{{-1, 2}, {0, 2}, {1, 2}});

  const auto self = bk_weak_containment(build_pair("pair(sl2R, sl2R)"));
  CHECK(self.verdict == BKVerdict::Violated);
  REQUIRE(self.witness);
  CHECK(self.two_rho_h > self.rho_g);

  CHECK(bk_weak_containment(build_pair("pair(sl2R, diag)")).verdict == BKVerdict::Contained);
  CHECK(bk_weak_containment(build_pair("pair(sl2R, so(2))")).verdict == BKVerdict::Contained);
  CHECK(bk_weak_containment(build_pair("pair(su(2,1), so(2,1))")).verdict == BKVerdict::Contained);
}

TEST_CASE("chamber verdicts agree with sphere sampling") {
  for (const auto& blocks : sopq_compositions(3, 3)) {
    const auto f = sopq_family(3, 3, blocks);
    const auto c = bk_weak_containment(f.embedding);
    CAPTURE(f.embedding.label);
    REQUIRE(c.verdict != BKVerdict::Unknown);
    const auto s = bk_sphere_check(c, 20000, 2);
    CHECK((c.verdict == BKVerdict::Contained) == (s.violations == 0));
    if (f.bk_condition) CHECK(c.verdict == BKVerdict::Contained);
  }
}

TEST_CASE("explicit weight systems") {
  // h = a with weight 0 only; g with weights +-1: 0 <= 1.
  const WeightSystem h{1, {{Vec::Constant(1, 0.0), 1}}, true};
  const WeightSystem g{1, {{Vec::Constant(1, 1.0), 1}, {Vec::Constant(1, -1.0), 1}, {Vec::Constant(1, 0.0), 1}}, true};
  CHECK(bk_check(h, g).verdict == BKVerdict::Contained);
  // 2 rho_h = 2 |y| against rho_g = |y|.
  CHECK(bk_check(g, g).verdict == BKVerdict::Violated);
  const WeightSystem big{5, {{Vec::Zero(5), 1}}, true};
  CHECK_THROWS_AS(bk_check(big, big), Error);
}
