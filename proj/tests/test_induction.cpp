#include <cmath>
#include <string>
#include <vector>

#include "doctest.h"
#include "oracles.hpp"
#include "orbitcone/catalog.hpp"
#include "orbitcone/induction.hpp"
#include "orbitcone/random.hpp"

using namespace orbitcone;

namespace {

std::vector<SubalgebraEmbedding> named_pairs() {
  std::vector<SubalgebraEmbedding> out;
  for (const std::string s : {"pair(su(2,1), so(2,1))", "diag(sl2R)", "pair(sl2R, diag)", "pair(sl2R, so(2))",
                              "pair(sl2R, sl2R)", "pair(sl2R, 0)", "pair(so(3,1), blocks[(1,1),(2,0)])",
                              "so(2,2)|blocks[(2,1),(0,1)]"})
    out.push_back(build_pair(s));
  return out;
}

// max |<q xi, Y>_h - <xi, i Y>_g| over random xi, Y, with both pairings
// evaluated as traces of matrix products.
double pullback_oracle(const SubalgebraEmbedding& e, Rng& rng) {
  double worst = 0.0;
  if (e.sub.dim() == 0) return 0.0;
  for (int t = 0; t < 4; ++t) {
    const Vec xi = gaussian_vector(rng, e.ambient.dim());
    const Vec y = gaussian_vector(rng, e.sub.dim());
    const Vec qxi = pullback_q(e, Covector{xi}).coords;
    const double lhs = oracle::trace_form(e.sub, qxi, y);
    const double rhs = oracle::trace_form(e.ambient, xi, e.inclusion * y);
    worst = std::max(worst, std::abs(lhs - rhs) / (1.0 + xi.norm() * y.norm()));
  }
  return worst;
}

double bracket_oracle(const SubalgebraEmbedding& e, Rng& rng) {
  if (e.sub.dim() == 0) return 0.0;
  const Vec a = gaussian_vector(rng, e.sub.dim()), b = gaussian_vector(rng, e.sub.dim());
  const CMat lhs = e.ambient.to_matrix(e.inclusion * e.sub.bracket(a, b));
  const CMat rhs =
      oracle::commutator(e.ambient.to_matrix(e.inclusion * a), e.ambient.to_matrix(e.inclusion * b));
  return (lhs - rhs).norm() / (1.0 + rhs.norm());
}

}  // namespace

TEST_CASE("pullback identity and bracket compatibility on named pairs") {
  Rng rng(2);
  for (const auto& e : named_pairs()) {
    CAPTURE(e.label);
    CHECK(pullback_oracle(e, rng) <= 1e-12);
    CHECK(bracket_oracle(e, rng) <= 1e-12);
    const auto d = embedding_defects(e);
    CHECK(d.pullback <= 1e-12);
    CHECK(d.bracket <= 1e-12);
    CHECK(d.complement_det > 1e-6);
    CHECK(e.complement.cols() == e.ambient.dim() - e.sub.dim());
  }
}

TEST_CASE("pullback identity on every so(p,q) block embedding") {
  Rng rng(3);
  size_t count = 0;
  for (int n = 2; n <= 8; ++n)
    for (int p = 0; p <= n; ++p)
      for (const auto& blocks : sopq_compositions(p, n - p)) {
        const auto e = sopq_block_embedding(p, n - p, blocks);
        CAPTURE(e.label);
        CHECK(pullback_oracle(e, rng) <= 1e-12);
        ++count;
      }
  CHECK(count == 1161);
}

TEST_CASE("diagonal pullback is the sum of the factors") {
  const auto e = diagonal_embedding(make_sl2r());
  Vec xi(6);
  xi << 1, 2, 3, -4, 5, 0.5;
  CHECK((pullback_q(e, Covector{xi}).coords - Vec(Eigen::Vector3d(-3, 7, 3.5))).norm() < 1e-12);
}

TEST_CASE("annihilator of so(2) in sl2R is the x-y plane") {
  const auto e = build_pair("pair(sl2R, so(2))");
  const auto a = annihilator_cone(e);
  CHECK(cone_contains(a, Eigen::Vector3d(1, -2, 0)));
  CHECK_FALSE(cone_contains(a, Eigen::Vector3d(0, 0, 1), 1e-6));
}

TEST_CASE("block partition errors") {
  CHECK_THROWS_AS(sopq_block_embedding(3, 1, {{1, 1}}), Error);
  CHECK_THROWS_AS(sopq_block_embedding(3, 1, {{0, 0}, {3, 1}}), Error);
  try {
    build_pair("pair(so(3,1), blocks[(2,1),(2,0)])");
    CHECK(false);
  } catch (const Error& err) {
    CHECK(err.code() == ErrorCode::BadPartition);
  }
  CHECK(parse_blocks("blocks[(1,1),(2,0)]") == std::vector<std::pair<int, int>>{{1, 1}, {2, 0}});
}

TEST_CASE("induced cone from the split torus of sl2R") {
  const auto e = build_pair("pair(sl2R, diag)");
  const auto r = induced_cone(e, ConeDescription::exact(NamedCone::Zero, 1), 20000, 1);
  CHECK(hausdorff_distance(r.cone, ConeDescription::exact(NamedCone::Full, 3)) <= 0.1);
  // 0 lies in S, so the annihilator of h is part of the induced set.
  for (const auto& u : direction_samples(annihilator_cone(e), 0.05)) CHECK(angular_distance(r.cone, u) <= 0.05);
  CHECK(r.census.fraction(ElementTag::Elliptic) > 0.01);
  CHECK(r.census.fraction(ElementTag::Hyperbolic) > 0.01);
  CHECK(r.census.count(ElementTag::Nilpotent) > 0);
}

TEST_CASE("induced cone is Ad*-stable") {
  const auto e = build_pair("pair(sl2R, so(2))");
  const auto r = induced_cone(e, ConeDescription::exact(NamedCone::Zero, 1), 20000, 4);
  CHECK(r.census.count(ElementTag::Elliptic) == 0);
  Rng rng(8);
  const auto& dirs = r.cone.as_sampled().directions;
  for (int t = 0; t < 200; ++t) {
    const Vec u = dirs[rng() % dirs.size()];
    const Vec v = random_group_element(e.ambient, rng, 2, 0.5) * u;
    // Transported directions stay in the closed hyperbolic set.
    CHECK(cone_contains(ConeDescription::exact(NamedCone::HypClosure, 3), v, 1e-9));
    CHECK(angular_distance(r.cone, v) <= 0.05);
  }
}

TEST_CASE("induction commutes with positive scaling of S") {
  const auto e = build_pair("pair(sl2R, diag)");
  InducedOptions o;
  o.budget = 10000;
  const auto a = induced_cone(e, ConeDescription::polyhedral({Vec::Constant(1, 1.0)}, 1), o, 6).cone;
  const auto b = induced_cone(e, ConeDescription::polyhedral({Vec::Constant(1, 40.0)}, 1), o, 6).cone;
  CHECK(hausdorff_distance(a, b) <= 0.1);
}

TEST_CASE("restriction commutes with positive scaling") {
  const auto e = build_pair("pair(sl2R, diag)");
  const std::vector<Vec> gens = {Eigen::Vector3d(1, 0, 1), Eigen::Vector3d(0, 1, 2)};
  std::vector<Vec> scaled;
  for (const auto& g : gens) scaled.push_back(13.0 * g);
  const auto a = restriction_lower_bound(e, ConeDescription::polyhedral(gens, 3), 3, false);
  const auto b = restriction_lower_bound(e, ConeDescription::polyhedral(scaled, 3), 3, false);
  CHECK(hausdorff_distance(a.cone, b.cone) <= 1e-9);
}

TEST_CASE("induced cone budget check") {
  const auto e = build_pair("pair(sl2R, diag)");
  CHECK_THROWS_AS(induced_cone(e, ConeDescription::exact(NamedCone::Zero, 1), 10, 1), Error);
}

TEST_CASE("restriction and the obstruction predicate") {
  const auto e = build_pair("pair(sl2R, so(2))");
  const auto full = ConeDescription::exact(NamedCone::Full, 3);
  const auto r = restriction_lower_bound(e, full);
  CHECK(angular_distance(r.cone, Vec::Constant(1, 1.0)) < 1e-9);
  CHECK(angular_distance(r.cone, Vec::Constant(1, -1.0)) < 1e-9);
  // so(2) is compact: every direction is elliptic, so no obstruction.
  CHECK_FALSE(discrete_decomposability_obstruction(e, full));

  const auto d = build_pair("diag(sl2R)");
  CHECK(discrete_decomposability_obstruction(d, ConeDescription::exact(NamedCone::Full, 6)));
}
