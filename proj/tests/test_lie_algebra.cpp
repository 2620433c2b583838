#include <cmath>
#include <string>
#include <vector>

#include "doctest.h"
#include "oracles.hpp"
#include "orbitcone/lie_algebra.hpp"
#include "orbitcone/random.hpp"

using namespace orbitcone;

namespace {

std::vector<std::string> catalog_algebras() {
  std::vector<std::string> out = {"sl2R", "su(2,1)", "abelian(1)", "abelian(3)", "prod(sl2R,sl2R)",
                                  "prod(sl2R,abelian(1))"};
  for (int n = 2; n <= 8; ++n)
    for (int p = 0; p <= n; ++p) out.push_back("so(" + std::to_string(p) + "," + std::to_string(n - p) + ")");
  return out;
}

}  // namespace

TEST_CASE("sl2R chart and trace form") {
  const auto L = make_sl2r();
  REQUIRE(L.dim() == 3);
  CHECK((L.gram() - Vec(Eigen::Vector3d(2, 2, -2)).asDiagonal().toDenseMatrix()).norm() < 1e-14);
  // x^2 + y^2 - z^2 is the Casimir in this chart.
  const Vec xi(Eigen::Vector3d(0.3, -1.2, 2.0));
  CHECK(std::abs(0.5 * L.trace_pairing(xi, xi) - (0.09 + 1.44 - 4.0)) < 1e-12);
}

TEST_CASE("sl2R bracket of e_x and e_z") {
  // [[1,0],[0,-1]] [[0,-1],[1,0]] - [[0,-1],[1,0]] [[1,0],[0,-1]] = [[0,-2],[-2,0]].
  const auto L = make_sl2r();
  CHECK((L.bracket(Vec::Unit(3, 0), Vec::Unit(3, 2)) - Vec(Eigen::Vector3d(0, -2, 0))).norm() < 1e-14);
  CHECK((L.bracket(Vec::Unit(3, 0), Vec::Unit(3, 1)) - Vec(Eigen::Vector3d(0, 0, -2))).norm() < 1e-14);
  CHECK((L.gram() * Vec::Unit(3, 0) - Vec(Eigen::Vector3d(2, 0, 0))).norm() < 1e-14);
}

TEST_CASE("structure constants agree with matrix commutators") {
  for (const auto& name : catalog_algebras()) {
    CAPTURE(name);
    const auto L = build_algebra(name);
    Rng rng(7);
    for (int t = 0; t < 5; ++t) {
      const Vec x = gaussian_vector(rng, L.dim()), y = gaussian_vector(rng, L.dim());
      const CMat lhs = L.to_matrix(L.bracket(x, y));
      const CMat rhs = oracle::commutator(L.to_matrix(x), L.to_matrix(y));
      CHECK((lhs - rhs).norm() <= 1e-12 * (1.0 + rhs.norm()));
      CHECK(std::abs(L.trace_pairing(x, y) - oracle::trace_form(L, x, y)) <= 1e-12 * (1.0 + x.norm() * y.norm()));
    }
  }
}

TEST_CASE("Jacobi and invariance on catalog algebras") {
  for (const auto& name : catalog_algebras()) {
    CAPTURE(name);
    const auto d = structure_defects(build_algebra(name));
    CHECK(d.antisymmetry <= 1e-12);
    CHECK(d.jacobi <= 1e-12);
    CHECK(d.invariance <= 1e-12);
    CHECK(d.gram_asymmetry <= 1e-12);
    CHECK(d.matrix_bracket <= 1e-12);
  }
}

TEST_CASE("dual identification is the identity chart") {
  const auto L = make_su21();
  Rng rng(3);
  const Vec x = gaussian_vector(rng, L.dim()), y = gaussian_vector(rng, L.dim());
  const Covector xi = identify_dual(L, AlgebraElement{x});
  CHECK((xi.coords - x).norm() < 1e-14);
  CHECK(std::abs(pairing(L, xi, AlgebraElement{y}) - oracle::trace_form(L, x, y)) < 1e-12);
  const Vec vals = functional_values(L, xi);
  CHECK((covector_from_functional(L, vals).coords - x).norm() < 1e-10);
  CHECK((identify_dual_inverse(L, xi).coords - x).norm() < 1e-14);
}

TEST_CASE("coadjoint action is the negative transpose pairing") {
  const auto L = make_so(2, 1);
  Rng rng(5);
  const Vec x = gaussian_vector(rng, 3), y = gaussian_vector(rng, 3), xi = gaussian_vector(rng, 3);
  const Covector ad = coadjoint_ad(L, AlgebraElement{x}, Covector{xi});
  const double lhs = pairing(L, ad, AlgebraElement{y});
  const double rhs = -oracle::trace_form(L, xi, L.bracket(x, y));
  CHECK(std::abs(lhs - rhs) < 1e-12);
  // Ad* preserves the trace form.
  const Mat g = coadjoint_exp(L, x, 0.7);
  const Vec a = g * xi, b = g * y;
  CHECK(std::abs(L.trace_pairing(a, b) - L.trace_pairing(xi, y)) < 1e-10);
  const Covector stepped = group_orbit_step(L, {GroupStep{AlgebraElement{x}, 0.7}}, Covector{xi});
  CHECK((stepped.coords - a).norm() < 1e-12);
}

TEST_CASE("classification examples") {
  const auto L = make_sl2r();
  auto tag = [&](double x, double y, double z) { return classify_element(L, Covector{Eigen::Vector3d(x, y, z)}).tag; };
  CHECK(tag(1, 0, 0) == ElementTag::Hyperbolic);
  CHECK(tag(0, 0, 1) == ElementTag::Elliptic);
  CHECK(tag(0, 0, -3) == ElementTag::Elliptic);
  CHECK(tag(1, 0, 1) == ElementTag::Nilpotent);
  CHECK(tag(0, 1, -1) == ElementTag::Nilpotent);
  CHECK(tag(0, 0, 0) == ElementTag::Zero);
  CHECK(tag(2, 1, 1) == ElementTag::Hyperbolic);
  CHECK(tag(0.5, 0.5, 1) == ElementTag::Elliptic);

  const auto P = build_algebra("prod(sl2R,sl2R)");
  Vec m(6);
  m << 1, 0, 0, 0, 0, 1;
  CHECK(classify_element(P, Covector{m}).tag == ElementTag::Mixed);

  const auto cls = classify_element(L, Covector{Eigen::Vector3d(3, 0, 0)});
  REQUIRE(cls.eigenvalues.size() == 3);
  // Unit-normalized hyperbolic element: ad spectrum {-2, 0, 2} / |X|.
  CHECK(std::abs(cls.eigenvalues.back().real() - 2.0) < 1e-9);
}

TEST_CASE("classification is Ad*-invariant") {
  for (const std::string name : {"sl2R", "su(2,1)", "so(3,1)"}) {
    CAPTURE(name);
    const auto L = build_algebra(name);
    Rng rng(17);
    for (int t = 0; t < 100; ++t) {
      const Vec xi = gaussian_vector(rng, L.dim());
      const auto before = classify_element(L, Covector{xi}).tag;
      const Mat g = random_group_element(L, rng, 3, 1.0);
      CHECK(classify_element(L, Covector{g * xi}).tag == before);
    }
  }
}

TEST_CASE("exp Jacobian matches finite differences") {
  const auto L = make_sl2r();
  Rng rng(23);
  for (int t = 0; t < 20; ++t) {
    const Vec x = gaussian_vector(rng, 3) * uniform(rng, 0.1, 2.0);
    const auto ej = exp_jacobian(L, AlgebraElement{x});
    const double fd = oracle::exp_jacobian_fd(L, x);
    CHECK(std::abs(ej.j - fd) <= 1e-4 * std::max(1.0, fd));
    CHECK(std::abs(ej.j - std::abs(ej.j_sqrt)) <= 1e-10 * std::max(1.0, ej.j));
  }
  CHECK(exp_jacobian(L, AlgebraElement{Vec::Zero(3)}).j == doctest::Approx(1.0));
}

TEST_CASE("semisimple elements and Cartan decomposition") {
  const auto L = make_sl2r();
  CHECK(is_semisimple_element(L, Eigen::Vector3d(1, 0, 0)));
  CHECK(is_semisimple_element(L, Eigen::Vector3d(0, 0, 1)));
  CHECK_FALSE(is_semisimple_element(L, Eigen::Vector3d(1, 0, 1)));
  const auto cd = cartan_decomposition(L);
  CHECK(cd.theta_stable);
  CHECK(cd.k_basis.cols() == 1);
  CHECK(cd.p_basis.cols() == 2);
  const auto su = cartan_decomposition(make_su21());
  CHECK(su.k_basis.cols() == 4);
  CHECK(su.p_basis.cols() == 4);
}

TEST_CASE("algebra parsing errors") {
  auto code_of = [](const std::string& s) {
    try {
      build_algebra(s);
    } catch (const Error& e) {
      return e.code();
    }
    return ErrorCode::InvalidArgument;
  };
  CHECK(code_of("sl3R") == ErrorCode::UnsupportedAlgebra);
  CHECK(code_of("so(6,5)") == ErrorCode::DimensionTooLarge);
  CHECK_THROWS_AS(build_algebra("so(2,"), Error);
  CHECK(build_algebra("so(2,1)").dim() == 3);
  CHECK(build_algebra(" prod( sl2R , abelian(2) ) ").dim() == 5);
}
