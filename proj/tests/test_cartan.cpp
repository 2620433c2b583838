#include <set>
#include <string>
#include <vector>

#include "doctest.h"
#include "orbitcone/cartan.hpp"
#include "orbitcone/catalog.hpp"

using namespace orbitcone;

namespace {

// Cartan subalgebras of so(p,q) decompose R^{p,q} into a boost planes of
// signature (1,1), b blocks of signature (2,2) carrying a complex pair,
// c1 / c2 rotation planes in the positive / negative part and at most one
// leftover line. The signature is (b + c1 + c2, a + b).
std::set<CartanSignature> sopq_signatures(int p, int q) {
  std::set<CartanSignature> out;
  const int rank = (p + q) / 2;
  for (int a = 0; a <= rank; ++a)
    for (int b = 0; 2 * b <= rank; ++b)
      for (int c1 = 0; c1 <= rank; ++c1)
        for (int c2 = 0; c2 <= rank; ++c2) {
          if (a + 2 * b + c1 + c2 != rank) continue;
          const int rp = p - a - 2 * b - 2 * c1, rq = q - a - 2 * b - 2 * c2;
          if (rp < 0 || rq < 0 || rp + rq > 1) continue;
          out.insert({b + c1 + c2, a + b});
        }
  return out;
}

std::set<CartanSignature> computed(const MatrixLieAlgebra& L) {
  std::set<CartanSignature> out;
  for (const auto& c : cartan_classes(L)) {
    CHECK(c.abelian_defect <= 1e-10);
    CHECK(c.basis.cols() == c.signature.compact_dim + c.signature.split_dim);
    out.insert(c.signature);
  }
  return out;
}

}  // namespace

TEST_CASE("oracle sanity") {
  CHECK(sopq_signatures(2, 1) == std::set<CartanSignature>{{1, 0}, {0, 1}});
  CHECK(sopq_signatures(3, 1) == std::set<CartanSignature>{{1, 1}});
  CHECK(sopq_signatures(2, 2) == std::set<CartanSignature>{{2, 0}, {1, 1}, {0, 2}});
}

TEST_CASE("algebra rank") {
  CHECK(algebra_rank(make_sl2r()) == 1);
  CHECK(algebra_rank(make_su21()) == 2);
  CHECK(algebra_rank(make_so(3, 3)) == 3);
  CHECK(algebra_rank(make_abelian(3)) == 3);
}

TEST_CASE("Cartan classes of small algebras") {
  CHECK(computed(make_sl2r()) == std::set<CartanSignature>{{1, 0}, {0, 1}});
  CHECK(computed(make_su21()) == std::set<CartanSignature>{{2, 0}, {1, 1}});
  CHECK(computed(make_abelian(2)) == std::set<CartanSignature>{{0, 2}});
}

TEST_CASE("Cartan classes of so(p,q) match the block oracle") {
  for (int n = 2; n <= 7; ++n)
    for (int p = 0; p <= n; ++p) {
      CAPTURE(p);
      CAPTURE(n - p);
      CHECK(computed(make_so(p, n - p)) == sopq_signatures(p, n - p));
    }
}

TEST_CASE("regular elements and their centralizers") {
  const auto L = make_sl2r();
  const auto h = cartan_of_element(L, Eigen::Vector3d(1, 0, 0), 1);
  REQUIRE(h);
  CHECK(h->signature == CartanSignature{0, 1});
  const auto t = cartan_of_element(L, Eigen::Vector3d(0, 0, 2), 1);
  REQUIRE(t);
  CHECK(t->signature == CartanSignature{1, 0});
  CHECK_FALSE(cartan_of_element(L, Eigen::Vector3d(1, 0, 1), 1));
}

TEST_CASE("saturation examples") {
  const auto a = saturation_is_full(build_pair("pair(sl2R, diag)"));
  CHECK(a.verdict == SaturationVerdict::Full);
  CHECK(a.certificates.size() == 2);

  const auto k = saturation_is_full(build_pair("pair(sl2R, so(2))"));
  CHECK(k.verdict == SaturationVerdict::NotFull);
  REQUIRE(k.missing.size() == 1);
  CHECK(k.missing.front() == CartanSignature{1, 0});
  CHECK_FALSE(k.refutation.empty());

  CHECK(saturation_is_full(su21_so21_pair()).verdict == SaturationVerdict::Full);
  CHECK(saturation_is_full(sopq_block_embedding(3, 2, {{2, 1}, {1, 1}})).verdict == SaturationVerdict::Full);
  CHECK(sopq_saturation_condition(4, 2, {{1, 1}, {1, 1}, {2, 0}}));
  CHECK(saturation_is_full(sopq_block_embedding(4, 2, {{1, 1}, {1, 1}, {2, 0}})).verdict == SaturationVerdict::Full);
}

TEST_CASE("saturation condition implies a certified full saturation for p + q <= 6") {
  int checked = 0;
  for (int n = 3; n <= 6; ++n)
    for (int p = 0; p <= n; ++p)
      for (const auto& blocks : sopq_compositions(p, n - p)) {
        const auto f = sopq_family(p, n - p, blocks);
        if (!f.saturation_condition) continue;
        CAPTURE(f.embedding.label);
        CHECK(saturation_is_full(f.embedding).verdict == SaturationVerdict::Full);
        ++checked;
      }
  CHECK(checked == 148);
}
