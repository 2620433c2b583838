#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "orbitcone/induction.hpp"
#include "orbitcone/lie_algebra.hpp"

namespace orbitcone {

/// (compact dimension, split dimension) of a Cartan subalgebra.
struct CartanSignature {
  int compact_dim = 0;
  int split_dim = 0;
  auto operator<=>(const CartanSignature&) const = default;
};
std::string to_string(const CartanSignature& s);

struct CartanClass {
  CartanSignature signature;
  Mat basis;      // columns, algebra coordinates
  Vec generator;  // regular semisimple element whose centralizer is `basis`
  double abelian_defect = 0.0;
};

/// Rank of L: the minimal nullity of ad_X over random X.
int algebra_rank(const MatrixLieAlgebra& L, std::uint64_t seed = 11);

/// Centralizer of x as a Cartan subalgebra when x is regular semisimple
/// (nullity of ad_x equals `rank`, centralizer abelian and semisimple).
std::optional<CartanClass> cartan_of_element(const MatrixLieAlgebra& L, const Vec& x, int rank);

/// Representatives of Cartan subalgebras with pairwise different signatures,
/// found by a randomized search over X = k + t p. Supported: sl2R, su(2,1),
/// so(p,q) with p + q <= 8, abelian(n) and products of these.
std::vector<CartanClass> cartan_classes(const MatrixLieAlgebra& L, int budget = 4000, std::uint64_t seed = 1);

enum class SaturationVerdict { Full, NotFull, Unknown };
const char* to_string(SaturationVerdict v);

struct SaturationResult {
  SaturationVerdict verdict = SaturationVerdict::Unknown;
  std::vector<CartanClass> ambient_classes;
  std::vector<CartanClass> certificates;  // regular semisimple elements of the complement, one per class found
  std::vector<CartanSignature> missing;
  std::string refutation;                 // reason for NotFull
  int samples_used = 0;
};

/// Searches the orthocomplement for regular semisimple elements of every
/// Cartan class of the ambient algebra. NotFull is returned only with an
/// exact argument: the complement consists of hyperbolic elements and a
/// missing class has no regular element in its split part.
SaturationResult saturation_is_full(const SubalgebraEmbedding& e, int budget = 20000, std::uint64_t seed = 1);

}  // namespace orbitcone
