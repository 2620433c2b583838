#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "orbitcone/cone.hpp"
#include "orbitcone/lie_algebra.hpp"

namespace orbitcone {

/// A subalgebra h of g with the dual projection q and the trace-form
/// orthocomplement of h.
struct SubalgebraEmbedding {
  std::string label;
  MatrixLieAlgebra ambient;
  MatrixLieAlgebra sub;
  Mat inclusion;   // dim g x dim h; column j = image of the j-th basis vector of h
  Mat q;           // dim h x dim g; covector pullback
  Mat complement;  // dim g x (dim g - dim h); orthonormal basis of the orthocomplement
};

/// Validates bracket compatibility and builds q and the complement.
SubalgebraEmbedding make_embedding(std::string label, MatrixLieAlgebra ambient, MatrixLieAlgebra sub, Mat inclusion);
/// Embedding given by the inclusion of matrix realizations (same matrix size).
SubalgebraEmbedding embed_by_matrices(std::string label, MatrixLieAlgebra ambient, MatrixLieAlgebra sub);
/// Block-diagonal prod so(p_i, q_i) inside so(p, q). Throws BadPartition.
SubalgebraEmbedding sopq_block_embedding(int p, int q, const std::vector<std::pair<int, int>>& blocks);
/// X -> (X, X) from A into A x A.
SubalgebraEmbedding diagonal_embedding(const MatrixLieAlgebra& a);

/// Parses "pair(su(2,1), so(2,1))", "pair(so(p,q), blocks[(p1,q1),...])",
/// "so(p,q)|blocks[...]", "diag(sl2R)", "pair(sl2R, diag)" (diagonal torus),
/// "pair(sl2R, so(2))", "pair(A, A)" and "pair(A, 0)".
SubalgebraEmbedding build_pair(std::string_view spec);
std::vector<std::pair<int, int>> parse_blocks(std::string_view text);

struct EmbeddingDefects {
  double bracket = 0.0;
  double pullback = 0.0;
  double complement_det = 0.0;  // |det [inclusion | complement]| with unit columns
};
EmbeddingDefects embedding_defects(const SubalgebraEmbedding& e);

Covector pullback_q(const SubalgebraEmbedding& e, const Covector& xi);
/// The subspace {xi : q(xi) = 0}, as a polyhedral cone with +- generators.
ConeDescription annihilator_cone(const SubalgebraEmbedding& e);

/// Counts of element classes over a set of covectors.
struct ClassCensus {
  std::array<size_t, 5> counts{};  // indexed by ElementTag
  size_t total = 0;
  void add(ElementTag t) {
    ++counts[static_cast<size_t>(t)];
    ++total;
  }
  size_t count(ElementTag t) const { return counts[static_cast<size_t>(t)]; }
  double fraction(ElementTag t) const { return total ? static_cast<double>(count(t)) / total : 0.0; }
  nlohmann::json to_json() const;
};

struct InducedOptions {
  int budget = 100000;      // group-transported samples
  int steps = 3;            // one-parameter factors per group element
  double max_scale = 3.0;   // step sizes up to this magnitude
  double tol = 0.02;        // dedupe resolution of the returned directions
  int boundary_every = 10;  // one boundary search per this many samples
};

struct InducedResult {
  ConeDescription cone;
  ClassCensus census;        // classes of sampled pre-images and boundary points
  size_t boundary_points = 0;
};

/// Sampled closure of Ad*(G) q^{-1}(S). Class boundaries are located by
/// bisection on segments of q^{-1}(S) with a fixed lift, so that lower
/// dimensional classes (nilpotent directions) enter the census.
InducedResult induced_cone(const SubalgebraEmbedding& e, const ConeDescription& s, const InducedOptions& options,
                           std::uint64_t seed);
InducedResult induced_cone(const SubalgebraEmbedding& e, const ConeDescription& s, int budget, std::uint64_t seed);

struct RestrictionResult {
  ConeDescription cone;
  ClassCensus census;  // classes in h of the image directions
  size_t boundary_points = 0;
};
/// Closure of q(C). When `ad_invariant` is set, C is assumed Ad*(G)-stable
/// and class boundaries of the image are refined along curves
/// t -> q(Ad*(exp tX) u).
RestrictionResult restriction_lower_bound(const SubalgebraEmbedding& e, const ConeDescription& c,
                                          std::uint64_t seed = 1, bool ad_invariant = true, double tol = 0.02);

struct ObstructionResult {
  bool obstructed = false;
  ClassCensus census;
  std::optional<Vec> witness;  // a direction of q(C) outside the closed elliptic set
};
/// True when some direction of q(C) is neither elliptic, nilpotent nor zero
/// in h (so the restriction cannot be a discrete sum).
ObstructionResult discrete_decomposability_report(const SubalgebraEmbedding& e, const ConeDescription& c);
bool discrete_decomposability_obstruction(const SubalgebraEmbedding& e, const ConeDescription& c);

}  // namespace orbitcone
