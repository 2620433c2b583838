#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "json.hpp"
#include "orbitcone/asymptotic.hpp"
#include "orbitcone/induction.hpp"
#include "orbitcone/orbits.hpp"

namespace orbitcone {

/// A catalog representation of SL(2,R): its orbital support, or, for
/// L^2(G/A), the subgroup pair whose induced set of {0} gives the wave front.
struct RepresentationSpec {
  std::string label;
  std::string description;     // e.g. "WF(sigma_n^+) = N+"
  OrbitFamily orbital_support;
  std::optional<std::string> induced_pair;
  NamedCone expected = NamedCone::Zero;
};

/// Labels: sigma_disc:n:+-, sigma_hyp:nu:+- (nu > 0), sigma_hyp:0:+,
/// sigma_limit:+-, L2_GK, int_hyp:- (integral of sigma_{nu,-}), L2_GA,
/// disc_sum:+- (sum over n of sigma_n^+-). Parenthesized forms such as
/// sigma_disc(3,+) are accepted. Throws ParseError.
RepresentationSpec parse_representation(std::string_view label);

/// Wave front set: AC of the orbital support (exact quadric rule when
/// options.allow_exact, else sampled), or the induced set for induced specs.
ConeDescription wavefront_of(const RepresentationSpec& spec, const AcOptions& options = {}, std::uint64_t seed = 1);

struct GoldenRow {
  std::string label;
  std::string description;
  NamedCone expected = NamedCone::Zero;
  ConeDescription computed;
  double defect = 0.0;  // Hausdorff angular distance to the expected cone
  bool passed = false;
};
struct GoldenTable {
  std::vector<GoldenRow> rows;
  bool all_passed = false;
  nlohmann::json to_json() const;
};
std::vector<std::string> golden_labels();
/// Every row is computed by sampling (exact shortcuts disabled) and compared
/// with the expected named cone at `angular_tol`.
GoldenTable golden_table(std::uint64_t seed = 1, double angular_tol = 0.05, int samples_per_radius = 50000,
                         int induced_budget = 100000);

SubalgebraEmbedding su21_so21_pair();
/// Sampled nilpotent cone of su(2,1).
ConeDescription quaternionic_wf(int samples = 20000, std::uint64_t seed = 1);

struct TensorReport {
  int n = 0, m = 0;
  char s1 = '+', s2 = '+';
  size_t samples = 0;
  size_t elliptic_plus = 0, elliptic_minus = 0, hyperbolic = 0, nilpotent = 0, zero = 0, mixed = 0;
  std::string sum_cone_class;  // EllPlus, EllMinus, ContainsHyperbolic or Mixed
  bool discretely_decomposable_obstructed = false;
  std::optional<Vec> witness;
  nlohmann::json to_json() const;
};
/// sigma_n^{s1} x sigma_m^{s2} restricted to the diagonal SL(2,R): classes of
/// orbit sums and the obstruction predicate on the product orbit directions.
TensorReport tensor_analysis(int n, char s1, int m, char s2, int samples = 10000, std::uint64_t seed = 1);

struct SopqFamily {
  SubalgebraEmbedding embedding;
  bool bk_condition = false;
  bool saturation_condition = false;
};
/// so(p,q) with block-diagonal prod so(p_i,q_i). bk_condition:
/// 2(p_i+q_i) <= p+q+2 whenever p_i q_i != 0. saturation_condition:
/// bk_condition and 2p_i <= p+1, 2q_i <= q+1 for all i and p+q > 2.
SopqFamily sopq_family(int p, int q, const std::vector<std::pair<int, int>>& blocks);
bool sopq_bk_condition(int p, int q, const std::vector<std::pair<int, int>>& blocks);
bool sopq_saturation_condition(int p, int q, const std::vector<std::pair<int, int>>& blocks);
/// All multisets of nonzero blocks (p_i, q_i) summing to (p, q), blocks in
/// nonincreasing order.
std::vector<std::vector<std::pair<int, int>>> sopq_compositions(int p, int q);

}  // namespace orbitcone
