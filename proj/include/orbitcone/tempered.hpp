#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "json.hpp"
#include "orbitcone/induction.hpp"
#include "orbitcone/lie_algebra.hpp"

namespace orbitcone {

struct Weight {
  Vec functional;  // values on the basis of the split abelian subspace
  int multiplicity = 0;
};

/// Joint weights of a commuting family of R-diagonalizable operators.
struct WeightSystem {
  int ambient_dim = 0;
  std::vector<Weight> weights;
  bool integral = false;  // every functional rounded to integers within 1e-6
  nlohmann::json to_json() const;
};

/// Maximal abelian subspace of h acting R-diagonalizably on h, in h
/// coordinates. The basis is scaled so that the weights of the defining
/// representation of the ambient algebra are small integers.
Mat split_abelian(const SubalgebraEmbedding& e);

/// Weights of the commuting family `action` (one matrix per basis element of
/// the abelian subspace). Throws NonCommuting / InvalidArgument.
WeightSystem weights_of_action(const std::vector<Mat>& action, int module_dim);
/// Adjoint weights of L for the abelian subspace with the given basis (columns, L coordinates).
WeightSystem adjoint_weights(const MatrixLieAlgebra& L, const Mat& a_basis);

/// Sum over weights of mult * max(lambda(Y), 0).
double rho(const WeightSystem& w, const Vec& y);

enum class BKVerdict { Contained, Violated, Unknown };
const char* to_string(BKVerdict v);

struct BKCertificate {
  BKVerdict verdict = BKVerdict::Unknown;
  std::optional<Vec> witness;  // unit ray of the abelian subspace
  double two_rho_h = 0.0;      // at the witness
  double rho_g = 0.0;
  bool exact = false;          // integer arithmetic was used
  size_t hyperplanes = 0;
  size_t candidate_rays = 0;
  int lineality_dim = 0;
  WeightSystem h_weights;
  WeightSystem g_weights;
  Mat a_basis;  // h coordinates (empty when only weight systems were given)
  nlohmann::json to_json() const;
};

/// Global check of 2 rho_h <= rho_g on the abelian subspace by enumerating
/// the candidate extreme rays of the arrangement of weight hyperplanes.
/// Throws DimensionTooLarge above dimension 4.
BKCertificate bk_check(const WeightSystem& h, const WeightSystem& g);
BKCertificate bk_weak_containment(const SubalgebraEmbedding& e);

struct SphereCheck {
  size_t samples = 0;
  size_t violations = 0;
  double min_margin = 0.0;  // min of rho_g - 2 rho_h over the samples
  double witness_angle = 0.0;  // angle from the witness to the nearest violating sample
};
/// Random unit rays of the abelian subspace; a sample violates when
/// rho_g - 2 rho_h < -1e-9.
SphereCheck bk_sphere_check(const BKCertificate& c, size_t samples = 100000, std::uint64_t seed = 1);

}  // namespace orbitcone
