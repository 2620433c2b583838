#pragma once

#include <iosfwd>
#include <string>
#include <variant>
#include <vector>

#include "json.hpp"
#include "orbitcone/lie_algebra.hpp"

namespace orbitcone {

/// Closed cones of the sl(2,R) quadric catalog in the (x, y, z) chart, plus
/// the trivial cones that exist in every dimension.
enum class NamedCone {
  Zero,
  Full,
  Nplus,            // x^2 + y^2 = z^2, z >= 0
  Nminus,           // x^2 + y^2 = z^2, z <= 0
  N,                // x^2 + y^2 = z^2
  HypClosure,       // x^2 + y^2 - z^2 >= 0
  EllPlusClosure,   // z^2 - x^2 - y^2 >= 0, z >= 0
  EllMinusClosure,  // z^2 - x^2 - y^2 >= 0, z <= 0
};
const char* to_string(NamedCone c);
NamedCone named_cone_from_string(const std::string& s);
/// Defining inequalities, in text form, of a named cone.
std::vector<std::string> named_cone_inequalities(NamedCone c);

struct ExactCone {
  NamedCone name = NamedCone::Zero;
};
struct PolyhedralCone {
  std::vector<Vec> generators;
};
struct SampledCone {
  std::vector<Vec> directions;  // unit vectors
  double tol = 0.02;            // angular resolution, radians
};

class ConeDescription {
 public:
  using Kind = std::variant<ExactCone, PolyhedralCone, SampledCone>;

  ConeDescription() = default;
  static ConeDescription exact(NamedCone name, int dim, std::string algebra = {});
  static ConeDescription polyhedral(std::vector<Vec> generators, int dim, std::string algebra = {});
  static ConeDescription sampled(std::vector<Vec> directions, double tol, int dim, std::string algebra = {});

  int dim() const { return dim_; }
  const std::string& algebra() const { return algebra_; }
  const Kind& kind() const { return kind_; }

  bool is_exact() const { return std::holds_alternative<ExactCone>(kind_); }
  bool is_polyhedral() const { return std::holds_alternative<PolyhedralCone>(kind_); }
  bool is_sampled() const { return std::holds_alternative<SampledCone>(kind_); }
  const ExactCone& as_exact() const { return std::get<ExactCone>(kind_); }
  const PolyhedralCone& as_polyhedral() const { return std::get<PolyhedralCone>(kind_); }
  const SampledCone& as_sampled() const { return std::get<SampledCone>(kind_); }

  /// True when the cone has no nonzero direction.
  bool is_zero() const;

 private:
  Kind kind_ = ExactCone{};
  int dim_ = 0;
  std::string algebra_;
};

/// Nearest-direction queries over a fixed set of unit vectors.
class DirectionIndex {
 public:
  DirectionIndex() = default;
  explicit DirectionIndex(std::vector<Vec> directions);

  bool empty() const { return dirs_.empty(); }
  size_t size() const { return dirs_.size(); }
  const std::vector<Vec>& directions() const { return dirs_; }
  /// Angle (radians) from a unit vector to the closest stored direction;
  /// pi when the set is empty.
  double nearest_angle(const Vec& u) const;
  /// True when some stored direction is within `angle` of u.
  bool within(const Vec& u, double angle) const;

 private:
  double nearest_chord(const Vec& u, double start_window) const;
  std::vector<Vec> dirs_;
  std::vector<double> keys_;  // sorted first coordinate
};

/// Greedy deduplication: keeps a direction only if no kept direction lies
/// within `tol` radians. Input order decides which representative survives.
std::vector<Vec> dedupe_directions(const std::vector<Vec>& directions, double tol);

bool cone_contains(const ConeDescription& c, const Vec& xi, double tol = 1e-9);

/// Angle from the unit vector u to the nearest nonzero direction of c.
double angular_distance(const ConeDescription& c, const Vec& u);

/// Deterministic unit-direction sample of the cone at roughly the given
/// angular spacing.
std::vector<Vec> direction_samples(const ConeDescription& c, double resolution = 0.01);

/// Symmetric Hausdorff distance between the direction sets on the unit sphere.
double hausdorff_distance(const ConeDescription& a, const ConeDescription& b, double resolution = 0.01);
bool cone_equal(const ConeDescription& a, const ConeDescription& b, double angular_tol);

ConeDescription cone_union(const std::vector<ConeDescription>& cones);

/// {xi : <xi, y> <= 0 for every generator y}, returned with generators.
/// Coordinates use the standard dot product. Throws DimensionTooLarge above 8.
ConeDescription dual_cone(const ConeDescription& polyhedral);

/// xi in C_delta = { eta : |xi - t eta| < delta for some t > 0 }, |xi| = 1.
bool conic_neighborhood_contains(const Vec& xi, double delta, const Vec& eta);
/// inf_{t > 0} |xi - t eta|.
double ray_distance(const Vec& xi, const Vec& eta);

nlohmann::json cone_record(const ConeDescription& c);
/// One unit vector per row, header from `columns` (or c0, c1, ...).
void write_directions_csv(std::ostream& os, const ConeDescription& c, const std::vector<std::string>& columns = {},
                          double resolution = 0.02);

namespace linalg {
/// min |A w - b| subject to w >= 0 (Lawson-Hanson active set).
Vec nonnegative_least_squares(const Mat& a, const Vec& b);
}  // namespace linalg

}  // namespace orbitcone
