#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "orbitcone/cone.hpp"
#include "orbitcone/random.hpp"

namespace orbitcone {

/// A seeded point set S in i g*. The sampler draws a point of S with norm at
/// least `min_norm`, or returns nullopt when S has no such point (for a
/// bounded set and a large enough `min_norm`).
struct PointFamily {
  using Sampler = std::function<std::optional<Vec>(Rng& rng, double min_norm)>;

  std::string name;
  int dim = 0;
  std::string algebra;
  Sampler sampler;
  std::optional<NamedCone> exact_tag;  // known asymptotic cone, if any
};

struct AcOptions {
  std::vector<double> radii{10.0, 30.0, 100.0, 300.0};
  int samples_per_radius = 50000;
  double tol = 0.02;
  bool allow_exact = true;
};

struct AcResult {
  ConeDescription cone;
  bool exact = false;
  std::vector<size_t> counts;           // points kept per radius
  std::vector<double> radius_defects;   // Hausdorff between consecutive radii
};

AcResult asymptotic_cone_report(const PointFamily& f, const AcOptions& options, std::uint64_t seed);
ConeDescription asymptotic_cone(const PointFamily& f, const std::vector<double>& radii, int samples_per_radius,
                                std::uint64_t seed, double tol = 0.02, bool allow_exact = true);

/// Points of norm in [R, 2R] along one fixed direction.
PointFamily ray_family(const Vec& direction, std::string algebra = {});
/// Points of the closed ball of the given radius; its asymptotic cone is {0}.
PointFamily bounded_family(int dim, double radius, std::string algebra = {});
/// Points t*v with v uniform in the spherical cap of half-angle `half_angle`
/// around `center`.
PointFamily cap_family(const Vec& center, double half_angle, std::string algebra = {});
/// Union: each draw picks a member uniformly (retrying members that are
/// exhausted at the requested norm).
PointFamily union_family(const std::vector<PointFamily>& members);
/// The image t*S.
PointFamily scaled_family(const PointFamily& f, double t);

struct UnionCheck {
  double max_defect = 0.0;     // Hausdorff(AC(union), union of ACs)
  bool passed = false;
  ConeDescription union_ac;
  ConeDescription ac_union;
};
/// Compares AC of the union family with the union of the member cones, both
/// computed by sampling.
UnionCheck ac_union_check(const std::vector<PointFamily>& members, const AcOptions& options, std::uint64_t seed,
                          double angular_tol = 0.05);

}  // namespace orbitcone
