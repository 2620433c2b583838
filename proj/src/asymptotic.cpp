#include "orbitcone/asymptotic.hpp"

#include <algorithm>
#include <cmath>

namespace orbitcone {

namespace {

double draw_norm(Rng& rng, double min_norm) {
  const double lo = std::max(min_norm, 1e-3);
  return uniform(rng, lo, 2.0 * lo);
}

void check_radii(const std::vector<double>& radii) {
  if (radii.size() < 3) throw Error(ErrorCode::InsufficientRadii, "asymptotic cone needs at least 3 radii");
  for (size_t i = 0; i < radii.size(); ++i) {
    if (!(radii[i] > 0.0)) throw Error(ErrorCode::InsufficientRadii, "radii must be positive");
    if (i && !(radii[i] > radii[i - 1])) throw Error(ErrorCode::InsufficientRadii, "radii must increase strictly");
  }
}

}  // namespace

AcResult asymptotic_cone_report(const PointFamily& f, const AcOptions& options, std::uint64_t seed) {
  if (!f.sampler) throw Error(ErrorCode::EmptyFamily, "point family '" + f.name + "' has no sampler");
  check_radii(options.radii);
  if (options.samples_per_radius < 1) throw Error(ErrorCode::InvalidArgument, "samples_per_radius must be >= 1");

  AcResult out;
  if (options.allow_exact && f.exact_tag) {
    out.cone = ConeDescription::exact(*f.exact_tag, f.dim, f.algebra);
    out.exact = true;
    return out;
  }

  std::vector<ConeDescription> per_radius;
  for (size_t r = 0; r < options.radii.size(); ++r) {
    const double radius = options.radii[r];
    Rng rng(substream_seed(seed, r));
    std::vector<Vec> dirs;
    for (int k = 0; k < options.samples_per_radius; ++k) {
      const auto p = f.sampler(rng, radius);
      if (!p) continue;
      if (p->size() != f.dim) throw Error(ErrorCode::DimensionMismatch, "sampler returned a point of wrong length");
      const double n = p->norm();
      if (n >= radius) dirs.push_back(*p / n);
    }
    out.counts.push_back(dirs.size());
    if (dirs.empty())
      per_radius.push_back(ConeDescription::exact(NamedCone::Zero, f.dim, f.algebra));
    else
      per_radius.push_back(
          ConeDescription::sampled(dedupe_directions(dirs, options.tol), options.tol, f.dim, f.algebra));
  }
  for (size_t r = 1; r < per_radius.size(); ++r)
    out.radius_defects.push_back(hausdorff_distance(per_radius[r - 1], per_radius[r], options.tol));
  out.cone = per_radius.back();
  return out;
}

ConeDescription asymptotic_cone(const PointFamily& f, const std::vector<double>& radii, int samples_per_radius,
                                std::uint64_t seed, double tol, bool allow_exact) {
  AcOptions o;
  o.radii = radii;
  o.samples_per_radius = samples_per_radius;
  o.tol = tol;
  o.allow_exact = allow_exact;
  return asymptotic_cone_report(f, o, seed).cone;
}

PointFamily ray_family(const Vec& direction, std::string algebra) {
  if (direction.norm() < 1e-300) throw Error(ErrorCode::ZeroPoint, "ray direction is zero");
  const Vec u = direction / direction.norm();
  PointFamily f;
  f.name = "ray";
  f.dim = static_cast<int>(u.size());
  f.algebra = std::move(algebra);
  f.sampler = [u](Rng& rng, double min_norm) -> std::optional<Vec> { return Vec(draw_norm(rng, min_norm) * u); };
  return f;
}

PointFamily bounded_family(int dim, double radius, std::string algebra) {
  PointFamily f;
  f.name = "ball";
  f.dim = dim;
  f.algebra = std::move(algebra);
  f.exact_tag = NamedCone::Zero;
  f.sampler = [dim, radius](Rng& rng, double min_norm) -> std::optional<Vec> {
    if (min_norm > radius) return std::nullopt;
    return Vec(uniform(rng, min_norm, radius) * random_unit_vector(rng, dim));
  };
  return f;
}

PointFamily cap_family(const Vec& center, double half_angle, std::string algebra) {
  const int dim = static_cast<int>(center.size());
  const Vec c = center / center.norm();
  PointFamily f;
  f.name = "cap";
  f.dim = dim;
  f.algebra = std::move(algebra);
  f.sampler = [c, dim, half_angle](Rng& rng, double min_norm) -> std::optional<Vec> {
    // Offset from the center by a random tangent direction; the angle is
    // drawn with the planar-area density, which is close to uniform on the cap.
    Vec t = gaussian_vector(rng, dim);
    t -= t.dot(c) * c;
    if (t.norm() < 1e-12) return Vec(draw_norm(rng, min_norm) * c);
    const double a = half_angle * std::sqrt(uniform(rng, 0.0, 1.0));
    const Vec w = std::cos(a) * c + std::sin(a) * t / t.norm();
    return Vec(draw_norm(rng, min_norm) * w);
  };
  return f;
}

PointFamily union_family(const std::vector<PointFamily>& members) {
  if (members.empty()) throw Error(ErrorCode::EmptyFamily, "union of no families");
  PointFamily f;
  f.name = "union";
  f.dim = members.front().dim;
  f.algebra = members.front().algebra;
  for (const auto& m : members)
    if (m.dim != f.dim) throw Error(ErrorCode::DimensionMismatch, "union members live in different dimensions");
  bool all_tagged = true;
  std::vector<ConeDescription> tags;
  for (const auto& m : members) {
    if (!m.exact_tag) {
      all_tagged = false;
      break;
    }
    tags.push_back(ConeDescription::exact(*m.exact_tag, m.dim, m.algebra));
  }
  if (all_tagged) {
    const auto u = cone_union(tags);
    if (u.is_exact()) f.exact_tag = u.as_exact().name;
  }
  f.sampler = [members](Rng& rng, double min_norm) -> std::optional<Vec> {
    std::uniform_int_distribution<size_t> pick(0, members.size() - 1);
    for (size_t attempt = 0; attempt < 4 * members.size(); ++attempt) {
      const auto p = members[pick(rng)].sampler(rng, min_norm);
      if (p) return p;
    }
    return std::nullopt;
  };
  return f;
}

PointFamily scaled_family(const PointFamily& f, double t) {
  if (!(t > 0.0)) throw Error(ErrorCode::InvalidArgument, "scale factor must be positive");
  PointFamily g = f;
  g.name = f.name + "*scaled";
  auto inner = f.sampler;
  g.sampler = [inner, t](Rng& rng, double min_norm) -> std::optional<Vec> {
    auto p = inner(rng, min_norm / t);
    if (!p) return std::nullopt;
    return Vec(t * *p);
  };
  return g;
}

UnionCheck ac_union_check(const std::vector<PointFamily>& members, const AcOptions& options, std::uint64_t seed,
                          double angular_tol) {
  if (members.empty()) throw Error(ErrorCode::EmptyFamily, "ac_union_check needs at least one family");
  UnionCheck out;
  std::vector<ConeDescription> cones;
  for (size_t i = 0; i < members.size(); ++i)
    cones.push_back(asymptotic_cone_report(members[i], options, substream_seed(seed, 100 + i)).cone);
  out.ac_union = cones.size() == 1 ? cones.front() : cone_union(cones);
  const PointFamily u = members.size() == 1 ? members.front() : union_family(members);
  AcOptions o = options;
  o.samples_per_radius = options.samples_per_radius * static_cast<int>(members.size());
  out.union_ac = asymptotic_cone_report(u, o, substream_seed(seed, 99)).cone;
  out.max_defect = hausdorff_distance(out.union_ac, out.ac_union, options.tol / 2.0);
  out.passed = out.max_defect <= angular_tol;
  return out;
}

}  // namespace orbitcone
