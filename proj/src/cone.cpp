#include "orbitcone/cone.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>
#include <cstdio>
#include <memory>
#include <ostream>
#include <unordered_map>

#include "orbitcone/random.hpp"

namespace orbitcone {

namespace {

constexpr double kPi = std::numbers::pi;

double chord_to_angle(double chord) { return 2.0 * std::asin(std::min(1.0, chord / 2.0)); }
double angle_to_chord(double angle) { return 2.0 * std::sin(std::min(angle, kPi) / 2.0); }

Vec normalized(const Vec& v) { return v / v.norm(); }

Vec sph(double phi, double theta) {
  Vec v(3);
  v << std::sin(phi) * std::cos(theta), std::sin(phi) * std::sin(theta), std::cos(phi);
  return v;
}

void add_band(std::vector<Vec>& out, double phi_lo, double phi_hi, double res) {
  const int rows = std::max(0, static_cast<int>(std::ceil((phi_hi - phi_lo) / res)));
  for (int r = 0; r <= rows; ++r) {
    const double phi = rows == 0 ? phi_lo : phi_lo + (phi_hi - phi_lo) * r / rows;
    const int cols = std::max(1, static_cast<int>(std::ceil(2.0 * kPi * std::sin(phi) / res)));
    for (int c = 0; c < cols; ++c) out.push_back(sph(phi, 2.0 * kPi * c / cols));
  }
}

// Atoms of the sl(2,R) quadric stratification of the unit sphere.
enum Atom : unsigned { kNplusAtom = 1, kNminusAtom = 2, kHypAtom = 4, kEllPlusAtom = 8, kEllMinusAtom = 16 };

unsigned atoms_of(NamedCone c) {
  switch (c) {
    case NamedCone::Zero: return 0;
    case NamedCone::Full: return 31;
    case NamedCone::Nplus: return kNplusAtom;
    case NamedCone::Nminus: return kNminusAtom;
    case NamedCone::N: return kNplusAtom | kNminusAtom;
    case NamedCone::HypClosure: return kNplusAtom | kNminusAtom | kHypAtom;
    case NamedCone::EllPlusClosure: return kNplusAtom | kEllPlusAtom;
    case NamedCone::EllMinusClosure: return kNminusAtom | kEllMinusAtom;
  }
  return 0;
}

bool needs_sl2_chart(NamedCone c) { return c != NamedCone::Zero && c != NamedCone::Full; }

}  // namespace

const char* to_string(NamedCone c) {
  switch (c) {
    case NamedCone::Zero: return "Zero";
    case NamedCone::Full: return "Full";
    case NamedCone::Nplus: return "Nplus";
    case NamedCone::Nminus: return "Nminus";
    case NamedCone::N: return "N";
    case NamedCone::HypClosure: return "HypClosure";
    case NamedCone::EllPlusClosure: return "EllPlusClosure";
    case NamedCone::EllMinusClosure: return "EllMinusClosure";
  }
  return "?";
}

NamedCone named_cone_from_string(const std::string& s) {
  for (auto c : {NamedCone::Zero, NamedCone::Full, NamedCone::Nplus, NamedCone::Nminus, NamedCone::N,
                 NamedCone::HypClosure, NamedCone::EllPlusClosure, NamedCone::EllMinusClosure})
    if (s == to_string(c)) return c;
  throw Error(ErrorCode::ParseError, "unknown named cone '" + s + "'");
}

std::vector<std::string> named_cone_inequalities(NamedCone c) {
  switch (c) {
    case NamedCone::Zero: return {"xi = 0"};
    case NamedCone::Full: return {};
    case NamedCone::Nplus: return {"x^2 + y^2 - z^2 = 0", "z >= 0"};
    case NamedCone::Nminus: return {"x^2 + y^2 - z^2 = 0", "z <= 0"};
    case NamedCone::N: return {"x^2 + y^2 - z^2 = 0"};
    case NamedCone::HypClosure: return {"x^2 + y^2 - z^2 >= 0"};
    case NamedCone::EllPlusClosure: return {"z^2 - x^2 - y^2 >= 0", "z >= 0"};
    case NamedCone::EllMinusClosure: return {"z^2 - x^2 - y^2 >= 0", "z <= 0"};
  }
  return {};
}

// ---------------------------------------------------------------------------

ConeDescription ConeDescription::exact(NamedCone name, int dim, std::string algebra) {
  if (needs_sl2_chart(name) && dim != 3)
    throw Error(ErrorCode::DimensionMismatch, std::string("named cone ") + to_string(name) + " lives in dimension 3");
  ConeDescription c;
  c.kind_ = ExactCone{name};
  c.dim_ = dim;
  c.algebra_ = std::move(algebra);
  return c;
}

ConeDescription ConeDescription::polyhedral(std::vector<Vec> generators, int dim, std::string algebra) {
  for (const auto& g : generators)
    if (g.size() != dim) throw Error(ErrorCode::DimensionMismatch, "generator length differs from cone dimension");
  ConeDescription c;
  c.kind_ = PolyhedralCone{std::move(generators)};
  c.dim_ = dim;
  c.algebra_ = std::move(algebra);
  return c;
}

ConeDescription ConeDescription::sampled(std::vector<Vec> directions, double tol, int dim, std::string algebra) {
  for (auto& d : directions) {
    if (d.size() != dim) throw Error(ErrorCode::DimensionMismatch, "direction length differs from cone dimension");
    const double n = d.norm();
    if (n < 1e-300) throw Error(ErrorCode::InvalidArgument, "zero direction in sampled cone");
    if (std::abs(n - 1.0) > 1e-12) d /= n;
  }
  ConeDescription c;
  c.kind_ = SampledCone{std::move(directions), tol};
  c.dim_ = dim;
  c.algebra_ = std::move(algebra);
  return c;
}

bool ConeDescription::is_zero() const {
  if (is_exact()) return as_exact().name == NamedCone::Zero;
  if (is_sampled()) return as_sampled().directions.empty();
  for (const auto& g : as_polyhedral().generators)
    if (g.norm() > 1e-14) return false;
  return true;
}

// ---------------------------------------------------------------------------

DirectionIndex::DirectionIndex(std::vector<Vec> directions) {
  std::vector<size_t> order(directions.size());
  for (size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](size_t a, size_t b) { return directions[a](0) < directions[b](0); });
  dirs_.reserve(order.size());
  keys_.reserve(order.size());
  for (size_t i : order) {
    dirs_.push_back(directions[i]);
    keys_.push_back(directions[i](0));
  }
}

double DirectionIndex::nearest_chord(const Vec& u, double window) const {
  // |u - d| >= |u_0 - d_0|, so a candidate at chord distance <= window
  // proves nothing outside the key window can be closer.
  while (true) {
    const auto lo = std::lower_bound(keys_.begin(), keys_.end(), u(0) - window);
    const auto hi = std::upper_bound(keys_.begin(), keys_.end(), u(0) + window);
    double best = 3.0;
    for (auto it = lo; it != hi; ++it) {
      const size_t i = static_cast<size_t>(it - keys_.begin());
      best = std::min(best, (dirs_[i] - u).norm());
    }
    if (best <= window || window >= 2.0) return best;
    window *= 2.0;
  }
}

double DirectionIndex::nearest_angle(const Vec& u) const {
  if (dirs_.empty()) return kPi;
  return chord_to_angle(nearest_chord(u, 0.02));
}

bool DirectionIndex::within(const Vec& u, double angle) const {
  if (dirs_.empty()) return false;
  const double chord = angle_to_chord(angle);
  const auto lo = std::lower_bound(keys_.begin(), keys_.end(), u(0) - chord);
  const auto hi = std::upper_bound(keys_.begin(), keys_.end(), u(0) + chord);
  for (auto it = lo; it != hi; ++it)
    if ((dirs_[static_cast<size_t>(it - keys_.begin())] - u).norm() <= chord) return true;
  return false;
}

std::vector<Vec> dedupe_directions(const std::vector<Vec>& directions, double tol) {
  // Bucket on a grid of cell size `chord` over the first three coordinates.
  const double chord = angle_to_chord(tol);
  std::vector<Vec> kept;
  if (directions.empty()) return kept;
  const int dim = static_cast<int>(directions.front().size());
  const int hashed = std::min(dim, 3);
  struct Key {
    long a, b, c;
    bool operator==(const Key& o) const { return a == o.a && b == o.b && c == o.c; }
  };
  struct KeyHash {
    size_t operator()(const Key& k) const {
      return std::hash<long>()(k.a * 73856093L ^ k.b * 19349663L ^ k.c * 83492791L);
    }
  };
  std::unordered_map<Key, std::vector<size_t>, KeyHash> grid;
  auto key_of = [&](const Vec& u, int da, int db, int dc) {
    long k[3] = {0, 0, 0};
    const int d[3] = {da, db, dc};
    for (int i = 0; i < hashed; ++i) k[i] = static_cast<long>(std::floor(u(i) / chord)) + d[i];
    return Key{k[0], k[1], k[2]};
  };
  for (const auto& u : directions) {
    bool close = false;
    for (int da = -1; da <= 1 && !close; ++da)
      for (int db = (hashed > 1 ? -1 : 0); db <= (hashed > 1 ? 1 : 0) && !close; ++db)
        for (int dc = (hashed > 2 ? -1 : 0); dc <= (hashed > 2 ? 1 : 0) && !close; ++dc) {
          auto it = grid.find(key_of(u, da, db, dc));
          if (it == grid.end()) continue;
          for (size_t idx : it->second)
            if ((kept[idx] - u).norm() <= chord) {
              close = true;
              break;
            }
        }
    if (!close) {
      grid[key_of(u, 0, 0, 0)].push_back(kept.size());
      kept.push_back(u);
    }
  }
  return kept;
}

// ---------------------------------------------------------------------------

namespace {

double named_distance(NamedCone name, const Vec& u) {
  if (name == NamedCone::Zero) return kPi;
  if (name == NamedCone::Full) return 0.0;
  const double phi = std::acos(std::clamp(u(2), -1.0, 1.0));
  const double up = kPi / 4.0, down = 3.0 * kPi / 4.0;
  switch (name) {
    case NamedCone::Nplus: return std::abs(phi - up);
    case NamedCone::Nminus: return std::abs(phi - down);
    case NamedCone::N: return std::min(std::abs(phi - up), std::abs(phi - down));
    case NamedCone::HypClosure: return std::max({0.0, up - phi, phi - down});
    case NamedCone::EllPlusClosure: return std::max(0.0, phi - up);
    case NamedCone::EllMinusClosure: return std::max(0.0, down - phi);
    default: return kPi;
  }
}

bool named_contains(NamedCone name, const Vec& u, double tol) {
  if (name == NamedCone::Zero) return false;
  if (name == NamedCone::Full) return true;
  const double q = u(0) * u(0) + u(1) * u(1) - u(2) * u(2);
  switch (name) {
    case NamedCone::Nplus: return std::abs(q) <= tol && u(2) > 0.0;
    case NamedCone::Nminus: return std::abs(q) <= tol && u(2) < 0.0;
    case NamedCone::N: return std::abs(q) <= tol;
    case NamedCone::HypClosure: return q >= -tol;
    case NamedCone::EllPlusClosure: return q <= tol && u(2) >= -tol;
    case NamedCone::EllMinusClosure: return q <= tol && u(2) <= tol;
    default: return false;
  }
}

std::vector<Vec> nonzero_generators(const PolyhedralCone& p) {
  std::vector<Vec> out;
  for (const auto& g : p.generators)
    if (g.norm() > 1e-14) out.push_back(g);
  return out;
}

double polyhedral_distance(const PolyhedralCone& p, const Vec& u) {
  const auto gens = nonzero_generators(p);
  if (gens.empty()) return kPi;
  Mat a(u.size(), static_cast<Eigen::Index>(gens.size()));
  for (size_t i = 0; i < gens.size(); ++i) a.col(static_cast<Eigen::Index>(i)) = normalized(gens[i]);
  const Vec w = linalg::nonnegative_least_squares(a, u);
  const Vec proj = a * w;
  if (proj.norm() > 1e-12) return std::acos(std::clamp(u.dot(proj) / proj.norm(), -1.0, 1.0));
  double best = kPi;
  for (Eigen::Index i = 0; i < a.cols(); ++i) best = std::min(best, std::acos(std::clamp(u.dot(a.col(i)), -1.0, 1.0)));
  return best;
}

std::vector<Vec> full_sphere_samples(int dim, double res) {
  std::vector<Vec> out;
  if (dim <= 0) return out;
  if (dim == 1) {
    out.push_back(Vec::Constant(1, 1.0));
    out.push_back(Vec::Constant(1, -1.0));
    return out;
  }
  if (dim == 2) {
    const int n = std::max(4, static_cast<int>(std::ceil(2.0 * kPi / res)));
    for (int k = 0; k < n; ++k) {
      Vec v(2);
      v << std::cos(2.0 * kPi * k / n), std::sin(2.0 * kPi * k / n);
      out.push_back(v);
    }
    return out;
  }
  if (dim == 3) {
    add_band(out, 0.0, kPi, res);
    return out;
  }
  Rng rng(0x5eed0000ULL + static_cast<unsigned>(dim));
  for (int k = 0; k < 20000; ++k) out.push_back(random_unit_vector(rng, dim));
  return out;
}

std::vector<Vec> polyhedral_samples(const PolyhedralCone& p, int dim, double res) {
  const auto gens = nonzero_generators(p);
  std::vector<Vec> out;
  if (gens.empty()) return out;
  for (const auto& g : gens) out.push_back(normalized(g));
  if (gens.size() == 1) return out;
  Rng rng(0x90117ULL + gens.size());
  std::exponential_distribution<double> ex(1.0);
  const int count = std::clamp(static_cast<int>(std::pow(1.0 / res, std::min(dim - 1, 2))), 200, 20000);
  for (int k = 0; k < count; ++k) {
    Vec v = Vec::Zero(dim);
    for (const auto& g : gens) v += ex(rng) * normalized(g);
    if (v.norm() > 1e-12) out.push_back(normalized(v));
  }
  return out;
}

// Distance function against a cone, with an index built once for sampled cones.
std::function<double(const Vec&)> distance_oracle(const ConeDescription& c) {
  if (c.is_exact()) {
    const NamedCone name = c.as_exact().name;
    return [name](const Vec& u) { return named_distance(name, u); };
  }
  if (c.is_polyhedral()) {
    const PolyhedralCone p = c.as_polyhedral();
    return [p](const Vec& u) { return polyhedral_distance(p, u); };
  }
  auto index = std::make_shared<DirectionIndex>(c.as_sampled().directions);
  return [index](const Vec& u) { return index->nearest_angle(u); };
}

void check_dims(const ConeDescription& a, const ConeDescription& b) {
  if (a.dim() != b.dim()) throw Error(ErrorCode::DimensionMismatch, "cones live in different dimensions");
}

}  // namespace

bool cone_contains(const ConeDescription& c, const Vec& xi, double tol) {
  if (xi.size() != c.dim()) throw Error(ErrorCode::DimensionMismatch, "point length differs from cone dimension");
  const double n = xi.norm();
  if (n < 1e-300) return true;
  const Vec u = xi / n;
  if (c.is_exact()) return named_contains(c.as_exact().name, u, tol);
  if (c.is_sampled()) {
    const auto& s = c.as_sampled();
    for (const auto& d : s.directions)
      if (std::acos(std::clamp(d.dot(u), -1.0, 1.0)) <= tol) return true;
    return false;
  }
  // Polyhedral: test against the facet normals of the cone.
  const auto facets = dual_cone(c);
  for (const auto& h : facets.as_polyhedral().generators)
    if (u.dot(normalized(h)) > tol) return false;
  return true;
}

double angular_distance(const ConeDescription& c, const Vec& u) {
  if (u.size() != c.dim()) throw Error(ErrorCode::DimensionMismatch, "direction length differs from cone dimension");
  return distance_oracle(c)(u / u.norm());
}

std::vector<Vec> direction_samples(const ConeDescription& c, double res) {
  std::vector<Vec> out;
  if (c.is_sampled()) return c.as_sampled().directions;
  if (c.is_polyhedral()) return polyhedral_samples(c.as_polyhedral(), c.dim(), res);
  const double up = kPi / 4.0, down = 3.0 * kPi / 4.0;
  switch (c.as_exact().name) {
    case NamedCone::Zero: break;
    case NamedCone::Full: out = full_sphere_samples(c.dim(), res); break;
    case NamedCone::Nplus: add_band(out, up, up, res); break;
    case NamedCone::Nminus: add_band(out, down, down, res); break;
    case NamedCone::N:
      add_band(out, up, up, res);
      add_band(out, down, down, res);
      break;
    case NamedCone::HypClosure: add_band(out, up, down, res); break;
    case NamedCone::EllPlusClosure: add_band(out, 0.0, up, res); break;
    case NamedCone::EllMinusClosure: add_band(out, down, kPi, res); break;
  }
  return out;
}

double hausdorff_distance(const ConeDescription& a, const ConeDescription& b, double res) {
  check_dims(a, b);
  const auto da = direction_samples(a, res);
  const auto db = direction_samples(b, res);
  if (da.empty() && db.empty()) return 0.0;
  if (da.empty() || db.empty()) return kPi;
  const auto dist_a = distance_oracle(a);
  const auto dist_b = distance_oracle(b);
  double h = 0.0;
  for (const auto& u : da) h = std::max(h, dist_b(u));
  for (const auto& v : db) h = std::max(h, dist_a(v));
  return h;
}

bool cone_equal(const ConeDescription& a, const ConeDescription& b, double angular_tol) {
  return hausdorff_distance(a, b, std::min(0.01, angular_tol / 4.0)) <= angular_tol;
}

ConeDescription cone_union(const std::vector<ConeDescription>& cones) {
  if (cones.empty()) throw Error(ErrorCode::InvalidArgument, "cone_union of an empty list");
  const int dim = cones.front().dim();
  const std::string algebra = cones.front().algebra();
  for (const auto& c : cones) check_dims(cones.front(), c);

  bool all_exact = true;
  unsigned atoms = 0;
  for (const auto& c : cones) {
    if (!c.is_exact()) {
      all_exact = false;
      break;
    }
    atoms |= atoms_of(c.as_exact().name);
  }
  if (all_exact) {
    if (atoms == 0) return ConeDescription::exact(NamedCone::Zero, dim, algebra);
    for (const auto& c : cones)
      if (c.as_exact().name == NamedCone::Full) return ConeDescription::exact(NamedCone::Full, dim, algebra);
    if (dim == 3)
      for (auto n : {NamedCone::Nplus, NamedCone::Nminus, NamedCone::N, NamedCone::HypClosure,
                     NamedCone::EllPlusClosure, NamedCone::EllMinusClosure, NamedCone::Full})
        if (atoms_of(n) == atoms) return ConeDescription::exact(n, dim, algebra);
  }

  bool all_poly = true;
  for (const auto& c : cones) all_poly = all_poly && (c.is_polyhedral() || c.is_zero());
  if (all_poly) {
    std::vector<Vec> gens;
    for (const auto& c : cones)
      if (c.is_polyhedral())
        for (const auto& g : c.as_polyhedral().generators) gens.push_back(g);
    // The union of convex cones is generally not convex; only the single-cone
    // case stays polyhedral.
    size_t nonzero = 0;
    for (const auto& c : cones) nonzero += c.is_zero() ? 0 : 1;
    if (nonzero <= 1) return ConeDescription::polyhedral(std::move(gens), dim, algebra);
  }

  double tol = 0.0;
  for (const auto& c : cones) tol = std::max(tol, c.is_sampled() ? c.as_sampled().tol : 0.02);
  std::vector<Vec> dirs;
  for (const auto& c : cones) {
    const auto d = direction_samples(c, tol);
    dirs.insert(dirs.end(), d.begin(), d.end());
  }
  return ConeDescription::sampled(dedupe_directions(dirs, tol), tol, dim, algebra);
}

// ---------------------------------------------------------------------------
// Dual cones by extreme-ray enumeration

namespace {

void for_each_subset(int n, int k, const std::function<void(const std::vector<int>&)>& f) {
  std::vector<int> idx(k);
  for (int i = 0; i < k; ++i) idx[i] = i;
  if (k > n) return;
  while (true) {
    f(idx);
    int i = k - 1;
    while (i >= 0 && idx[i] == n - k + i) --i;
    if (i < 0) return;
    ++idx[i];
    for (int j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
}

void push_unique_ray(std::vector<Vec>& rays, const Vec& v) {
  const Vec u = normalized(v);
  for (const auto& r : rays)
    if ((r - u).norm() < 1e-9) return;
  rays.push_back(u);
}

}  // namespace

ConeDescription dual_cone(const ConeDescription& c) {
  if (!c.is_polyhedral()) throw Error(ErrorCode::InvalidArgument, "dual_cone expects a polyhedral cone");
  const int n = c.dim();
  if (n > 8) throw Error(ErrorCode::DimensionTooLarge, "dual_cone supports dimension <= 8");

  std::vector<Vec> rows;
  for (const auto& g : nonzero_generators(c.as_polyhedral())) push_unique_ray(rows, g);
  std::vector<Vec> out;
  if (rows.empty()) {
    for (int i = 0; i < n; ++i) {
      out.push_back(Vec::Unit(n, i));
      out.push_back(-Vec::Unit(n, i));
    }
    return ConeDescription::polyhedral(std::move(out), n, c.algebra());
  }

  Mat y(static_cast<Eigen::Index>(rows.size()), n);
  for (size_t i = 0; i < rows.size(); ++i) y.row(static_cast<Eigen::Index>(i)) = rows[i].transpose();

  const Mat lineality = linalg::null_space(y, 1e-12);
  const Mat span = linalg::orthonormal_span(y.transpose(), 1e-12);
  const int reduced = static_cast<int>(span.cols());
  const Mat yr = y * span;  // constraints in reduced coordinates, pointed cone
  const double feas_tol = 1e-10;

  auto feasible = [&](const Vec& v) {
    const Vec s = yr * v;
    return (s.array() <= feas_tol * v.norm()).all();
  };

  std::vector<Vec> rays;
  if (reduced == 1) {
    for (double sgn : {1.0, -1.0}) {
      const Vec v = Vec::Constant(1, sgn);
      if (feasible(v)) push_unique_ray(rays, v);
    }
  } else if (reduced > 1) {
    for_each_subset(static_cast<int>(yr.rows()), reduced - 1, [&](const std::vector<int>& idx) {
      Mat a(reduced - 1, reduced);
      for (int i = 0; i < reduced - 1; ++i) a.row(i) = yr.row(idx[i]);
      const Mat ker = linalg::null_space(a, 1e-12);
      if (ker.cols() != 1) return;
      const Vec v = ker.col(0);
      if (feasible(v)) push_unique_ray(rays, v);
      if (feasible(-v)) push_unique_ray(rays, -v);
    });
  }
  for (const auto& r : rays) out.push_back(span * r);
  for (Eigen::Index j = 0; j < lineality.cols(); ++j) {
    out.push_back(lineality.col(j));
    out.push_back(-lineality.col(j));
  }
  return ConeDescription::polyhedral(std::move(out), n, c.algebra());
}

double ray_distance(const Vec& xi, const Vec& eta) {
  if (xi.size() != eta.size()) throw Error(ErrorCode::DimensionMismatch, "ray_distance operand length");
  const double en = eta.squaredNorm();
  const double d = xi.dot(eta);
  if (en < 1e-300 || d <= 0.0) return xi.norm();
  return std::sqrt(std::max(0.0, xi.squaredNorm() - d * d / en));
}

bool conic_neighborhood_contains(const Vec& xi, double delta, const Vec& eta) {
  if (std::abs(xi.norm() - 1.0) > 1e-9) throw Error(ErrorCode::InvalidArgument, "xi must be a unit vector");
  if (!(delta > 0.0)) throw Error(ErrorCode::InvalidArgument, "delta must be positive");
  return ray_distance(xi, eta) < delta;
}

// ---------------------------------------------------------------------------

nlohmann::json cone_record(const ConeDescription& c) {
  nlohmann::json j;
  j["algebra"] = c.algebra();
  j["dim"] = c.dim();
  auto rows = [](const std::vector<Vec>& vs) {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& v : vs) arr.push_back(std::vector<double>(v.data(), v.data() + v.size()));
    return arr;
  };
  if (c.is_exact()) {
    j["kind"] = "exact";
    j["name"] = to_string(c.as_exact().name);
    j["inequalities"] = named_cone_inequalities(c.as_exact().name);
  } else if (c.is_polyhedral()) {
    j["kind"] = "polyhedral";
    j["generators"] = rows(c.as_polyhedral().generators);
  } else {
    j["kind"] = "sampled";
    j["tol"] = c.as_sampled().tol;
    j["direction_count"] = c.as_sampled().directions.size();
    j["directions"] = rows(c.as_sampled().directions);
  }
  return j;
}

void write_directions_csv(std::ostream& os, const ConeDescription& c, const std::vector<std::string>& columns,
                          double resolution) {
  for (int i = 0; i < c.dim(); ++i) {
    if (i) os << ',';
    os << (static_cast<size_t>(i) < columns.size() ? columns[static_cast<size_t>(i)] : "c" + std::to_string(i));
  }
  os << '\n';
  char buf[64];
  for (const auto& d : direction_samples(c, resolution)) {
    for (int i = 0; i < d.size(); ++i) {
      std::snprintf(buf, sizeof(buf), "%.12g", d(i));
      if (i) os << ',';
      os << buf;
    }
    os << '\n';
  }
}

// ---------------------------------------------------------------------------

namespace linalg {

Vec nonnegative_least_squares(const Mat& a, const Vec& b) {
  const Eigen::Index n = a.cols();
  Vec x = Vec::Zero(n);
  std::vector<bool> passive(static_cast<size_t>(n), false);
  const double tol = 1e-12 * std::max(1.0, a.norm() * b.norm());
  for (int outer = 0; outer < 3 * n + 10; ++outer) {
    const Vec w = a.transpose() * (b - a * x);
    Eigen::Index best = -1;
    double best_w = tol;
    for (Eigen::Index j = 0; j < n; ++j)
      if (!passive[static_cast<size_t>(j)] && w(j) > best_w) {
        best_w = w(j);
        best = j;
      }
    if (best < 0) break;
    passive[static_cast<size_t>(best)] = true;
    for (int inner = 0; inner < 3 * n + 10; ++inner) {
      std::vector<Eigen::Index> p;
      for (Eigen::Index j = 0; j < n; ++j)
        if (passive[static_cast<size_t>(j)]) p.push_back(j);
      Mat ap(a.rows(), static_cast<Eigen::Index>(p.size()));
      for (size_t k = 0; k < p.size(); ++k) ap.col(static_cast<Eigen::Index>(k)) = a.col(p[k]);
      const Vec zp = ap.completeOrthogonalDecomposition().solve(b);
      bool ok = true;
      for (Eigen::Index k = 0; k < zp.size(); ++k) ok = ok && zp(k) > 0.0;
      if (ok) {
        x.setZero();
        for (size_t k = 0; k < p.size(); ++k) x(p[k]) = zp(static_cast<Eigen::Index>(k));
        break;
      }
      double alpha = 1.0;
      for (size_t k = 0; k < p.size(); ++k) {
        const double zk = zp(static_cast<Eigen::Index>(k));
        if (zk <= 0.0) alpha = std::min(alpha, x(p[k]) / (x(p[k]) - zk));
      }
      Vec z = Vec::Zero(n);
      for (size_t k = 0; k < p.size(); ++k) z(p[k]) = zp(static_cast<Eigen::Index>(k));
      x = x + alpha * (z - x);
      for (size_t k = 0; k < p.size(); ++k)
        if (x(p[k]) <= 1e-15) {
          passive[static_cast<size_t>(p[k])] = false;
          x(p[k]) = 0.0;
        }
    }
  }
  return x;
}

}  // namespace linalg

}  // namespace orbitcone
