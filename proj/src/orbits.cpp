#include "orbitcone/orbits.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include <unsupported/Eigen/MatrixFunctions>

namespace orbitcone {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

Vec xyz(double r, double theta, double z) {
  Vec v(3);
  v << r * std::cos(theta), r * std::sin(theta), z;
  return v;
}

// Point of an sl(2,R) orbit with Euclidean norm max(T, minimal norm).
Vec sl2_point_at_norm(Sl2Kind kind, double param, double t, Rng& rng) {
  const double theta = uniform(rng, 0.0, kTwoPi);
  switch (kind) {
    case Sl2Kind::Hyp: {
      // |xi|^2 = nu^2 + 2 z^2
      const double tt = std::max(t, param);
      const double z = std::sqrt(std::max(0.0, (tt * tt - param * param) / 2.0));
      const double sign = uniform(rng, 0.0, 1.0) < 0.5 ? -1.0 : 1.0;
      return xyz(std::sqrt(param * param + z * z), theta, sign * z);
    }
    case Sl2Kind::EllPlus:
    case Sl2Kind::EllMinus: {
      // |xi|^2 = 2 z^2 - n^2
      const double tt = std::max(t, param);
      const double z = std::sqrt((tt * tt + param * param) / 2.0);
      const double r = std::sqrt(std::max(0.0, z * z - param * param));
      return xyz(r, theta, kind == Sl2Kind::EllPlus ? z : -z);
    }
    case Sl2Kind::NilPlus:
    case Sl2Kind::NilMinus: {
      const double z = t / std::sqrt(2.0);
      return xyz(z, theta, kind == Sl2Kind::NilPlus ? z : -z);
    }
    case Sl2Kind::Zero: break;
  }
  return Vec::Zero(3);
}

// Point of an sl(2,R) orbit from the hyperbolic-angle parametrization.
Vec sl2_point_param(Sl2Kind kind, double param, double s, double theta) {
  switch (kind) {
    case Sl2Kind::Hyp: return xyz(param * std::cosh(s), theta, param * std::sinh(s));
    case Sl2Kind::EllPlus: return xyz(param * std::sinh(std::abs(s)), theta, param * std::cosh(s));
    case Sl2Kind::EllMinus: return xyz(param * std::sinh(std::abs(s)), theta, -param * std::cosh(s));
    case Sl2Kind::NilPlus: return xyz(std::exp(s), theta, std::exp(s));
    case Sl2Kind::NilMinus: return xyz(std::exp(s), theta, -std::exp(s));
    case Sl2Kind::Zero: break;
  }
  return Vec::Zero(3);
}

NamedCone orbit_cone(Sl2Kind kind) {
  switch (kind) {
    case Sl2Kind::Hyp: return NamedCone::N;
    case Sl2Kind::EllPlus:
    case Sl2Kind::NilPlus: return NamedCone::Nplus;
    case Sl2Kind::EllMinus:
    case Sl2Kind::NilMinus: return NamedCone::Nminus;
    case Sl2Kind::Zero: break;
  }
  return NamedCone::Zero;
}

NamedCone unbounded_branch_cone(Sl2Kind kind) {
  switch (kind) {
    case Sl2Kind::Hyp: return NamedCone::HypClosure;
    case Sl2Kind::EllPlus: return NamedCone::EllPlusClosure;
    case Sl2Kind::EllMinus: return NamedCone::EllMinusClosure;
    default: return orbit_cone(kind);
  }
}

// Orbit point with norm at least min_norm for a generic algebra, found by
// moving the base point with increasingly large group elements.
std::optional<Vec> generic_point_at_norm(const OrbitParam& o, Rng& rng, double min_norm) {
  const Vec& base = o.base_point.coords;
  if (base.norm() >= min_norm) {
    const Mat g = random_group_element(o.algebra, rng, 6, 1.0);
    const Vec v = g * base;
    if (v.norm() >= min_norm) return v;
  }
  double scale = 1.0;
  for (int attempt = 0; attempt < 10; ++attempt, scale *= 1.6) {
    const Mat g = random_group_element(o.algebra, rng, 6, scale);
    const Vec v = g * base;
    if (v.norm() >= min_norm) return v;
  }
  return std::nullopt;
}

std::optional<Vec> orbit_point_at_norm(const OrbitParam& o, Rng& rng, double min_norm) {
  if (o.sl2_tag) {
    if (o.sl2_tag->kind == Sl2Kind::Zero) {
      if (min_norm > 0.0) return std::nullopt;
      return Vec(Vec::Zero(3));
    }
    const double t = uniform(rng, min_norm, 2.0 * std::max(min_norm, 1e-3));
    return sl2_point_at_norm(o.sl2_tag->kind, o.sl2_tag->param, t, rng);
  }
  return generic_point_at_norm(o, rng, min_norm);
}

std::optional<Vec> branch_point(const SupportBranch& b, Rng& rng, double min_norm) {
  if (b.kind == SupportBranch::Kind::Finite) {
    if (b.orbits.empty()) return std::nullopt;
    std::uniform_int_distribution<size_t> pick(0, b.orbits.size() - 1);
    return orbit_point_at_norm(b.orbits[pick(rng)], rng, min_norm);
  }
  if (b.orbit_kind == Sl2Kind::Zero) return std::nullopt;
  const double t = uniform(rng, min_norm, 2.0 * std::max(min_norm, 1e-3));
  double param = 0.0;
  if (b.kind == SupportBranch::Kind::RealInterval && b.orbit_kind == Sl2Kind::Hyp && b.lo < t) {
    // Uniform height |z| / |xi| of the direction over the admissible nu range.
    const double top = std::min(b.hi, t);
    auto height = [t](double nu) { return std::sqrt(std::max(0.0, (1.0 - (nu / t) * (nu / t)) / 2.0)); };
    const double h = uniform(rng, height(top), height(b.lo));
    param = std::clamp(t * std::sqrt(std::max(0.0, 1.0 - 2.0 * h * h)), b.lo, top);
    if (param <= 0.0) param = std::max(b.lo, 1e-12);
  } else if (b.kind == SupportBranch::Kind::RealInterval) {
    const double top = b.unbounded() ? std::max(t, b.lo) : b.hi;
    param = b.lo + (top - b.lo) * uniform(rng, 0.0, 1.0);
    if (param <= 0.0) param = std::max(b.lo, 1e-12);
  } else {
    const long first = static_cast<long>(std::ceil(b.lo));
    const long last = b.unbounded() ? std::max(first, static_cast<long>(std::floor(t))) : static_cast<long>(b.hi);
    std::uniform_int_distribution<long> pick(first, std::max(first, last));
    param = static_cast<double>(pick(rng));
  }
  return sl2_point_at_norm(b.orbit_kind, param, t, rng);
}

std::optional<NamedCone> branch_tag(const SupportBranch& b) {
  if (b.kind != SupportBranch::Kind::Finite)
    return b.unbounded() ? unbounded_branch_cone(b.orbit_kind) : orbit_cone(b.orbit_kind);
  std::vector<ConeDescription> cones;
  for (const auto& o : b.orbits) {
    if (!o.sl2_tag) return std::nullopt;
    cones.push_back(ConeDescription::exact(orbit_cone(o.sl2_tag->kind), 3));
  }
  if (cones.empty()) return NamedCone::Zero;
  const auto u = cone_union(cones);
  if (!u.is_exact()) return std::nullopt;
  return u.as_exact().name;
}

}  // namespace

const char* to_string(Sl2Kind k) {
  switch (k) {
    case Sl2Kind::Hyp: return "Hyp";
    case Sl2Kind::EllPlus: return "EllPlus";
    case Sl2Kind::EllMinus: return "EllMinus";
    case Sl2Kind::NilPlus: return "NilPlus";
    case Sl2Kind::NilMinus: return "NilMinus";
    case Sl2Kind::Zero: return "Zero";
  }
  return "?";
}

OrbitParam sl2_orbit(Sl2Kind kind, double param) {
  OrbitParam o;
  o.algebra = make_sl2r();
  Vec b = Vec::Zero(3);
  switch (kind) {
    case Sl2Kind::Hyp:
      if (!(param > 0.0)) throw Error(ErrorCode::InvalidArgument, "hyperbolic orbit needs nu > 0");
      b(0) = param;
      break;
    case Sl2Kind::EllPlus:
    case Sl2Kind::EllMinus:
      if (!(param > 0.0)) throw Error(ErrorCode::InvalidArgument, "elliptic orbit needs n > 0");
      b(2) = kind == Sl2Kind::EllPlus ? param : -param;
      break;
    case Sl2Kind::NilPlus: b << 1.0, 0.0, 1.0; break;
    case Sl2Kind::NilMinus: b << 1.0, 0.0, -1.0; break;
    case Sl2Kind::Zero: break;
  }
  o.base_point = Covector{b};
  o.sl2_tag = Sl2Tag{kind, param};
  return o;
}

OrbitParam generic_orbit(const MatrixLieAlgebra& L, const Covector& base) {
  if (base.coords.size() != L.dim()) throw Error(ErrorCode::DimensionMismatch, "base point length");
  return OrbitParam{L, base, std::nullopt};
}

PointFamily to_point_family(const OrbitParam& o) {
  OrbitFamily f;
  f.label = o.sl2_tag ? std::string("orbit:") + to_string(o.sl2_tag->kind) : "orbit";
  f.algebra = o.algebra;
  SupportBranch b;
  b.orbits.push_back(o);
  f.branches.push_back(b);
  return to_point_family(f);
}

PointFamily to_point_family(const OrbitFamily& f) {
  if (f.branches.empty()) throw Error(ErrorCode::EmptyFamily, "orbit family '" + f.label + "' has no branches");
  PointFamily p;
  p.name = f.label;
  p.dim = f.algebra.dim();
  p.algebra = f.algebra.name();
  std::vector<ConeDescription> tags;
  bool tagged = p.dim == 3;
  for (const auto& b : f.branches) {
    const auto t = branch_tag(b);
    if (!t) {
      tagged = false;
      break;
    }
    tags.push_back(ConeDescription::exact(*t, 3, p.algebra));
  }
  if (tagged) {
    const auto u = cone_union(tags);
    if (u.is_exact()) p.exact_tag = u.as_exact().name;
  }
  const auto branches = f.branches;
  p.sampler = [branches](Rng& rng, double min_norm) -> std::optional<Vec> {
    std::uniform_int_distribution<size_t> pick(0, branches.size() - 1);
    for (size_t attempt = 0; attempt < 4 * branches.size(); ++attempt) {
      const auto v = branch_point(branches[pick(rng)], rng, min_norm);
      if (v) return v;
    }
    return std::nullopt;
  };
  return p;
}

// ---------------------------------------------------------------------------

Vec orbit_invariants(const MatrixLieAlgebra& L, const Covector& xi) {
  if (xi.coords.size() != L.dim()) throw Error(ErrorCode::DimensionMismatch, "covector length");
  const Vec& c = xi.coords;
  if (L.name() == "sl2R") return Vec::Constant(1, c(0) * c(0) + c(1) * c(1) - c(2) * c(2));

  // Faddeev-LeVerrier: det(tI - M) = sum_k coeff[k] t^k.
  const CMat m = L.to_matrix(c);
  const int n = L.matrix_size();
  std::vector<std::complex<double>> coeff(static_cast<size_t>(n) + 1);
  coeff[static_cast<size_t>(n)] = 1.0;
  CMat mk = CMat::Zero(n, n);
  for (int k = 1; k <= n; ++k) {
    mk = m * mk + coeff[static_cast<size_t>(n - k + 1)] * CMat::Identity(n, n);
    coeff[static_cast<size_t>(n - k)] = -(m * mk).trace() / static_cast<double>(k);
  }
  bool complex_basis = false;
  for (const auto& b : L.basis()) complex_basis = complex_basis || b.imag().norm() > 0.0;
  Vec out(complex_basis ? 2 * n : n);
  for (int k = 0; k < n; ++k) {
    out(k) = coeff[static_cast<size_t>(n - 1 - k)].real();
    if (complex_basis) out(n + k) = coeff[static_cast<size_t>(n - 1 - k)].imag();
  }
  return out;
}

TangentFrame tangent_frame(const MatrixLieAlgebra& L, const Covector& xi) {
  if (xi.coords.size() != L.dim()) throw Error(ErrorCode::DimensionMismatch, "covector length");
  if (xi.coords.norm() < 1e-14) throw Error(ErrorCode::ZeroPoint, "tangent space requested at xi = 0");
  TangentFrame out;
  std::vector<Vec> q;  // orthonormalized copies
  double scale = 0.0;
  std::vector<Vec> v(static_cast<size_t>(L.dim()));
  for (int i = 0; i < L.dim(); ++i) {
    v[static_cast<size_t>(i)] = L.ad_basis(i) * xi.coords;
    scale = std::max(scale, v[static_cast<size_t>(i)].norm());
  }
  if (scale == 0.0) return out;
  for (int i = 0; i < L.dim(); ++i) {
    Vec r = v[static_cast<size_t>(i)];
    for (const auto& e : q) r -= e.dot(r) * e;
    if (r.norm() > 1e-9 * scale) {
      q.push_back(r / r.norm());
      out.vectors.push_back(v[static_cast<size_t>(i)]);
      out.generators.push_back(Vec::Unit(L.dim(), i));
    }
  }
  return out;
}

std::vector<Covector> tangent_basis(const MatrixLieAlgebra& L, const Covector& xi) {
  std::vector<Covector> out;
  for (auto& v : tangent_frame(L, xi).vectors) out.push_back(Covector{v});
  return out;
}

double kks_form(const MatrixLieAlgebra& L, const Covector& xi, const AlgebraElement& x, const AlgebraElement& y) {
  return -L.trace_pairing(xi.coords, L.bracket(x.coords, y.coords));
}

Mat kks_gram(const MatrixLieAlgebra& L, const Covector& xi, const std::vector<Vec>& tangent_vectors) {
  const int n = L.dim();
  Mat a(n, n);
  for (int i = 0; i < n; ++i) a.col(i) = L.ad_basis(i) * xi.coords;
  const Eigen::CompleteOrthogonalDecomposition<Mat> cod(a);
  const size_t k = tangent_vectors.size();
  std::vector<Vec> pre(k);
  for (size_t i = 0; i < k; ++i) {
    const Vec& v = tangent_vectors[i];
    if (v.size() != n) throw Error(ErrorCode::DimensionMismatch, "tangent vector length");
    pre[i] = cod.solve(v);
    if ((a * pre[i] - v).norm() > 1e-8 * std::max(1.0, v.norm()))
      throw Error(ErrorCode::DegenerateForm, "vector is not tangent to the orbit");
  }
  Mat omega(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(k));
  for (size_t i = 0; i < k; ++i)
    for (size_t j = 0; j < k; ++j)
      omega(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
          kks_form(L, xi, AlgebraElement{pre[i]}, AlgebraElement{pre[j]});
  return omega;
}

double canonical_density(const MatrixLieAlgebra& L, const Covector& xi, const std::vector<Vec>& tangent_vectors) {
  const size_t k = tangent_vectors.size();
  if (k % 2 != 0) throw Error(ErrorCode::OddDimension, "canonical density needs an even number of vectors");
  if (k == 0) return 1.0;
  const Mat omega = kks_gram(L, xi, tangent_vectors);
  const double det = omega.determinant();
  if (det < 1e-14) throw Error(ErrorCode::DegenerateForm, "KKS form is degenerate on the given vectors");
  return std::sqrt(det) / std::pow(kTwoPi, static_cast<double>(k / 2));
}

namespace {

Mat orthonormal_tangent(const MatrixLieAlgebra& L, const Covector& xi) {
  const auto frame = tangent_frame(L, xi);
  Mat cols(L.dim(), static_cast<Eigen::Index>(frame.vectors.size()));
  for (size_t i = 0; i < frame.vectors.size(); ++i) cols.col(static_cast<Eigen::Index>(i)) = frame.vectors[i];
  if (cols.cols() == 0) return cols;
  return linalg::orthonormal_span(cols);
}

}  // namespace

double euclidean_density(const MatrixLieAlgebra& L, const Covector& xi, const std::vector<Vec>& tangent_vectors) {
  if (tangent_vectors.empty()) return 1.0;
  const Mat e = orthonormal_tangent(L, xi);
  if (static_cast<size_t>(e.cols()) != tangent_vectors.size())
    throw Error(ErrorCode::DegenerateForm, "frame size differs from the orbit dimension");
  const Eigen::Index k = e.cols();
  Mat m(k, k);
  double scale = 1.0;
  for (Eigen::Index i = 0; i < k; ++i) {
    const Vec& v = tangent_vectors[static_cast<size_t>(i)];
    m.row(i) = (e.transpose() * v).transpose();
    scale *= std::max(v.norm(), 1e-300);
  }
  const double det = std::abs(m.determinant());
  if (det < 1e-12 * scale) throw Error(ErrorCode::DegenerateForm, "frame does not span the tangent space");
  return det;
}

double density_ratio_F(const MatrixLieAlgebra& L, const Covector& xi) {
  const Mat e = orthonormal_tangent(L, xi);
  const Eigen::Index k = e.cols();
  if (k == 0) return 1.0;
  const Mat& ginv = L.gram_inverse();
  Mat m(k, k);
  for (Eigen::Index i = 0; i < k; ++i) {
    // X_i with <eta, X_i> = (eta, eta_i) for all eta.
    const Vec x = ginv * e.col(i);
    const Vec tangent = L.ad_matrix(x) * xi.coords;
    for (Eigen::Index j = 0; j < k; ++j) m(i, j) = tangent.dot(e.col(j));
  }
  return std::pow(kTwoPi, static_cast<double>(k / 2)) * std::sqrt(std::abs(m.determinant()));
}

FScan density_ratio_scan(const MatrixLieAlgebra& L, int samples, std::uint64_t seed, double lo, double hi, int bins) {
  if (samples < 1 || bins < 2 || !(lo > 0.0) || !(hi > lo))
    throw Error(ErrorCode::InvalidArgument, "density_ratio_scan needs samples >= 1, bins >= 2, 0 < lo < hi");
  FScan out;
  Rng rng(seed);
  std::vector<double> best(static_cast<size_t>(bins), -1.0), best_norm(static_cast<size_t>(bins), 0.0);
  const double half_dim = L.dim() / 2.0;
  for (int s = 0; s < samples; ++s) {
    const double u = uniform(rng, 0.0, 1.0);
    const double norm = lo * std::pow(hi / lo, u);
    const Vec xi = norm * random_unit_vector(rng, L.dim());
    const double f = density_ratio_F(L, Covector{xi});
    out.points.emplace_back(norm, f);
    out.max_ratio = std::max(out.max_ratio, f / std::pow(1.0 + norm, half_dim));
    const size_t b = std::min(static_cast<size_t>(bins - 1), static_cast<size_t>(u * bins));
    if (f > best[b]) {
      best[b] = f;
      best_norm[b] = norm;
    }
  }
  std::vector<double> xs, ys;
  for (size_t b = 0; b < best.size(); ++b) {
    if (best[b] <= 0.0) continue;
    out.bin_max.emplace_back(1.0 + best_norm[b], best[b]);
    xs.push_back(std::log(1.0 + best_norm[b]));
    ys.push_back(std::log(best[b]));
  }
  if (xs.size() >= 2) {
    double mx = 0, my = 0;
    for (size_t i = 0; i < xs.size(); ++i) {
      mx += xs[i];
      my += ys[i];
    }
    mx /= static_cast<double>(xs.size());
    my /= static_cast<double>(xs.size());
    double sxy = 0, sxx = 0;
    for (size_t i = 0; i < xs.size(); ++i) {
      sxy += (xs[i] - mx) * (ys[i] - my);
      sxx += (xs[i] - mx) * (xs[i] - mx);
    }
    out.slope = sxx > 0 ? sxy / sxx : 0.0;
  }
  return out;
}

// ---------------------------------------------------------------------------

std::vector<Vec> orbit_sample(const OrbitParam& param, int n, std::uint64_t seed) {
  if (n < 1) throw Error(ErrorCode::InvalidArgument, "orbit_sample needs n >= 1");
  Rng rng(seed);
  std::vector<Vec> out;
  out.reserve(static_cast<size_t>(n));
  if (param.sl2_tag) {
    for (int i = 0; i < n; ++i) {
      const double s = uniform(rng, -3.0, 3.0);
      const double theta = uniform(rng, 0.0, kTwoPi);
      out.push_back(sl2_point_param(param.sl2_tag->kind, param.sl2_tag->param, s, theta));
    }
    return out;
  }
  const int dim = param.algebra.dim();
  std::uniform_int_distribution<int> pick(0, std::max(0, dim - 1));
  for (int i = 0; i < n; ++i) {
    Vec v = param.base_point.coords;
    if (dim > 0)
      for (int step = 0; step < 50; ++step) {
        const Mat a = uniform(rng, -1.0, 1.0) * param.algebra.ad_basis(pick(rng));
        v = a.exp() * v;
      }
    out.push_back(v);
  }
  return out;
}

std::vector<Vec> orbit_sum_sample(const OrbitParam& a, const OrbitParam& b, int n, std::uint64_t seed) {
  if (a.algebra.dim() != b.algebra.dim()) throw Error(ErrorCode::DimensionMismatch, "orbits of different algebras");
  const auto pa = orbit_sample(a, n, substream_seed(seed, 1));
  const auto pb = orbit_sample(b, n, substream_seed(seed, 2));
  std::vector<Vec> out;
  out.reserve(pa.size());
  for (size_t i = 0; i < pa.size(); ++i) out.push_back(pa[i] + pb[i]);
  return out;
}

std::vector<Vec> nilpotent_cone_samples(const MatrixLieAlgebra& L, int n, std::uint64_t seed) {
  const auto cd = cartan_decomposition(L);
  std::vector<Vec> out;
  if (cd.p_basis.cols() == 0 || n < 1) return out;
  Rng rng(seed);
  const Vec h = cd.p_basis * gaussian_vector(rng, static_cast<int>(cd.p_basis.cols()));
  const Mat ad = L.ad_matrix(h);
  Eigen::EigenSolver<Mat> es(ad, false);
  std::vector<double> positive;
  for (int i = 0; i < es.eigenvalues().size(); ++i) {
    const double l = es.eigenvalues()(i).real();
    if (l > 1e-6 && std::none_of(positive.begin(), positive.end(), [&](double m) { return std::abs(m - l) < 1e-6; }))
      positive.push_back(l);
  }
  std::vector<Vec> nil;
  for (double l : positive) {
    const Mat k = linalg::null_space(ad - l * Mat::Identity(L.dim(), L.dim()), 1e-8);
    for (Eigen::Index j = 0; j < k.cols(); ++j) nil.push_back(k.col(j));
  }
  if (nil.empty()) return out;
  Mat nb(L.dim(), static_cast<Eigen::Index>(nil.size()));
  for (size_t j = 0; j < nil.size(); ++j) nb.col(static_cast<Eigen::Index>(j)) = nil[j];
  out.reserve(static_cast<size_t>(n));
  while (static_cast<int>(out.size()) < n) {
    const Vec v = nb * gaussian_vector(rng, static_cast<int>(nb.cols()));
    const Mat g = random_group_element(L, rng, 6, 1.5);
    const Vec w = g * v;
    if (w.norm() > 1e-12) out.push_back(w / w.norm());
  }
  return out;
}

}  // namespace orbitcone
