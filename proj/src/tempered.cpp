#include "orbitcone/tempered.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <numeric>
#include <set>

#include "orbitcone/random.hpp"

namespace orbitcone {

const char* to_string(BKVerdict v) {
  switch (v) {
    case BKVerdict::Contained: return "Contained";
    case BKVerdict::Violated: return "Violated";
    case BKVerdict::Unknown: return "Unknown";
  }
  return "?";
}

namespace {

constexpr double kRoundTol = 1e-6;

CMat complex_null_space(const CMat& m, double tol) {
  Eigen::JacobiSVD<CMat> svd(m, Eigen::ComputeFullV);
  const auto& s = svd.singularValues();
  int rank = 0;
  for (int i = 0; i < s.size(); ++i)
    if (s(i) > tol) ++rank;
  return svd.matrixV().rightCols(m.cols() - rank);
}

// Joint weights of commuting matrices with real spectra. Each eigenspace of a
// generic combination must be a joint eigenspace; the combination is redrawn
// when two weights collide on it.
std::vector<std::pair<Vec, int>> joint_weights(const std::vector<CMat>& mats, int n) {
  const int r = static_cast<int>(mats.size());
  if (r == 0) return {{Vec::Zero(0), n}};
  double scale = 1.0;
  for (const auto& m : mats) scale = std::max(scale, m.norm());
  for (int i = 0; i < r; ++i)
    for (int j = i + 1; j < r; ++j)
      if ((mats[i] * mats[j] - mats[j] * mats[i]).norm() > 1e-9 * scale * scale)
        throw Error(ErrorCode::NonCommuting, "action matrices do not commute");
  Rng rng(0x3e16a7ULL);
  for (int attempt = 0; attempt < 16; ++attempt) {
    const Vec c = gaussian_vector(rng, r);
    CMat z = CMat::Zero(n, n);
    for (int i = 0; i < r; ++i) z += c(i) * mats[static_cast<size_t>(i)];
    Eigen::ComplexEigenSolver<CMat> es(z, false);
    std::vector<std::complex<double>> ev(es.eigenvalues().data(), es.eigenvalues().data() + n);
    for (auto l : ev)
      if (std::abs(l.imag()) > 1e-7 * scale)
        throw Error(ErrorCode::InvalidArgument, "action is not diagonalizable over R");
    std::sort(ev.begin(), ev.end(), [](auto a, auto b) { return a.real() < b.real(); });
    std::vector<std::pair<Vec, int>> out;
    bool ok = true;
    int covered = 0;
    for (size_t i = 0; i < ev.size() && ok;) {
      size_t j = i;
      while (j < ev.size() && std::abs(ev[j].real() - ev[i].real()) < 1e-6 * scale) ++j;
      const int mult = static_cast<int>(j - i);
      const CMat e = complex_null_space(z - ev[i].real() * CMat::Identity(n, n), 1e-7 * scale);
      if (e.cols() != mult) throw Error(ErrorCode::InvalidArgument, "action is not diagonalizable");
      Vec lambda(r);
      for (int k = 0; k < r; ++k) {
        const CMat a = e.adjoint() * mats[static_cast<size_t>(k)] * e;  // e has orthonormal columns
        const std::complex<double> l = a.trace() / static_cast<double>(mult);
        if ((mats[static_cast<size_t>(k)] * e - l * e).norm() > 1e-7 * scale) ok = false;
        lambda(k) = l.real();
      }
      out.emplace_back(lambda, mult);
      covered += mult;
      i = j;
    }
    if (ok && covered == n) return out;
  }
  throw Error(ErrorCode::InvalidArgument, "could not separate joint eigenspaces");
}

WeightSystem to_weight_system(std::vector<std::pair<Vec, int>> raw, int r) {
  WeightSystem w;
  w.ambient_dim = r;
  w.integral = true;
  for (auto& [lambda, mult] : raw) {
    for (int k = 0; k < lambda.size(); ++k) {
      const double rounded = std::round(lambda(k));
      if (std::abs(lambda(k) - rounded) <= kRoundTol)
        lambda(k) = rounded;
      else
        w.integral = false;
    }
    bool merged = false;
    for (auto& existing : w.weights)
      if ((existing.functional - lambda).norm() < kRoundTol) {
        existing.multiplicity += mult;
        merged = true;
        break;
      }
    if (!merged) w.weights.push_back({lambda, mult});
  }
  std::sort(w.weights.begin(), w.weights.end(), [](const Weight& a, const Weight& b) {
    return std::lexicographical_compare(b.functional.data(), b.functional.data() + b.functional.size(),
                                        a.functional.data(), a.functional.data() + a.functional.size());
  });
  return w;
}

using I64 = long long;

I64 int_det(const std::vector<std::vector<I64>>& m) {
  const size_t n = m.size();
  if (n == 0) return 1;
  if (n == 1) return m[0][0];
  I64 d = 0;
  for (size_t c = 0; c < n; ++c) {
    if (m[0][c] == 0) continue;
    std::vector<std::vector<I64>> minor;
    for (size_t r = 1; r < n; ++r) {
      std::vector<I64> row;
      for (size_t k = 0; k < n; ++k)
        if (k != c) row.push_back(m[r][k]);
      minor.push_back(row);
    }
    d += ((c % 2) ? -1 : 1) * m[0][c] * int_det(minor);
  }
  return d;
}

// z with rows . z = 0 for an (s-1) x s integer matrix: signed maximal minors.
std::vector<I64> int_cross(const std::vector<std::vector<I64>>& rows, size_t s) {
  std::vector<I64> z(s);
  for (size_t k = 0; k < s; ++k) {
    std::vector<std::vector<I64>> m;
    for (const auto& row : rows) {
      std::vector<I64> r;
      for (size_t c = 0; c < s; ++c)
        if (c != k) r.push_back(row[c]);
      m.push_back(r);
    }
    z[k] = ((k % 2) ? -1 : 1) * int_det(m);
  }
  return z;
}

// Visits every size-k subset of {0..n-1}.
template <class F>
void for_each_subset(size_t n, size_t k, F&& f) {
  std::vector<size_t> idx(k);
  std::iota(idx.begin(), idx.end(), 0);
  if (k > n) return;
  while (true) {
    f(idx);
    size_t i = k;
    while (i > 0 && idx[i - 1] == n - k + i - 1) --i;
    if (i == 0) return;
    ++idx[i - 1];
    for (size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
}

double margin(const WeightSystem& h, const WeightSystem& g, const Vec& y) { return rho(g, y) - 2.0 * rho(h, y); }

}  // namespace

nlohmann::json WeightSystem::to_json() const {
  nlohmann::json out;
  out["dim"] = ambient_dim;
  out["integral"] = integral;
  out["weights"] = nlohmann::json::array();
  for (const auto& w : weights) {
    nlohmann::json f = nlohmann::json::array();
    for (int k = 0; k < w.functional.size(); ++k) f.push_back(w.functional(k));
    out["weights"].push_back({{"functional", f}, {"multiplicity", w.multiplicity}});
  }
  return out;
}

WeightSystem weights_of_action(const std::vector<Mat>& action, int module_dim) {
  std::vector<CMat> mats;
  for (const auto& m : action) {
    if (m.rows() != module_dim || m.cols() != module_dim)
      throw Error(ErrorCode::DimensionMismatch, "action matrix size differs from module dimension");
    mats.push_back(m.cast<std::complex<double>>());
  }
  return to_weight_system(joint_weights(mats, module_dim), static_cast<int>(action.size()));
}

WeightSystem adjoint_weights(const MatrixLieAlgebra& L, const Mat& a_basis) {
  std::vector<Mat> action;
  for (Eigen::Index i = 0; i < a_basis.cols(); ++i) action.push_back(L.ad_matrix(a_basis.col(i)));
  return weights_of_action(action, L.dim());
}

Mat split_abelian(const SubalgebraEmbedding& e) {
  const MatrixLieAlgebra& h = e.sub;
  if (h.dim() == 0) return Mat(0, 0);
  const auto cd = cartan_decomposition(h);
  if (!cd.theta_stable)
    throw Error(ErrorCode::UnsupportedAlgebra, "split_abelian needs a subalgebra stable under X -> -X^*: " + h.name());
  const int pd = static_cast<int>(cd.p_basis.cols());
  if (pd == 0) return Mat(h.dim(), 0);

  // Centralizer in p of a generic element of p.
  Rng rng(0xab1e5ULL);
  const Vec y = cd.p_basis * gaussian_vector(rng, pd);
  const Mat comm = h.ad_matrix(y / y.norm()) * cd.p_basis;
  const Mat raw = cd.p_basis * linalg::null_space(comm, 1e-9);
  const int r = static_cast<int>(raw.cols());

  // Check: commuting and real diagonalizable on h.
  std::vector<Mat> action;
  for (int i = 0; i < r; ++i) action.push_back(h.ad_matrix(raw.col(i)));
  weights_of_action(action, h.dim());

  // Rescale so that r independent defining weights of the ambient algebra
  // become the dual basis.
  const MatrixLieAlgebra& g = e.ambient;
  std::vector<CMat> defining;
  for (int i = 0; i < r; ++i) defining.push_back(g.to_matrix(e.inclusion * raw.col(i)));
  const auto dw = joint_weights(defining, g.matrix_size());
  Mat w(0, r);
  for (const auto& [lambda, mult] : dw) {
    Mat trial(w.rows() + 1, r);
    trial << w, lambda.transpose();
    if (linalg::numeric_rank(trial, 1e-8) == trial.rows()) w = trial;
    if (w.rows() == r) break;
  }
  if (w.rows() != r) return raw;
  return raw * w.inverse();
}

double rho(const WeightSystem& w, const Vec& y) {
  if (y.size() != w.ambient_dim) throw Error(ErrorCode::DimensionMismatch, "rho: ray dimension");
  double s = 0.0;
  for (const auto& l : w.weights) s += l.multiplicity * std::max(l.functional.dot(y), 0.0);
  return s;
}

BKCertificate bk_check(const WeightSystem& h, const WeightSystem& g) {
  if (h.ambient_dim != g.ambient_dim) throw Error(ErrorCode::DimensionMismatch, "weight systems on different spaces");
  const int r = h.ambient_dim;
  if (r > 4) throw Error(ErrorCode::DimensionTooLarge, "bk_check supports split rank <= 4");
  BKCertificate out;
  out.h_weights = h;
  out.g_weights = g;
  out.exact = h.integral && g.integral;
  out.verdict = BKVerdict::Contained;
  if (r == 0) return out;

  std::vector<Vec> normals;
  for (const auto* ws : {&h, &g})
    for (const auto& w : ws->weights)
      if (w.functional.norm() > kRoundTol) normals.push_back(w.functional);
  if (normals.empty()) {
    out.lineality_dim = r;
    return out;
  }

  // Basis of the span of the weights; the common kernel is the lineality space.
  Mat b(0, r);
  for (const auto& n : normals) {
    Mat trial(b.rows() + 1, r);
    trial << b, n.transpose();
    if (linalg::numeric_rank(trial, 1e-9) == trial.rows()) b = trial;
  }
  const size_t s = static_cast<size_t>(b.rows());
  out.lineality_dim = r - static_cast<int>(s);

  std::vector<Vec> rays;  // in a coordinates
  if (out.exact) {
    auto to_int = [](const Vec& v) {
      std::vector<I64> o(static_cast<size_t>(v.size()));
      for (int k = 0; k < v.size(); ++k) o[static_cast<size_t>(k)] = static_cast<I64>(std::llround(v(k)));
      return o;
    };
    const auto bi = [&] {
      std::vector<std::vector<I64>> rows;
      for (Eigen::Index i = 0; i < b.rows(); ++i) rows.push_back(to_int(b.row(i).transpose()));
      return rows;
    }();
    // Hyperplanes in quotient coordinates z (Y = B^T z): lambda B^T, primitive, sign-normalized.
    std::set<std::vector<I64>> planes;
    for (const auto& n : normals) {
      const auto ni = to_int(n);
      std::vector<I64> m(s);
      for (size_t i = 0; i < s; ++i)
        for (size_t k = 0; k < static_cast<size_t>(r); ++k) m[i] += ni[k] * bi[i][k];
      I64 gcd = 0;
      for (auto v : m) gcd = std::gcd(gcd, std::llabs(v));
      if (gcd == 0) continue;
      for (auto& v : m) v /= gcd;
      const auto first = std::find_if(m.begin(), m.end(), [](I64 v) { return v != 0; });
      if (*first < 0)
        for (auto& v : m) v = -v;
      planes.insert(m);
    }
    out.hyperplanes = planes.size();
    const std::vector<std::vector<I64>> pl(planes.begin(), planes.end());
    std::set<std::vector<I64>> seen;
    for_each_subset(pl.size(), s - 1, [&](const std::vector<size_t>& idx) {
      std::vector<std::vector<I64>> rows;
      for (auto i : idx) rows.push_back(pl[i]);
      auto z = s == 1 ? std::vector<I64>{1} : int_cross(rows, s);
      I64 gcd = 0;
      for (auto v : z) gcd = std::gcd(gcd, std::llabs(v));
      if (gcd == 0) return;
      for (auto& v : z) v /= gcd;
      for (int sign : {1, -1}) {
        std::vector<I64> zz = z;
        for (auto& v : zz) v *= sign;
        if (!seen.insert(zz).second) continue;
        Vec y = Vec::Zero(r);
        for (size_t i = 0; i < s; ++i)
          for (int k = 0; k < r; ++k) y(k) += static_cast<double>(zz[i] * bi[i][static_cast<size_t>(k)]);
        rays.push_back(y);
      }
    });
  } else {
    std::vector<Vec> pl;
    for (const auto& n : normals) {
      Vec m = b * n;
      m /= m.norm();
      const Eigen::Index first = [&] {
        for (Eigen::Index k = 0; k < m.size(); ++k)
          if (std::abs(m(k)) > 1e-9) return k;
        return Eigen::Index(0);
      }();
      if (m(first) < 0) m = -m;
      if (std::none_of(pl.begin(), pl.end(), [&](const Vec& p) { return (p - m).norm() < 1e-9; })) pl.push_back(m);
    }
    out.hyperplanes = pl.size();
    for_each_subset(pl.size(), s - 1, [&](const std::vector<size_t>& idx) {
      Mat rows(static_cast<Eigen::Index>(idx.size()), static_cast<Eigen::Index>(s));
      for (size_t i = 0; i < idx.size(); ++i) rows.row(static_cast<Eigen::Index>(i)) = pl[idx[i]].transpose();
      const Mat ns = idx.empty() ? Mat::Identity(1, 1) : linalg::null_space(rows, 1e-9);
      if (ns.cols() != 1) return;
      for (int sign : {1, -1}) {
        const Vec y = sign * (b.transpose() * ns.col(0));
        if (std::none_of(rays.begin(), rays.end(),
                         [&](const Vec& q) { return (q / q.norm() - y / y.norm()).norm() < 1e-9; }))
          rays.push_back(y);
      }
    });
  }
  out.candidate_rays = rays.size();

  double worst = std::numeric_limits<double>::infinity();
  for (const auto& y : rays) {
    const Vec u = y / y.norm();
    const double m = margin(h, g, u);
    if (m < worst) {
      worst = m;
      out.witness = u;
    }
    // Exact sign test on the integer ray.
    const double raw = margin(h, g, y);
    const bool violated = out.exact ? raw < -0.5 : m < -1e-9;
    if (violated) out.verdict = BKVerdict::Violated;
  }
  if (out.witness) {
    out.two_rho_h = 2.0 * rho(h, *out.witness);
    out.rho_g = rho(g, *out.witness);
  }
  if (out.verdict == BKVerdict::Contained) out.witness.reset();
  return out;
}

BKCertificate bk_weak_containment(const SubalgebraEmbedding& e) {
  const Mat a = split_abelian(e);
  const int r = static_cast<int>(a.cols());
  if (r > 4) throw Error(ErrorCode::DimensionTooLarge, "split rank of " + e.sub.name() + " exceeds 4");
  const WeightSystem wh = r == 0 ? WeightSystem{0, {{Vec::Zero(0), e.sub.dim()}}, true} : adjoint_weights(e.sub, a);
  const WeightSystem wg =
      r == 0 ? WeightSystem{0, {{Vec::Zero(0), e.ambient.dim()}}, true} : adjoint_weights(e.ambient, e.inclusion * a);
  BKCertificate out = bk_check(wh, wg);
  out.a_basis = a;
  return out;
}

nlohmann::json BKCertificate::to_json() const {
  nlohmann::json out;
  out["verdict"] = to_string(verdict);
  out["exact_integer_arithmetic"] = exact;
  out["split_rank"] = h_weights.ambient_dim;
  out["lineality_dim"] = lineality_dim;
  out["hyperplanes"] = hyperplanes;
  out["candidate_rays"] = candidate_rays;
  out["h_weights"] = h_weights.to_json();
  out["g_weights"] = g_weights.to_json();
  if (witness) {
    nlohmann::json y = nlohmann::json::array();
    for (int k = 0; k < witness->size(); ++k) y.push_back((*witness)(k));
    out["witness"] = {{"ray", y}, {"two_rho_h", two_rho_h}, {"rho_g", rho_g}};
  } else {
    out["witness"] = nullptr;
  }
  return out;
}

SphereCheck bk_sphere_check(const BKCertificate& c, size_t samples, std::uint64_t seed) {
  SphereCheck out;
  const int r = c.h_weights.ambient_dim;
  if (r == 0) return out;
  Rng rng(seed);
  out.samples = samples;
  out.min_margin = std::numeric_limits<double>::infinity();
  out.witness_angle = std::numeric_limits<double>::infinity();
  for (size_t i = 0; i < samples; ++i) {
    const Vec u = random_unit_vector(rng, r);
    const double m = margin(c.h_weights, c.g_weights, u);
    out.min_margin = std::min(out.min_margin, m);
    if (m < -1e-9) {
      ++out.violations;
      if (c.witness) out.witness_angle = std::min(out.witness_angle, std::acos(std::clamp(u.dot(*c.witness), -1.0, 1.0)));
    }
  }
  return out;
}

}  // namespace orbitcone
