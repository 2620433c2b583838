#include "orbitcone/cartan.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "orbitcone/random.hpp"

namespace orbitcone {

std::string to_string(const CartanSignature& s) {
  return "(" + std::to_string(s.compact_dim) + "," + std::to_string(s.split_dim) + ")";
}

const char* to_string(SaturationVerdict v) {
  switch (v) {
    case SaturationVerdict::Full: return "Full";
    case SaturationVerdict::NotFull: return "NotFull";
    case SaturationVerdict::Unknown: return "Unknown";
  }
  return "?";
}

namespace {

int nullity(const Mat& m) { return static_cast<int>(m.cols()) - linalg::numeric_rank(m, 1e-9); }

// Weights of a commuting family of semisimple matrices in the defining
// representation: rows are joint eigenvectors, columns the family members.
CMat defining_weights(const MatrixLieAlgebra& L, const Mat& basis, Rng& rng) {
  const int r = static_cast<int>(basis.cols());
  const int n = L.matrix_size();
  std::vector<CMat> mats;
  for (int i = 0; i < r; ++i) mats.push_back(L.to_matrix(basis.col(i)));
  CMat z = CMat::Zero(n, n);
  const Vec c = gaussian_vector(rng, r);
  for (int i = 0; i < r; ++i) z += c(i) * mats[static_cast<size_t>(i)];
  Eigen::ComplexEigenSolver<CMat> es(z);
  const CMat v = es.eigenvectors();
  const CMat vinv = v.inverse();
  CMat w(n, r);
  for (int i = 0; i < r; ++i) w.col(i) = (vinv * mats[static_cast<size_t>(i)] * v).diagonal();
  return w;
}

bool supported_for_cartan(const std::string& name) {
  if (name == "sl2R" || name == "su(2,1)") return true;
  if (name.rfind("abelian(", 0) == 0) return true;
  if (name.rfind("so(", 0) == 0) {
    const auto comma = name.find(',');
    const int p = std::stoi(name.substr(3, comma - 3));
    const int q = std::stoi(name.substr(comma + 1));
    return p + q <= 8;
  }
  if (name.rfind("prod(", 0) == 0) return true;
  return false;
}

// Proposal X = k + t p with per-coordinate magnitudes spread over four decades.
Vec propose(const Mat& kb, const Mat& pb, int dim, Rng& rng) {
  auto spread = [&](int m) {
    Vec v = gaussian_vector(rng, m);
    if (uniform(rng, 0.0, 1.0) < 0.5)
      for (int i = 0; i < m; ++i) v(i) *= std::pow(10.0, uniform(rng, -2.0, 2.0));
    return v;
  };
  Vec x = Vec::Zero(dim);
  if (kb.cols() > 0) x += kb * spread(static_cast<int>(kb.cols()));
  if (pb.cols() > 0) x += std::pow(10.0, uniform(rng, -2.0, 2.0)) * (pb * spread(static_cast<int>(pb.cols())));
  return x;
}

}  // namespace

int algebra_rank(const MatrixLieAlgebra& L, std::uint64_t seed) {
  Rng rng(seed);
  int best = L.dim();
  for (int k = 0; k < 8; ++k) best = std::min(best, nullity(L.ad_matrix(gaussian_vector(rng, L.dim()))));
  return best;
}

namespace {

// Centralizer of a regular x with its signature; the semisimplicity test is
// skipped when the signature is already in `known`.
std::optional<CartanClass> regular_centralizer(const MatrixLieAlgebra& L, const Vec& x, int rank,
                                               const std::map<CartanSignature, CartanClass>* known) {
  const double n = x.norm();
  if (n < 1e-12 && L.dim() > 0) return std::nullopt;
  const Vec u = L.dim() > 0 ? Vec(x / n) : x;
  const Mat c = linalg::null_space(L.ad_matrix(u), 1e-9);
  if (c.cols() != rank) return std::nullopt;
  CartanClass out;
  for (Eigen::Index i = 0; i < c.cols(); ++i)
    for (Eigen::Index j = i + 1; j < c.cols(); ++j)
      out.abelian_defect = std::max(out.abelian_defect, L.bracket(c.col(i), c.col(j)).norm());
  if (out.abelian_defect > 1e-8) return std::nullopt;
  Rng rng(0xca47a5ULL);
  const CMat w = defining_weights(L, c, rng);
  const int split = linalg::numeric_rank(w.real(), 1e-8);
  const int compact = linalg::numeric_rank(w.imag(), 1e-8);
  if (split + compact != rank) return std::nullopt;
  out.signature = CartanSignature{compact, split};
  if (known && known->count(out.signature)) return std::nullopt;
  // A regular semisimple element has a Cartan subalgebra as centralizer.
  if (!is_semisimple_element(L, u)) return std::nullopt;
  out.basis = c;
  out.generator = u;
  return out;
}

}  // namespace

std::optional<CartanClass> cartan_of_element(const MatrixLieAlgebra& L, const Vec& x, int rank) {
  return regular_centralizer(L, x, rank, nullptr);
}

std::vector<CartanClass> cartan_classes(const MatrixLieAlgebra& L, int budget, std::uint64_t seed) {
  if (!supported_for_cartan(L.name()))
    throw Error(ErrorCode::UnsupportedAlgebra, "cartan_classes does not support " + L.name());
  const int rank = algebra_rank(L, substream_seed(seed, 0));
  const auto cd = cartan_decomposition(L);
  Rng rng(substream_seed(seed, 1));
  std::map<CartanSignature, CartanClass> found;
  if (rank == L.dim()) {
    // Abelian: the algebra is its own Cartan subalgebra.
    if (auto c = cartan_of_element(L, propose(cd.k_basis, cd.p_basis, L.dim(), rng), rank))
      found.emplace(c->signature, *c);
  }
  for (int k = 0; k < budget; ++k) {
    const Vec x = cd.theta_stable ? propose(cd.k_basis, cd.p_basis, L.dim(), rng) : gaussian_vector(rng, L.dim());
    if (auto c = regular_centralizer(L, x, rank, &found)) found.emplace(c->signature, *c);
  }
  std::vector<CartanClass> out;
  for (auto it = found.rbegin(); it != found.rend(); ++it) out.push_back(it->second);
  return out;
}

SaturationResult saturation_is_full(const SubalgebraEmbedding& e, int budget, std::uint64_t seed) {
  const MatrixLieAlgebra& L = e.ambient;
  SaturationResult out;
  out.ambient_classes = cartan_classes(L, 4000, substream_seed(seed, 0));
  const int rank = algebra_rank(L, substream_seed(seed, 1));
  const int qdim = static_cast<int>(e.complement.cols());

  // Split the complement along the Cartan involution when it is stable.
  Mat qk(L.dim(), 0), qp(L.dim(), 0);
  bool stable = true;
  {
    Mat kc(L.dim(), qdim), pc(L.dim(), qdim);
    for (int j = 0; j < qdim; ++j) {
      const CMat m = L.to_matrix(e.complement.col(j));
      const CMat km = 0.5 * (m - m.adjoint());
      const CMat pm = 0.5 * (m + m.adjoint());
      if (!L.in_span(km) || !L.in_span(pm)) {
        stable = false;
        break;
      }
      kc.col(j) = L.from_matrix(km);
      pc.col(j) = L.from_matrix(pm);
    }
    if (stable) {
      const Mat proj = e.complement * e.complement.transpose();
      stable = (proj * kc - kc).norm() < 1e-9 * std::max(1.0, kc.norm()) &&
               (proj * pc - pc).norm() < 1e-9 * std::max(1.0, pc.norm());
    }
    if (stable && qdim > 0) {
      qk = kc.norm() > 0 ? linalg::orthonormal_span(kc) : Mat(L.dim(), 0);
      qp = pc.norm() > 0 ? linalg::orthonormal_span(pc) : Mat(L.dim(), 0);
    }
  }

  std::map<CartanSignature, CartanClass> hits;
  Rng rng(substream_seed(seed, 2));
  if (qdim > 0) {
    for (int k = 0; k < budget && hits.size() < out.ambient_classes.size(); ++k) {
      ++out.samples_used;
      const Vec y = stable ? propose(qk, qp, L.dim(), rng) : Vec(e.complement * gaussian_vector(rng, qdim));
      if (auto c = regular_centralizer(L, y, rank, &hits)) hits.emplace(c->signature, *c);
    }
  }
  for (const auto& c : out.ambient_classes) {
    auto it = hits.find(c.signature);
    if (it != hits.end())
      out.certificates.push_back(it->second);
    else
      out.missing.push_back(c.signature);
  }
  if (out.missing.empty()) {
    out.verdict = SaturationVerdict::Full;
    return out;
  }

  // Exact refutation: if every element of the complement is Hermitian, all
  // its elements are hyperbolic and only classes whose split part contains a
  // regular element can be reached.
  if (stable && qk.cols() == 0) {
    bool all_unreachable = true;
    std::string detail;
    for (const auto& sig : out.missing) {
      const auto& cls = *std::find_if(out.ambient_classes.begin(), out.ambient_classes.end(),
                                      [&](const CartanClass& c) { return c.signature == sig; });
      Rng wr(0x5a7011ULL);
      const CMat w = defining_weights(L, cls.basis, wr);
      const Mat split_coords = linalg::null_space(w.imag(), 1e-8);
      bool reachable = false;
      if (split_coords.cols() > 0) {
        const Vec a = cls.basis * (split_coords * gaussian_vector(wr, static_cast<int>(split_coords.cols())));
        reachable = nullity(L.ad_matrix(a / a.norm())) == rank;
      }
      if (reachable) all_unreachable = false;
      detail += (detail.empty() ? "" : "; ") + std::string("class ") + to_string(sig) +
                (reachable ? " has regular split elements" : " has no regular element in its split part");
    }
    if (all_unreachable) {
      out.verdict = SaturationVerdict::NotFull;
      out.refutation = "complement consists of hyperbolic elements; " + detail;
      return out;
    }
  }
  out.verdict = SaturationVerdict::Unknown;
  return out;
}

}  // namespace orbitcone
