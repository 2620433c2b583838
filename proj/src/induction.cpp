#include "orbitcone/induction.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <unsupported/Eigen/MatrixFunctions>

#include "orbitcone/random.hpp"
#include "orbitcone/text.hpp"

namespace orbitcone {

SubalgebraEmbedding make_embedding(std::string label, MatrixLieAlgebra ambient, MatrixLieAlgebra sub, Mat inclusion) {
  const int g = ambient.dim(), h = sub.dim();
  if (inclusion.rows() != g || inclusion.cols() != h)
    throw Error(ErrorCode::DimensionMismatch, "inclusion must be dim g x dim h");
  if (h > 0 && linalg::numeric_rank(inclusion) != h)
    throw Error(ErrorCode::InvalidArgument, "inclusion is not injective");
  for (int i = 0; i < h; ++i)
    for (int j = 0; j < h; ++j) {
      const Vec lhs = inclusion * sub.bracket(Vec::Unit(h, i), Vec::Unit(h, j));
      const Vec rhs = ambient.bracket(inclusion.col(i), inclusion.col(j));
      if ((lhs - rhs).norm() > 1e-9 * std::max(1.0, rhs.norm()))
        throw Error(ErrorCode::InvalidArgument, "inclusion does not respect brackets");
    }
  SubalgebraEmbedding e;
  e.label = std::move(label);
  const Mat igt = inclusion.transpose() * ambient.gram();
  e.q = h > 0 ? Mat(sub.gram_inverse() * igt) : Mat(0, g);
  e.complement = h > 0 ? linalg::null_space(igt, 1e-10) : Mat(Mat::Identity(g, g));
  if (e.complement.cols() != g - h)
    throw Error(ErrorCode::DegenerateForm, "trace form restricted to the subalgebra is degenerate");
  e.ambient = std::move(ambient);
  e.sub = std::move(sub);
  e.inclusion = std::move(inclusion);
  return e;
}

SubalgebraEmbedding embed_by_matrices(std::string label, MatrixLieAlgebra ambient, MatrixLieAlgebra sub) {
  if (ambient.matrix_size() != sub.matrix_size())
    throw Error(ErrorCode::DimensionMismatch, "matrix realizations have different sizes");
  Mat inc(ambient.dim(), sub.dim());
  for (int j = 0; j < sub.dim(); ++j) {
    if (!ambient.in_span(sub.basis()[j]))
      throw Error(ErrorCode::InvalidArgument, sub.name() + " is not contained in " + ambient.name());
    inc.col(j) = ambient.from_matrix(sub.basis()[j]);
  }
  return make_embedding(std::move(label), std::move(ambient), std::move(sub), std::move(inc));
}

SubalgebraEmbedding sopq_block_embedding(int p, int q, const std::vector<std::pair<int, int>>& blocks) {
  if (p < 0 || q < 0 || blocks.empty()) throw Error(ErrorCode::BadPartition, "empty block list");
  int sp = 0, sq = 0;
  for (auto [pi, qi] : blocks) {
    if (pi < 0 || qi < 0 || pi + qi == 0) throw Error(ErrorCode::BadPartition, "blocks must be nonempty");
    sp += pi;
    sq += qi;
  }
  if (sp != p || sq != q)
    throw Error(ErrorCode::BadPartition, "block sizes do not sum to (" + std::to_string(p) + "," + std::to_string(q) + ")");
  MatrixLieAlgebra ambient = make_so(p, q);
  std::vector<MatrixLieAlgebra> factors;
  for (auto [pi, qi] : blocks) factors.push_back(make_so(pi, qi));
  MatrixLieAlgebra sub = make_product(factors);

  // Product coordinates list each block's positive then negative indices;
  // send them to the next free positive / negative ambient indices.
  std::vector<int> perm;
  int next_pos = 0, next_neg = p;
  for (auto [pi, qi] : blocks) {
    for (int k = 0; k < pi; ++k) perm.push_back(next_pos++);
    for (int k = 0; k < qi; ++k) perm.push_back(next_neg++);
  }
  const int n = p + q;
  Mat inc(ambient.dim(), sub.dim());
  for (int j = 0; j < sub.dim(); ++j) {
    CMat m = CMat::Zero(n, n);
    const CMat& b = sub.basis()[j];
    for (int r = 0; r < n; ++r)
      for (int c = 0; c < n; ++c) m(perm[r], perm[c]) = b(r, c);
    inc.col(j) = ambient.from_matrix(m);
  }
  std::string label = "pair(" + ambient.name() + ", blocks[";
  for (size_t i = 0; i < blocks.size(); ++i)
    label += (i ? "," : "") + std::string("(") + std::to_string(blocks[i].first) + "," +
             std::to_string(blocks[i].second) + ")";
  label += "])";
  return make_embedding(std::move(label), std::move(ambient), std::move(sub), std::move(inc));
}

SubalgebraEmbedding diagonal_embedding(const MatrixLieAlgebra& a) {
  MatrixLieAlgebra ambient = make_product({a, a});
  Mat inc(ambient.dim(), a.dim());
  inc << Mat::Identity(a.dim(), a.dim()), Mat::Identity(a.dim(), a.dim());
  return make_embedding("diag(" + a.name() + ")", std::move(ambient), a, std::move(inc));
}

std::vector<std::pair<int, int>> parse_blocks(std::string_view raw) {
  const std::string s = text::strip(raw);
  const std::string head = "blocks[";
  if (s.rfind(head, 0) != 0 || s.back() != ']') throw Error(ErrorCode::ParseError, "expected blocks[...] in '" + s + "'");
  std::vector<std::pair<int, int>> out;
  for (const auto& item : text::split_top_level(s.substr(head.size(), s.size() - head.size() - 1))) {
    if (item.size() < 5 || item.front() != '(' || item.back() != ')')
      throw Error(ErrorCode::ParseError, "expected (p_i,q_i) in '" + s + "'");
    const auto nums = text::split_top_level(item.substr(1, item.size() - 2));
    if (nums.size() != 2) throw Error(ErrorCode::ParseError, "expected (p_i,q_i) in '" + s + "'");
    out.emplace_back(text::parse_int(nums[0], s), text::parse_int(nums[1], s));
  }
  if (out.empty()) throw Error(ErrorCode::BadPartition, "empty block list");
  return out;
}

namespace {

std::pair<int, int> so_signature(const std::string& name) {
  // name is so(p,q)
  const auto args = text::split_top_level(name.substr(3, name.size() - 4));
  return {text::parse_int(args.at(0), name), text::parse_int(args.at(1), name)};
}

MatrixLieAlgebra sl2_named_sub(const std::string& which) {
  CMat m(2, 2);
  if (which == "diag" || which == "a") {
    m << 1, 0, 0, -1;
    return make_span("a", {m}, 2);
  }
  m << 0, -1, 1, 0;
  return make_span("so(2)", {m}, 2);
}

}  // namespace

SubalgebraEmbedding build_pair(std::string_view raw) {
  const std::string s = text::strip(raw);
  if (s.rfind("diag(", 0) == 0 && s.back() == ')') return diagonal_embedding(build_algebra(s.substr(5, s.size() - 6)));
  if (const auto bar = s.find('|'); bar != std::string::npos) {
    const auto ambient = s.substr(0, bar);
    if (ambient.rfind("so(", 0) != 0) throw Error(ErrorCode::ParseError, "blocks need an so(p,q) ambient");
    const auto [p, q] = so_signature(ambient);
    return sopq_block_embedding(p, q, parse_blocks(s.substr(bar + 1)));
  }
  if (s.rfind("pair(", 0) != 0 || s.back() != ')') throw Error(ErrorCode::ParseError, "unrecognized pair '" + s + "'");
  const auto args = text::split_top_level(s.substr(5, s.size() - 6));
  if (args.size() != 2) throw Error(ErrorCode::ParseError, "pair(...) takes two arguments");
  const std::string& amb = args[0];
  const std::string& sub = args[1];
  if (sub.rfind("blocks[", 0) == 0) {
    if (amb.rfind("so(", 0) != 0) throw Error(ErrorCode::ParseError, "blocks need an so(p,q) ambient");
    const auto [p, q] = so_signature(amb);
    return sopq_block_embedding(p, q, parse_blocks(sub));
  }
  MatrixLieAlgebra ambient = build_algebra(amb);
  const std::string label = "pair(" + ambient.name() + ", " + sub + ")";
  if (sub == "0") {
    MatrixLieAlgebra zero = make_span("0", {}, ambient.matrix_size());
    const int d = ambient.dim();
    return make_embedding(label, std::move(ambient), std::move(zero), Mat(d, 0));
  }
  if (sub == "diag" && amb.rfind("prod(", 0) == 0) {
    const auto factors = text::split_top_level(amb.substr(5, amb.size() - 6));
    if (factors.size() == 2 && factors[0] == factors[1]) {
      auto e = diagonal_embedding(build_algebra(factors[0]));
      e.label = label;
      return e;
    }
  }
  if (ambient.name() == "sl2R" && (sub == "diag" || sub == "a" || sub == "so(2)"))
    return embed_by_matrices(label, std::move(ambient), sl2_named_sub(sub));
  MatrixLieAlgebra h = build_algebra(sub);
  if (h.name() == ambient.name()) {
    const int d = ambient.dim();
    return make_embedding(label, std::move(ambient), std::move(h), Mat::Identity(d, d));
  }
  return embed_by_matrices(label, std::move(ambient), std::move(h));
}

EmbeddingDefects embedding_defects(const SubalgebraEmbedding& e) {
  EmbeddingDefects d;
  const int g = e.ambient.dim(), h = e.sub.dim();
  for (int i = 0; i < h; ++i)
    for (int j = 0; j < h; ++j) {
      const Vec lhs = e.inclusion * e.sub.bracket(Vec::Unit(h, i), Vec::Unit(h, j));
      const Vec rhs = e.ambient.bracket(e.inclusion.col(i), e.inclusion.col(j));
      d.bracket = std::max(d.bracket, (lhs - rhs).cwiseAbs().maxCoeff());
    }
  for (int k = 0; k < g; ++k)
    for (int j = 0; j < h; ++j) {
      const Vec xi = Vec::Unit(g, k);
      const double lhs = e.sub.trace_pairing(e.q * xi, Vec::Unit(h, j));
      const double rhs = e.ambient.trace_pairing(xi, e.inclusion.col(j));
      d.pullback = std::max(d.pullback, std::abs(lhs - rhs));
    }
  Mat stacked(g, g);
  for (int j = 0; j < h; ++j) stacked.col(j) = e.inclusion.col(j).normalized();
  if (g - h > 0) stacked.rightCols(g - h) = e.complement;
  d.complement_det = g > 0 ? std::abs(stacked.determinant()) : 1.0;
  return d;
}

Covector pullback_q(const SubalgebraEmbedding& e, const Covector& xi) {
  if (xi.coords.size() != e.ambient.dim()) throw Error(ErrorCode::DimensionMismatch, "covector length");
  return Covector{e.q * xi.coords};
}

ConeDescription annihilator_cone(const SubalgebraEmbedding& e) {
  std::vector<Vec> gens;
  for (Eigen::Index j = 0; j < e.complement.cols(); ++j) {
    gens.push_back(e.complement.col(j));
    gens.push_back(-e.complement.col(j));
  }
  return ConeDescription::polyhedral(std::move(gens), e.ambient.dim(), e.ambient.name());
}

nlohmann::json ClassCensus::to_json() const {
  nlohmann::json j;
  for (auto t : {ElementTag::Zero, ElementTag::Elliptic, ElementTag::Hyperbolic, ElementTag::Nilpotent,
                 ElementTag::Mixed})
    j[to_string(t)] = count(t);
  j["total"] = total;
  return j;
}

// ---------------------------------------------------------------------------

namespace {

ElementTag tag_of(const MatrixLieAlgebra& L, const Vec& x) { return classify_element(L, Covector{x}).tag; }

// Bisection on the segment [a, b] whose endpoints carry different classes.
// Returns the limit point, or an interior point of a third class.
Vec class_boundary(const MatrixLieAlgebra& L, Vec a, Vec b, ElementTag ta, int iterations = 60) {
  for (int it = 0; it < iterations; ++it) {
    const Vec mid = 0.5 * (a + b);
    const ElementTag tm = tag_of(L, mid);
    if (tm == ta)
      a = mid;
    else if (tm == tag_of(L, b))
      b = mid;
    else
      return mid;
  }
  return 0.5 * (a + b);
}

bool straddles(ElementTag a, ElementTag b) { return a != b && a != ElementTag::Zero && b != ElementTag::Zero; }

}  // namespace

InducedResult induced_cone(const SubalgebraEmbedding& e, const ConeDescription& s, const InducedOptions& o,
                           std::uint64_t seed) {
  if (o.budget < 1000) throw Error(ErrorCode::BudgetTooSmall, "induced_cone needs a budget of at least 1000 samples");
  if (s.dim() != e.sub.dim()) throw Error(ErrorCode::DimensionMismatch, "S must live in the dual of the subalgebra");
  const MatrixLieAlgebra& L = e.ambient;
  const int g = L.dim();
  const int qdim = static_cast<int>(e.complement.cols());

  std::vector<Vec> lifts;
  if (!s.is_zero())
    for (const auto& d : direction_samples(s, 0.02)) {
      const Vec l = e.inclusion * d;
      if (l.norm() > 1e-12) lifts.push_back(l / l.norm());
    }

  InducedResult out;
  if (lifts.empty() && qdim == 0) {
    out.cone = ConeDescription::exact(NamedCone::Zero, g, L.name());
    return out;
  }

  Rng rng(seed);
  std::uniform_int_distribution<size_t> pick_lift(0, lifts.empty() ? 0 : lifts.size() - 1);
  auto annihilator_vector = [&]() -> Vec {
    if (qdim == 0) return Vec::Zero(g);
    Vec a = e.complement * gaussian_vector(rng, qdim);
    return a / std::max(a.norm(), 1e-300);
  };

  std::vector<Vec> dirs;
  dirs.reserve(static_cast<size_t>(o.budget) + static_cast<size_t>(o.budget / std::max(1, o.boundary_every)));
  const double log_lo = std::log(0.1), log_hi = std::log(o.max_scale);
  const auto cd = cartan_decomposition(L);
  for (int k = 0; k < o.budget; ++k) {
    const Vec lift = lifts.empty() ? Vec(Vec::Zero(g)) : lifts[pick_lift(rng)];
    const double beta = lifts.empty() ? std::numbers::pi / 2.0 : (qdim == 0 ? 0.0 : uniform(rng, 0.0, std::numbers::pi / 2.0));
    const Vec a = annihilator_vector();
    const Vec xi = std::cos(beta) * lift + std::sin(beta) * a;

    // Every tenth sample stays in q^{-1}(S) itself.
    // Every other transport is drawn in K exp(p) K form when available.
    Mat gmat;
    if (k % 10 == 0)
      gmat = Mat::Identity(g, g);
    else if (cd.theta_stable && k % 2 == 1)
      gmat = random_kak_element(L, cd, rng, std::exp(uniform(rng, std::log(0.01), log_hi)));
    else
      gmat = random_group_element(L, rng, o.steps, std::exp(uniform(rng, log_lo, log_hi)));
    const ElementTag t = tag_of(L, xi);
    out.census.add(t);
    const Vec p = gmat * xi;
    if (p.norm() > 1e-12) dirs.push_back(p / p.norm());

    if (o.boundary_every > 0 && k % o.boundary_every == 0 && qdim > 0) {
      const Vec xi2 = std::cos(beta) * lift + std::sin(beta) * annihilator_vector();
      const ElementTag t2 = tag_of(L, xi2);
      if (straddles(t, t2)) {
        const Vec b = class_boundary(L, xi, xi2, t);
        out.census.add(tag_of(L, b));
        ++out.boundary_points;
        const Vec pb = gmat * b;
        if (pb.norm() > 1e-12) dirs.push_back(pb / pb.norm());
      }
    }
  }
  if (dirs.empty())
    out.cone = ConeDescription::exact(NamedCone::Zero, g, L.name());
  else
    out.cone = ConeDescription::sampled(dedupe_directions(dirs, o.tol), o.tol, g, L.name());
  return out;
}

InducedResult induced_cone(const SubalgebraEmbedding& e, const ConeDescription& s, int budget, std::uint64_t seed) {
  InducedOptions o;
  o.budget = budget;
  return induced_cone(e, s, o, seed);
}

RestrictionResult restriction_lower_bound(const SubalgebraEmbedding& e, const ConeDescription& c, std::uint64_t seed,
                                          bool ad_invariant, double tol) {
  if (c.dim() != e.ambient.dim()) throw Error(ErrorCode::DimensionMismatch, "C must live in the dual of the ambient");
  const MatrixLieAlgebra& H = e.sub;
  const int h = H.dim();
  RestrictionResult out;
  if (c.is_zero() || h == 0) {
    out.cone = ConeDescription::exact(NamedCone::Zero, h, H.name());
    return out;
  }
  const bool classify = !H.is_degenerate();
  std::vector<Vec> dirs;
  const auto samples = direction_samples(c, 0.02);
  Rng rng(seed);
  for (size_t k = 0; k < samples.size(); ++k) {
    const Vec& u = samples[k];
    const Vec w = e.q * u;
    if (w.norm() <= 1e-12 * u.norm()) continue;
    dirs.push_back(w / w.norm());
    if (classify) out.census.add(tag_of(H, w));

    if (!ad_invariant || !classify || k % 10 != 0) continue;
    // Class changes of the image along t -> q(Ad*(exp tX) u).
    const Vec x = gaussian_vector(rng, e.ambient.dim());
    const Mat adx = e.ambient.ad_matrix(x);
    const int grid = 17;
    ElementTag prev_t = ElementTag::Zero;
    for (int i = 0; i < grid; ++i) {
      const double t = -2.0 + 4.0 * i / (grid - 1);
      const Vec ut = (t * adx).exp() * u;
      const Vec wt = e.q * ut;
      const ElementTag tt = tag_of(H, wt);
      if (i > 0 && straddles(prev_t, tt)) {
        // Bisect in t so that the boundary point stays in C.
        double lo = t - 4.0 / (grid - 1), hi = t;
        Vec best = wt;
        for (int it = 0; it < 60; ++it) {
          const double mid = 0.5 * (lo + hi);
          const Vec wm = e.q * ((mid * adx).exp() * u);
          const ElementTag tm = tag_of(H, wm);
          best = wm;
          if (tm == prev_t)
            lo = mid;
          else if (tm == tt)
            hi = mid;
          else
            break;
        }
        if (best.norm() > 1e-12) {
          out.census.add(tag_of(H, best));
          ++out.boundary_points;
          dirs.push_back(best / best.norm());
        }
      }
      prev_t = tt;
    }
  }
  if (dirs.empty())
    out.cone = ConeDescription::exact(NamedCone::Zero, h, H.name());
  else
    out.cone = ConeDescription::sampled(dedupe_directions(dirs, tol), tol, h, H.name());
  return out;
}

ObstructionResult discrete_decomposability_report(const SubalgebraEmbedding& e, const ConeDescription& c) {
  if (c.dim() != e.ambient.dim()) throw Error(ErrorCode::DimensionMismatch, "C must live in the dual of the ambient");
  ObstructionResult out;
  if (c.is_zero() || e.sub.dim() == 0) return out;
  for (const auto& u : direction_samples(c, 0.02)) {
    const Vec w = e.q * u;
    if (w.norm() <= 1e-12 * u.norm()) {
      out.census.add(ElementTag::Zero);
      continue;
    }
    const ElementTag t = tag_of(e.sub, w);
    out.census.add(t);
    if (t != ElementTag::Elliptic && t != ElementTag::Nilpotent && t != ElementTag::Zero && !out.witness) {
      out.obstructed = true;
      out.witness = w / w.norm();
    }
  }
  return out;
}

bool discrete_decomposability_obstruction(const SubalgebraEmbedding& e, const ConeDescription& c) {
  return discrete_decomposability_report(e, c).obstructed;
}

}  // namespace orbitcone
