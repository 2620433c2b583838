#include "orbitcone/catalog.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <limits>

#include "orbitcone/text.hpp"

namespace orbitcone {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

SupportBranch finite_branch(std::initializer_list<std::pair<Sl2Kind, double>> orbits) {
  SupportBranch b;
  b.kind = SupportBranch::Kind::Finite;
  for (const auto& [k, p] : orbits) b.orbits.push_back(sl2_orbit(k, p));
  return b;
}

SupportBranch lattice_branch(Sl2Kind kind, double lo) {
  SupportBranch b;
  b.kind = SupportBranch::Kind::IntegerLattice;
  b.orbit_kind = kind;
  b.lo = lo;
  b.hi = kInf;
  return b;
}

SupportBranch interval_branch(Sl2Kind kind, double lo) {
  SupportBranch b;
  b.kind = SupportBranch::Kind::RealInterval;
  b.orbit_kind = kind;
  b.lo = lo;
  b.hi = kInf;
  return b;
}

char parse_sign(const std::string& s, std::string_view label) {
  if (s == "+" || s == "-") return s[0];
  throw Error(ErrorCode::ParseError, "expected + or - in '" + std::string(label) + "'");
}

double parse_positive_real(const std::string& s, std::string_view label) {
  size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != s.size() || !std::isfinite(v) || v < 0.0)
    throw Error(ErrorCode::ParseError, "bad parameter '" + s + "' in '" + std::string(label) + "'");
  return v;
}

}  // namespace

RepresentationSpec parse_representation(std::string_view label) {
  std::string norm(text::strip(label));
  for (char& c : norm)
    if (c == '(' || c == ',' ) c = ':';
  norm.erase(std::remove_if(norm.begin(), norm.end(), [](char c) { return c == ')' || c == ' '; }), norm.end());
  std::vector<std::string> parts;
  size_t start = 0;
  while (true) {
    const size_t colon = norm.find(':', start);
    parts.push_back(norm.substr(start, colon == std::string::npos ? std::string::npos : colon - start));
    if (colon == std::string::npos) break;
    start = colon + 1;
  }
  const std::string& head = parts[0];

  RepresentationSpec r;
  r.label = norm;
  r.orbital_support.algebra = make_sl2r();
  r.orbital_support.label = norm;
  auto& branches = r.orbital_support.branches;
  auto arity = [&](size_t n) {
    if (parts.size() != n) throw Error(ErrorCode::ParseError, "wrong number of fields in '" + std::string(label) + "'");
  };

  if (head == "sigma_disc") {
    arity(3);
    const int n = text::parse_int(parts[1], label);
    if (n < 1) throw Error(ErrorCode::ParseError, "discrete series parameter must be a positive integer");
    const char s = parse_sign(parts[2], label);
    branches.push_back(finite_branch({{s == '+' ? Sl2Kind::EllPlus : Sl2Kind::EllMinus, n}}));
    r.expected = s == '+' ? NamedCone::Nplus : NamedCone::Nminus;
    r.description = std::string("WF(sigma_n^") + s + ") = " + to_string(r.expected);
  } else if (head == "sigma_hyp") {
    arity(3);
    const double nu = parse_positive_real(parts[1], label);
    const char s = parse_sign(parts[2], label);
    if (nu == 0.0) {
      if (s != '+') throw Error(ErrorCode::ParseError, "sigma_{0,-} is not an irreducible tempered representation");
      branches.push_back(finite_branch({{Sl2Kind::NilPlus, 0.0}, {Sl2Kind::NilMinus, 0.0}, {Sl2Kind::Zero, 0.0}}));
      r.description = "WF(sigma_{0,+}) = N";
    } else {
      branches.push_back(finite_branch({{Sl2Kind::Hyp, nu}}));
      r.description = std::string("WF(sigma_{nu,") + s + "}) = N";
    }
    r.expected = NamedCone::N;
  } else if (head == "sigma_limit") {
    arity(2);
    const char s = parse_sign(parts[1], label);
    branches.push_back(finite_branch({{s == '+' ? Sl2Kind::NilPlus : Sl2Kind::NilMinus, 0.0}}));
    r.expected = s == '+' ? NamedCone::Nplus : NamedCone::Nminus;
    r.description = std::string("WF(sigma^") + s + ") = " + to_string(r.expected);
  } else if (head == "L2_GK" || head == "int_hyp") {
    if (head == "L2_GK") {
      arity(1);
      r.description = "WF(L2(G/K)) = WF(int_{nu>0} sigma_{nu,+}) = HypClosure";
    } else {
      arity(2);
      if (parse_sign(parts[1], label) != '-') throw Error(ErrorCode::ParseError, "use L2_GK for the spherical integral");
      r.description = "WF(int_{nu>0} sigma_{nu,-}) = HypClosure";
    }
    branches.push_back(interval_branch(Sl2Kind::Hyp, 0.0));
    r.expected = NamedCone::HypClosure;
  } else if (head == "L2_GA") {
    arity(1);
    r.induced_pair = "pair(sl2R, diag)";
    r.expected = NamedCone::Full;
    r.description = "WF(L2(G/A)) = closure of Ad*(G) i(g/a)* = Full";
  } else if (head == "disc_sum") {
    arity(2);
    const char s = parse_sign(parts[1], label);
    branches.push_back(lattice_branch(s == '+' ? Sl2Kind::EllPlus : Sl2Kind::EllMinus, 1.0));
    r.expected = s == '+' ? NamedCone::EllPlusClosure : NamedCone::EllMinusClosure;
    r.description = std::string("WF(sum_{n>0} sigma_n^") + s + ") = " + to_string(r.expected);
  } else {
    throw Error(ErrorCode::ParseError, "unknown representation label '" + std::string(label) + "'");
  }
  return r;
}

ConeDescription wavefront_of(const RepresentationSpec& spec, const AcOptions& options, std::uint64_t seed) {
  if (spec.induced_pair) {
    const auto e = build_pair(*spec.induced_pair);
    const auto zero = ConeDescription::exact(NamedCone::Zero, e.sub.dim(), e.sub.name());
    return induced_cone(e, zero, InducedOptions{}, seed).cone;
  }
  return asymptotic_cone_report(to_point_family(spec.orbital_support), options, seed).cone;
}

std::vector<std::string> golden_labels() {
  return {"sigma_disc:3:+", "sigma_disc:3:-", "sigma_hyp:1.5:+", "sigma_hyp:1.5:-",
          "sigma_hyp:0:+",  "sigma_limit:+",  "sigma_limit:-",   "L2_GK",
          "int_hyp:-",      "L2_GA",          "disc_sum:+",      "disc_sum:-"};
}

GoldenTable golden_table(std::uint64_t seed, double angular_tol, int samples_per_radius, int induced_budget) {
  const auto labels = golden_labels();
  // Rows are independent and seeded by index, so they run concurrently
  // without changing the result.
  auto compute_row = [&](size_t i) {
    const auto spec = parse_representation(labels[i]);
    GoldenRow row;
    row.label = spec.label;
    row.description = spec.description;
    row.expected = spec.expected;
    const std::uint64_t s = substream_seed(seed, i);
    if (spec.induced_pair) {
      const auto e = build_pair(*spec.induced_pair);
      InducedOptions io;
      io.budget = induced_budget;
      row.computed = induced_cone(e, ConeDescription::exact(NamedCone::Zero, e.sub.dim(), e.sub.name()), io, s).cone;
    } else {
      AcOptions o;
      o.samples_per_radius = samples_per_radius;
      o.allow_exact = false;
      row.computed = asymptotic_cone_report(to_point_family(spec.orbital_support), o, s).cone;
    }
    row.defect = hausdorff_distance(row.computed, ConeDescription::exact(spec.expected, 3, "sl2R"));
    row.passed = row.defect <= angular_tol;
    return row;
  };
  std::vector<std::future<GoldenRow>> pending;
  for (size_t i = 0; i < labels.size(); ++i) pending.push_back(std::async(std::launch::async, compute_row, i));
  GoldenTable t;
  t.all_passed = true;
  for (auto& f : pending) {
    t.rows.push_back(f.get());
    t.all_passed = t.all_passed && t.rows.back().passed;
  }
  return t;
}

nlohmann::json GoldenTable::to_json() const {
  nlohmann::json rows_json = nlohmann::json::array();
  for (const auto& r : rows)
    rows_json.push_back({{"label", r.label},
                         {"identity", r.description},
                         {"expected", to_string(r.expected)},
                         {"computed_directions", r.computed.is_sampled() ? r.computed.as_sampled().directions.size() : 0},
                         {"hausdorff_defect", r.defect},
                         {"passed", r.passed}});
  return {{"rows", rows_json}, {"all_passed", all_passed}};
}

SubalgebraEmbedding su21_so21_pair() { return build_pair("pair(su(2,1), so(2,1))"); }

ConeDescription quaternionic_wf(int samples, std::uint64_t seed) {
  const auto L = make_su21();
  return ConeDescription::sampled(dedupe_directions(nilpotent_cone_samples(L, samples, seed), 1e-6), 0.02, L.dim(),
                                  L.name());
}

TensorReport tensor_analysis(int n, char s1, int m, char s2, int samples, std::uint64_t seed) {
  if (n < 1 || m < 1) throw Error(ErrorCode::InvalidArgument, "tensor_analysis needs n, m >= 1");
  for (char s : {s1, s2})
    if (s != '+' && s != '-') throw Error(ErrorCode::InvalidArgument, "signs must be + or -");
  TensorReport r;
  r.n = n;
  r.m = m;
  r.s1 = s1;
  r.s2 = s2;
  r.samples = static_cast<size_t>(samples);
  const auto a = sl2_orbit(s1 == '+' ? Sl2Kind::EllPlus : Sl2Kind::EllMinus, n);
  const auto b = sl2_orbit(s2 == '+' ? Sl2Kind::EllPlus : Sl2Kind::EllMinus, m);
  const auto xs = orbit_sample(a, samples, substream_seed(seed, 0));
  const auto ys = orbit_sample(b, samples, substream_seed(seed, 1));
  const auto sl2 = make_sl2r();

  std::vector<Vec> product_dirs;
  for (size_t i = 0; i < xs.size(); ++i) {
    const Vec sum = xs[i] + ys[i];
    switch (classify_element(sl2, Covector{sum}).tag) {
      case ElementTag::Elliptic: ++(sum(2) > 0 ? r.elliptic_plus : r.elliptic_minus); break;
      case ElementTag::Hyperbolic: ++r.hyperbolic; break;
      case ElementTag::Nilpotent: ++r.nilpotent; break;
      case ElementTag::Zero: ++r.zero; break;
      case ElementTag::Mixed: ++r.mixed; break;
    }
    Vec p(6);
    p << xs[i], ys[i];
    product_dirs.push_back(p / p.norm());
  }
  const size_t total = xs.size();
  if (r.elliptic_plus == total)
    r.sum_cone_class = "EllPlus";
  else if (r.elliptic_minus == total)
    r.sum_cone_class = "EllMinus";
  else if (r.hyperbolic > 0)
    r.sum_cone_class = "ContainsHyperbolic";
  else
    r.sum_cone_class = "Mixed";

  const auto e = diagonal_embedding(sl2);
  const auto c = ConeDescription::sampled(product_dirs, 0.02, 6, e.ambient.name());
  const auto ob = discrete_decomposability_report(e, c);
  r.discretely_decomposable_obstructed = ob.obstructed;
  r.witness = ob.witness;
  return r;
}

nlohmann::json TensorReport::to_json() const {
  nlohmann::json out = {{"n", n},
                        {"s1", std::string(1, s1)},
                        {"m", m},
                        {"s2", std::string(1, s2)},
                        {"samples", samples},
                        {"sum_classes",
                         {{"EllipticPlus", elliptic_plus},
                          {"EllipticMinus", elliptic_minus},
                          {"Hyperbolic", hyperbolic},
                          {"Nilpotent", nilpotent},
                          {"Zero", zero},
                          {"Mixed", mixed}}},
                        {"sum_cone_class", sum_cone_class},
                        {"discretely_decomposable_obstructed", discretely_decomposable_obstructed}};
  if (witness)
    out["witness"] = {(*witness)(0), (*witness)(1), (*witness)(2)};
  else
    out["witness"] = nullptr;
  return out;
}

bool sopq_bk_condition(int p, int q, const std::vector<std::pair<int, int>>& blocks) {
  for (const auto& [pi, qi] : blocks)
    if (pi * qi != 0 && 2 * (pi + qi) > p + q + 2) return false;
  return true;
}

bool sopq_saturation_condition(int p, int q, const std::vector<std::pair<int, int>>& blocks) {
  if (p + q <= 2 || !sopq_bk_condition(p, q, blocks)) return false;
  for (const auto& [pi, qi] : blocks)
    if (2 * pi > p + 1 || 2 * qi > q + 1) return false;
  return true;
}

SopqFamily sopq_family(int p, int q, const std::vector<std::pair<int, int>>& blocks) {
  if (p + q > 8) throw Error(ErrorCode::DimensionTooLarge, "sopq_family supports p + q <= 8");
  SopqFamily f{sopq_block_embedding(p, q, blocks), false, false};
  f.bk_condition = sopq_bk_condition(p, q, blocks);
  f.saturation_condition = sopq_saturation_condition(p, q, blocks);
  return f;
}

namespace {
void compositions(int p, int q, std::pair<int, int> bound, std::vector<std::pair<int, int>>& cur,
                  std::vector<std::vector<std::pair<int, int>>>& out) {
  if (p == 0 && q == 0) {
    out.push_back(cur);
    return;
  }
  for (int a = p; a >= 0; --a)
    for (int b = q; b >= 0; --b) {
      const std::pair<int, int> blk{a, b};
      if (a + b == 0 || blk > bound) continue;
      cur.push_back(blk);
      compositions(p - a, q - b, blk, cur, out);
      cur.pop_back();
    }
}
}  // namespace

std::vector<std::vector<std::pair<int, int>>> sopq_compositions(int p, int q) {
  if (p < 0 || q < 0) throw Error(ErrorCode::BadPartition, "negative signature");
  std::vector<std::vector<std::pair<int, int>>> out;
  std::vector<std::pair<int, int>> cur;
  compositions(p, q, {p, q}, cur, out);
  return out;
}

}  // namespace orbitcone
