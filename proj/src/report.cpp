#include "orbitcone/report.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "orbitcone/asymptotic.hpp"
#include "orbitcone/cartan.hpp"
#include "orbitcone/catalog.hpp"
#include "orbitcone/cone.hpp"
#include "orbitcone/induction.hpp"
#include "orbitcone/orbits.hpp"
#include "orbitcone/tempered.hpp"
#include "orbitcone/text.hpp"

namespace orbitcone {

using nlohmann::json;

namespace {

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == sep) {
      out.push_back(std::string(text::strip(cur)));
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(std::string(text::strip(cur)));
  return out;
}

Vec parse_point(const std::string& s) {
  if (text::strip(s).empty()) throw Error(ErrorCode::ParseError, "empty point");
  const auto parts = split(s, ',');
  Vec v(static_cast<Eigen::Index>(parts.size()));
  for (size_t i = 0; i < parts.size(); ++i) {
    size_t used = 0;
    double x = 0.0;
    try {
      x = std::stod(parts[i], &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != parts[i].size() || !std::isfinite(x))
      throw Error(ErrorCode::ParseError, "bad coordinate '" + parts[i] + "'");
    v(static_cast<Eigen::Index>(i)) = x;
  }
  return v;
}

json vec_json(const Vec& v) { return std::vector<double>(v.data(), v.data() + v.size()); }

// Cone record without the (possibly long) direction list; directions go to CSV.
json cone_summary(const ConeDescription& c) {
  json j = cone_record(c);
  j.erase("directions");
  return j;
}

std::string directions_csv(const ConeDescription& c, const std::vector<std::string>& columns = {}) {
  std::ostringstream os;
  write_directions_csv(os, c, columns);
  return os.str();
}

std::vector<std::string> coordinate_names(const std::string& algebra, int dim) {
  if (algebra == "sl2R") return {"x", "y", "z"};
  std::vector<std::string> out;
  for (int i = 0; i < dim; ++i) out.push_back("c" + std::to_string(i));
  return out;
}

struct Context {
  explicit Context(const RunConfig& c) : cfg(c) {}
  const RunConfig& cfg;
  RunOutcome out;
  json inputs = json::object();
  json result = json::object();
  json certificates = json::object();
  json counters = json::object();
  std::string instantiates;

  int samples_or(int fallback) const {
    const int s = cfg.samples.value_or(fallback);
    if (s < 1) throw Error(ErrorCode::InvalidArgument, "--samples must be positive");
    return s;
  }
};

MatrixLieAlgebra algebra_or_default(const RunConfig& cfg) {
  return build_algebra(cfg.algebra.empty() ? "sl2R" : cfg.algebra);
}

Vec point_for(const RunConfig& cfg, const MatrixLieAlgebra& L) {
  if (cfg.point.empty()) throw Error(ErrorCode::InvalidArgument, "--point is required");
  const Vec v = parse_point(cfg.point);
  if (v.size() != L.dim())
    throw Error(ErrorCode::DimensionMismatch,
                "--point has " + std::to_string(v.size()) + " coordinates, " + L.name() + " has dimension " +
                    std::to_string(L.dim()));
  return v;
}

SubalgebraEmbedding pair_for(const RunConfig& cfg) {
  if (cfg.pair.empty()) throw Error(ErrorCode::InvalidArgument, "--pair is required");
  return build_pair(cfg.pair);
}

void cmd_classify(Context& c) {
  c.instantiates = "element classes of i g* via the ad-spectrum of the trace-form transport";
  const auto L = algebra_or_default(c.cfg);
  const Vec p = point_for(c.cfg, L);
  c.inputs = {{"algebra", L.name()}, {"dim", L.dim()}, {"point", vec_json(p)}};
  const auto cls = classify_element(L, Covector{p});
  json ev = json::array();
  for (auto l : cls.eigenvalues) ev.push_back({l.real(), l.imag()});
  c.result = {{"class", to_string(cls.tag)}, {"ad_eigenvalues_unit", ev}};
  c.certificates = {{"orbit_invariants", vec_json(orbit_invariants(L, Covector{p}))}};
}

void cmd_orbit_sample(Context& c) {
  c.instantiates = "coadjoint orbit Ad*(G) xi";
  const auto L = algebra_or_default(c.cfg);
  const Vec p = point_for(c.cfg, L);
  const int n = c.samples_or(1000);
  const auto orbit = generic_orbit(L, Covector{p});
  const auto pts = orbit_sample(orbit, n, c.cfg.seed);
  const Vec inv0 = orbit_invariants(L, Covector{p});
  double drift = 0.0, max_norm = 0.0;
  std::ostringstream csv;
  const auto names = coordinate_names(L.name(), L.dim());
  for (size_t i = 0; i < names.size(); ++i) csv << (i ? "," : "") << names[i];
  csv << '\n';
  char buf[64];
  for (const auto& v : pts) {
    const Vec inv = orbit_invariants(L, Covector{v});
    drift = std::max(drift, (inv - inv0).norm() / std::max(1.0, inv0.norm()));
    max_norm = std::max(max_norm, v.norm());
    for (int k = 0; k < v.size(); ++k) {
      std::snprintf(buf, sizeof buf, "%.12g", v(k));
      csv << (k ? "," : "") << buf;
    }
    csv << '\n';
  }
  c.out.side_files["points.csv"] = csv.str();
  c.inputs = {{"algebra", L.name()}, {"base_point", vec_json(p)}};
  c.result = {{"points", pts.size()}, {"max_norm", max_norm}, {"class", to_string(classify_element(L, Covector{p}).tag)}};
  c.certificates = {{"base_invariants", vec_json(inv0)}, {"max_relative_invariant_drift", drift}};
  c.counters["points"] = pts.size();
}

AcOptions ac_options(const Context& c) {
  AcOptions o;
  if (!c.cfg.radii.empty()) o.radii = c.cfg.radii;
  o.samples_per_radius = c.samples_or(o.samples_per_radius);
  return o;
}

json ac_options_json(const AcOptions& o) {
  return {{"radii", o.radii}, {"samples_per_radius", o.samples_per_radius}, {"dedupe_tol", o.tol}};
}

void cmd_ac(Context& c) {
  c.instantiates = "asymptotic cone AC(S) of a set of covectors";
  const AcOptions o = ac_options(c);
  PointFamily f;
  if (!c.cfg.rep.empty()) {
    f = to_point_family(parse_representation(c.cfg.rep).orbital_support);
  } else {
    const auto L = algebra_or_default(c.cfg);
    f = to_point_family(generic_orbit(L, Covector{point_for(c.cfg, L)}));
  }
  const auto r = asymptotic_cone_report(f, o, c.cfg.seed);
  c.inputs = {{"family", f.name}, {"algebra", f.algebra}, {"dim", f.dim}, {"options", ac_options_json(o)}};
  c.result = {{"cone", cone_summary(r.cone)}, {"exact_rule", r.exact}};
  c.certificates = {{"radius_defects", r.radius_defects}, {"points_per_radius", r.counts}};
  c.counters["points_per_radius"] = r.counts;
  c.out.side_files["directions.csv"] = directions_csv(r.cone, coordinate_names(f.algebra, f.dim));
}

void cmd_wavefront(Context& c) {
  c.instantiates = "WF(pi) = AC(orbital support of pi) for pi weakly contained in the regular representation";
  if (c.cfg.rep.empty()) throw Error(ErrorCode::InvalidArgument, "--rep is required");
  const auto spec = parse_representation(c.cfg.rep);
  const AcOptions o = ac_options(c);
  const auto cone = wavefront_of(spec, o, c.cfg.seed);
  const auto expected = ConeDescription::exact(spec.expected, 3, "sl2R");
  const double defect = hausdorff_distance(cone, expected);
  c.inputs = {{"rep", spec.label}, {"identity", spec.description}, {"options", ac_options_json(o)}};
  if (spec.induced_pair) c.inputs["induced_from"] = *spec.induced_pair;
  c.result = {{"cone", cone_summary(cone)}, {"expected", to_string(spec.expected)}};
  c.certificates = {{"hausdorff_defect", defect}, {"matches_expected", defect <= c.cfg.angular_tol}};
  c.out.side_files["directions.csv"] = directions_csv(cone, coordinate_names("sl2R", 3));
}

void cmd_dual(Context& c) {
  c.instantiates = "dual cone C0 = {xi : <xi, y> <= 0 for y in C}";
  if (c.cfg.generators.empty()) throw Error(ErrorCode::InvalidArgument, "--generators is required");
  std::vector<Vec> gens;
  for (const auto& g : split(c.cfg.generators, ';')) gens.push_back(parse_point(g));
  const int n = static_cast<int>(gens.front().size());
  for (const auto& g : gens)
    if (g.size() != n) throw Error(ErrorCode::DimensionMismatch, "generators of different lengths");
  const auto cone = ConeDescription::polyhedral(gens, n);
  const auto d = dual_cone(cone);
  const auto dd = dual_cone(d);
  // Largest distance from a unit generator of one cone to the other cone.
  const auto containment = [](const ConeDescription& a, const ConeDescription& b) {
    const auto& bg = b.as_polyhedral().generators;
    Mat m(a.dim(), static_cast<Eigen::Index>(bg.size()));
    for (size_t j = 0; j < bg.size(); ++j) m.col(static_cast<Eigen::Index>(j)) = bg[j];
    double worst = 0.0;
    for (const auto& g : a.as_polyhedral().generators) {
      if (g.norm() == 0.0) continue;
      const Vec u = g / g.norm();
      worst = std::max(worst, bg.empty() ? 1.0 : (m * linalg::nonnegative_least_squares(m, u) - u).norm());
    }
    return worst;
  };
  const double double_dual = std::max(containment(cone, dd), containment(dd, cone));
  json gj = json::array();
  for (const auto& g : gens) gj.push_back(vec_json(g));
  c.inputs = {{"generators", gj}, {"dim", n}};
  c.result = {{"dual", cone_record(d)}};
  c.certificates = {{"double_dual_defect", double_dual}};
  c.out.side_files["directions.csv"] = directions_csv(d);
}

void cmd_induce(Context& c) {
  c.instantiates = "Ind_H^G S = closure of Ad*(G) q^{-1}(S), a lower bound for WF of the induced representation";
  const auto e = pair_for(c.cfg);
  InducedOptions o;
  o.budget = c.samples_or(o.budget);
  ConeDescription s = ConeDescription::exact(NamedCone::Zero, e.sub.dim(), e.sub.name());
  if (!c.cfg.point.empty()) {
    const Vec p = parse_point(c.cfg.point);
    if (p.size() != e.sub.dim()) throw Error(ErrorCode::DimensionMismatch, "--point must live in the dual of h");
    s = ConeDescription::polyhedral({p}, e.sub.dim(), e.sub.name());
  }
  const auto r = induced_cone(e, s, o, c.cfg.seed);
  c.inputs = {{"pair", e.label}, {"S", cone_summary(s)}, {"budget", o.budget}, {"dedupe_tol", o.tol}};
  c.result = {{"cone", cone_summary(r.cone)}, {"class_census", r.census.to_json()}};
  const auto d = embedding_defects(e);
  c.certificates = {{"boundary_points", r.boundary_points},
                    {"pullback_defect", d.pullback},
                    {"bracket_defect", d.bracket}};
  c.counters["group_samples"] = o.budget;
  c.counters["boundary_points"] = r.boundary_points;
  c.out.side_files["directions.csv"] = directions_csv(r.cone, coordinate_names(e.ambient.name(), e.ambient.dim()));
}

ConeDescription restriction_source(const Context& c, const SubalgebraEmbedding& e) {
  const std::string& rep = c.cfg.rep;
  if (rep.empty() || rep == "full") return ConeDescription::exact(NamedCone::Full, e.ambient.dim(), e.ambient.name());
  if (rep == "quaternionic") {
    if (e.ambient.name() != "su(2,1)") throw Error(ErrorCode::InvalidArgument, "quaternionic needs ambient su(2,1)");
    return quaternionic_wf(c.samples_or(20000), c.cfg.seed);
  }
  if (e.ambient.name() != "sl2R") throw Error(ErrorCode::InvalidArgument, "catalog labels need ambient sl2R");
  return wavefront_of(parse_representation(rep), AcOptions{}, c.cfg.seed);
}

void cmd_restrict(Context& c) {
  c.instantiates = "WF(pi|_H) contains q(WF(pi)); discrete sums force q(WF(pi)) into the closed elliptic set";
  const auto e = pair_for(c.cfg);
  const auto src = restriction_source(c, e);
  const auto r = restriction_lower_bound(e, src, c.cfg.seed);
  const auto ob = discrete_decomposability_report(e, src);
  c.inputs = {{"pair", e.label}, {"C", cone_summary(src)}, {"C_source", c.cfg.rep.empty() ? "full" : c.cfg.rep}};
  c.result = {{"image_cone", cone_summary(r.cone)},
              {"image_census", r.census.to_json()},
              {"discretely_decomposable_obstructed", ob.obstructed}};
  c.certificates = {{"boundary_points", r.boundary_points},
                    {"obstruction_witness", ob.witness ? vec_json(*ob.witness) : json(nullptr)}};
  c.out.side_files["directions.csv"] = directions_csv(r.cone, coordinate_names(e.sub.name(), e.sub.dim()));
}

void cmd_tempered(Context& c) {
  c.instantiates = "L2(G/H) is weakly contained in L2(G) iff 2 rho_h(Y) <= rho_g(Y) on a maximal split abelian a in h";
  const auto e = pair_for(c.cfg);
  const auto cert = bk_weak_containment(e);
  const int n = c.samples_or(100000);
  const auto sc = bk_sphere_check(cert, static_cast<size_t>(n), c.cfg.seed);
  c.inputs = {{"pair", e.label}, {"split_rank", cert.h_weights.ambient_dim}};
  c.result = cert.to_json();
  c.certificates = {{"sphere_samples", sc.samples},
                    {"sphere_violations", sc.violations},
                    {"sphere_min_margin", sc.samples ? json(sc.min_margin) : json(nullptr)},
                    {"sphere_agrees", cert.verdict == BKVerdict::Contained ? sc.violations == 0 : sc.violations > 0}};
  c.counters["candidate_rays"] = cert.candidate_rays;
}

void cmd_saturation(Context& c) {
  c.instantiates = "closure of Ad*(G) i(g/h)* is i g* when the complement meets every Cartan class";
  const auto e = pair_for(c.cfg);
  const int budget = c.samples_or(20000);
  const auto r = saturation_is_full(e, budget, c.cfg.seed);
  json classes = json::array();
  for (const auto& cl : r.ambient_classes) classes.push_back(to_string(cl.signature));
  json certs = json::array();
  for (const auto& cl : r.certificates)
    certs.push_back({{"signature", to_string(cl.signature)}, {"element", vec_json(cl.generator)}});
  json missing = json::array();
  for (const auto& s : r.missing) missing.push_back(to_string(s));
  c.inputs = {{"pair", e.label}, {"budget", budget}};
  c.result = {{"verdict", to_string(r.verdict)}, {"ambient_cartan_classes", classes}, {"missing", missing}};
  c.certificates = {{"regular_elements", certs}, {"refutation", r.refutation}};
  c.counters["samples_used"] = r.samples_used;
  if (r.verdict == SaturationVerdict::Unknown) c.out.exit_code = kExitUnknown;
}

void cmd_tensor(Context& c) {
  c.instantiates = "discrete sums force q(WF(pi)) into the closed elliptic set (diagonal SL(2,R))";
  if (c.cfg.rep.empty()) throw Error(ErrorCode::InvalidArgument, "--rep tensor(n,s,m,s) is required");
  std::string norm(text::strip(c.cfg.rep));
  for (char& ch : norm)
    if (ch == '(' || ch == ',' || ch == ')') ch = ':';
  auto parts = split(norm, ':');
  parts.erase(std::remove(parts.begin(), parts.end(), std::string()), parts.end());
  if (parts.size() != 5 || parts[0] != "tensor" || parts[2].size() != 1 || parts[4].size() != 1)
    throw Error(ErrorCode::ParseError, "expected tensor(n,+|-,m,+|-)");
  const int n = text::parse_int(parts[1], c.cfg.rep);
  const int m = text::parse_int(parts[3], c.cfg.rep);
  const int samples = c.samples_or(10000);
  const auto r = tensor_analysis(n, parts[2][0], m, parts[4][0], samples, c.cfg.seed);
  c.inputs = {{"rep", c.cfg.rep}, {"pair", "diag(sl2R)"}, {"samples", samples}};
  c.result = r.to_json();
  c.certificates = {{"witness", r.witness ? vec_json(*r.witness) : json(nullptr)}};
}

void cmd_golden(Context& c) {
  c.instantiates = "WF(pi) = AC(orbital support of pi) on the SL(2,R) catalog";
  const int spr = c.samples_or(50000);
  const auto t = golden_table(c.cfg.seed, c.cfg.angular_tol, spr);
  c.inputs = {{"rows", golden_labels()}, {"samples_per_radius", spr}, {"angular_tol", c.cfg.angular_tol}};
  c.result = t.to_json();
  if (!t.all_passed) c.out.exit_code = kExitFailed;
}

void cmd_measure_scan(Context& c) {
  c.instantiates = "canonical orbit measure and its density ratio F against Euclidean measure";
  const auto L = algebra_or_default(c.cfg);
  const int n = c.samples_or(2000);
  const auto s = density_ratio_scan(L, n, c.cfg.seed);
  json bins = json::array();
  for (const auto& [x, f] : s.bin_max) bins.push_back({x, f});
  const double bound = L.dim() / 2.0 + 0.1;
  c.inputs = {{"algebra", L.name()}, {"samples", n}, {"norm_range", {1.0, 100.0}}};
  c.result = {{"loglog_slope", s.slope}, {"slope_bound", bound}, {"within_bound", s.slope <= bound},
              {"max_ratio", s.max_ratio}, {"bin_max", bins}};
  std::ostringstream csv;
  csv << "norm,F\n";
  char buf[96];
  for (const auto& [x, f] : s.points) {
    std::snprintf(buf, sizeof buf, "%.12g,%.12g\n", x, f);
    csv << buf;
  }
  c.out.side_files["fscan.csv"] = csv.str();
  c.counters["points"] = s.points.size();
}

using Handler = void (*)(Context&);

const std::vector<std::pair<std::string, Handler>>& handlers() {
  static const std::vector<std::pair<std::string, Handler>> h = {
      {"classify", cmd_classify},   {"orbit-sample", cmd_orbit_sample}, {"ac", cmd_ac},
      {"wavefront", cmd_wavefront}, {"dual", cmd_dual},                 {"induce", cmd_induce},
      {"restrict", cmd_restrict},   {"tempered", cmd_tempered},         {"saturation", cmd_saturation},
      {"tensor", cmd_tensor},       {"golden-table", cmd_golden},       {"measure-scan", cmd_measure_scan},
  };
  return h;
}

json config_json(const RunConfig& cfg) {
  return {{"command", cfg.command},
          {"algebra", cfg.algebra},
          {"pair", cfg.pair},
          {"rep", cfg.rep},
          {"point", cfg.point},
          {"generators", cfg.generators},
          {"seed", cfg.seed},
          {"samples", cfg.samples ? json(*cfg.samples) : json(nullptr)},
          {"radii", cfg.radii},
          {"angular_tol", cfg.angular_tol}};
}

}  // namespace

std::vector<std::string> subcommands() {
  std::vector<std::string> out;
  for (const auto& [name, h] : handlers()) out.push_back(name);
  return out;
}

RunOutcome run(const RunConfig& cfg) {
  const auto start = std::chrono::steady_clock::now();
  Context c(cfg);
  json report;
  report["config"] = config_json(cfg);
  try {
    const auto it = std::find_if(handlers().begin(), handlers().end(),
                                 [&](const auto& h) { return h.first == cfg.command; });
    if (it == handlers().end()) throw Error(ErrorCode::InvalidArgument, "unknown subcommand '" + cfg.command + "'");
    it->second(c);
    report["instantiates"] = c.instantiates;
    report["inputs"] = c.inputs;
    report["result"] = c.result;
    report["certificates"] = c.certificates;
  } catch (const Error& e) {
    c.out.exit_code = kExitInvalid;
    c.out.side_files.clear();
    report["error"] = {{"code", to_string(e.code())}, {"message", e.what()}};
  } catch (const std::exception& e) {
    c.out.exit_code = kExitInvalid;
    c.out.side_files.clear();
    report["error"] = {{"code", "InvalidArgument"}, {"message", e.what()}};
  }
  json timings = {{"counters", c.counters}};
  if (cfg.timings)
    timings["wall_clock_seconds"] =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  report["timings"] = timings;
  report["exit_code"] = c.out.exit_code;
  c.out.report = std::move(report);
  return std::move(c.out);
}

int run_and_write(const RunConfig& cfg) {
  const RunOutcome r = run(cfg);
  const std::string text = r.report.dump(2) + "\n";
  if (cfg.out.empty()) {
    std::cout << text;
    if (r.exit_code == kExitInvalid) std::cerr << r.report["error"]["message"].get<std::string>() << '\n';
    return r.exit_code;
  }
  namespace fs = std::filesystem;
  std::error_code ec;
  fs::create_directories(cfg.out, ec);
  if (ec) {
    std::cerr << "cannot create output directory " << cfg.out << ": " << ec.message() << '\n';
    return kExitInvalid;
  }
  std::ofstream(fs::path(cfg.out) / "report.json") << text;
  for (const auto& [name, contents] : r.side_files) std::ofstream(fs::path(cfg.out) / name) << contents;
  if (r.exit_code == kExitInvalid) std::cerr << r.report["error"]["message"].get<std::string>() << '\n';
  return r.exit_code;
}

}  // namespace orbitcone
