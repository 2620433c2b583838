#pragma once

#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "orbitcone/asymptotic.hpp"
#include "orbitcone/lie_algebra.hpp"

namespace orbitcone {

/// Coadjoint orbit types of sl(2,R) in the (x, y, z) chart.
enum class Sl2Kind {
  Hyp,       // x^2 + y^2 - z^2 = nu^2, nu > 0
  EllPlus,   // z^2 - x^2 - y^2 = n^2, z > 0
  EllMinus,  // z^2 - x^2 - y^2 = n^2, z < 0
  NilPlus,   // x^2 + y^2 = z^2, z > 0
  NilMinus,  // x^2 + y^2 = z^2, z < 0
  Zero,
};
const char* to_string(Sl2Kind k);

struct Sl2Tag {
  Sl2Kind kind = Sl2Kind::Zero;
  double param = 0.0;  // nu or n; unused for nilpotent and zero orbits
};

struct OrbitParam {
  MatrixLieAlgebra algebra;
  Covector base_point;
  std::optional<Sl2Tag> sl2_tag;
};

/// Orbit of sl(2,R) with its standard base point ((nu,0,0), (0,0,+-n),
/// (1,0,+-1), 0).
OrbitParam sl2_orbit(Sl2Kind kind, double param = 0.0);
/// Orbit through an arbitrary covector of any supported algebra.
OrbitParam generic_orbit(const MatrixLieAlgebra& L, const Covector& base);

/// One support branch of an orbit family.
struct SupportBranch {
  enum class Kind { Finite, IntegerLattice, RealInterval };
  Kind kind = Kind::Finite;
  std::vector<OrbitParam> orbits;       // Finite
  Sl2Kind orbit_kind = Sl2Kind::Hyp;    // lattice / interval
  double lo = 0.0;                      // lattice: first integer; interval: open lower end
  double hi = 0.0;                      // +inf for an unbounded branch
  bool unbounded() const { return kind != Kind::Finite && std::isinf(hi); }
};

/// A parametrized union of coadjoint orbits (the orbital support of a
/// representation).
struct OrbitFamily {
  std::string label;
  MatrixLieAlgebra algebra;
  std::vector<SupportBranch> branches;
};

/// Point-family view of an orbit family: samples at prescribed norm plus
/// the exact quadric tag when the family is built from sl(2,R) orbits.
PointFamily to_point_family(const OrbitFamily& f);
PointFamily to_point_family(const OrbitParam& o);

/// Orbit invariants: the Casimir x^2 + y^2 - z^2 for sl(2,R); otherwise the
/// characteristic-polynomial coefficients of the transported matrix (real
/// parts, and imaginary parts for complex realizations).
Vec orbit_invariants(const MatrixLieAlgebra& L, const Covector& xi);

struct TangentFrame {
  std::vector<Vec> vectors;     // ad*_{X_i} xi
  std::vector<Vec> generators;  // the X_i
};
/// Maximal independent subset of {ad*_{e_i} xi}. Throws ZeroPoint for xi = 0.
TangentFrame tangent_frame(const MatrixLieAlgebra& L, const Covector& xi);
std::vector<Covector> tangent_basis(const MatrixLieAlgebra& L, const Covector& xi);

/// -<xi, [X, Y]>.
double kks_form(const MatrixLieAlgebra& L, const Covector& xi, const AlgebraElement& x, const AlgebraElement& y);
/// KKS Gram matrix on a tangent frame (preimages solved by least squares).
Mat kks_gram(const MatrixLieAlgebra& L, const Covector& xi, const std::vector<Vec>& tangent_vectors);
/// sqrt(det Omega) / (2 pi)^d for a frame of 2d tangent vectors.
double canonical_density(const MatrixLieAlgebra& L, const Covector& xi, const std::vector<Vec>& tangent_vectors);
/// |det((v_i, e_j))| against an orthonormal basis e_j of the tangent space.
double euclidean_density(const MatrixLieAlgebra& L, const Covector& xi, const std::vector<Vec>& tangent_vectors);
/// Ratio F with F * canonical = euclidean on every frame.
double density_ratio_F(const MatrixLieAlgebra& L, const Covector& xi);

struct FScan {
  std::vector<std::pair<double, double>> points;  // (|xi|, F)
  std::vector<std::pair<double, double>> bin_max; // (1 + |xi|, max F) per log bin
  double slope = 0.0;                             // log-log fit of bin_max
  double max_ratio = 0.0;                         // max F / (1+|xi|)^(dim/2)
};
/// Samples |xi| log-uniformly in [lo, hi] with random directions.
FScan density_ratio_scan(const MatrixLieAlgebra& L, int samples, std::uint64_t seed, double lo = 1.0,
                         double hi = 100.0, int bins = 12);

/// Points of the orbit: exact quadric parametrization for sl(2,R) tags,
/// otherwise products of 50 random one-parameter steps with s ~ U(-1, 1).
std::vector<Vec> orbit_sample(const OrbitParam& param, int n, std::uint64_t seed);
/// Sums xi + eta of independent samples of the two orbits.
std::vector<Vec> orbit_sum_sample(const OrbitParam& a, const OrbitParam& b, int n, std::uint64_t seed);

/// Unit directions of the nilpotent cone: random elements of the nilradical
/// of a minimal parabolic, moved by random group elements.
std::vector<Vec> nilpotent_cone_samples(const MatrixLieAlgebra& L, int n, std::uint64_t seed);

}  // namespace orbitcone
