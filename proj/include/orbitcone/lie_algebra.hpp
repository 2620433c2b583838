#pragma once

#include <complex>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "orbitcone/errors.hpp"

namespace orbitcone {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;
using CVec = Eigen::VectorXcd;
using CMat = Eigen::MatrixXcd;

/// Element of a Lie algebra, in coordinates of the algebra basis.
struct AlgebraElement {
  Vec coords;
};

/// Element of i g*. Coordinates are those of the trace-form transport
/// X in g (the chart in which x^2 + y^2 - z^2 is the sl(2,R) Casimir), so the
/// pairing with Y in g is coords^T * gram * Y.
struct Covector {
  Vec coords;
};

/// A real Lie algebra of (possibly complex) n x n matrices, given by a basis.
/// Structure constants and the trace form are derived from the matrices.
class MatrixLieAlgebra {
 public:
  MatrixLieAlgebra() = default;
  MatrixLieAlgebra(std::string name, std::vector<CMat> basis, int matrix_size);

  const std::string& name() const { return name_; }
  int dim() const { return static_cast<int>(basis_.size()); }
  int matrix_size() const { return matrix_size_; }
  const std::vector<CMat>& basis() const { return basis_; }
  const Mat& gram() const { return gram_; }
  const Mat& gram_inverse() const;

  /// c[i][j][k] with [e_i, e_j] = sum_k c[i][j][k] e_k.
  double structure_constant(int i, int j, int k) const { return ad_basis_[i](k, j); }

  /// Matrix of Y -> [e_i, Y].
  const Mat& ad_basis(int i) const { return ad_basis_[i]; }

  CMat to_matrix(const Vec& x) const;
  /// Coordinates of a matrix in the span of the basis. Throws DimensionMismatch
  /// when the matrix is not in the span (relative residual above 1e-8).
  Vec from_matrix(const CMat& m) const;
  bool in_span(const CMat& m, double rel_tol = 1e-8) const;

  Vec bracket(const Vec& x, const Vec& y) const;
  Mat ad_matrix(const Vec& x) const;
  double trace_pairing(const Vec& x, const Vec& y) const { return x.dot(gram_ * y); }

  bool is_degenerate() const { return degenerate_; }

 private:
  std::string name_;
  std::vector<CMat> basis_;
  int matrix_size_ = 0;
  std::vector<Mat> ad_basis_;
  Mat gram_;
  Mat gram_inv_;
  bool degenerate_ = false;
  Mat coord_solver_;  // pseudo-inverse of the stacked real/imag basis
  Mat stacked_;
};

/// Parse and build an algebra: "sl2R", "so(p,q)", "su(2,1)", "abelian(n)",
/// "prod(A,B,...)". Throws UnsupportedAlgebra / DimensionTooLarge / ParseError.
MatrixLieAlgebra build_algebra(std::string_view spec);

MatrixLieAlgebra make_sl2r();
MatrixLieAlgebra make_so(int p, int q);
MatrixLieAlgebra make_su21();
MatrixLieAlgebra make_abelian(int n);
MatrixLieAlgebra make_product(const std::vector<MatrixLieAlgebra>& factors, std::string name = {});
/// Real span of arbitrary matrices (used for named subalgebras like the
/// diagonal torus of sl(2,R)). Structure constants are checked for closure.
MatrixLieAlgebra make_span(std::string name, std::vector<CMat> basis, int matrix_size);

struct StructureDefects {
  double antisymmetry = 0.0;
  double jacobi = 0.0;
  double invariance = 0.0;
  double gram_asymmetry = 0.0;
  double matrix_bracket = 0.0;  // structure constants vs. matrix commutators
  double gram_det = 0.0;
};
StructureDefects structure_defects(const MatrixLieAlgebra& L);

AlgebraElement bracket(const MatrixLieAlgebra& L, const AlgebraElement& x, const AlgebraElement& y);

/// X -> (Y -> Tr(XY)). In the chart used for Covector this is the identity
/// on coordinates; the dual-basis values of the functional are
/// functional_values().
Covector identify_dual(const MatrixLieAlgebra& L, const AlgebraElement& x);
AlgebraElement identify_dual_inverse(const MatrixLieAlgebra& L, const Covector& xi);
/// Values <xi, e_k> of the functional on the basis (a gram row for a basis element).
Vec functional_values(const MatrixLieAlgebra& L, const Covector& xi);
/// Inverse of functional_values. Throws DegenerateForm when |det gram| <= 1e-9.
Covector covector_from_functional(const MatrixLieAlgebra& L, const Vec& values);
double pairing(const MatrixLieAlgebra& L, const Covector& xi, const AlgebraElement& y);

Mat ad_matrix(const MatrixLieAlgebra& L, const AlgebraElement& x);
/// ad*_X xi with <ad*_X xi, Y> = -<xi, [X, Y]>.
Covector coadjoint_ad(const MatrixLieAlgebra& L, const AlgebraElement& x, const Covector& xi);

struct GroupStep {
  AlgebraElement generator;
  double step = 0.0;
};
/// Applies exp(step * ad*_X) for each listed generator, in list order.
Covector group_orbit_step(const MatrixLieAlgebra& L, const std::vector<GroupStep>& steps, const Covector& xi);
/// Matrix of Ad*(exp(step X)) in Covector coordinates.
Mat coadjoint_exp(const MatrixLieAlgebra& L, const Vec& x, double step);

enum class ElementTag { Zero, Elliptic, Hyperbolic, Nilpotent, Mixed };
const char* to_string(ElementTag tag);

struct ElementClass {
  ElementTag tag = ElementTag::Zero;
  std::vector<std::complex<double>> eigenvalues;  // of ad_X for unit-normalized X, sorted
};

/// Element class of the trace-form transport of xi, decided by the
/// eigenstructure of ad_X. `tol` is the eigenvalue tolerance applied to the
/// unit-normalized element.
ElementClass classify_element(const MatrixLieAlgebra& L, const Covector& xi, double tol = 1e-9);

struct ExpJacobian {
  double j = 1.0;
  double j_sqrt = 1.0;
};
/// Jacobian of exp at X from the ad_X spectrum, normalized to 1 at X = 0.
ExpJacobian exp_jacobian(const MatrixLieAlgebra& L, const AlgebraElement& x);

/// Cartan-involution split g = k + p for the matrix realization
/// (k: anti-Hermitian matrices, p: Hermitian). Bases are orthonormal in
/// coordinates. Only meaningful when the algebra is closed under X -> -X^*.
struct CartanDecomposition {
  Mat k_basis;  // columns
  Mat p_basis;  // columns
  bool theta_stable = false;
};
CartanDecomposition cartan_decomposition(const MatrixLieAlgebra& L);

/// True when ad_X is diagonalizable over C (eigenvalue clusters at 1e-5 with
/// full geometric multiplicity).
bool is_semisimple_element(const MatrixLieAlgebra& L, const Vec& x);

/// Numerical helpers shared by the modules.
namespace linalg {
Mat null_space(const Mat& m, double rel_tol = 1e-10);
Mat orthonormal_span(const Mat& columns, double rel_tol = 1e-10);
int numeric_rank(const Mat& m, double rel_tol = 1e-10);
CMat matrix_power(const CMat& m, int k);
}  // namespace linalg

}  // namespace orbitcone
