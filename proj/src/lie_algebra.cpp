#include "orbitcone/lie_algebra.hpp"
#include "orbitcone/text.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <numbers>

#include <unsupported/Eigen/MatrixFunctions>

namespace orbitcone {

namespace linalg {

Mat null_space(const Mat& m, double rel_tol) {
  const int cols = static_cast<int>(m.cols());
  if (cols == 0) return Mat(0, 0);
  if (m.rows() == 0) return Mat::Identity(cols, cols);
  Eigen::JacobiSVD<Mat> svd(m, Eigen::ComputeFullV);
  const auto& s = svd.singularValues();
  const double tol = rel_tol * std::max(1.0, s.size() ? s(0) : 0.0);
  int rank = 0;
  for (int i = 0; i < s.size(); ++i)
    if (s(i) > tol) ++rank;
  return svd.matrixV().rightCols(cols - rank);
}

Mat orthonormal_span(const Mat& columns, double rel_tol) {
  if (columns.cols() == 0 || columns.rows() == 0) return Mat(columns.rows(), 0);
  Eigen::JacobiSVD<Mat> svd(columns, Eigen::ComputeThinU);
  const auto& s = svd.singularValues();
  const double tol = rel_tol * std::max(1.0, s(0));
  int rank = 0;
  for (int i = 0; i < s.size(); ++i)
    if (s(i) > tol) ++rank;
  return svd.matrixU().leftCols(rank);
}

int numeric_rank(const Mat& m, double rel_tol) {
  if (m.size() == 0) return 0;
  Eigen::JacobiSVD<Mat> svd(m);
  const auto& s = svd.singularValues();
  const double tol = rel_tol * std::max(1.0, s(0));
  int rank = 0;
  for (int i = 0; i < s.size(); ++i)
    if (s(i) > tol) ++rank;
  return rank;
}

CMat matrix_power(const CMat& m, int k) {
  CMat out = CMat::Identity(m.rows(), m.cols());
  for (int i = 0; i < k; ++i) out = out * m;
  return out;
}

}  // namespace linalg

namespace {

Vec stack(const CMat& m) {
  const Eigen::Index n = m.size();
  Vec v(2 * n);
  for (Eigen::Index i = 0; i < n; ++i) {
    v(i) = m.data()[i].real();
    v(n + i) = m.data()[i].imag();
  }
  return v;
}

CMat unit(int n, int i, int j) {
  CMat m = CMat::Zero(n, n);
  m(i, j) = 1.0;
  return m;
}

}  // namespace

MatrixLieAlgebra::MatrixLieAlgebra(std::string name, std::vector<CMat> basis, int matrix_size)
    : name_(std::move(name)), basis_(std::move(basis)), matrix_size_(matrix_size) {
  const int n = dim();
  const int entries = 2 * matrix_size_ * matrix_size_;
  stacked_ = Mat::Zero(entries, n);
  for (int i = 0; i < n; ++i) {
    if (basis_[i].rows() != matrix_size_ || basis_[i].cols() != matrix_size_)
      throw Error(ErrorCode::DimensionMismatch, "basis matrix of wrong size in " + name_);
    stacked_.col(i) = stack(basis_[i]);
  }
  if (n > 0) {
    Eigen::CompleteOrthogonalDecomposition<Mat> cod(stacked_);
    if (cod.rank() != n)
      throw Error(ErrorCode::InvalidArgument, "basis matrices are linearly dependent in " + name_);
    coord_solver_ = cod.pseudoInverse();
  } else {
    coord_solver_ = Mat::Zero(0, entries);
  }

  ad_basis_.assign(n, Mat::Zero(n, n));
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const CMat c = basis_[i] * basis_[j] - basis_[j] * basis_[i];
      if (!in_span(c))
        throw Error(ErrorCode::InvalidArgument, "basis of " + name_ + " is not closed under brackets");
      ad_basis_[i].col(j) = from_matrix(c);
    }
  }

  gram_ = Mat::Zero(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) gram_(i, j) = (basis_[i] * basis_[j]).trace().real();
  const double det = n > 0 ? gram_.determinant() : 1.0;
  degenerate_ = std::abs(det) <= 1e-9;
  if (!degenerate_) gram_inv_ = gram_.inverse();
}

const Mat& MatrixLieAlgebra::gram_inverse() const {
  if (degenerate_) throw Error(ErrorCode::DegenerateForm, "trace form of " + name_ + " is degenerate");
  return gram_inv_;
}

CMat MatrixLieAlgebra::to_matrix(const Vec& x) const {
  if (x.size() != dim()) throw Error(ErrorCode::DimensionMismatch, "element length differs from dim of " + name_);
  CMat m = CMat::Zero(matrix_size_, matrix_size_);
  for (int i = 0; i < dim(); ++i) m += x(i) * basis_[i];
  return m;
}

bool MatrixLieAlgebra::in_span(const CMat& m, double rel_tol) const {
  const Vec v = stack(m);
  if (dim() == 0) return v.norm() <= rel_tol;
  const Vec c = coord_solver_ * v;
  return (stacked_ * c - v).norm() <= rel_tol * std::max(1.0, v.norm());
}

Vec MatrixLieAlgebra::from_matrix(const CMat& m) const {
  if (m.rows() != matrix_size_ || m.cols() != matrix_size_)
    throw Error(ErrorCode::DimensionMismatch, "matrix of wrong size for " + name_);
  const Vec v = stack(m);
  if (dim() == 0) {
    if (v.norm() > 1e-8) throw Error(ErrorCode::DimensionMismatch, "matrix not in the zero algebra");
    return Vec(0);
  }
  const Vec c = coord_solver_ * v;
  if ((stacked_ * c - v).norm() > 1e-8 * std::max(1.0, v.norm()))
    throw Error(ErrorCode::DimensionMismatch, "matrix is not in the span of " + name_);
  return c;
}

Vec MatrixLieAlgebra::bracket(const Vec& x, const Vec& y) const {
  return ad_matrix(x) * y;
}

Mat MatrixLieAlgebra::ad_matrix(const Vec& x) const {
  if (x.size() != dim()) throw Error(ErrorCode::DimensionMismatch, "element length differs from dim of " + name_);
  Mat ad = Mat::Zero(dim(), dim());
  for (int i = 0; i < dim(); ++i)
    if (x(i) != 0.0) ad += x(i) * ad_basis_[i];
  return ad;
}

// ---------------------------------------------------------------------------
// Concrete algebras

MatrixLieAlgebra make_sl2r() {
  // (x, y, z) -> [[x, y - z], [y + z, -x]]
  CMat ex(2, 2), ey(2, 2), ez(2, 2);
  ex << 1, 0, 0, -1;
  ey << 0, 1, 1, 0;
  ez << 0, -1, 1, 0;
  return MatrixLieAlgebra("sl2R", {ex, ey, ez}, 2);
}

MatrixLieAlgebra make_so(int p, int q) {
  if (p < 0 || q < 0) throw Error(ErrorCode::UnsupportedAlgebra, "so(p,q) needs p, q >= 0");
  const int n = p + q;
  if (n > 10) throw Error(ErrorCode::DimensionTooLarge, "so(p,q) supports p + q <= 10");
  std::vector<CMat> basis;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      const bool same = (i < p) == (j < p);
      basis.push_back(same ? CMat(unit(n, i, j) - unit(n, j, i)) : CMat(unit(n, i, j) + unit(n, j, i)));
    }
  }
  return MatrixLieAlgebra("so(" + std::to_string(p) + "," + std::to_string(q) + ")", std::move(basis), n);
}

MatrixLieAlgebra make_su21() {
  // X^* J + J X = 0 with J = diag(1, 1, -1), Tr X = 0. X = A J with A
  // anti-Hermitian off the diagonal, plus the traceless imaginary diagonal.
  const std::complex<double> I(0.0, 1.0);
  CMat J = CMat::Zero(3, 3);
  J(0, 0) = 1.0;
  J(1, 1) = 1.0;
  J(2, 2) = -1.0;
  std::vector<CMat> basis;
  for (int k = 0; k < 3; ++k) {
    for (int l = k + 1; l < 3; ++l) {
      basis.push_back(CMat(unit(3, k, l) - unit(3, l, k)) * J);
      basis.push_back(CMat(I * (unit(3, k, l) + unit(3, l, k))) * J);
    }
  }
  basis.push_back(I * (unit(3, 0, 0) - unit(3, 1, 1)));
  basis.push_back(I * (unit(3, 1, 1) - unit(3, 2, 2)));
  return MatrixLieAlgebra("su(2,1)", std::move(basis), 3);
}

MatrixLieAlgebra make_abelian(int n) {
  if (n < 0) throw Error(ErrorCode::UnsupportedAlgebra, "abelian(n) needs n >= 0");
  if (n > 10) throw Error(ErrorCode::DimensionTooLarge, "abelian(n) supports n <= 10");
  std::vector<CMat> basis;
  for (int i = 0; i < n; ++i) basis.push_back(unit(n, i, i));
  return MatrixLieAlgebra("abelian(" + std::to_string(n) + ")", std::move(basis), n);
}

MatrixLieAlgebra make_product(const std::vector<MatrixLieAlgebra>& factors, std::string name) {
  int size = 0;
  for (const auto& f : factors) size += f.matrix_size();
  if (size > 12) throw Error(ErrorCode::DimensionTooLarge, "product realization too large");
  if (name.empty()) {
    name = "prod(";
    for (size_t i = 0; i < factors.size(); ++i) name += (i ? "," : "") + factors[i].name();
    name += ")";
  }
  std::vector<CMat> basis;
  int offset = 0;
  for (const auto& f : factors) {
    for (const auto& b : f.basis()) {
      CMat m = CMat::Zero(size, size);
      m.block(offset, offset, f.matrix_size(), f.matrix_size()) = b;
      basis.push_back(std::move(m));
    }
    offset += f.matrix_size();
  }
  return MatrixLieAlgebra(std::move(name), std::move(basis), size);
}

MatrixLieAlgebra make_span(std::string name, std::vector<CMat> basis, int matrix_size) {
  return MatrixLieAlgebra(std::move(name), std::move(basis), matrix_size);
}

// ---------------------------------------------------------------------------
// Parsing

namespace text {

std::string strip(std::string_view s) {
  std::string out;
  for (char c : s)
    if (!std::isspace(static_cast<unsigned char>(c))) out.push_back(c);
  return out;
}

std::vector<std::string> split_top_level(const std::string& s) {
  std::vector<std::string> parts;
  int depth = 0;
  std::string cur;
  for (char c : s) {
    if (c == '(' || c == '[') ++depth;
    if (c == ')' || c == ']') --depth;
    if (c == ',' && depth == 0) {
      parts.push_back(cur);
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  if (!cur.empty()) parts.push_back(cur);
  return parts;
}

int parse_int(const std::string& s, std::string_view context) {
  try {
    size_t pos = 0;
    const int v = std::stoi(s, &pos);
    if (pos != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw Error(ErrorCode::ParseError, "expected integer in '" + std::string(context) + "', got '" + s + "'");
  }
}

}  // namespace text

namespace {

using text::parse_int;
using text::split_top_level;
using text::strip;

MatrixLieAlgebra parse_algebra(const std::string& s) {
  if (s == "sl2R" || s == "sl(2,R)" || s == "sl2r") return make_sl2r();
  const auto open = s.find('(');
  if (open == std::string::npos || s.back() != ')')
    throw Error(ErrorCode::UnsupportedAlgebra, "unknown algebra '" + s + "'");
  const std::string head = s.substr(0, open);
  const std::string inner = s.substr(open + 1, s.size() - open - 2);
  const auto args = split_top_level(inner);
  if (head == "so") {
    if (args.size() != 2) throw Error(ErrorCode::ParseError, "so(p,q) takes two integers");
    return make_so(parse_int(args[0], s), parse_int(args[1], s));
  }
  if (head == "su") {
    if (args.size() != 2) throw Error(ErrorCode::ParseError, "su(p,q) takes two integers");
    const int p = parse_int(args[0], s), q = parse_int(args[1], s);
    if (p == 2 && q == 1) return make_su21();
    throw Error(ErrorCode::UnsupportedAlgebra, "only su(2,1) is supported");
  }
  if (head == "abelian") {
    if (args.size() != 1) throw Error(ErrorCode::ParseError, "abelian(n) takes one integer");
    return make_abelian(parse_int(args[0], s));
  }
  if (head == "prod") {
    if (args.empty()) throw Error(ErrorCode::ParseError, "prod() needs factors");
    std::vector<MatrixLieAlgebra> factors;
    for (const auto& a : args) factors.push_back(parse_algebra(a));
    return make_product(factors);
  }
  throw Error(ErrorCode::UnsupportedAlgebra, "unknown algebra '" + s + "'");
}

}  // namespace

MatrixLieAlgebra build_algebra(std::string_view spec) { return parse_algebra(strip(spec)); }

// ---------------------------------------------------------------------------

StructureDefects structure_defects(const MatrixLieAlgebra& L) {
  StructureDefects d;
  const int n = L.dim();
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        d.antisymmetry = std::max(d.antisymmetry,
                                  std::abs(L.structure_constant(i, j, k) + L.structure_constant(j, i, k)));
  for (int i = 0; i < n; ++i) {
    const Mat& ai = L.ad_basis(i);
    for (int j = 0; j < n; ++j) {
      const Mat& aj = L.ad_basis(j);
      // ad_[e_i, e_j] = [ad_i, ad_j] is equivalent to Jacobi on all triples.
      const Mat lhs = L.ad_matrix(ai.col(j));
      const Mat rhs = ai * aj - aj * ai;
      d.jacobi = std::max(d.jacobi, (lhs - rhs).cwiseAbs().maxCoeff());
      const CMat comm = L.basis()[i] * L.basis()[j] - L.basis()[j] * L.basis()[i];
      d.matrix_bracket = std::max(d.matrix_bracket, (L.to_matrix(ai.col(j)) - comm).cwiseAbs().maxCoeff());
    }
    // Tr([X,Y]Z) + Tr(Y[X,Z]) = 0  <=>  ad_X^T G + G ad_X = 0
    const Mat inv = ai.transpose() * L.gram() + L.gram() * ai;
    if (n > 0) d.invariance = std::max(d.invariance, inv.cwiseAbs().maxCoeff());
  }
  if (n > 0) d.gram_asymmetry = (L.gram() - L.gram().transpose()).cwiseAbs().maxCoeff();
  d.gram_det = n > 0 ? L.gram().determinant() : 1.0;
  return d;
}

AlgebraElement bracket(const MatrixLieAlgebra& L, const AlgebraElement& x, const AlgebraElement& y) {
  if (y.coords.size() != L.dim()) throw Error(ErrorCode::DimensionMismatch, "bracket operand length");
  return {L.bracket(x.coords, y.coords)};
}

Covector identify_dual(const MatrixLieAlgebra& L, const AlgebraElement& x) {
  if (x.coords.size() != L.dim()) throw Error(ErrorCode::DimensionMismatch, "identify_dual operand length");
  if (L.is_degenerate()) throw Error(ErrorCode::DegenerateForm, "trace form of " + L.name() + " is degenerate");
  return {x.coords};
}

AlgebraElement identify_dual_inverse(const MatrixLieAlgebra& L, const Covector& xi) {
  if (xi.coords.size() != L.dim()) throw Error(ErrorCode::DimensionMismatch, "identify_dual operand length");
  if (L.is_degenerate()) throw Error(ErrorCode::DegenerateForm, "trace form of " + L.name() + " is degenerate");
  return {xi.coords};
}

Vec functional_values(const MatrixLieAlgebra& L, const Covector& xi) {
  if (xi.coords.size() != L.dim()) throw Error(ErrorCode::DimensionMismatch, "covector length");
  return L.gram() * xi.coords;
}

Covector covector_from_functional(const MatrixLieAlgebra& L, const Vec& values) {
  if (values.size() != L.dim()) throw Error(ErrorCode::DimensionMismatch, "functional length");
  return {L.gram_inverse() * values};
}

double pairing(const MatrixLieAlgebra& L, const Covector& xi, const AlgebraElement& y) {
  if (xi.coords.size() != L.dim() || y.coords.size() != L.dim())
    throw Error(ErrorCode::DimensionMismatch, "pairing operand length");
  return L.trace_pairing(xi.coords, y.coords);
}

Mat ad_matrix(const MatrixLieAlgebra& L, const AlgebraElement& x) { return L.ad_matrix(x.coords); }

Covector coadjoint_ad(const MatrixLieAlgebra& L, const AlgebraElement& x, const Covector& xi) {
  if (xi.coords.size() != L.dim()) throw Error(ErrorCode::DimensionMismatch, "covector length");
  // Under the invariant trace form, ad*_X corresponds to ad_X on g.
  return {L.ad_matrix(x.coords) * xi.coords};
}

Mat coadjoint_exp(const MatrixLieAlgebra& L, const Vec& x, double step) {
  const Mat a = step * L.ad_matrix(x);
  return a.exp();
}

Covector group_orbit_step(const MatrixLieAlgebra& L, const std::vector<GroupStep>& steps, const Covector& xi) {
  if (xi.coords.size() != L.dim()) throw Error(ErrorCode::DimensionMismatch, "covector length");
  Vec v = xi.coords;
  for (const auto& s : steps) {
    if (!std::isfinite(s.step)) throw Error(ErrorCode::InvalidArgument, "group step must be finite");
    v = coadjoint_exp(L, s.generator.coords, s.step) * v;
  }
  return {v};
}

// ---------------------------------------------------------------------------
// Classification

const char* to_string(ElementTag tag) {
  switch (tag) {
    case ElementTag::Zero: return "Zero";
    case ElementTag::Elliptic: return "Elliptic";
    case ElementTag::Hyperbolic: return "Hyperbolic";
    case ElementTag::Nilpotent: return "Nilpotent";
    case ElementTag::Mixed: return "Mixed";
  }
  return "?";
}

namespace {

std::vector<std::complex<double>> sorted_eigenvalues(const Mat& m) {
  std::vector<std::complex<double>> ev;
  if (m.rows() == 0) return ev;
  Eigen::EigenSolver<Mat> es(m, false);
  for (int i = 0; i < es.eigenvalues().size(); ++i) ev.push_back(es.eigenvalues()(i));
  std::sort(ev.begin(), ev.end(), [](auto a, auto b) {
    if (a.real() != b.real()) return a.real() < b.real();
    return a.imag() < b.imag();
  });
  return ev;
}

bool is_nilpotent(const CMat& m, int power) {
  return linalg::matrix_power(m, power).norm() < 1e-8;
}

// Diagonalizability test: every eigenvalue cluster must have geometric
// multiplicity equal to its size.
template <class M>
bool is_semisimple(const M& m, const std::vector<std::complex<double>>& ev) {
  const int n = static_cast<int>(m.rows());
  const double cluster_tol = 1e-5;
  std::vector<bool> used(ev.size(), false);
  for (size_t i = 0; i < ev.size(); ++i) {
    if (used[i]) continue;
    std::complex<double> mean = 0.0;
    int count = 0;
    for (size_t j = i; j < ev.size(); ++j) {
      if (!used[j] && std::abs(ev[j] - ev[i]) < cluster_tol) {
        used[j] = true;
        mean += ev[j];
        ++count;
      }
    }
    mean /= static_cast<double>(count);
    const CMat shifted = m.template cast<std::complex<double>>() - mean * CMat::Identity(n, n);
    Eigen::JacobiSVD<CMat> svd(shifted);
    const auto& s = svd.singularValues();
    int null = 0;
    for (int k = 0; k < s.size(); ++k)
      if (s(k) < 1e-7) ++null;
    if (null < count) return false;
  }
  return true;
}

ElementTag spectrum_tag(const std::vector<std::complex<double>>& ev, double tol) {
  bool all_real = true, all_imag = true, all_zero = true;
  for (auto l : ev) {
    if (std::abs(l.imag()) > tol) all_real = false;
    if (std::abs(l.real()) > tol) all_imag = false;
    if (std::abs(l) > tol) all_zero = false;
  }
  if (all_zero) return ElementTag::Nilpotent;
  if (all_real) return ElementTag::Hyperbolic;
  if (all_imag) return ElementTag::Elliptic;
  return ElementTag::Mixed;
}

}  // namespace

ElementClass classify_element(const MatrixLieAlgebra& L, const Covector& xi, double tol) {
  if (xi.coords.size() != L.dim()) throw Error(ErrorCode::DimensionMismatch, "covector length");
  if (L.is_degenerate()) throw Error(ErrorCode::DegenerateForm, "trace form of " + L.name() + " is degenerate");
  ElementClass out;
  const double norm = xi.coords.norm();
  if (norm < 1e-12) return out;
  const Vec x = xi.coords / norm;
  const Mat ad = L.ad_matrix(x);
  out.eigenvalues = sorted_eigenvalues(ad);

  if (ad.norm() < 1e-12) {
    // Central element: ad carries no information, use the defining matrix.
    const CMat m = L.to_matrix(x);
    if (is_nilpotent(m, L.matrix_size())) {
      out.tag = ElementTag::Nilpotent;
      return out;
    }
    Eigen::ComplexEigenSolver<CMat> es(m, false);
    std::vector<std::complex<double>> ev;
    for (int i = 0; i < es.eigenvalues().size(); ++i) ev.push_back(es.eigenvalues()(i));
    out.tag = is_semisimple(m, ev) ? spectrum_tag(ev, tol) : ElementTag::Mixed;
    if (out.tag == ElementTag::Nilpotent) out.tag = ElementTag::Mixed;
    return out;
  }

  if (is_nilpotent(ad.cast<std::complex<double>>(), L.dim())) {
    out.tag = ElementTag::Nilpotent;
    return out;
  }
  if (!is_semisimple(ad, out.eigenvalues)) {
    out.tag = ElementTag::Mixed;
    return out;
  }
  out.tag = spectrum_tag(out.eigenvalues, tol);
  // A semisimple element with all-zero spectrum is central, handled above.
  if (out.tag == ElementTag::Nilpotent) out.tag = ElementTag::Mixed;
  return out;
}

bool is_semisimple_element(const MatrixLieAlgebra& L, const Vec& x) {
  const double n = x.norm();
  if (n < 1e-300) return true;
  const Mat ad = L.ad_matrix(x / n);
  return is_semisimple(ad, sorted_eigenvalues(ad));
}

ExpJacobian exp_jacobian(const MatrixLieAlgebra& L, const AlgebraElement& x) {
  if (x.coords.size() != L.dim()) throw Error(ErrorCode::DimensionMismatch, "element length");
  ExpJacobian out;
  if (L.dim() == 0) return out;
  Eigen::EigenSolver<Mat> es(L.ad_matrix(x.coords), false);
  std::complex<double> j = 1.0, js = 1.0;
  for (int i = 0; i < es.eigenvalues().size(); ++i) {
    const std::complex<double> l = es.eigenvalues()(i);
    if (std::abs(l) < 1e-12) continue;
    j *= (1.0 - std::exp(-l)) / l;
    js *= (std::exp(l / 2.0) - std::exp(-l / 2.0)) / l;
  }
  out.j = std::abs(j);
  out.j_sqrt = js.real();
  return out;
}

CartanDecomposition cartan_decomposition(const MatrixLieAlgebra& L) {
  CartanDecomposition out;
  const int n = L.dim();
  Mat k_cols(n, n), p_cols(n, n);
  out.theta_stable = true;
  for (int i = 0; i < n; ++i) {
    const CMat& b = L.basis()[i];
    const CMat k = 0.5 * (b - b.adjoint());
    const CMat p = 0.5 * (b + b.adjoint());
    if (!L.in_span(k) || !L.in_span(p)) {
      out.theta_stable = false;
      k_cols.col(i).setZero();
      p_cols.col(i).setZero();
      continue;
    }
    k_cols.col(i) = L.from_matrix(k);
    p_cols.col(i) = L.from_matrix(p);
  }
  out.k_basis = linalg::orthonormal_span(k_cols);
  out.p_basis = linalg::orthonormal_span(p_cols);
  return out;
}

}  // namespace orbitcone
