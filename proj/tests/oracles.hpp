#pragma once

// Independent reference computations shared by the test suites. They work
// directly on matrices and avoid the library code paths they check.

#include <cmath>
#include <functional>
#include <vector>

#include <unsupported/Eigen/MatrixFunctions>

#include "orbitcone/lie_algebra.hpp"

namespace oracle {

using orbitcone::CMat;
using orbitcone::Mat;
using orbitcone::MatrixLieAlgebra;
using orbitcone::Vec;

inline CMat commutator(const CMat& a, const CMat& b) { return a * b - b * a; }

/// Re Tr(XY) of the matrices of two coordinate vectors.
inline double trace_form(const MatrixLieAlgebra& L, const Vec& x, const Vec& y) {
  return (L.to_matrix(x) * L.to_matrix(y)).trace().real();
}

/// Real least-squares coordinates of a matrix in the basis of L.
inline Vec coordinates(const MatrixLieAlgebra& L, const CMat& m) {
  const int n = L.dim(), s = L.matrix_size();
  Mat a(2 * s * s, n);
  Vec b(2 * s * s);
  for (int k = 0; k < n; ++k)
    for (int i = 0; i < s; ++i)
      for (int j = 0; j < s; ++j) {
        a(i * s + j, k) = L.basis()[k](i, j).real();
        a(s * s + i * s + j, k) = L.basis()[k](i, j).imag();
      }
  for (int i = 0; i < s; ++i)
    for (int j = 0; j < s; ++j) {
      b(i * s + j) = m(i, j).real();
      b(s * s + i * s + j) = m(i, j).imag();
    }
  return a.colPivHouseholderQr().solve(b);
}

/// |det| of Y -> exp(-X) d/dt exp(X + tY) at t = 0, by central differences.
inline double exp_jacobian_fd(const MatrixLieAlgebra& L, const Vec& x, double h = 1e-5) {
  const int n = L.dim();
  const CMat ex_inv = (-L.to_matrix(x)).exp();
  Mat j(n, n);
  for (int k = 0; k < n; ++k) {
    const Vec ek = Vec::Unit(n, k);
    const CMat plus = L.to_matrix(x + h * ek).exp();
    const CMat minus = L.to_matrix(x - h * ek).exp();
    j.col(k) = coordinates(L, ex_inv * (plus - minus) / (2.0 * h));
  }
  return std::abs(j.determinant());
}

/// True when v = sum w_i g_i with w >= 0 up to `tol`, by Caratheodory: v lies
/// in the cone of some linearly independent subset of at most dim generators.
inline bool in_generated_cone(const std::vector<Vec>& gens, const Vec& v, double tol) {
  if (v.norm() <= tol) return true;
  const int n = static_cast<int>(v.size());
  const int m = static_cast<int>(gens.size());
  std::vector<int> idx;
  bool found = false;
  std::function<void(int)> rec = [&](int start) {
    if (found) return;
    if (!idx.empty()) {
      Mat a(n, static_cast<Eigen::Index>(idx.size()));
      for (size_t i = 0; i < idx.size(); ++i) a.col(static_cast<Eigen::Index>(i)) = gens[idx[i]];
      Eigen::ColPivHouseholderQR<Mat> qr(a);
      if (qr.rank() == a.cols()) {
        const Vec w = qr.solve(v);
        if ((a * w - v).norm() <= tol * v.norm() && (w.array() >= -tol).all()) found = true;
      }
    }
    if (static_cast<int>(idx.size()) == n) return;
    for (int i = start; i < m && !found; ++i) {
      idx.push_back(i);
      rec(i + 1);
      idx.pop_back();
    }
  };
  rec(0);
  return found;
}

}  // namespace oracle
