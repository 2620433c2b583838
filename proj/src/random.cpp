#include "orbitcone/random.hpp"

#include <numbers>

#include <unsupported/Eigen/MatrixFunctions>

namespace orbitcone {

Mat random_group_element(const MatrixLieAlgebra& L, Rng& rng, int steps, double scale) {
  const int n = L.dim();
  Mat g = Mat::Identity(n, n);
  if (n == 0) return g;
  std::uniform_int_distribution<int> pick(0, n - 1);
  for (int i = 0; i < steps; ++i) {
    const int k = pick(rng);
    const double s = uniform(rng, -scale, scale);
    const Mat a = s * L.ad_basis(k);
    g = a.exp() * g;
  }
  return g;
}

Mat random_kak_element(const MatrixLieAlgebra& L, const CartanDecomposition& cd, Rng& rng, double scale) {
  const int n = L.dim();
  Mat g = Mat::Identity(n, n);
  if (n == 0) return g;
  const int kd = static_cast<int>(cd.k_basis.cols());
  const int pd = static_cast<int>(cd.p_basis.cols());
  auto compact = [&]() -> Mat {
    if (kd == 0) return Mat::Identity(n, n);
    const Vec x = cd.k_basis * (std::numbers::pi * gaussian_vector(rng, kd));
    return Mat(L.ad_matrix(x).exp());
  };
  g = compact();
  if (pd > 0) {
    const Vec y = cd.p_basis * random_unit_vector(rng, pd);
    g = Mat((scale * L.ad_matrix(y)).exp()) * g;
  }
  return compact() * g;
}

}  // namespace orbitcone
