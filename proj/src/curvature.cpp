#include "ambientlab/curvature.hpp"

#include <Eigen/LU>

namespace ambientlab {

MatrixX<Jet> JetRing::invert(const MatrixX<Jet>& g) const {
  const int n = static_cast<int>(g.rows());
  int order = 0, dim = 0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (!g(i, j).shapeless()) {
        order = g(i, j).order();
        dim = g(i, j).dim();
      }
  Eigen::MatrixXd value(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) value(i, j) = g(i, j).value();
  Eigen::FullPivLU<Eigen::MatrixXd> lu(value);
  if (!lu.isInvertible()) throw std::domain_error("jet tier: metric singular at base point");
  const Eigen::MatrixXd inv0 = lu.inverse();

  auto matmul = [n](const MatrixX<Jet>& a, const MatrixX<Jet>& b) {
    MatrixX<Jet> out(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        Jet sum(0.0);
        for (int k = 0; k < n; ++k) sum = sum + a(i, k) * b(k, j);
        out(i, j) = sum;
      }
    return out;
  };

  MatrixX<Jet> a0inv(n, n), m(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) a0inv(i, j) = Jet::constant(dim, order, inv0(i, j));
  // M = A0^-1 (g - A0): every entry has zero value part.
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      Jet sum(0.0);
      for (int k = 0; k < n; ++k)
        sum = sum + a0inv(i, k) * (g(k, j) - Jet::constant(dim, order, value(k, j)));
      m(i, j) = sum;
    }
  // g^-1 = (I + M)^-1 A0^-1 = (I - M + M^2 - ...) A0^-1, exact at jet order.
  MatrixX<Jet> series(n, n), power(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      series(i, j) = Jet::constant(dim, order, i == j ? 1.0 : 0.0);
      power(i, j) = series(i, j);
    }
  for (int k = 1; k <= order; ++k) {
    power = matmul(power, m);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        series(i, j) = (k % 2 == 1) ? series(i, j) - power(i, j) : series(i, j) + power(i, j);
  }
  return matmul(series, a0inv);
}

RiemannSymmetryReport verify_riemann_symmetries(ExactCurvature& c) {
  RiemannSymmetryReport report;
  const int n = c.dim();
  auto& r = c.riemann();
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int d = 0; d < n; ++d)
        for (int e = 0; e < n; ++e) {
          const Expr v = r.get(a, b, d, e);
          if (!(r.get(b, a, d, e) == -v)) report.antisym_first_pair = false;
          if (!(r.get(a, b, e, d) == -v)) report.antisym_last_pair = false;
          if (!(r.get(d, e, a, b) == v)) report.pair_symmetry = false;
          const Expr bianchi = v + r.get(a, d, e, b) + r.get(a, e, b, d);
          if (!bianchi.is_zero()) report.first_bianchi = false;
        }
  return report;
}

bool metricity_holds(ExactCurvature& c) {
  const int n = c.dim();
  auto gt = TensorComponents<Expr>::dense(n, 2);
  gt.for_each_canonical(
      [&](std::span<const int> idx, Expr& v) { v = c.g()(idx[0], idx[1]); });
  auto dg = c.covariant_derivative(gt);
  return dg.all_of([](const Expr& e) { return e.is_zero(); });
}

}  // namespace ambientlab
