#include "ambientlab/metric.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>
#include <stdexcept>
#include <unordered_map>

namespace ambientlab {

namespace {

Expr det_masked(const ExprMatrix& m, int row, uint32_t col_mask,
                std::unordered_map<uint32_t, Expr>& memo) {
  const int n = static_cast<int>(m.rows());
  if (row == n) return Expr(1);
  auto it = memo.find(col_mask);
  if (it != memo.end()) return it->second;
  Expr det;
  int sign = 1;
  for (int c = 0; c < n; ++c) {
    if (!(col_mask & (1u << c))) continue;
    const Expr& entry = m(row, c);
    if (!entry.is_zero()) {
      Expr sub = det_masked(m, row + 1, col_mask & ~(1u << c), memo);
      Expr term = entry * sub;
      det += sign > 0 ? term : -term;
    }
    sign = -sign;
  }
  memo.emplace(col_mask, det);
  return det;
}

}  // namespace

Expr determinant(const ExprMatrix& m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("determinant: matrix not square");
  if (m.rows() > 31) throw std::invalid_argument("determinant: matrix too large");
  std::unordered_map<uint32_t, Expr> memo;
  return det_masked(m, 0, (1u << m.rows()) - 1u, memo);
}

ExprMatrix adjugate(const ExprMatrix& m) {
  const int n = static_cast<int>(m.rows());
  ExprMatrix adj(n, n);
  if (n == 1) {
    adj(0, 0) = Expr(1);
    return adj;
  }
  ExprMatrix minor(n - 1, n - 1);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      for (int r = 0, rr = 0; r < n; ++r) {
        if (r == i) continue;
        for (int c = 0, cc = 0; c < n; ++c) {
          if (c == j) continue;
          minor(rr, cc++) = m(r, c);
        }
        ++rr;
      }
      Expr cof = determinant(minor);
      adj(j, i) = ((i + j) % 2 == 0) ? cof : -cof;
    }
  }
  return adj;
}

Expr MetricField::determinant() const { return ambientlab::determinant(components); }

std::map<VarId, double> MetricField::base_point_double() const {
  std::map<VarId, double> out;
  for (const auto& [v, q] : base_point) out[v] = to_double(q);
  return out;
}

Eigen::MatrixXd MetricField::evaluate_base() const {
  const auto point = base_point_double();
  Eigen::MatrixXd out(dim(), dim());
  for (int i = 0; i < dim(); ++i)
    for (int j = 0; j < dim(); ++j) out(i, j) = components(i, j).evaluate_double(point);
  return out;
}

Signature MetricField::signature() const {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(evaluate_base());
  Signature sig;
  for (int i = 0; i < dim(); ++i) {
    const double ev = solver.eigenvalues()(i);
    if (std::abs(ev) < 1e-9)
      throw std::domain_error("metric degenerate at the declared base point");
    (ev < 0 ? sig.minus : sig.plus)++;
  }
  return sig;
}

void MetricField::validate() const {
  if (components.rows() != dim() || components.cols() != dim())
    throw std::invalid_argument("metric component matrix does not match coordinate count");
  for (int i = 0; i < dim(); ++i)
    for (int j = i + 1; j < dim(); ++j)
      if (!(components(i, j) == components(j, i)))
        throw std::invalid_argument("metric components not symmetric");
  signature();  // throws when degenerate
}

MetricField conformal_rescale_sq(const MetricField& g, const Expr& omega_sq) {
  MetricField out = g;
  for (int i = 0; i < g.dim(); ++i)
    for (int j = 0; j < g.dim(); ++j) out.components(i, j) = omega_sq * g.components(i, j);
  out.validate();
  return out;
}

TensorComponents<double> evaluate_components(const TensorComponents<Expr>& t,
                                             const std::map<VarId, double>& point) {
  auto out = [&] {
    using Sym = TensorComponents<Expr>::Sym;
    switch (t.sym()) {
      case Sym::dense: return TensorComponents<double>::dense(t.dim(), t.rank());
      case Sym::symmetric2: return TensorComponents<double>::symmetric2(t.dim());
      case Sym::christoffel: return TensorComponents<double>::christoffel(t.dim());
      case Sym::riemann: return TensorComponents<double>::riemann(t.dim());
    }
    throw std::logic_error("unreachable");
  }();
  out.for_each_canonical([&](std::span<const int> idx, double& v) {
    v = t.get(idx).evaluate_double(point);
  });
  return out;
}

double max_abs_component(const TensorComponents<double>& t) {
  double m = 0;
  for (double v : t.storage()) m = std::max(m, std::abs(v));
  return m;
}

}  // namespace ambientlab
