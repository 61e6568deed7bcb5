#pragma once

#include "ambientlab/eigen_support.hpp"
#include "ambientlab/expression.hpp"
#include "ambientlab/tensor.hpp"

#include <map>
#include <vector>

namespace ambientlab {

struct Signature {
  int minus = 0;
  int plus = 0;
};

// Coordinate metric over the exact scalar ring, with a declared base point at
// which invertibility and signature are checked numerically.
struct MetricField {
  std::vector<VarId> coords;
  ExprMatrix components;  // dim x dim, symmetric
  std::map<VarId, Rational> base_point;

  int dim() const { return static_cast<int>(coords.size()); }
  Expr determinant() const;
  Eigen::MatrixXd evaluate_base() const;
  std::map<VarId, double> base_point_double() const;
  Signature signature() const;  // throws if degenerate at the base point
  // Symmetry of `components` and nonzero determinant at the base point.
  void validate() const;
};

// e^{2phi} g with Omega^2 = omega_sq given directly as a polynomial factor.
// The exact tier represents conformal rescalings through their squared
// factor; omega_sq must be nonzero at the base point.
MetricField conformal_rescale_sq(const MetricField& g, const Expr& omega_sq);

Expr determinant(const ExprMatrix& m);
ExprMatrix adjugate(const ExprMatrix& m);

TensorComponents<double> evaluate_components(const TensorComponents<Expr>& t,
                                             const std::map<VarId, double>& point);
double max_abs_component(const TensorComponents<double>& t);

}  // namespace ambientlab
