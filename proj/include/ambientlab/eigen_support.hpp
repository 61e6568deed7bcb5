#pragma once

#include "ambientlab/expression.hpp"
#include "ambientlab/jet.hpp"

#include <Eigen/Dense>

namespace Eigen {

template <>
struct NumTraits<ambientlab::Expr> : GenericNumTraits<ambientlab::Expr> {
  using Real = ambientlab::Expr;
  using NonInteger = ambientlab::Expr;
  using Nested = ambientlab::Expr;
  using Literal = int;
  enum {
    IsComplex = 0,
    IsInteger = 0,
    IsSigned = 1,
    RequireInitialization = 1,
    ReadCost = 8,
    AddCost = 32,
    MulCost = 64,
  };
  static int digits10() { return 0; }
};

template <>
struct NumTraits<ambientlab::Jet> : GenericNumTraits<ambientlab::Jet> {
  using Real = ambientlab::Jet;
  using NonInteger = ambientlab::Jet;
  using Nested = ambientlab::Jet;
  using Literal = double;
  enum {
    IsComplex = 0,
    IsInteger = 0,
    IsSigned = 1,
    RequireInitialization = 1,
    ReadCost = 8,
    AddCost = 32,
    MulCost = 64,
  };
  static int digits10() { return 15; }
};

}  // namespace Eigen

namespace ambientlab {

template <class Scalar>
using MatrixX = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

using ExprMatrix = MatrixX<Expr>;

}  // namespace ambientlab
