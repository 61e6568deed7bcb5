#pragma once

#include <span>
#include <vector>

namespace ambientlab {

// Enumeration of all multi-indices with |alpha| <= order in `dim` variables,
// graded-lex, with rank lookup. Instances are cached per (dim, order).
class MultiIndexSet {
 public:
  static const MultiIndexSet& get(int dim, int order);

  int dim() const { return dim_; }
  int order() const { return order_; }
  int size() const { return static_cast<int>(offsets_.size()); }
  std::span<const int> alpha(int idx) const;
  int rank(std::span<const int> alpha) const;  // -1 if |alpha| > order
  int degree(int idx) const { return degrees_[static_cast<size_t>(idx)]; }

 private:
  MultiIndexSet(int dim, int order);
  int dim_;
  int order_;
  std::vector<int> flat_;     // dim ints per entry
  std::vector<int> offsets_;  // index into flat_
  std::vector<int> degrees_;
};

// Truncated multivariate Taylor expansion at a base point. Coefficients are
// stored in the monomial convention f^(alpha)(p) / alpha!, so multiplication
// is a plain truncated polynomial product.
//
// A default-constructed or double-constructed Jet is a "shapeless" constant
// that adopts the shape of the other operand; this keeps formulas templated
// over the scalar type readable.
class Jet {
 public:
  Jet() : dim_(-1), order_(0), coeffs_{0.0} {}
  Jet(double v) : dim_(-1), order_(0), coeffs_{v} {}
  Jet(int v) : Jet(static_cast<double>(v)) {}

  static Jet constant(int dim, int order, double v);
  static Jet coordinate(int dim, int order, int slot, double base_value);

  bool shapeless() const { return dim_ < 0; }
  int dim() const { return dim_; }
  int order() const { return order_; }
  double value() const { return coeffs_[0]; }
  double coeff(std::span<const int> alpha) const;
  const std::vector<double>& coeffs() const { return coeffs_; }

  friend Jet operator+(const Jet& a, const Jet& b);
  friend Jet operator-(const Jet& a, const Jet& b);
  friend Jet operator*(const Jet& a, const Jet& b);
  Jet operator-() const;
  Jet& operator+=(const Jet& rhs) { return *this = *this + rhs; }
  Jet& operator-=(const Jet& rhs) { return *this = *this - rhs; }
  Jet& operator*=(const Jet& rhs) { return *this = *this * rhs; }
  friend bool operator==(const Jet& a, const Jet& b) {
    return a.dim_ == b.dim_ && a.order_ == b.order_ && a.coeffs_ == b.coeffs_;
  }

  Jet reciprocal() const;  // throws std::domain_error when value() == 0
  Jet derivative(int slot) const;
  Jet truncated(int new_order) const;

  double max_abs_coeff() const;

 private:
  int dim_;
  int order_;
  std::vector<double> coeffs_;

  static void unify(const Jet& a, const Jet& b, Jet& ua, Jet& ub);
  Jet shaped(int dim, int order) const;
};

}  // namespace ambientlab
