#pragma once

#include "ambientlab/rational.hpp"

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace ambientlab {

class AnalyticAtom;
class Jet;

using VarId = int32_t;

// Process-wide interner for coordinate names. Ids are assigned in first-use
// order; monomial comparisons use ids, printing uses names.
class SymbolTable {
 public:
  static VarId intern(std::string_view name);
  static std::optional<VarId> lookup(std::string_view name);
  static const std::string& name(VarId id);
};

// Product of variable powers. Exponents are nonzero integers and may be
// negative: the ring is a Laurent ring, which is what keeps the inverse of
// the ambient metric (denominator t^{2n+2}) and the Poincare prefactor x^-2
// inside the exact tier.
struct Monomial {
  std::vector<std::pair<VarId, int32_t>> powers;  // sorted by VarId, exponent != 0

  static Monomial one() { return {}; }
  static Monomial var(VarId v, int32_t e = 1);

  bool is_one() const { return powers.empty(); }
  int64_t total_degree() const;
  int32_t exponent_of(VarId v) const;
  bool has_negative_exponent() const;

  Monomial times(const Monomial& rhs) const;
  Monomial inverse() const;  // negate all exponents
  Monomial pow(int32_t k) const;

  // Graded lexicographic: total degree first, ties broken by exponent vector.
  static int compare(const Monomial& a, const Monomial& b);
  bool operator==(const Monomial& rhs) const { return powers == rhs.powers; }
};

// Immutable exact scalar: either a canonical sparse multivariate Laurent
// polynomial with rational coefficients, or an opaque analytic atom carrying
// a registered jet evaluator. Exact-tier operations reject atoms explicitly.
//
// Canonical form: terms sorted descending in graded-lex order, no zero
// coefficients, no zero exponents. Construction always normalizes, so
// normalization is idempotent and equality is structural.
class Expr {
 public:
  using Term = std::pair<Monomial, Rational>;

  Expr() = default;  // zero
  Expr(int v) : Expr(Rational(v)) {}
  Expr(const Rational& v);

  static Expr variable(VarId v);
  static Expr variable(std::string_view name);
  static Expr monomial(Rational coeff, Monomial m);
  static Expr from_terms(std::vector<Term> terms);  // normalizes
  static Expr atom(std::shared_ptr<const AnalyticAtom> a);

  bool is_atom() const { return atom_ != nullptr; }
  bool is_polynomial() const { return atom_ == nullptr; }
  bool is_zero() const { return !is_atom() && terms_.empty(); }
  bool is_rational_constant() const;
  Rational rational_value() const;  // requires is_rational_constant()
  bool is_monomial() const { return is_polynomial() && terms_.size() == 1; }
  const Term& single_term() const { return terms_.front(); }
  bool has_negative_exponent() const;
  bool depends_on(VarId v) const;
  const std::vector<Term>& terms() const;  // throws on atom
  const std::shared_ptr<const AnalyticAtom>& atom_node() const { return atom_; }

  Expr operator-() const;
  Expr& operator+=(const Expr& rhs);
  Expr& operator-=(const Expr& rhs);
  Expr& operator*=(const Expr& rhs);
  friend Expr operator+(Expr a, const Expr& b) { return a += b; }
  friend Expr operator-(Expr a, const Expr& b) { return a -= b; }
  friend Expr operator*(const Expr& a, const Expr& b);
  friend Expr operator*(const Rational& c, const Expr& e);
  Expr divided_by(const Rational& c) const;
  // Exact division by c * m; always exact in the Laurent ring.
  Expr divided_by_monomial(const Rational& c, const Monomial& m) const;
  Expr pow_int(int32_t k) const;  // k >= 0, or any k when *this is a monomial

  // Structural equality. Atoms compare by node identity.
  friend bool operator==(const Expr& a, const Expr& b);
  friend bool operator!=(const Expr& a, const Expr& b) { return !(a == b); }

  Expr derivative(VarId v) const;  // throws std::domain_error on atom
  Expr substituted(VarId v, const Expr& replacement) const;
  Rational evaluate(const std::map<VarId, Rational>& point) const;
  double evaluate_double(const std::map<VarId, double>& point) const;
  Jet jet_at(std::span<const VarId> vars, std::span<const double> point, int order) const;

  // Collects terms containing v^power and strips that factor.
  Expr coefficient_of(VarId v, int32_t power) const;
  int32_t max_power(VarId v) const;  // 0 for expressions free of v
  int32_t min_power(VarId v) const;

  std::string str() const;
  std::string latex() const;

 private:
  std::vector<Term> terms_;
  std::shared_ptr<const AnalyticAtom> atom_;

  void require_polynomial(const char* op) const;
};

// Spec-facing comparison: exact, no tolerance; throws std::domain_error if
// either side contains an analytic atom (comparison undecidable).
bool exact_equals(const Expr& a, const Expr& b);

Expr differentiate(const Expr& e, VarId v);
Expr laplacian(const Expr& e, std::span<const VarId> transverse);
Expr laplacian_power(const Expr& e, int k, std::span<const VarId> transverse);

// Syntax error with byte position, raised by parse_expression.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& message, size_t position);
  size_t position() const { return position_; }

 private:
  size_t position_;
};

// Grammar:
//   expr     := term (("+"|"-") term)*
//   term     := factor ("*" factor)*
//   factor   := base ("^" uint)?
//   base     := rational | ident | "(" expr ")"
//   rational := int ("/" uint)?
// Identifiers must appear in `context`; anything else is an error.
Expr parse_expression(std::string_view text, std::span<const VarId> context);

}  // namespace ambientlab
