#include "ambientlab/analytic.hpp"
#include "ambientlab/jet.hpp"

#include "test_util.hpp"

#include <doctest.h>

#include <cmath>

using namespace ambientlab;

namespace {

double nth_exact_derivative(const Expr& e, const std::vector<VarId>& vars,
                            std::span<const int> alpha, const std::map<VarId, double>& point) {
  Expr d = e;
  for (size_t k = 0; k < vars.size(); ++k)
    for (int i = 0; i < alpha[k]; ++i) d = d.derivative(vars[k]);
  return d.evaluate_double(point);
}

}  // namespace

TEST_CASE("jet of a polynomial: x^3 at x=2, order 3") {
  const VarId x1 = SymbolTable::intern("x1");
  Expr e = Expr::variable(x1).pow_int(3);
  Jet j = e.jet_at(std::array{x1}, std::array{2.0}, 3);
  // Monomial-coefficient convention: (2+d)^3 = 8 + 12 d + 6 d^2 + d^3.
  CHECK(j.coeff(std::array{0}) == doctest::Approx(8.0));
  CHECK(j.coeff(std::array{1}) == doctest::Approx(12.0));
  CHECK(j.coeff(std::array{2}) == doctest::Approx(6.0));
  CHECK(j.coeff(std::array{3}) == doctest::Approx(1.0));
}

TEST_CASE("jet of sin at 0, order 2") {
  AtomRegistry::register_builtins();
  Expr s = Expr::atom(AtomRegistry::find("sin"));
  const VarId x1 = SymbolTable::intern("x1");
  Jet j = jet_evaluate(s, std::array{x1}, std::array{0.0}, 2);
  CHECK(j.coeff(std::array{0}) == doctest::Approx(0.0));
  CHECK(j.coeff(std::array{1}) == doctest::Approx(1.0));
  CHECK(j.coeff(std::array{2}) == doctest::Approx(0.0));
}

TEST_CASE("order beyond registration is an error") {
  AtomRegistry::register_builtins();
  Expr s = Expr::atom(AtomRegistry::find("sin"));
  const VarId x1 = SymbolTable::intern("x1");
  CHECK_THROWS_AS(jet_evaluate(s, std::array{x1}, std::array{0.0}, 65), std::domain_error);
}

TEST_CASE("jet coefficients match exact derivatives divided by factorials") {
  std::vector<VarId> vars{SymbolTable::intern("x1"), SymbolTable::intern("x2")};
  std::mt19937_64 rng(99);
  for (int trial = 0; trial < 20; ++trial) {
    Expr e = testutil::random_polynomial(rng, vars, 4, 5);
    const std::array<double, 2> point{0.5, -1.25};
    const std::map<VarId, double> pmap{{vars[0], point[0]}, {vars[1], point[1]}};
    const int order = 3;
    Jet j = e.jet_at(vars, point, order);
    const auto& mis = MultiIndexSet::get(2, order);
    for (int i = 0; i < mis.size(); ++i) {
      auto alpha = mis.alpha(i);
      double fact = 1;
      for (int a : alpha)
        for (int k = 2; k <= a; ++k) fact *= k;
      const double expected = nth_exact_derivative(e, vars, alpha, pmap) / fact;
      const double got = j.coeff(alpha);
      const double scale = std::max({1.0, std::abs(expected), std::abs(got)});
      REQUIRE(std::abs(got - expected) / scale < 1e-12);
    }
  }
}

TEST_CASE("jet arithmetic: reciprocal and derivative") {
  const int dim = 2, order = 4;
  Jet x = Jet::coordinate(dim, order, 0, 2.0);
  Jet y = Jet::coordinate(dim, order, 1, 0.5);
  Jet f = x * x + y;  // value 4.5
  Jet r = f.reciprocal();
  Jet check = f * r;
  CHECK(check.coeff(std::array{0, 0}) == doctest::Approx(1.0));
  CHECK(std::abs(check.coeff(std::array{1, 0})) < 1e-14);
  CHECK(std::abs(check.coeff(std::array{2, 1})) < 1e-14);

  Jet df = f.derivative(0);  // 2x -> value 4, slope 2
  CHECK(df.value() == doctest::Approx(4.0));
  CHECK(df.coeff(std::array{1, 0}) == doctest::Approx(2.0));

  Jet zero = Jet::constant(dim, order, 0.0);
  CHECK_THROWS_AS(zero.reciprocal(), std::domain_error);
}

TEST_CASE("shapeless constants mix with shaped jets") {
  Jet c(3.0);
  Jet x = Jet::coordinate(1, 2, 0, 1.0);
  Jet s = c * x + Jet(1.0);
  CHECK(s.value() == doctest::Approx(4.0));
  CHECK(s.coeff(std::array{1}) == doctest::Approx(3.0));
}
