#include "ambientlab/curvature.hpp"
#include "ambientlab/jet_geometry.hpp"
#include "ambientlab/ppwave.hpp"

#include "test_util.hpp"

#include <doctest.h>

#include <cmath>

using namespace ambientlab;

namespace {

MetricField euclidean(int n) {
  MetricField m;
  for (int i = 1; i <= n; ++i) m.coords.push_back(SymbolTable::intern("x" + std::to_string(i)));
  m.components = ExprMatrix(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) m.components(i, j) = Expr(i == j ? 1 : 0);
  for (VarId v : m.coords) m.base_point[v] = Rational(0);
  return m;
}

bool all_zero(const TensorComponents<Expr>& t) {
  return t.all_of([](const Expr& e) { return e.is_zero(); });
}

}  // namespace

TEST_CASE("flat metric: everything vanishes") {
  auto curv = exact_curvature(euclidean(4));
  CHECK(all_zero(curv.christoffel()));
  CHECK(all_zero(curv.riemann()));
  CHECK(all_zero(curv.ricci()));
  CHECK(curv.scalar_curvature().is_zero());
  const auto& suite = curv.conformal_suite();
  CHECK(all_zero(suite.schouten));
  CHECK(all_zero(*suite.weyl));
  CHECK(all_zero(suite.cotton));
  CHECK(all_zero(*suite.bach));
}

TEST_CASE("pp-wave Christoffel symbols by hand") {
  // h = x1^2, n = 4: the only nonzero symbols are
  // Gamma^i_{uu} = -d_i h, Gamma^r_{iu} = d_i h, Gamma^r_{uu} = d_u h.
  PPWaveProfile p{4, {}};
  const auto xs = p.transverse();
  p.h = Expr::variable(xs[0]).pow_int(2);
  auto curv = exact_curvature(pp_metric(p));
  const auto& gamma = curv.christoffel();
  const int iu = 2, ir = 3;
  const Expr two_x1 = Expr(2) * Expr::variable(xs[0]);
  CHECK(exact_equals(gamma.get(0, iu, iu), -two_x1));
  CHECK(exact_equals(gamma.get(ir, 0, iu), two_x1));
  CHECK(gamma.get(ir, iu, iu).is_zero());  // h has no u-dependence
  int nonzero = 0;
  gamma.for_each_canonical([&](std::span<const int>, const Expr& v) {
    if (!v.is_zero()) ++nonzero;
  });
  CHECK(nonzero == 2);
}

TEST_CASE("metricity, Riemann symmetries, Bianchi identities") {
  std::mt19937_64 rng(4242);
  for (int n : {4, 5}) {
    PPWaveProfile p{n, testutil::random_profile(rng, n)};
    auto curv = exact_curvature(pp_metric(p));
    CHECK(metricity_holds(curv));
    CHECK(verify_riemann_symmetries(curv).all());

    // Contracted second Bianchi: div Ric = d(scal)/2.
    auto ric = curv.ricci();
    auto dric = curv.covariant_derivative(ric);
    const auto& gi = curv.ginv();
    for (int b = 0; b < n; ++b) {
      Expr div;
      for (int a = 0; a < n; ++a)
        for (int c = 0; c < n; ++c) div += gi(a, c) * dric.get(a, b, c);
      Expr rhs =
          Rational(1, 2) * curv.scalar_curvature().derivative(p.coords()[static_cast<size_t>(b)]);
      CHECK(exact_equals(div, rhs));
    }
  }
}

TEST_CASE("trace-free properties of the conformal suite") {
  std::mt19937_64 rng(777);
  PPWaveProfile p{5, testutil::random_profile(rng, 5)};
  auto curv = exact_curvature(pp_metric(p));
  const int n = 5;
  auto& suite = curv.conformal_suite();
  const auto& gi = curv.ginv();

  for (int c = 0; c < n; ++c)
    for (int d = 0; d < n; ++d) {
      Expr tr13, tr12;
      for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) {
          tr13 += gi(a, b) * suite.weyl->get(a, c, b, d);
          tr12 += gi(a, b) * suite.weyl->get(a, b, c, d);
        }
      CHECK(tr13.is_zero());
      CHECK(tr12.is_zero());
    }
  for (int c = 0; c < n; ++c) {
    Expr tr;
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b) tr += gi(a, b) * suite.cotton.get(a, b, c);
    CHECK(tr.is_zero());
  }
  Expr trB;
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) trB += gi(a, b) * suite.bach->get(a, b);
  CHECK(trB.is_zero());
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) CHECK(exact_equals(suite.bach->get(a, b), suite.bach->get(b, a)));
}

TEST_CASE("covariant derivative: gradient and Leibniz rule") {
  std::mt19937_64 rng(31337);
  PPWaveProfile p{4, testutil::random_profile(rng, 4)};
  auto curv = exact_curvature(pp_metric(p));
  const int n = 4;
  const auto coords = p.coords();

  Expr f = testutil::random_polynomial(rng, coords, 3, 4);
  auto ft = TensorComponents<Expr>::dense(n, 0);
  ft.at(std::span<const int>{}) = f;
  auto df = curv.covariant_derivative(ft);
  for (int c = 0; c < n; ++c)
    CHECK(exact_equals(df.get(c), f.derivative(coords[static_cast<size_t>(c)])));

  std::vector<Expr> alpha, beta;
  for (int i = 0; i < n; ++i) {
    alpha.push_back(testutil::random_polynomial(rng, coords, 2, 3));
    beta.push_back(testutil::random_polynomial(rng, coords, 2, 3));
  }
  auto at = TensorComponents<Expr>::dense(n, 1);
  auto bt = TensorComponents<Expr>::dense(n, 1);
  auto prod = TensorComponents<Expr>::dense(n, 2);
  for (int i = 0; i < n; ++i) {
    at.at(i) = alpha[static_cast<size_t>(i)];
    bt.at(i) = beta[static_cast<size_t>(i)];
  }
  prod.for_each_canonical([&](std::span<const int> idx, Expr& v) {
    v = alpha[static_cast<size_t>(idx[0])] * beta[static_cast<size_t>(idx[1])];
  });
  auto da = curv.covariant_derivative(at);
  auto db = curv.covariant_derivative(bt);
  auto dprod = curv.covariant_derivative(prod);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int c = 0; c < n; ++c) {
        Expr leibniz = da.get(i, c) * beta[static_cast<size_t>(j)] +
                       alpha[static_cast<size_t>(i)] * db.get(j, c);
        CHECK(exact_equals(dprod.get(i, j, c), leibniz));
      }
}

TEST_CASE("conformal rescaling") {
  std::mt19937_64 rng(2025);
  SUBCASE("factor 1 is the identity") {
    MetricField m = euclidean(4);
    MetricField r = conformal_rescale_sq(m, Expr(1));
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) CHECK(exact_equals(r.components(i, j), m.components(i, j)));
  }
  SUBCASE("Weyl of a rescaled flat metric vanishes") {
    MetricField m = euclidean(4);
    const VarId u = SymbolTable::intern("u");
    m.coords[3] = u;  // swap in a coordinate the factor can depend on
    Expr omega_sq = Expr(4) * Expr::variable(u) * Expr::variable(u);
    m.base_point[u] = Rational(1);
    MetricField r = conformal_rescale_sq(m, omega_sq);
    auto curv = exact_curvature(r);
    CHECK(all_zero(*curv.conformal_suite().weyl));
  }
  SUBCASE("lower-index Weyl is conformally covariant: W(O^2 g) = O^2 W(g)") {
    PPWaveProfile p{4, testutil::random_profile(rng, 4)};
    MetricField m = pp_metric(p);
    const VarId u = p.u_var();
    // A monomial factor keeps the determinant a monomial, so the exact tier
    // applies; the base point moves off u = 0.
    Expr omega_sq = Rational(9, 4) * Expr::variable(u) * Expr::variable(u);
    m.base_point[u] = Rational(1);
    MetricField resc = conformal_rescale_sq(m, omega_sq);
    auto curv_g = exact_curvature(m);
    auto curv_r = exact_curvature(resc);
    auto& w_g = *curv_g.conformal_suite().weyl;
    const auto& w_r = *curv_r.conformal_suite().weyl;
    bool equal = true;
    w_r.for_each_canonical([&](std::span<const int> idx, const Expr& v) {
      if (!(v == omega_sq * w_g.get(idx))) equal = false;
    });
    CHECK(equal);
  }
}

TEST_CASE("numeric tier reproduces the round-sphere oracle") {
  // g = dtheta^2 + sin^2(theta) dphi^2 at (theta0, phi0):
  // Gamma^theta_{phi phi} = -sin cos, Gamma^phi_{theta phi} = cot,
  // R_{theta phi theta phi} = sin^2, Ric = g, scal = 2.
  const double theta0 = 0.7;
  const int order = 3;
  Jet theta = Jet::coordinate(2, order, 0, theta0);
  Jet sin_t = Jet::constant(2, order, 0.0);
  {
    Jet delta = theta - Jet::constant(2, order, theta0);
    Jet power = Jet::constant(2, order, 1.0);
    double fact = 1;
    const double derivs[4] = {std::sin(theta0), std::cos(theta0), -std::sin(theta0),
                              -std::cos(theta0)};
    for (int k = 0; k <= order; ++k) {
      if (k > 0) {
        power = power * delta;
        fact *= k;
      }
      sin_t = sin_t + Jet::constant(2, order, derivs[k] / fact) * power;
    }
  }
  MatrixX<Jet> g(2, 2);
  g(0, 0) = Jet::constant(2, order, 1.0);
  g(0, 1) = Jet::constant(2, order, 0.0);
  g(1, 0) = g(0, 1);
  g(1, 1) = sin_t * sin_t;

  JetCurvature curv(JetRing{2}, g);
  const double s = std::sin(theta0), c = std::cos(theta0);
  CHECK(curv.christoffel().get(0, 1, 1).value() == doctest::Approx(-s * c));
  CHECK(curv.christoffel().get(1, 0, 1).value() == doctest::Approx(c / s));
  CHECK(curv.riemann().get(0, 1, 0, 1).value() == doctest::Approx(s * s));
  CHECK(curv.ricci().get(0, 0).value() == doctest::Approx(1.0));
  CHECK(curv.scalar_curvature().value() == doctest::Approx(2.0));
}

TEST_CASE("jet tier agrees with the exact engine on a pp-wave") {
  std::mt19937_64 rng(11);
  PPWaveProfile p{4, testutil::random_profile(rng, 4)};
  MetricField m = pp_metric(p);
  const std::map<VarId, double> point{{p.transverse()[0], 0.3},
                                      {p.transverse()[1], -0.7},
                                      {p.u_var(), 0.25},
                                      {p.r_var(), 1.1}};
  auto exact = exact_curvature(m);
  auto jets = jet_curvature_at(m, point, 3);
  const auto& ric_exact = exact.ricci();
  const auto& ric_jet = jets.ricci();
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b) {
      const double ev = ric_exact.get(a, b).evaluate_double(point);
      CHECK(ric_jet.get(a, b).value() == doctest::Approx(ev).epsilon(1e-10));
    }
}

TEST_CASE("exact tier rejects a non-monomial determinant") {
  MetricField m = euclidean(2);
  const VarId x1 = m.coords[0];
  m.components(0, 0) = Expr(1) + Expr::variable(x1) * Expr::variable(x1);
  auto curv = exact_curvature(m);
  CHECK_THROWS_AS(curv.ginv(), std::domain_error);
}
