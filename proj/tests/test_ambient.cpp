#include "ambientlab/ambient.hpp"
#include "ambientlab/analytic.hpp"
#include "ambientlab/curvature.hpp"

#include "test_util.hpp"

#include <doctest.h>

#include <cmath>

using namespace ambientlab;

namespace {

PPWaveProfile profile_from(int n, const char* text) {
  PPWaveProfile p{n, {}};
  auto vars = p.transverse();
  vars.push_back(p.u_var());
  p.h = parse_expression(text, vars);
  return p;
}

}  // namespace

TEST_CASE("pk products") {
  CHECK(pk(5, 3) == Rational(3));    // (-3)(-1)(1)
  CHECK(pk(4, 2) == Rational(0));    // (-2)(0)
  CHECK(pk(3, 1) == Rational(-1));
  CHECK_THROWS_AS(pk(4, 0), std::invalid_argument);
}

TEST_CASE("series recursion: named examples") {
  SUBCASE("n=4, h = x1^3 + x1 x2^2") {
    auto p = profile_from(4, "x1^3 + x1*x2^2");
    AmbientSeries s = build_series(p, 8);
    REQUIRE(s.coeffs.size() == 1);  // truncates at s-1 = 1
    auto vars = p.transverse();
    CHECK(exact_equals(s.coeffs[0], parse_expression("-4*x1", vars)));
    REQUIRE(s.even_obstructed.has_value());
    CHECK(s.even_obstructed->is_zero());
    CHECK_FALSE(s.obstructed());
  }
  SUBCASE("n=5, h = x1^4: -4 x1^2, 4, 0") {
    auto p = profile_from(5, "x1^4");
    AmbientSeries s = build_series(p, 8);
    REQUIRE(s.coeffs.size() == 3);
    auto vars = p.transverse();
    CHECK(exact_equals(s.coeffs[0], parse_expression("-4*x1^2", vars)));
    CHECK(exact_equals(s.coeffs[1], Expr(4)));
    CHECK(s.coeffs[2].is_zero());
  }
  SUBCASE("harmonic profile: all coefficients vanish") {
    auto p = profile_from(4, "x1^2 - x2^2");
    AmbientSeries s = build_series(p, 4);
    CHECK(s.H().is_zero());
  }
}

TEST_CASE("recursion equals the closed form lap^k h / (k! p_k)") {
  std::mt19937_64 rng(808);
  for (int n : {5, 7}) {
    PPWaveProfile p{n, testutil::random_profile(rng, n)};
    AmbientSeries s = build_series(p, 5);
    const auto xs = p.transverse();
    for (size_t k = 0; k < s.coeffs.size(); ++k) {
      const int kk = static_cast<int>(k) + 1;
      Expr closed = laplacian_power(p.h, kk, xs)
                        .divided_by(factorial(static_cast<unsigned>(kk)) * pk(n, kk));
      REQUIRE(exact_equals(s.coeffs[k], closed));
    }
  }
}

TEST_CASE("obstruction tensor") {
  SUBCASE("n=4 quartic: 48 du^2 = 24(n-2) du^2") {
    auto p = profile_from(4, "x1^4 + x2^4");
    CHECK(exact_equals(obstruction_uu(p), Expr(48)));
    auto o = obstruction(p);
    CHECK(exact_equals(o.get(2, 2), Expr(48)));
    CHECK(o.get(0, 0).is_zero());
  }
  SUBCASE("n=6, h=x1^4: lap^3 h = 0") {
    auto p = profile_from(6, "x1^4");
    CHECK(obstruction_uu(p).is_zero());
  }
  SUBCASE("odd dimension is an error") {
    auto p = profile_from(5, "x1^4");
    CHECK_THROWS_AS(obstruction_uu(p), std::domain_error);
  }
  SUBCASE("obstruction equals -(n-2) B with B from the engine") {
    auto p = profile_from(4, "x1^4 + x2^4");
    auto curv = exact_curvature(pp_metric(p));
    const auto& bach = *curv.conformal_suite().bach;
    Expr expect = Rational(-(p.n - 2)) * bach.get(2, 2);
    CHECK(exact_equals(obstruction_uu(p), expect));
  }
}

TEST_CASE("ambient metric structure and signature") {
  auto p = profile_from(4, "x1^3 + x1*x2^2");
  AmbientSeries s = build_series(p, 8);
  MetricField m = ambient_metric(s);
  CHECK(m.dim() == 6);
  // g_uu block: 2 t^2 (h - 4 x1 rho)
  std::vector<VarId> vars{AmbientSeries::rho_var(), p.transverse()[0], p.transverse()[1],
                          p.u_var(), AmbientSeries::t_var()};
  Expr expect = parse_expression("2*t^2*(x1^3 + x1*x2^2 - 4*x1*rho)", vars);
  CHECK(exact_equals(m.components(3, 3), expect));
  auto sig = m.signature();
  CHECK(sig.minus == 2);
  CHECK(sig.plus == 4);
}

TEST_CASE("lemma residual for explicit H") {
  auto p = profile_from(4, "x1^4");
  SUBCASE("H = 0") {
    CHECK(exact_equals(lemma_ricci_residual(p, Expr(0)), -p.laplacian_h()));
  }
  SUBCASE("H = rho x1^2") {
    std::vector<VarId> vars{AmbientSeries::rho_var(), p.transverse()[0]};
    Expr H = parse_expression("rho*x1^2", vars);
    Expr expect = parse_expression("-2*x1^2 - 2*rho", vars) - p.laplacian_h();
    CHECK(exact_equals(lemma_ricci_residual(p, H), expect));
  }
}

TEST_CASE("engine Ricci of ambient ansatz equals the lemma residual for random H") {
  std::mt19937_64 rng(1618);
  for (int trial = 0; trial < 3; ++trial) {
    const int n = trial % 2 == 0 ? 4 : 5;
    PPWaveProfile p{n, testutil::random_profile(rng, n)};
    std::vector<VarId> hvars = p.transverse();
    hvars.push_back(p.u_var());
    hvars.push_back(AmbientSeries::rho_var());
    Expr H = testutil::random_polynomial(rng, hvars, 3, 4);
    MetricField m = ambient_metric_with(p, H);
    auto curv = exact_curvature(m);
    const auto& ric = curv.ricci();
    const int iu = n - 1;
    bool only_uu = true;
    for (int a = 0; a < m.dim(); ++a)
      for (int b = 0; b < m.dim(); ++b)
        if ((a != iu || b != iu) && !ric.get(a, b).is_zero()) only_uu = false;
    REQUIRE(only_uu);
    REQUIRE(exact_equals(ric.get(iu, iu), lemma_ricci_residual(p, H)));
  }
}

TEST_CASE("Theorem-1 series makes the ambient metric exactly Ricci-flat") {
  SUBCASE("n=4 Bach-flat cubic") {
    auto p = profile_from(4, "x1^3 + x1*x2^2");
    auto report = verify_ambient_ricci_flat(build_series(p, 8));
    CHECK(report.only_uu_nonzero);
    CHECK(report.matches_lemma_residual);
    CHECK(report.identically_zero);
  }
  SUBCASE("n=6, h=x1^4, series length 2") {
    auto p = profile_from(6, "x1^4");
    AmbientSeries s = build_series(p, 8);
    REQUIRE(s.coeffs.size() == 2);
    auto report = verify_ambient_ricci_flat(s);
    CHECK(report.identically_zero);
  }
  SUBCASE("n=5, h=x1^4, terminating series") {
    auto p = profile_from(5, "x1^4");
    auto report = verify_ambient_ricci_flat(build_series(p, 8));
    CHECK(report.identically_zero);
  }
  SUBCASE("h=0 gives the flat ambient metric") {
    PPWaveProfile p{4, Expr(0)};
    auto report = verify_ambient_ricci_flat(build_series(p, 2));
    CHECK(report.identically_zero);
  }
  SUBCASE("obstructed n=4 quartic: residual is rho lap^2 h / 2") {
    auto p = profile_from(4, "x1^4");
    AmbientSeries s = build_series(p, 8);
    CHECK(s.obstructed());
    auto report = verify_ambient_ricci_flat(s);
    CHECK(report.only_uu_nonzero);
    CHECK(report.matches_lemma_residual);
    CHECK_FALSE(report.identically_zero);
    CHECK(report.vanishes_below_truncation);
    Expr expect = Rational(1, 2) * Expr::variable(AmbientSeries::rho_var()) * p.laplacian_h(2);
    CHECK(exact_equals(report.residual_uu, expect));
  }
  SUBCASE("odd-n truncated series vanishes through rho^{K-1}") {
    std::mt19937_64 rng(37);
    PPWaveProfile p{5, testutil::random_profile(rng, 5)};
    AmbientSeries s = build_series(p, 2);
    auto report = verify_ambient_ricci_flat(s);
    CHECK(report.only_uu_nonzero);
    CHECK(report.matches_lemma_residual);
    CHECK(report.vanishes_below_truncation);
  }
}

TEST_CASE("mu coefficients against the general expansion") {
  std::mt19937_64 rng(271828);
  // mu_k = 2 a_k du^2 is the rho^k coefficient of the du^2 block of the
  // bracketed family; mu_1 = 2P and (n-4) mu_2 = -B + (n-4) P.P as tensors.
  for (int n : {5, 6}) {
    PPWaveProfile p{n, testutil::random_profile(rng, n)};
    AmbientSeries s = build_series(p, 4);
    auto curv = exact_curvature(pp_metric(p));
    const auto& suite = curv.conformal_suite();
    const Expr mu1_uu = Expr(2) * s.coeffs[0];
    CHECK(exact_equals(mu1_uu, Expr(2) * suite.schouten.get(n - 2, n - 2)));
    if (s.coeffs.size() >= 2 && n != 4) {
      // P_a^c P_bc vanishes for pp-waves, so mu_2 = -B/(n-4).
      const Expr mu2_uu = Expr(2) * s.coeffs[1];
      Expr rhs = suite.bach->get(n - 2, n - 2).divided_by(Rational(-(n - 4)));
      CHECK(exact_equals(mu2_uu, rhs));
    }
  }
}

TEST_CASE("Poincare metric") {
  SUBCASE("h=0: exact Einstein, Ric + n g = 0") {
    PPWaveProfile p{4, Expr(0)};
    AmbientSeries s = build_series(p, 2);
    auto residual = poincare_einstein_residual(s);
    CHECK(residual.all_of([](const Expr& e) { return e.is_zero(); }));
  }
  SUBCASE("unobstructed n=4: exact Einstein") {
    auto p = profile_from(4, "x1^3 + x1*x2^2");
    AmbientSeries s = build_series(p, 8);
    auto residual = poincare_einstein_residual(s);
    CHECK(residual.all_of([](const Expr& e) { return e.is_zero(); }));
  }
  SUBCASE("n=5 terminating series: exact Einstein") {
    auto p = profile_from(5, "x1^4");
    AmbientSeries s = build_series(p, 8);
    auto residual = poincare_einstein_residual(s);
    CHECK(residual.all_of([](const Expr& e) { return e.is_zero(); }));
  }
  SUBCASE("prefactor structure of the determinant") {
    auto p = profile_from(4, "x1^3 + x1*x2^2");
    AmbientSeries s = build_series(p, 8);
    MetricField gp = poincare_metric(s);
    // det = x^{-2(n+1)} * det(dx^2 + g(-x^2)/2) = x^{-10} * (-1/16) for n=4.
    Expr det = gp.determinant();
    Expr expect = Expr::monomial(Rational(-1, 16), Monomial::var(AmbientSeries::x_var(), -10));
    CHECK(exact_equals(det, expect));
  }
}

TEST_CASE("volume coefficients all vanish") {
  for (const char* text : {"x1^4 + x2^4", "x1^3 + x1*x2^2", "0"}) {
    auto p = profile_from(4, text);
    AmbientSeries s = build_series(p, 4);
    auto v = volume_coefficients(s, 8);
    REQUIRE(v.size() == 9);
    CHECK(exact_equals(v[0], Expr(1)));
    for (size_t k = 1; k < v.size(); ++k) CHECK(v[k].is_zero());
  }
}

TEST_CASE("volume form of the bracketed family is rho-independent") {
  std::mt19937_64 rng(99);
  PPWaveProfile p{6, testutil::random_profile(rng, 6)};
  AmbientSeries s = build_series(p, 2);
  // det g(rho) literally equals det g(0): both are -1.
  MetricField m = ambient_metric(s);
  // Extract the bracketed family determinant through the full ambient one:
  // det(ambient) = -t^{2n+2} det... simpler: check via volume_coefficients.
  auto v = volume_coefficients(s, 6);
  for (size_t k = 1; k < v.size(); ++k) CHECK(v[k].is_zero());
}

TEST_CASE("partial sums of the odd-dimensional series") {
  AtomRegistry::register_builtins();
  SUBCASE("n=3, h=sin(x): decreasing tail at rho=0.1") {
    PPWaveProfile p{3, Expr::atom(AtomRegistry::find("sin"))};
    auto report = series_partial_sums(p, std::array{1.0}, 0.1, 12);
    REQUIRE(report.partial_sums.size() == 12);
    for (size_t k = 2; k < report.diffs.size(); ++k)
      CHECK(report.diffs[k] <= report.diffs[k - 1]);
    CHECK(report.diffs.back() < 1e-8);
  }
  SUBCASE("polynomial profile: sums constant after deg/2 terms") {
    auto p = profile_from(3, "x1^4");
    auto report = series_partial_sums(p, std::array{0.5}, 0.25, 8);
    for (size_t k = 2; k < report.partial_sums.size(); ++k)
      CHECK(report.partial_sums[k] == doctest::Approx(report.partial_sums[2]).epsilon(1e-14));
  }
  SUBCASE("rho = 0 gives H = 0") {
    auto p = profile_from(3, "x1^4");
    auto report = series_partial_sums(p, std::array{0.5}, 0.0, 5);
    for (double s_k : report.partial_sums) CHECK(s_k == doctest::Approx(0.0));
  }
  SUBCASE("even dimension is rejected") {
    auto p = profile_from(4, "x1^4");
    CHECK_THROWS_AS(series_partial_sums(p, std::array{0.5, 0.5}, 0.1, 5), std::domain_error);
  }
}
