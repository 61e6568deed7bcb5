#include "ambientlab/curvature.hpp"
#include "ambientlab/ppwave.hpp"
#include "ambientlab/sampling.hpp"

#include "test_util.hpp"

#include <doctest.h>

using namespace ambientlab;

namespace {

bool tensors_equal(const TensorComponents<Expr>& a, const TensorComponents<Expr>& b) {
  if (a.dim() != b.dim() || a.rank() != b.rank()) return false;
  std::vector<int> idx(static_cast<size_t>(a.rank()), 0);
  while (true) {
    if (!(a.get(idx) == b.get(idx))) return false;
    int r = a.rank() - 1;
    while (r >= 0 && ++idx[static_cast<size_t>(r)] == a.dim()) idx[static_cast<size_t>(r--)] = 0;
    if (r < 0) return true;
  }
}

}  // namespace

TEST_CASE("pp_metric block structure") {
  PPWaveProfile p{4, {}};
  const auto xs = p.transverse();
  p.h = Expr::variable(xs[0]).pow_int(4) + Expr::variable(xs[1]).pow_int(4);
  MetricField m = pp_metric(p);
  CHECK(m.dim() == 4);
  CHECK(exact_equals(m.components(0, 0), Expr(1)));
  CHECK(exact_equals(m.components(2, 2), Expr(2) * p.h));
  CHECK(exact_equals(m.components(2, 3), Expr(1)));
  CHECK(m.components(0, 2).is_zero());
  SUBCASE("Lorentzian signature (1, n-1) at the base point") {
    auto sig = m.signature();
    CHECK(sig.minus == 1);
    CHECK(sig.plus == 3);
  }
  SUBCASE("determinant is exactly -1") {
    CHECK(exact_equals(m.determinant(), Expr(-1)));
  }
}

TEST_CASE("determinant is -1 for random profiles in several dimensions") {
  std::mt19937_64 rng(555);
  for (int n : {4, 5, 6}) {
    PPWaveProfile p{n, testutil::random_profile(rng, n)};
    CHECK(exact_equals(pp_metric(p).determinant(), Expr(-1)));
  }
}

TEST_CASE("flat profile gives flat space") {
  PPWaveProfile p{4, Expr(0)};
  auto curv = exact_curvature(pp_metric(p));
  CHECK(curv.riemann().all_of([](const Expr& e) { return e.is_zero(); }));
}

TEST_CASE("closed forms match the generic engine exactly") {
  std::mt19937_64 rng(90210);
  for (int n : {4, 5, 6}) {
    for (int trial = 0; trial < 2; ++trial) {
      PPWaveProfile p{n, testutil::random_profile(rng, n)};
      auto closed = pp_closed_forms(p);
      auto curv = exact_curvature(pp_metric(p));
      const auto& suite = curv.conformal_suite();
      REQUIRE(tensors_equal(closed.ricci, curv.ricci()));
      REQUIRE(curv.scalar_curvature().is_zero());
      REQUIRE(tensors_equal(closed.schouten, suite.schouten));
      REQUIRE(tensors_equal(closed.cotton, suite.cotton));
      REQUIRE(tensors_equal(*closed.weyl, *suite.weyl));
      REQUIRE(tensors_equal(*closed.bach, *suite.bach));
    }
  }
}

TEST_CASE("closed-form values on named examples") {
  SUBCASE("h = x1^2 + x2^2, n=4: Ric = -4 du^2 and W = 0") {
    PPWaveProfile p{4, {}};
    const auto xs = p.transverse();
    p.h = Expr::variable(xs[0]).pow_int(2) + Expr::variable(xs[1]).pow_int(2);
    auto closed = pp_closed_forms(p);
    CHECK(exact_equals(closed.ric_uu, Expr(-4)));
    CHECK(closed.weyl->all_of([](const Expr& e) { return e.is_zero(); }));
  }
  SUBCASE("h = sum x_i^4: B = -24 du^2 independent of n") {
    for (int n : {4, 5, 6}) {
      PPWaveProfile p{n, {}};
      for (VarId x : p.transverse()) p.h += Expr::variable(x).pow_int(4);
      auto closed = pp_closed_forms(p);
      // lap^2 h = 24(n-2), so B_uu = -24(n-2)/(n-2) = -24 at every point.
      CHECK(exact_equals(closed.bach_uu, Expr(-24)));
    }
  }
  SUBCASE("h = 0: everything zero") {
    PPWaveProfile p{5, Expr(0)};
    auto closed = pp_closed_forms(p);
    CHECK(closed.ric_uu.is_zero());
    CHECK(closed.bach_uu.is_zero());
    CHECK(closed.weyl->all_of([](const Expr& e) { return e.is_zero(); }));
  }
}

TEST_CASE("conformal flatness criterion") {
  SUBCASE("quadratic isotropic profile is conformally flat") {
    PPWaveProfile p{4, {}};
    for (VarId x : p.transverse()) p.h += Expr(3) * Expr::variable(x).pow_int(2);
    CHECK(is_conformally_flat(p).flat);
  }
  SUBCASE("n=3 cubic profile: witness is d(lap h) = 6") {
    PPWaveProfile p{3, {}};
    p.h = Expr::variable(p.transverse()[0]).pow_int(3);
    auto verdict = is_conformally_flat(p);
    CHECK_FALSE(verdict.flat);
    CHECK(exact_equals(verdict.witness_expr, Expr(6)));
  }
  SUBCASE("quartic profile is not conformally flat") {
    PPWaveProfile p{4, {}};
    for (VarId x : p.transverse()) p.h += Expr::variable(x).pow_int(4);
    CHECK_FALSE(is_conformally_flat(p).flat);
  }
}

TEST_CASE("pp-wave curvature characterizations") {
  SamplePointGen gen(42);
  SUBCASE("quartic profile passes all three conditions") {
    PPWaveProfile p{4, {}};
    for (VarId x : p.transverse()) p.h += Expr::variable(x).pow_int(4);
    std::vector<std::map<VarId, Rational>> pts;
    for (int i = 0; i < 5; ++i) pts.push_back(gen.point(p.coords()));
    auto report = verify_pp_characterizations(p, pts);
    CHECK(report.all_passed());
    CHECK(report.points_with_full_image > 0);
  }
  SUBCASE("flat profile: containment holds with empty image") {
    PPWaveProfile p{4, Expr(0)};
    auto report = verify_pp_characterizations(p, {});
    CHECK(report.all_passed());
    CHECK(report.points_with_full_image == 0);
  }
}

TEST_CASE("Ricci is totally null and Einstein iff lap h = 0") {
  std::mt19937_64 rng(123);
  PPWaveProfile p{5, testutil::random_profile(rng, 5)};
  MetricField m = pp_metric(p);
  auto curv = exact_curvature(m);
  const auto& ric = curv.ricci();
  const auto& gi = curv.ginv();
  const int n = 5;
  // g^{ab} Ric_ab = 0 and Ric_ab Ric^{ab} = 0.
  Expr tr, sq;
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      tr += gi(a, b) * ric.get(a, b);
      for (int c = 0; c < n; ++c)
        for (int d = 0; d < n; ++d)
          sq += gi(a, c) * gi(b, d) * ric.get(a, b) * ric.get(c, d);
    }
  CHECK(tr.is_zero());
  CHECK(sq.is_zero());

  SUBCASE("harmonic profile is Ricci-flat") {
    PPWaveProfile q{4, {}};
    const auto xs = q.transverse();
    q.h = Expr::variable(xs[0]).pow_int(2) - Expr::variable(xs[1]).pow_int(2);
    CHECK(is_ricci_flat(q));
    auto c2 = exact_curvature(pp_metric(q));
    CHECK(c2.ricci().all_of([](const Expr& e) { return e.is_zero(); }));
  }
  SUBCASE("non-harmonic profile is not Einstein") {
    CHECK(is_ricci_flat(p) == p.laplacian_h().is_zero());
  }
}

TEST_CASE("profile validation") {
  PPWaveProfile bad{2, Expr(0)};
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
  PPWaveProfile wrong_var{4, Expr::variable("r")};
  CHECK_THROWS_AS(wrong_var.validate(), std::invalid_argument);
}
