#include "ambientlab/conformal.hpp"

#include "ambientlab/curvature.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace ambientlab {

namespace {

struct CExpr {
  Expr re, im;
  CExpr operator+(const CExpr& rhs) const { return {re + rhs.re, im + rhs.im}; }
  CExpr operator*(const CExpr& rhs) const {
    return {re * rhs.re - im * rhs.im, re * rhs.im + im * rhs.re};
  }
  CExpr conj() const { return {re, -im}; }
};

CExpr from_gaussian(const GaussianRational& g) { return {Expr(g.re), Expr(g.im)}; }

CExpr u_polynomial(const std::vector<GaussianRational>& coeffs, const Expr& u) {
  CExpr sum{Expr(0), Expr(0)};
  Expr power(1);
  for (size_t j = 0; j < coeffs.size(); ++j) {
    if (j > 0) power *= u;
    CExpr c = from_gaussian(coeffs[j]);
    sum = sum + CExpr{c.re * power, c.im * power};
  }
  return sum;
}

// sum_k c_k(u) Z^k, optionally with conjugated coefficients and Zbar.
CExpr evaluate_poly(const HolomorphicPoly& p, const CExpr& z, const Expr& u, bool conjugated) {
  CExpr sum{Expr(0), Expr(0)};
  CExpr power{Expr(1), Expr(0)};
  for (size_t k = 0; k < p.coeff.size(); ++k) {
    if (k > 0) power = power * z;
    CExpr c = u_polynomial(p.coeff[k], u);
    if (conjugated) c = c.conj();
    sum = sum + c * power;
  }
  return sum;
}

}  // namespace

TensorComponents<Expr> conformal_einstein_residual(const MetricField& g, const Expr& upsilon) {
  const int n = g.dim();
  auto curv = exact_curvature(g);
  const auto& p = curv.conformal_suite().schouten;

  auto dupsilon = TensorComponents<Expr>::dense(n, 1);
  for (int a = 0; a < n; ++a) dupsilon.at(a) = upsilon.derivative(g.coords[static_cast<size_t>(a)]);
  auto hess = curv.covariant_derivative(dupsilon);  // (grad d Upsilon)_{a;b}, slot order (a, b)

  auto e = TensorComponents<Expr>::dense(n, 2);
  e.for_each_canonical([&](std::span<const int> idx, Expr& v) {
    v = p.get(idx) - hess.get(idx[0], idx[1]) + dupsilon.get(idx[0]) * dupsilon.get(idx[1]);
  });

  const auto& gi = curv.ginv();
  Expr trace;
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) trace += gi(a, b) * e.get(a, b);
  auto out = TensorComponents<Expr>::dense(n, 2);
  out.for_each_canonical([&](std::span<const int> idx, Expr& v) {
    v = e.get(idx) - trace.divided_by(Rational(n)) * g.components(idx[0], idx[1]);
  });
  return out;
}

WeaklyGenericResiduals weakly_generic_conditions(const MetricField& g, const VectorFieldExpr& y) {
  const int n = g.dim();
  if (n < 4) throw std::domain_error("weakly generic conditions require dim >= 4");
  if (static_cast<int>(y.comp.size()) != n)
    throw std::invalid_argument("vector field component count does not match dimension");
  auto curv = exact_curvature(g);
  const auto& suite = curv.conformal_suite();
  const auto& w = *suite.weyl;

  WeaklyGenericResiduals out{TensorComponents<Expr>::dense(n, 3),
                             TensorComponents<Expr>::dense(n, 2)};
  out.res212.for_each_canonical([&](std::span<const int> idx, Expr& v) {
    v = suite.cotton.get(idx);
    for (int d = 0; d < n; ++d) {
      if (y.comp[static_cast<size_t>(d)].is_zero()) continue;
      v -= y.comp[static_cast<size_t>(d)] * w.get(d, idx[0], idx[1], idx[2]);
    }
  });
  out.res213.for_each_canonical([&](std::span<const int> idx, Expr& v) {
    v = suite.bach->get(idx);
    for (int c = 0; c < n; ++c)
      for (int d = 0; d < n; ++d) {
        if (y.comp[static_cast<size_t>(c)].is_zero() || y.comp[static_cast<size_t>(d)].is_zero())
          continue;
        v -= Rational(n - 4) * y.comp[static_cast<size_t>(c)] * y.comp[static_cast<size_t>(d)] *
             w.get(c, idx[0], idx[1], d);
      }
  });
  return out;
}

PPConditionResiduals pp_conditions(const PPWaveProfile& p, const VectorFieldExpr& y) {
  if (p.n <= 3) throw std::domain_error("pp-wave conditions require n > 3");
  if (static_cast<int>(y.comp.size()) != p.n)
    throw std::invalid_argument("vector field component count does not match dimension");
  const auto xs = p.transverse();
  const int m = p.n - 2;
  const Expr lap = p.laplacian_h();

  PPConditionResiduals out;
  for (int i = 0; i < m; ++i) {
    Expr res = lap.derivative(xs[static_cast<size_t>(i)]) - y.comp[static_cast<size_t>(i)] * lap;
    for (int k = 0; k < m; ++k)
      res += Rational(p.n - 2) * y.comp[static_cast<size_t>(k)] *
             p.h.derivative(xs[static_cast<size_t>(k)]).derivative(xs[static_cast<size_t>(i)]);
    out.pp212.push_back(res);
  }
  Expr res213 = p.laplacian_h(2);
  for (int k = 0; k < m; ++k) {
    res213 -= Rational(p.n - 4) * lap * y.comp[static_cast<size_t>(k)] * y.comp[static_cast<size_t>(k)];
    for (int l = 0; l < m; ++l)
      res213 += Rational((p.n - 2) * (p.n - 4)) * y.comp[static_cast<size_t>(k)] *
                y.comp[static_cast<size_t>(l)] *
                p.h.derivative(xs[static_cast<size_t>(k)]).derivative(xs[static_cast<size_t>(l)]);
  }
  out.pp213 = res213;
  out.duy = y.comp[static_cast<size_t>(m)];
  return out;
}

bool HolomorphicPoly::is_zero() const {
  for (const auto& ck : coeff)
    for (const auto& c : ck)
      if (!c.is_zero()) return false;
  return true;
}

bool HolomorphicPoly::second_z_derivative_vanishes() const {
  for (size_t k = 2; k < coeff.size(); ++k)
    for (const auto& c : coeff[k])
      if (!c.is_zero()) return false;
  return true;
}

PPWaveProfile bachflat4_profile(const HolomorphicPoly& alpha, const HolomorphicPoly& beta) {
  PPWaveProfile p{4, {}};
  const auto xs = p.transverse();
  const Expr u = Expr::variable(p.u_var());
  const CExpr z{Expr::variable(xs[0]), Expr::variable(xs[1])};
  const CExpr zbar = z.conj();

  CExpr a = evaluate_poly(alpha, z, u, false);
  CExpr a_conj = evaluate_poly(alpha, zbar, u, true);
  CExpr b = evaluate_poly(beta, z, u, false);
  CExpr b_conj = evaluate_poly(beta, zbar, u, true);
  CExpr h = zbar * a + z * a_conj + b + b_conj;
  if (!h.im.is_zero())
    throw std::logic_error("bachflat4_profile: imaginary part failed to cancel");
  p.h = h.re;
  return p;
}

namespace {

// The candidate field Y = -(2 x1 d1 + 2 x2 d2)/(x1^2 + x2^2) + f dr and its
// metric dual Yb = -(2 x1 dx1 + 2 x2 dx2)/(x1^2 + x2^2) + f du, with exact
// rational values at a point away from x1 = x2 = 0.
struct CandidateAtPoint {
  Rational y[4];        // contravariant components (x1, x2, u, r order)
  Rational yb[4];       // covariant components
  Rational dyb[4][4];   // d_a Yb_b
};

CandidateAtPoint candidate_at(const std::map<VarId, Rational>& pt, const PPWaveProfile& p,
                              const Expr& f) {
  const auto xs = p.transverse();
  const Rational x1 = pt.at(xs[0]);
  const Rational x2 = pt.at(xs[1]);
  const Rational rho2 = x1 * x1 + x2 * x2;
  if (rho2 == 0) throw std::domain_error("candidate field undefined at x1 = x2 = 0");
  CandidateAtPoint c{};
  c.y[0] = Rational(-2) * x1 / rho2;
  c.y[1] = Rational(-2) * x2 / rho2;
  c.y[2] = 0;
  c.y[3] = f.evaluate(pt);
  c.yb[0] = c.y[0];
  c.yb[1] = c.y[1];
  c.yb[2] = c.y[3];  // g(d_r, .) = du
  c.yb[3] = 0;
  const Rational rho4 = rho2 * rho2;
  c.dyb[0][0] = Rational(-2) / rho2 + Rational(4) * x1 * x1 / rho4;
  c.dyb[0][1] = Rational(4) * x1 * x2 / rho4;
  c.dyb[1][0] = c.dyb[0][1];
  c.dyb[1][1] = Rational(-2) / rho2 + Rational(4) * x2 * x2 / rho4;
  c.dyb[2][2] = f.derivative(p.u_var()).evaluate(pt);
  return c;
}

}  // namespace

Bachflat4Report bachflat4_analysis(const HolomorphicPoly& alpha, const Expr& f_of_u,
                                   uint64_t seed, int num_points, double tolerance) {
  Bachflat4Report report;
  report.seed = seed;
  PPWaveProfile p = bachflat4_profile(alpha, HolomorphicPoly{});
  const VarId r = p.r_var();
  if (f_of_u.is_atom() || f_of_u.depends_on(r) ||
      (SymbolTable::lookup("x1") && f_of_u.depends_on(*SymbolTable::lookup("x1"))) ||
      (SymbolTable::lookup("x2") && f_of_u.depends_on(*SymbolTable::lookup("x2"))))
    throw std::invalid_argument("bachflat4_analysis: f must be a polynomial in u");

  MetricField m = pp_metric(p);
  auto curv = exact_curvature(m);
  const auto& suite = curv.conformal_suite();
  report.bach_flat_engine = suite.bach->all_of([](const Expr& e) { return e.is_zero(); });
  report.d2alpha_zero = alpha.second_z_derivative_vanishes();
  report.conformally_flat = suite.weyl->all_of([](const Expr& e) { return e.is_zero(); });
  report.dr_y_r_independent = !f_of_u.depends_on(r);

  if (report.conformally_flat) {
    report.conformally_einstein = true;
    report.verdict = "conformally flat (hence conformally Einstein)";
    return report;
  }

  report.candidate_checked = true;
  const auto xs = p.transverse();
  const int n = 4, iu = 2;
  const auto& gamma = curv.christoffel();
  const auto& w = *suite.weyl;
  const auto& cotton = suite.cotton;
  const auto& schouten = suite.schouten;

  SamplePointGen gen(seed);
  report.points = num_points;
  double min_dzdzbar = std::numeric_limits<double>::infinity();
  for (int sample = 0; sample < num_points; ++sample) {
    const auto pt = gen.point_away_from_z_axis(p.coords(), xs[0], xs[1]);
    const auto cand = candidate_at(pt, p, f_of_u);

    // Condition (212) residual: C_abc - Y^d W_dabc, exact at the point.
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b)
        for (int c = 0; c < n; ++c) {
          Rational v = cotton.get(a, b, c).evaluate(pt);
          for (int d = 0; d < n; ++d)
            v -= cand.y[d] * w.get(d, a, b, c).evaluate(pt);
          report.max_res212 = std::max(report.max_res212, std::abs(to_double(v)));
        }
    // Condition (213) residual: B (the W(Y,.,.,Y) term carries n-4 = 0).
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b)
        report.max_res213 = std::max(
            report.max_res213, std::abs(to_double(suite.bach->get(a, b).evaluate(pt))));

    // E = P - grad Yb + Yb (x) Yb at the point.
    Rational e[4][4];
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b) {
        Rational grad_ab = cand.dyb[a][b];
        for (int ee = 0; ee < n; ++ee) {
          if (cand.yb[ee] == 0) continue;
          grad_ab -= gamma.get(ee, a, b).evaluate(pt) * cand.yb[ee];
        }
        e[a][b] = schouten.get(a, b).evaluate(pt) - grad_ab + cand.yb[a] * cand.yb[b];
      }
    const Rational x1 = pt.at(xs[0]), x2 = pt.at(xs[1]);
    const Rational expected = Rational(4) / (x1 * x1 + x2 * x2);  // 2/(z zbar)
    const double dzdzbar = to_double(e[0][0] + e[1][1]);
    report.max_dzdzbar_error =
        std::max(report.max_dzdzbar_error, std::abs(dzdzbar - to_double(expected)));
    min_dzdzbar = std::min(min_dzdzbar, std::abs(dzdzbar));
    report.max_drdu = std::max(report.max_drdu, std::abs(to_double(e[3][iu])));
  }
  report.min_dzdzbar_value = min_dzdzbar;

  report.cotton_flat = report.max_res212 <= tolerance && report.dr_y_r_independent;
  // Pure trace would force the coefficient to vanish (the dr du component of
  // g is 1 while E_ru = 0), but the dz dzbar part is nowhere zero.
  report.conformally_einstein = false;
  report.verdict = "Bach-flat, conformally Cotton-flat, not conformally Einstein";
  return report;
}

Rational BrinkmannFlow::value(const Rational& u) const {
  const VarId uv = SymbolTable::intern("u");
  const std::map<VarId, Rational> pt{{uv, u}};
  const Rational den = denominator.evaluate(pt);
  if (den == 0) throw std::domain_error("Brinkmann flow evaluated at its pole");
  return numerator.evaluate(pt) / den;
}

Rational BrinkmannFlow::derivative_value(const Rational& u) const {
  // Quotient rule on the stored closed form; no use of the ODE itself.
  const VarId uv = SymbolTable::intern("u");
  const std::map<VarId, Rational> pt{{uv, u}};
  const Rational den = denominator.evaluate(pt);
  if (den == 0) throw std::domain_error("Brinkmann flow evaluated at its pole");
  const Rational num = numerator.evaluate(pt);
  const Rational dnum = numerator.derivative(uv).evaluate(pt);
  const Rational dden = denominator.derivative(uv).evaluate(pt);
  return (dnum * den - num * dden) / (den * den);
}

bool BrinkmannFlow::satisfies_ode() const {
  // fdot = f^2 over the common denominator den^2:
  // num' den - num den' == num^2.
  const VarId u = SymbolTable::intern("u");
  Expr lhs = numerator.derivative(u) * denominator - numerator * denominator.derivative(u);
  return exact_equals(lhs, numerator * numerator);
}

BrinkmannFlow brinkmann_flow(const Rational& f0, const Rational& u0) {
  if (f0 == 0) throw std::invalid_argument("brinkmann_flow: f0 = 0 gives the trivial flow");
  const Expr u = Expr::variable(SymbolTable::intern("u"));
  BrinkmannFlow flow{f0, u0, Expr(f0), Expr(1) - Expr(f0) * (u - Expr(u0))};
  return flow;
}

double brinkmann_conformal_residual(const PPWaveProfile& p, const BrinkmannFlow& flow,
                                    uint64_t seed, int num_points) {
  MetricField m = pp_metric(p);
  auto curv = exact_curvature(m);
  const auto& schouten = curv.conformal_suite().schouten;
  const auto& gamma = curv.christoffel();
  const auto& gi = curv.ginv();
  const int n = p.n;
  const int iu = n - 2;

  SamplePointGen gen(seed);
  double max_dev = 0;
  int accepted = 0;
  while (accepted < num_points) {
    auto pt = gen.point(p.coords());
    const Rational den = 1 - flow.f0 * (pt.at(p.u_var()) - flow.u0);
    if (den * den < Rational(1, 100)) continue;  // stay away from the pole
    ++accepted;
    const Rational f = flow.value(pt.at(p.u_var()));
    const Rational fdot = flow.derivative_value(pt.at(p.u_var()));
    // E_ab = P_ab - (grad dU)_ab + f^2 d_a^u d_b^u with dU = f du:
    // (grad dU)_ab = fdot d_a^u d_b^u - f Gamma^u_ab.
    std::vector<Rational> e(static_cast<size_t>(n) * static_cast<size_t>(n));
    auto eat = [&](int a, int b) -> Rational& { return e[static_cast<size_t>(a * n + b)]; };
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b) {
        Rational v = schouten.get(a, b).evaluate(pt) + f * gamma.get(iu, a, b).evaluate(pt);
        if (a == iu && b == iu) v += f * f - fdot;
        eat(a, b) = v;
      }
    Rational trace = 0;
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b) {
        const Rational giab = gi(a, b).evaluate(pt);
        if (giab != 0) trace += giab * eat(a, b);
      }
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b) {
        const Rational dev = eat(a, b) - trace / Rational(n) * m.components(a, b).evaluate(pt);
        max_dev = std::max(max_dev, std::abs(to_double(dev)));
      }
  }
  return max_dev;
}

UnsatisfiablePoint find_pp213_obstruction(const PPWaveProfile& p, uint64_t seed, int num_points) {
  if (p.n <= 3) throw std::domain_error("pp-wave conditions require n > 3");
  const auto xs = p.transverse();
  const Expr lap = p.laplacian_h();
  const Expr lap2 = p.laplacian_h(2);

  auto hessian_and_lap_vanish = [&](const std::map<VarId, Rational>& pt) {
    if (lap.evaluate(pt) != 0) return false;
    for (VarId xi : xs)
      for (VarId xj : xs)
        if (p.h.derivative(xi).derivative(xj).evaluate(pt) != 0) return false;
    return true;
  };

  UnsatisfiablePoint out;
  std::vector<std::map<VarId, Rational>> candidates;
  std::map<VarId, Rational> origin;
  for (VarId v : p.coords()) origin[v] = Rational(0);
  candidates.push_back(origin);
  SamplePointGen gen(seed);
  for (int i = 0; i < num_points; ++i) candidates.push_back(gen.point(p.coords()));

  for (const auto& pt : candidates) {
    if (!hessian_and_lap_vanish(pt)) continue;
    const Rational v = lap2.evaluate(pt);
    if (v != 0) {
      out.found = true;
      out.point = pt;
      out.pp213_value = v;
      return out;
    }
  }
  return out;
}

}  // namespace ambientlab
