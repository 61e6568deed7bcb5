#include "ambientlab/ambient.hpp"

#include "ambientlab/analytic.hpp"

#include <stdexcept>

namespace ambientlab {

Expr AmbientSeries::H() const {
  const Expr rho = Expr::variable(rho_var());
  Expr h;
  Expr power(1);
  for (const Expr& a : coeffs) {
    power *= rho;
    h += a * power;
  }
  return h;
}

Rational pk(int n, int k) {
  if (k < 1) throw std::invalid_argument("pk: k must be >= 1");
  Rational prod = 1;
  for (int j = 1; j <= k; ++j) prod *= Rational(2 * j - n);
  return prod;
}

AmbientSeries build_series(const PPWaveProfile& p, int order) {
  p.validate();
  if (order < 1) throw std::invalid_argument("build_series: order must be >= 1");
  if (p.h.is_atom())
    throw std::domain_error("build_series: analytic-atom profiles are numeric-tier only "
                            "(use series_partial_sums)");
  AmbientSeries s{p.n, p, {}, order, std::nullopt};
  const auto xs = p.transverse();
  int effective = order;
  if (p.n % 2 == 0) {
    const int half = p.n / 2;
    effective = std::min(order, half - 1);
    s.even_obstructed = laplacian_power(p.h, half, xs);
  }
  // a_1 = lap h / (2-n); a_{k+1} = lap a_k / ((k+1)(2(k+1)-n)). The even-n
  // truncation above stops before the recursion ever divides by zero.
  Expr a = p.laplacian_h().divided_by(Rational(2 - p.n));
  for (int k = 1; k <= effective; ++k) {
    s.coeffs.push_back(a);
    if (a.is_zero()) break;  // series terminated; all later coefficients vanish
    if (k == effective) break;
    a = laplacian(a, xs).divided_by(Rational((k + 1) * (2 * (k + 1) - p.n)));
  }
  return s;
}

Expr obstruction_uu(const PPWaveProfile& p) {
  p.validate();
  if (p.n % 2 != 0) throw std::domain_error("obstruction tensor is defined for even dimension only");
  return laplacian_power(p.h, p.n / 2, p.transverse());
}

TensorComponents<Expr> obstruction(const PPWaveProfile& p) {
  auto o = TensorComponents<Expr>::dense(p.n, 2);
  o.at(p.n - 2, p.n - 2) = obstruction_uu(p);
  return o;
}

MetricField ambient_metric_with(const PPWaveProfile& p, const Expr& H) {
  p.validate();
  const int n = p.n;
  const int N = n + 2;
  MetricField m;
  m.coords.push_back(AmbientSeries::rho_var());
  for (VarId v : p.coords()) m.coords.push_back(v);
  m.coords.push_back(AmbientSeries::t_var());

  const Expr t = Expr::variable(AmbientSeries::t_var());
  const Expr rho = Expr::variable(AmbientSeries::rho_var());
  const Expr t2 = t * t;
  m.components = ExprMatrix(N, N);
  for (int i = 0; i < N; ++i)
    for (int j = 0; j < N; ++j) m.components(i, j) = Expr(0);
  const int irho = 0, iu = n - 1, ir = n, it = N - 1;
  m.components(irho, it) = t;
  m.components(it, irho) = t;
  m.components(it, it) = Expr(2) * rho;
  for (int i = 1; i <= n - 2; ++i) m.components(i, i) = t2;
  m.components(iu, ir) = t2;
  m.components(ir, iu) = t2;
  m.components(iu, iu) = Expr(2) * t2 * (p.h + H);

  for (VarId v : m.coords) m.base_point[v] = Rational(0);
  m.base_point[AmbientSeries::t_var()] = Rational(1);
  m.validate();
  return m;
}

MetricField ambient_metric(const AmbientSeries& s) { return ambient_metric_with(s.profile, s.H()); }

Expr lemma_ricci_residual(const PPWaveProfile& p, const Expr& H) {
  const VarId rho = AmbientSeries::rho_var();
  const auto xs = p.transverse();
  const Expr h_rho = H.derivative(rho);
  return Rational(2 - p.n) * h_rho + Expr(2) * Expr::variable(rho) * h_rho.derivative(rho) -
         laplacian(H, xs) - p.laplacian_h();
}

AmbientRicciReport verify_ambient_ricci_flat(const AmbientSeries& s) {
  AmbientRicciReport report;
  MetricField m = ambient_metric(s);
  ExactCurvature curv = exact_curvature(m);
  auto& ric = curv.ricci();
  const int iu = s.n - 1;  // u-slot in ambient coordinate order

  bool only_uu = true;
  for (int a = 0; a < m.dim() && only_uu; ++a)
    for (int b = 0; b < m.dim() && only_uu; ++b) {
      if (a == iu && b == iu) continue;
      only_uu = ric.get(a, b).is_zero();
    }
  report.only_uu_nonzero = only_uu;
  report.residual_uu = ric.get(iu, iu);
  report.matches_lemma_residual =
      report.residual_uu == lemma_ricci_residual(s.profile, s.H());
  report.identically_zero = report.residual_uu.is_zero();

  if (!report.identically_zero) {
    // Residual of the truncated series is -lap(a_K) rho^K.
    const VarId rho = AmbientSeries::rho_var();
    const int K = static_cast<int>(s.coeffs.size());
    Expr expected = -(laplacian(s.coeffs.back(), s.profile.transverse())) *
                    Expr::variable(rho).pow_int(K);
    report.vanishes_below_truncation = report.residual_uu == expected;
  } else {
    report.vanishes_below_truncation = true;
  }
  return report;
}

namespace {

// The rho-family inside the ambient bracket: g(rho) on (x,u,r) coordinates,
// with the series H substituted at the given rho-argument.
ExprMatrix bracket_family(const AmbientSeries& s, const Expr& rho_argument) {
  const int n = s.n;
  Expr hh = s.profile.h + s.H().substituted(AmbientSeries::rho_var(), rho_argument);
  ExprMatrix g(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) g(i, j) = Expr(0);
  for (int i = 0; i < n - 2; ++i) g(i, i) = Expr(1);
  g(n - 2, n - 1) = Expr(1);
  g(n - 1, n - 2) = Expr(1);
  g(n - 2, n - 2) = Expr(2) * hh;
  return g;
}

}  // namespace

MetricField poincare_metric(const AmbientSeries& s) {
  const int n = s.n;
  MetricField m;
  const VarId x = AmbientSeries::x_var();
  m.coords.push_back(x);
  for (VarId v : s.profile.coords()) m.coords.push_back(v);

  const Expr xe = Expr::variable(x);
  const Expr minus_x2 = -(xe * xe);
  const Expr inv_x2 = Expr::monomial(Rational(1), Monomial::var(x, -2));
  ExprMatrix family = bracket_family(s, minus_x2);

  m.components = ExprMatrix(n + 1, n + 1);
  for (int i = 0; i <= n; ++i)
    for (int j = 0; j <= n; ++j) m.components(i, j) = Expr(0);
  m.components(0, 0) = inv_x2;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      m.components(i + 1, j + 1) = Rational(1, 2) * inv_x2 * family(i, j);

  for (VarId v : m.coords) m.base_point[v] = Rational(0);
  m.base_point[x] = Rational(1);
  m.validate();
  return m;
}

TensorComponents<Expr> poincare_einstein_residual(const AmbientSeries& s) {
  MetricField gp = poincare_metric(s);
  ExactCurvature curv = exact_curvature(gp);
  auto& ric = curv.ricci();
  auto out = TensorComponents<Expr>::dense(gp.dim(), 2);
  out.for_each_canonical([&](std::span<const int> idx, Expr& v) {
    v = ric.get(idx) + Rational(s.n) * gp.components(idx[0], idx[1]);
  });
  return out;
}

std::vector<Expr> volume_coefficients(const AmbientSeries& s, int order) {
  if (order < 0) throw std::invalid_argument("volume_coefficients: negative order");
  const VarId x = AmbientSeries::x_var();
  const Expr xe = Expr::variable(x);
  // det(g_x)/det(g_0) for g_x = 1/2 g(-x^2); the constant 1/2^n cancels.
  const Expr det_x = determinant(bracket_family(s, -(xe * xe)));
  const Expr det_0 = determinant(bracket_family(s, Expr(0)));
  if (!det_0.is_monomial())
    throw std::domain_error("volume_coefficients: det g(0) is not invertible in the exact tier");
  const auto& [mono, coeff] = det_0.single_term();
  const Expr ratio = det_x.divided_by_monomial(coeff, mono);

  // sqrt by coefficient recursion: v_m = (ratio_m - sum_{j=1}^{m-1} v_j v_{m-j}) / 2.
  std::vector<Expr> v(static_cast<size_t>(order) + 1);
  v[0] = Expr(1);
  for (int m = 1; m <= order; ++m) {
    Expr acc = ratio.coefficient_of(x, m);
    for (int j = 1; j < m; ++j) acc -= v[static_cast<size_t>(j)] * v[static_cast<size_t>(m - j)];
    v[static_cast<size_t>(m)] = acc.divided_by(Rational(2));
  }
  return v;
}

PartialSumReport series_partial_sums(const PPWaveProfile& p, std::span<const double> point,
                                     double rho, int kmax) {
  p.validate();
  if (p.n % 2 == 0)
    throw std::domain_error("series_partial_sums: convergence experiment requires odd dimension");
  if (kmax < 1) throw std::invalid_argument("series_partial_sums: kmax must be >= 1");
  const int d = p.n - 2;
  if (static_cast<int>(point.size()) != d)
    throw std::invalid_argument("series_partial_sums: point size must equal n-2");

  const auto xs = p.transverse();
  const Jet jet = p.h.jet_at(xs, point, 2 * kmax);
  const auto& mis = MultiIndexSet::get(d, 2 * kmax);

  // lap^k h(p) = sum_{|m|=k} k!/prod(m_i!) * c_{2m} * prod((2 m_i)!)
  auto lap_power_at = [&](int k) {
    double sum = 0;
    for (int idx = 0; idx < mis.size(); ++idx) {
      if (mis.degree(idx) != k) continue;
      auto m = mis.alpha(idx);
      std::vector<int> two_m(m.begin(), m.end());
      for (int& e : two_m) e *= 2;
      double weight = 1;
      for (int f = 2; f <= k; ++f) weight *= f;         // k!
      for (int e : m)
        for (int f = 2; f <= e; ++f) weight /= f;       // / prod m_i!
      for (int e : two_m)
        for (int f = 2; f <= e; ++f) weight *= f;       // * prod (2 m_i)!
      sum += weight * jet.coeff(two_m);
    }
    return sum;
  };

  PartialSumReport report;
  double running = 0;
  double rho_power = 1;
  for (int k = 1; k <= kmax; ++k) {
    rho_power *= rho;
    const double term = lap_power_at(k) / (to_double(factorial(static_cast<unsigned>(k))) *
                                           to_double(pk(p.n, k))) * rho_power;
    report.terms.push_back(term);
    running += term;
    report.partial_sums.push_back(running);
    if (k > 1)
      report.diffs.push_back(std::abs(report.partial_sums[static_cast<size_t>(k - 1)] -
                                      report.partial_sums[static_cast<size_t>(k - 2)]));
  }
  return report;
}

}  // namespace ambientlab
