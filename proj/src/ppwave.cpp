#include "ambientlab/ppwave.hpp"

#include <stdexcept>

namespace ambientlab {

std::vector<VarId> PPWaveProfile::transverse() const {
  std::vector<VarId> out;
  out.reserve(static_cast<size_t>(n - 2));
  for (int i = 1; i <= n - 2; ++i) out.push_back(SymbolTable::intern("x" + std::to_string(i)));
  return out;
}

VarId PPWaveProfile::u_var() const { return SymbolTable::intern("u"); }
VarId PPWaveProfile::r_var() const { return SymbolTable::intern("r"); }

std::vector<VarId> PPWaveProfile::coords() const {
  std::vector<VarId> out = transverse();
  out.push_back(u_var());
  out.push_back(r_var());
  return out;
}

Expr PPWaveProfile::laplacian_h(int power) const {
  const auto xs = transverse();
  return laplacian_power(h, power, xs);
}

void PPWaveProfile::validate() const {
  if (n < 3) throw std::invalid_argument("pp-wave dimension must be >= 3");
  if (h.is_atom()) return;  // numeric tier profile; exact ops reject it themselves
  for (const char* banned : {"r", "rho", "t"})
    if (auto id = SymbolTable::lookup(banned); id && h.depends_on(*id))
      throw std::invalid_argument(std::string("profile depends on '") + banned + "'");
}

MetricField pp_metric(const PPWaveProfile& p) {
  p.validate();
  if (p.h.is_atom())
    throw std::domain_error("pp_metric: analytic-atom profiles are numeric-tier only");
  MetricField m;
  m.coords = p.coords();
  const int n = p.n;
  m.components = ExprMatrix(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) m.components(i, j) = Expr(0);
  for (int i = 0; i < n - 2; ++i) m.components(i, i) = Expr(1);
  const int iu = n - 2, ir = n - 1;
  m.components(iu, ir) = Expr(1);
  m.components(ir, iu) = Expr(1);
  m.components(iu, iu) = Expr(2) * p.h;
  for (VarId v : m.coords) m.base_point[v] = Rational(0);
  m.validate();
  return m;
}

PPWaveStructure pp_structure(const PPWaveProfile& p) {
  PPWaveStructure s;
  s.K.assign(static_cast<size_t>(p.n), Expr(0));
  s.kappa.assign(static_cast<size_t>(p.n), Expr(0));
  s.K[static_cast<size_t>(p.n - 1)] = Expr(1);   // d_r
  s.kappa[static_cast<size_t>(p.n - 2)] = Expr(1);  // du
  return s;
}

PPClosedForms pp_closed_forms(const PPWaveProfile& p) {
  p.validate();
  const int n = p.n;
  const auto xs = p.transverse();
  const int iu = n - 2;
  const Expr lap = p.laplacian_h();
  const Rational inv_nm2(1, n - 2);

  PPClosedForms out{TensorComponents<Expr>::dense(n, 2),
                    TensorComponents<Expr>::dense(n, 2),
                    std::nullopt,
                    TensorComponents<Expr>::dense(n, 3),
                    std::nullopt,
                    Expr(0),
                    Expr(0),
                    ExprMatrix(n - 2, n - 2),
                    {},
                    Expr(0)};

  out.ric_uu = -lap;
  out.schouten_uu = inv_nm2 * out.ric_uu;
  out.ricci.at(iu, iu) = out.ric_uu;
  out.schouten.at(iu, iu) = out.schouten_uu;

  for (int i = 0; i < n - 2; ++i) {
    Expr ci = inv_nm2 * lap.derivative(xs[static_cast<size_t>(i)]);
    out.cotton_family.push_back(ci);
    out.cotton.at(iu, i, iu) = ci;
    out.cotton.at(iu, iu, i) = -ci;
  }

  for (int i = 0; i < n - 2; ++i)
    for (int j = 0; j < n - 2; ++j) {
      Expr w = -(p.h.derivative(xs[static_cast<size_t>(i)]).derivative(xs[static_cast<size_t>(j)]));
      if (i == j) w += inv_nm2 * lap;
      out.weyl_family(i, j) = w;
    }

  if (n >= 4) {
    auto weyl = TensorComponents<Expr>::riemann(n);
    for (int i = 0; i < n - 2; ++i)
      for (int j = i; j < n - 2; ++j) weyl.at(i, iu, j, iu) = out.weyl_family(i, j);
    out.weyl = std::move(weyl);

    out.bach_uu = -(inv_nm2 * p.laplacian_h(2));
    auto bach = TensorComponents<Expr>::dense(n, 2);
    bach.at(iu, iu) = out.bach_uu;
    out.bach = std::move(bach);
  }
  return out;
}

ConformallyFlatVerdict is_conformally_flat(const PPWaveProfile& p) {
  p.validate();
  const auto xs = p.transverse();
  ConformallyFlatVerdict verdict;
  if (p.n == 3) {
    Expr c = p.laplacian_h().derivative(xs[0]);
    if (!c.is_zero()) {
      verdict.flat = false;
      verdict.witness = "d1(lap h)";
      verdict.witness_expr = c;
    }
    return verdict;
  }
  const Expr lap = p.laplacian_h();
  const Rational inv_nm2(1, p.n - 2);
  for (int i = 0; i < p.n - 2 && verdict.flat; ++i)
    for (int j = i; j < p.n - 2 && verdict.flat; ++j) {
      Expr w = p.h.derivative(xs[static_cast<size_t>(i)]).derivative(xs[static_cast<size_t>(j)]);
      if (i == j) w -= inv_nm2 * lap;
      if (!w.is_zero()) {
        verdict.flat = false;
        verdict.witness =
            "hess(h)[" + std::to_string(i + 1) + "," + std::to_string(j + 1) + "] - trace part";
        verdict.witness_expr = w;
      }
    }
  return verdict;
}

CharacterizationReport verify_pp_characterizations(
    const PPWaveProfile& p, const std::vector<std::map<VarId, Rational>>& points) {
  const int n = p.n;
  const int iu = n - 2, ir = n - 1;
  MetricField m = pp_metric(p);
  ExactCurvature curv = exact_curvature(m);
  auto& r = curv.riemann();
  auto& rm = curv.riemann_mixed();
  auto& gi = curv.ginv();

  CharacterizationReport report;

  // (a) skew-symmetrization of kappa tensor R over the first three slots;
  // kappa_a = delta_a^u.
  bool skew_ok = true;
  const int perms[6][3] = {{0, 1, 2}, {1, 2, 0}, {2, 0, 1}, {1, 0, 2}, {0, 2, 1}, {2, 1, 0}};
  const int signs[6] = {1, 1, 1, -1, -1, -1};
  for (int a = 0; a < n && skew_ok; ++a)
    for (int b = 0; b < n && skew_ok; ++b)
      for (int c = 0; c < n && skew_ok; ++c)
        for (int d = 0; d < n && skew_ok; ++d)
          for (int e = 0; e < n && skew_ok; ++e) {
            const int abc[3] = {a, b, c};
            Expr sum;
            for (int s = 0; s < 6; ++s) {
              const int pa = abc[perms[s][0]], pb = abc[perms[s][1]], pc = abc[perms[s][2]];
              if (pa != iu) continue;
              Expr term = r.get(pb, pc, d, e);
              sum += signs[s] > 0 ? term : -term;
            }
            skew_ok = sum.is_zero();
          }
  report.kappa_skew_zero = skew_ok;

  // (b) R_ab^{ef} R_efcd = 0
  auto raised = TensorComponents<Expr>::dense(n, 4);  // R_ab^{ef}
  raised.for_each_canonical([&](std::span<const int> idx, Expr& v) {
    Expr sum;
    for (int c = 0; c < n; ++c)
      for (int d = 0; d < n; ++d) {
        if (gi(idx[2], c).is_zero() || gi(idx[3], d).is_zero()) continue;
        sum += gi(idx[2], c) * gi(idx[3], d) * r.get(idx[0], idx[1], c, d);
      }
    v = sum;
  });
  bool trace_ok = true;
  for (int a = 0; a < n && trace_ok; ++a)
    for (int b = 0; b < n && trace_ok; ++b)
      for (int c = 0; c < n && trace_ok; ++c)
        for (int d = 0; d < n && trace_ok; ++d) {
          Expr sum;
          for (int e = 0; e < n; ++e)
            for (int f = 0; f < n; ++f) sum += raised.get(a, b, e, f) * r.get(e, f, c, d);
          trace_ok = sum.is_zero();
        }
  report.trace_condition = trace_ok;

  // (c) R(U,V)W proportional to K for W in K-orth = span(d_i, d_r):
  // all components of R^a_{bcd} with b != u must vanish except a = r.
  bool image_ok = true;
  for (int b = 0; b < n && image_ok; ++b) {
    if (b == iu) continue;  // not in K-orthogonal complement
    for (int a = 0; a < n && image_ok; ++a) {
      if (a == ir) continue;  // the K direction itself
      for (int c = 0; c < n && image_ok; ++c)
        for (int d = 0; d < n && image_ok; ++d) image_ok = rm.get(a, b, c, d).is_zero();
    }
  }
  report.image_in_line = image_ok;

  // Fullness of the image at sample points: some Hessian entry nonzero.
  const auto xs = p.transverse();
  for (const auto& pt : points) {
    ++report.points_checked;
    bool full = false;
    for (VarId xi : xs)
      for (VarId xj : xs)
        if (p.h.derivative(xi).derivative(xj).evaluate(pt) != 0) full = true;
    if (full) ++report.points_with_full_image;
  }

  // K null and parallel.
  const auto s = pp_structure(p);
  Expr k_norm;
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      k_norm += m.components(a, b) * s.K[static_cast<size_t>(a)] * s.K[static_cast<size_t>(b)];
  report.k_null = k_norm.is_zero();
  bool parallel = true;
  for (int c = 0; c < n && parallel; ++c) {
    auto dk = curv.covariant_derivative_vector(s.K, c);
    for (const Expr& comp : dk) parallel = parallel && comp.is_zero();
  }
  report.k_parallel = parallel;
  return report;
}

bool is_ricci_flat(const PPWaveProfile& p) { return p.laplacian_h().is_zero(); }

}  // namespace ambientlab
