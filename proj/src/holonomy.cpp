#include "ambientlab/holonomy.hpp"

#include "ambientlab/jet_geometry.hpp"

#include <cmath>

namespace ambientlab {

FrameField ambient_frame(const AmbientSeries& s) {
  const int n = s.n;
  const int N = n + 2;
  const int irho = 0, iu = n - 1, ir = n, it = N - 1;
  const Expr t_inv = Expr::monomial(Rational(1), Monomial::var(AmbientSeries::t_var(), -1));
  const Expr t_inv2 = Expr::monomial(Rational(1), Monomial::var(AmbientSeries::t_var(), -2));
  const Expr rho = Expr::variable(AmbientSeries::rho_var());

  FrameField f;
  f.vectors.assign(static_cast<size_t>(N), std::vector<Expr>(static_cast<size_t>(N), Expr(0)));
  f.vectors[0][irho] = t_inv;                                   // E_0
  for (int i = 1; i <= n - 2; ++i) f.vectors[static_cast<size_t>(i)][i] = t_inv;  // E_i
  f.vectors[static_cast<size_t>(n - 1)][ir] = t_inv2;           // E_{n-1}
  f.vectors[static_cast<size_t>(n)][iu] = Expr(1);              // E_n
  f.vectors[static_cast<size_t>(n)][ir] = -(s.profile.h + s.H());
  f.vectors[static_cast<size_t>(n + 1)][it] = Expr(1);          // E_{n+1}
  f.vectors[static_cast<size_t>(n + 1)][irho] = -(rho * t_inv);
  return f;
}

ExprMatrix frame_gram(const FrameField& f, const MetricField& ambient) {
  const int N = ambient.dim();
  ExprMatrix gram(N, N);
  for (int mu = 0; mu < N; ++mu)
    for (int nu = 0; nu < N; ++nu) {
      Expr sum;
      for (int a = 0; a < N; ++a)
        for (int b = 0; b < N; ++b) {
          if (ambient.components(a, b).is_zero()) continue;
          sum += f.vectors[static_cast<size_t>(mu)][static_cast<size_t>(a)] *
                 f.vectors[static_cast<size_t>(nu)][static_cast<size_t>(b)] *
                 ambient.components(a, b);
        }
      gram(mu, nu) = sum;
    }
  return gram;
}

bool frame_gram_is_standard(const ExprMatrix& gram, int n) {
  const int N = n + 2;
  for (int mu = 0; mu < N; ++mu)
    for (int nu = 0; nu < N; ++nu) {
      Expr expected(0);
      if ((mu == 0 && nu == N - 1) || (mu == N - 1 && nu == 0)) expected = Expr(1);
      if ((mu == n - 1 && nu == n) || (mu == n && nu == n - 1)) expected = Expr(1);
      if (mu == nu && mu >= 1 && mu <= n - 2) expected = Expr(1);
      if (!(gram(mu, nu) == expected)) return false;
    }
  return true;
}

NullPlaneReport null_plane_invariance(const AmbientSeries& s, uint64_t seed, int num_points) {
  NullPlaneReport report;
  const int N = s.n + 2;
  const int irho = 0, ir = s.n;
  MetricField m = ambient_metric(s);
  FrameField frame = ambient_frame(s);

  // Total nullity of span(d_rho, d_r).
  report.plane_totally_null = m.components(irho, irho).is_zero() &&
                              m.components(irho, ir).is_zero() &&
                              m.components(ir, ir).is_zero();

  auto curv = exact_curvature(m);
  // Pairings needed for membership in N = (span(E_0, E_i, E_{n-1}))-perp.
  std::vector<int> perp_indices;  // frame labels spanning N-perp
  perp_indices.push_back(0);
  for (int i = 1; i <= s.n - 2; ++i) perp_indices.push_back(i);
  perp_indices.push_back(s.n - 1);

  auto pair_with = [&](const std::vector<Expr>& v, const std::vector<Expr>& w) {
    Expr sum;
    for (int a = 0; a < N; ++a)
      for (int b = 0; b < N; ++b) {
        if (m.components(a, b).is_zero()) continue;
        sum += v[static_cast<size_t>(a)] * w[static_cast<size_t>(b)] * m.components(a, b);
      }
    return sum;
  };

  bool symbolic = true;
  const std::vector<size_t> plane{0, static_cast<size_t>(s.n - 1)};  // E_0, E_{n-1}
  // grad_c V for all coordinate directions, then frame directions by span.
  std::vector<std::vector<std::vector<Expr>>> coord_derivs(plane.size());
  for (size_t vi = 0; vi < plane.size(); ++vi)
    for (int c = 0; c < N; ++c)
      coord_derivs[vi].push_back(
          curv.covariant_derivative_vector(frame.vectors[plane[vi]], c));
  for (size_t vi = 0; vi < plane.size() && symbolic; ++vi)
    for (int lambda = 0; lambda < N && symbolic; ++lambda) {
      std::vector<Expr> dv(static_cast<size_t>(N), Expr(0));
      for (int c = 0; c < N; ++c) {
        const Expr& coeff = frame.vectors[static_cast<size_t>(lambda)][static_cast<size_t>(c)];
        if (coeff.is_zero()) continue;
        for (int a = 0; a < N; ++a)
          dv[static_cast<size_t>(a)] += coeff * coord_derivs[vi][static_cast<size_t>(c)][static_cast<size_t>(a)];
      }
      for (int w : perp_indices)
        if (!pair_with(dv, frame.vectors[static_cast<size_t>(w)]).is_zero()) symbolic = false;
    }
  report.symbolic_invariance = symbolic;

  // Independent jet-tier check at sample points (t bounded away from 0).
  SamplePointGen gen(seed);
  const int order = 2;
  for (int sample = 0; sample < num_points; ++sample) {
    auto pt_rat = gen.point_with_unit_scale(m.coords, AmbientSeries::t_var());
    auto pt = to_double_point(pt_rat);
    auto jc = jet_curvature_at(m, pt, order);
    const auto& g_jets = jc.g();
    std::vector<double> p;
    for (VarId v : m.coords) p.push_back(pt.at(v));
    auto frame_jet = [&](size_t mu) {
      std::vector<Jet> out;
      for (int a = 0; a < N; ++a)
        out.push_back(frame.vectors[mu][static_cast<size_t>(a)].jet_at(m.coords, p, order));
      return out;
    };
    std::vector<std::vector<Jet>> frame_jets;
    for (int mu = 0; mu < N; ++mu) frame_jets.push_back(frame_jet(static_cast<size_t>(mu)));
    for (size_t vplane : plane) {
      for (int c = 0; c < N; ++c) {
        auto dv = jc.covariant_derivative_vector(frame_jets[vplane], c);
        for (int w : perp_indices) {
          Jet pairing(0.0);
          for (int a = 0; a < N; ++a)
            for (int b = 0; b < N; ++b)
              pairing = pairing + dv[static_cast<size_t>(a)] *
                                      frame_jets[static_cast<size_t>(w)][static_cast<size_t>(b)] *
                                      g_jets(a, b);
          report.max_numeric_deviation =
              std::max(report.max_numeric_deviation, std::abs(pairing.value()));
        }
      }
    }
    ++report.points_checked;
  }
  return report;
}

ConnectionFormsReport verify_connection_forms(const AmbientSeries& s) {
  ConnectionFormsReport report;
  const int n = s.n;
  const int N = n + 2;
  MetricField m = ambient_metric(s);
  FrameField frame = ambient_frame(s);
  auto curv = exact_curvature(m);

  const VarId t_var = AmbientSeries::t_var();
  const VarId rho_var = AmbientSeries::rho_var();
  const Expr t = Expr::variable(t_var);
  const Expr t_inv = Expr::monomial(Rational(1), Monomial::var(t_var, -1));
  const Expr rho = Expr::variable(rho_var);
  const Expr hH = s.profile.h + s.H();
  const Expr h_rho = s.H().derivative(rho_var);

  // Coordinate components of the coframe 1-forms.
  auto one_form = [&](int coord, const Expr& coeff) {
    std::vector<Expr> out(static_cast<size_t>(N), Expr(0));
    out[static_cast<size_t>(coord)] = coeff;
    return out;
  };
  auto add = [&](std::vector<Expr> a, const std::vector<Expr>& b) {
    for (size_t i = 0; i < a.size(); ++i) a[i] += b[i];
    return a;
  };
  const int iu = n - 1, ir = n, it = N - 1;
  const auto theta_u = one_form(iu, Expr(1));  // theta^n = du
  const auto theta_t = one_form(it, Expr(1));  // theta^{n+1} = dt
  // theta^{n-1} = t^2 (dr + (h+H) du)
  auto theta_np = add(one_form(ir, t * t), one_form(iu, t * t * hH));
  auto theta_i = [&](int i) { return one_form(i, t); };  // theta^i = t dx^i

  // Expected connection 1-forms (all other families zero, up to antisymmetry).
  auto scaled = [&](std::vector<Expr> v, const Expr& c) {
    for (auto& e : v) e = c * e;
    return v;
  };
  std::vector<std::vector<std::vector<Expr>>> expected(
      static_cast<size_t>(N),
      std::vector<std::vector<Expr>>(static_cast<size_t>(N),
                                     std::vector<Expr>(static_cast<size_t>(N), Expr(0))));
  auto set_pair = [&](int mu, int nu, std::vector<Expr> form) {
    std::vector<Expr> neg = form;
    for (auto& e : neg) e = -e;
    expected[static_cast<size_t>(mu)][static_cast<size_t>(nu)] = std::move(form);
    expected[static_cast<size_t>(nu)][static_cast<size_t>(mu)] = std::move(neg);
  };
  set_pair(0, n, scaled(theta_u, -(t * h_rho)));  // Gamma_{0 n} = -t H_rho theta^n
  for (int i = 1; i <= n - 2; ++i) {
    const VarId xi = s.profile.transverse()[static_cast<size_t>(i - 1)];
    set_pair(i, n, scaled(theta_u, -(t * hH.derivative(xi))));  // Gamma_{i n}
    set_pair(i, it, scaled(theta_i(i), t_inv));                 // Gamma_{i n+1}
  }
  set_pair(n - 1, n, scaled(theta_t, t_inv));   // Gamma_{n-1 n} = t^-1 theta^{n+1}
  set_pair(n - 1, it, scaled(theta_u, t_inv));  // Gamma_{n-1 n+1} = t^-1 theta^n
  set_pair(n, it, add(scaled(theta_np, t_inv), scaled(theta_u, -(rho * t * h_rho))));

  // Engine side: Gamma_{mu nu}(d_c) = gbar(grad_c E_mu, E_nu).
  report.all_families_match = true;
  report.antisymmetric = true;
  std::vector<std::vector<std::vector<Expr>>> engine(
      static_cast<size_t>(N),
      std::vector<std::vector<Expr>>(static_cast<size_t>(N),
                                     std::vector<Expr>(static_cast<size_t>(N), Expr(0))));
  for (int mu = 0; mu < N; ++mu) {
    for (int c = 0; c < N; ++c) {
      auto dmu = curv.covariant_derivative_vector(frame.vectors[static_cast<size_t>(mu)], c);
      for (int nu = 0; nu < N; ++nu) {
        Expr sum;
        for (int a = 0; a < N; ++a)
          for (int b = 0; b < N; ++b) {
            if (m.components(a, b).is_zero()) continue;
            sum += dmu[static_cast<size_t>(a)] *
                   frame.vectors[static_cast<size_t>(nu)][static_cast<size_t>(b)] *
                   m.components(a, b);
          }
        engine[static_cast<size_t>(mu)][static_cast<size_t>(nu)][static_cast<size_t>(c)] = sum;
      }
    }
  }
  for (int mu = 0; mu < N && report.all_families_match; ++mu)
    for (int nu = 0; nu < N && report.all_families_match; ++nu)
      for (int c = 0; c < N; ++c) {
        const Expr& got = engine[static_cast<size_t>(mu)][static_cast<size_t>(nu)][static_cast<size_t>(c)];
        const Expr& want = expected[static_cast<size_t>(mu)][static_cast<size_t>(nu)][static_cast<size_t>(c)];
        if (!(got == want)) {
          report.all_families_match = false;
          report.first_mismatch = "Gamma_{" + std::to_string(mu) + " " + std::to_string(nu) +
                                  "} component d_" + std::to_string(c) + ": engine " + got.str() +
                                  " vs coframe " + want.str();
          break;
        }
        const Expr& transposed = engine[static_cast<size_t>(nu)][static_cast<size_t>(mu)][static_cast<size_t>(c)];
        if (!(transposed == -got)) report.antisymmetric = false;
      }
  return report;
}

}  // namespace ambientlab
