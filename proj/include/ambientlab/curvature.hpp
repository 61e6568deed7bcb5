#pragma once

#include "ambientlab/eigen_support.hpp"
#include "ambientlab/metric.hpp"
#include "ambientlab/tensor.hpp"

#include <optional>
#include <stdexcept>

namespace ambientlab {

// Scalar-ring adapters. A ring supplies coordinate differentiation, metric
// inversion and rational scaling for its scalar type; the curvature formulas
// below are shared between the exact and the numeric tier.

struct ExprRing {
  using Scalar = Expr;
  std::vector<VarId> coords;

  int dim() const { return static_cast<int>(coords.size()); }
  Expr d(const Expr& e, int i) const { return e.derivative(coords[static_cast<size_t>(i)]); }
  static Expr scale(const Expr& e, const Rational& q) { return q * e; }
  // Exact inverse via adjugate / determinant. The determinant must be a
  // single (Laurent) monomial; every metric this artifact constructs has a
  // constant or monomial determinant. Anything else is rejected: a general
  // polynomial determinant would need rational-function arithmetic.
  MatrixX<Expr> invert(const MatrixX<Expr>& g) const {
    const Expr det = determinant(g);
    if (det.is_zero()) throw std::domain_error("metric determinant is identically zero");
    if (!det.is_monomial())
      throw std::domain_error(
          "exact tier: metric determinant '" + det.str() +
          "' is not a monomial; exact inversion would require rational functions");
    const auto& [mono, coeff] = det.single_term();
    MatrixX<Expr> adj = adjugate(g);
    MatrixX<Expr> inv(g.rows(), g.cols());
    for (int i = 0; i < g.rows(); ++i)
      for (int j = 0; j < g.cols(); ++j) inv(i, j) = adj(i, j).divided_by_monomial(coeff, mono);
    return inv;
  }
};

struct JetRing {
  using Scalar = Jet;
  int dimension = 0;

  int dim() const { return dimension; }
  Jet d(const Jet& j, int i) const { return j.derivative(i); }
  static Jet scale(const Jet& j, const Rational& q) { return Jet(to_double(q)) * j; }
  // A0^-1 by LU on the value part, then the truncated Neumann series for the
  // nilpotent remainder; exact within the jet order.
  MatrixX<Jet> invert(const MatrixX<Jet>& g) const;
};

template <class Ring>
struct ConformalSuite {
  using S = typename Ring::Scalar;
  TensorComponents<S> schouten;           // dense rank 2
  S j_trace;
  std::optional<TensorComponents<S>> weyl;    // riemann storage, dim >= 4
  TensorComponents<S> cotton;             // dense rank 3, C_abc = grad_c P_ab - grad_b P_ac
  std::optional<TensorComponents<S>> bach;    // dense rank 2, dim >= 4
};

// Lazily computed curvature bundle of one metric over one scalar ring.
//
// Conventions (fixed by the standard oracles: round sphere has
// Gamma^theta_{phi phi} = -sin cos, R_{theta phi theta phi} = +sin^2):
//   Gamma^a_{bc} = 1/2 g^{ad} (d_b g_{dc} + d_c g_{db} - d_d g_{bc})
//   R^a_{bcd}    = d_c Gamma^a_{db} - d_d Gamma^a_{cb}
//                  + Gamma^a_{ce} Gamma^e_{db} - Gamma^a_{de} Gamma^e_{cb}
//   R_{abcd}     = g_{ae} R^e_{bcd},   Ric_{bd} = R^a_{bad},  scal = tr Ric
//   P            = (Ric - scal g / (2(n-1))) / (n-2),  J = tr P
//   W            = R - P (kulkarni-nomizu) g
//   C_{abc}      = grad_c P_{ab} - grad_b P_{ac}
//   B_{ab}       = grad_c C_{ab}^c - P^{cd} W_{cabd}
template <class Ring>
class Curvature {
 public:
  using S = typename Ring::Scalar;

  Curvature(Ring ring, MatrixX<S> metric) : ring_(std::move(ring)), g_(std::move(metric)) {
    if (g_.rows() != ring_.dim() || g_.cols() != ring_.dim())
      throw std::invalid_argument("metric size does not match ring dimension");
  }

  int dim() const { return ring_.dim(); }
  const Ring& ring() const { return ring_; }
  const MatrixX<S>& g() const { return g_; }

  const MatrixX<S>& ginv() {
    if (!ginv_) ginv_ = ring_.invert(g_);
    return *ginv_;
  }

  const TensorComponents<S>& christoffel() {
    if (!gamma_) {
      const int n = dim();
      auto& gi = ginv();
      auto gamma = TensorComponents<S>::christoffel(n);
      // Cache first derivatives of the metric.
      std::vector<S> dg(static_cast<size_t>(n * n * n), S(0));
      auto dgat = [&](int c, int i, int j) -> S& {
        return dg[static_cast<size_t>((c * n + i) * n + j)];
      };
      for (int c = 0; c < n; ++c)
        for (int i = 0; i < n; ++i)
          for (int j = i; j < n; ++j) {
            dgat(c, i, j) = ring_.d(g_(i, j), c);
            if (i != j) dgat(c, j, i) = dgat(c, i, j);
          }
      gamma.for_each_canonical([&](std::span<const int> idx, S& out) {
        const int a = idx[0], b = idx[1], c = idx[2];
        S sum(0);
        for (int d = 0; d < n; ++d) {
          if constexpr (std::is_same_v<S, Expr>) {
            if (gi(a, d).is_zero()) continue;
          }
          sum += gi(a, d) * (dgat(b, d, c) + dgat(c, d, b) - dgat(d, b, c));
        }
        out = ring_.scale(sum, Rational(1, 2));
      });
      gamma_ = std::move(gamma);
    }
    return *gamma_;
  }

  // R^a_{bcd}, dense storage; antisymmetry in (c,d) is used when computing.
  const TensorComponents<S>& riemann_mixed() {
    if (!riemann_mixed_) {
      const int n = dim();
      auto& gamma = christoffel();
      auto r = TensorComponents<S>::dense(n, 4);
      for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
          for (int c = 0; c < n; ++c)
            for (int d = c + 1; d < n; ++d) {
              S v = ring_.d(gamma.get(a, d, b), c) - ring_.d(gamma.get(a, c, b), d);
              for (int e = 0; e < n; ++e)
                v += gamma.get(a, c, e) * gamma.get(e, d, b) -
                     gamma.get(a, d, e) * gamma.get(e, c, b);
              r.at(a, b, c, d) = v;
              r.at(a, b, d, c) = -v;
            }
      riemann_mixed_ = std::move(r);
    }
    return *riemann_mixed_;
  }

  // Fully covariant R_{abcd}, dense storage. Its index symmetries are
  // theorems, not storage constraints; verify_riemann_symmetries checks them.
  const TensorComponents<S>& riemann() {
    if (!riemann_lower_) {
      const int n = dim();
      auto& rm = riemann_mixed();
      auto r = TensorComponents<S>::dense(n, 4);
      r.for_each_canonical([&](std::span<const int> idx, S& out) {
        const int a = idx[0], b = idx[1], c = idx[2], d = idx[3];
        if (c == d) return;
        S sum(0);
        for (int e = 0; e < n; ++e) {
          if constexpr (std::is_same_v<S, Expr>) {
            if (g_(a, e).is_zero()) continue;
          }
          sum += g_(a, e) * rm.get(e, b, c, d);
        }
        out = sum;
      });
      riemann_lower_ = std::move(r);
    }
    return *riemann_lower_;
  }

  const TensorComponents<S>& ricci() {
    if (!ricci_) {
      const int n = dim();
      auto& rm = riemann_mixed();
      auto ric = TensorComponents<S>::dense(n, 2);
      ric.for_each_canonical([&](std::span<const int> idx, S& out) {
        S sum(0);
        for (int a = 0; a < n; ++a) sum += rm.get(a, idx[0], a, idx[1]);
        out = sum;
      });
      ricci_ = std::move(ric);
    }
    return *ricci_;
  }

  const S& scalar_curvature() {
    if (!scal_) {
      const int n = dim();
      auto& ric = ricci();
      auto& gi = ginv();
      S sum(0);
      for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) sum += gi(a, b) * ric.get(a, b);
      scal_ = std::move(sum);
    }
    return *scal_;
  }

  const ConformalSuite<Ring>& conformal_suite() {
    if (!suite_) {
      const int n = dim();
      if (n < 3) throw std::domain_error("conformal curvature requires dim >= 3");
      ConformalSuite<Ring> suite{TensorComponents<S>::dense(n, 2), S(0), std::nullopt,
                                 TensorComponents<S>::dense(n, 3), std::nullopt};
      auto& ric = ricci();
      const S& sc = scalar_curvature();
      // P = (Ric - scal g / (2(n-1))) / (n-2)
      suite.schouten.for_each_canonical([&](std::span<const int> idx, S& out) {
        S v = ric.get(idx) - ring_.scale(sc * g_(idx[0], idx[1]), Rational(1, 2 * (n - 1)));
        out = ring_.scale(v, Rational(1, n - 2));
      });
      auto& gi = ginv();
      {
        S j(0);
        for (int a = 0; a < n; ++a)
          for (int b = 0; b < n; ++b) j += gi(a, b) * suite.schouten.get(a, b);
        suite.j_trace = std::move(j);
      }
      if (n >= 4) {
        auto& rl = riemann();
        auto w = TensorComponents<S>::riemann(n);
        auto& p = suite.schouten;
        w.for_each_canonical([&](std::span<const int> idx, S& out) {
          const int a = idx[0], b = idx[1], c = idx[2], d = idx[3];
          out = rl.get(a, b, c, d) -
                (p.get(a, c) * g_(b, d) - p.get(a, d) * g_(b, c) + p.get(b, d) * g_(a, c) -
                 p.get(b, c) * g_(a, d));
        });
        suite.weyl = std::move(w);
      }
      {
        auto dp = covariant_derivative(suite.schouten);
        suite.cotton.for_each_canonical([&](std::span<const int> idx, S& out) {
          out = dp.get(idx[0], idx[1], idx[2]) - dp.get(idx[0], idx[2], idx[1]);
        });
      }
      if (n >= 4) {
        auto dc = covariant_derivative(suite.cotton);
        auto& w = *suite.weyl;
        auto& p = suite.schouten;
        MatrixX<S> p_raised(n, n);  // P^{ce}
        for (int c = 0; c < n; ++c)
          for (int e = 0; e < n; ++e) {
            S v(0);
            for (int d = 0; d < n; ++d)
              for (int f = 0; f < n; ++f) {
                if constexpr (std::is_same_v<S, Expr>) {
                  if (p.get(d, f).is_zero()) continue;
                }
                v += gi(c, d) * gi(e, f) * p.get(d, f);
              }
            p_raised(c, e) = std::move(v);
          }
        auto b = TensorComponents<S>::dense(n, 2);
        b.for_each_canonical([&](std::span<const int> idx, S& out) {
          S v(0);
          for (int c = 0; c < n; ++c)
            for (int d = 0; d < n; ++d) v += gi(c, d) * dc.get(idx[0], idx[1], d, c);
          for (int c = 0; c < n; ++c)
            for (int e = 0; e < n; ++e) {
              if constexpr (std::is_same_v<S, Expr>) {
                if (p_raised(c, e).is_zero()) continue;
              }
              v -= p_raised(c, e) * w.get(c, idx[0], idx[1], e);
            }
          out = v;
        });
        suite.bach = std::move(b);
      }
      suite_ = std::move(suite);
    }
    return *suite_;
  }

  // Covariant derivative of a covariant tensor; the derivative slot is last:
  // (grad T)(i1..ir, c) = grad_c T_{i1..ir}.
  TensorComponents<S> covariant_derivative(const TensorComponents<S>& t) {
    const int n = dim();
    const int r = t.rank();
    auto& gamma = christoffel();
    auto out = TensorComponents<S>::dense(n, r + 1);
    std::vector<int> inner(static_cast<size_t>(r));
    out.for_each_canonical([&](std::span<const int> idx, S& v) {
      for (int k = 0; k < r; ++k) inner[static_cast<size_t>(k)] = idx[static_cast<size_t>(k)];
      const int c = idx[static_cast<size_t>(r)];
      // d_c applied to the component function
      S sum = d_component(t, inner, c);
      for (int k = 0; k < r; ++k) {
        const int orig = inner[static_cast<size_t>(k)];
        for (int e = 0; e < n; ++e) {
          inner[static_cast<size_t>(k)] = e;
          sum -= gamma.get(e, c, orig) * t.get(std::span<const int>(inner.data(), inner.size()));
        }
        inner[static_cast<size_t>(k)] = orig;
      }
      v = std::move(sum);
    });
    return out;
  }

  // (grad_c V)^a for a contravariant vector field given by components.
  std::vector<S> covariant_derivative_vector(std::span<const S> v, int c) {
    const int n = dim();
    auto& gamma = christoffel();
    std::vector<S> out(static_cast<size_t>(n), S(0));
    for (int a = 0; a < n; ++a) {
      S sum = ring_.d(v[static_cast<size_t>(a)], c);
      for (int e = 0; e < n; ++e) sum += gamma.get(a, c, e) * v[static_cast<size_t>(e)];
      out[static_cast<size_t>(a)] = std::move(sum);
    }
    return out;
  }

 private:
  S d_component(const TensorComponents<S>& t, std::span<const int> idx, int c) {
    return ring_.d(t.get(idx), c);
  }

  Ring ring_;
  MatrixX<S> g_;
  std::optional<MatrixX<S>> ginv_;
  std::optional<TensorComponents<S>> gamma_;
  std::optional<TensorComponents<S>> riemann_mixed_;
  std::optional<TensorComponents<S>> riemann_lower_;
  std::optional<TensorComponents<S>> ricci_;
  std::optional<S> scal_;
  std::optional<ConformalSuite<Ring>> suite_;
};

using ExactCurvature = Curvature<ExprRing>;
using JetCurvature = Curvature<JetRing>;

// Convenience: exact curvature bundle of a MetricField.
inline ExactCurvature exact_curvature(const MetricField& m) {
  return ExactCurvature(ExprRing{m.coords}, m.components);
}

// Exact verification helpers (Expr tier).
struct RiemannSymmetryReport {
  bool antisym_first_pair = true;
  bool antisym_last_pair = true;
  bool pair_symmetry = true;
  bool first_bianchi = true;
  bool all() const { return antisym_first_pair && antisym_last_pair && pair_symmetry && first_bianchi; }
};
RiemannSymmetryReport verify_riemann_symmetries(ExactCurvature& c);

// Every component of grad g (exact zero for the Levi-Civita connection).
bool metricity_holds(ExactCurvature& c);

}  // namespace ambientlab
