#pragma once

#include "ambientlab/curvature.hpp"
#include "ambientlab/metric.hpp"

#include <optional>
#include <string>

namespace ambientlab {

// Profile h(x^1..x^{n-2}, u) of an n-dimensional pp-wave
//   g = sum (dx^i)^2 + 2 du (dr + h du)
// in coordinate order (x^1..x^{n-2}, u, r).
struct PPWaveProfile {
  int n = 4;
  Expr h;

  std::vector<VarId> transverse() const;
  VarId u_var() const;
  VarId r_var() const;
  std::vector<VarId> coords() const;
  Expr laplacian_h(int power = 1) const;
  // n >= 3 and h free of r, rho, t.
  void validate() const;
};

// Exact metric of (the coordinate form of) the pp-wave. Requires a
// polynomial profile; analytic-atom profiles live in the numeric tier only.
MetricField pp_metric(const PPWaveProfile& p);

// The parallel null direction K = d_r and its metric dual kappa = du.
struct PPWaveStructure {
  std::vector<Expr> K;      // contravariant components
  std::vector<Expr> kappa;  // covariant components
};
PPWaveStructure pp_structure(const PPWaveProfile& p);

// Closed-form curvature of a pp-wave, as full component tensors in the
// engine's conventions plus the scalar families they are built from:
//   Ric = -lap(h) du^2
//   P   = -lap(h)/(n-2) du^2
//   W(d_i,d_u,d_j,d_u) = -(h_ij - delta_ij lap(h)/(n-2))
//   C(d_u,d_i,d_u)     = d_i lap(h)/(n-2)
//   B   = -lap^2(h)/(n-2) du^2
// The Weyl/Riemann du^2-families carry the opposite overall sign from the
// source displays; the sign here is the one consistent with Ric = -lap(h) du^2
// and the positively-curved round sphere under a single fixed convention.
struct PPClosedForms {
  TensorComponents<Expr> ricci;                  // dense rank 2
  TensorComponents<Expr> schouten;               // dense rank 2
  std::optional<TensorComponents<Expr>> weyl;    // riemann storage, n >= 4
  TensorComponents<Expr> cotton;                 // dense rank 3
  std::optional<TensorComponents<Expr>> bach;    // dense rank 2, n >= 4
  Expr ric_uu;
  Expr schouten_uu;
  ExprMatrix weyl_family;      // (i,j) -> W(d_i,d_u,d_j,d_u)
  std::vector<Expr> cotton_family;  // i -> C(d_u,d_i,d_u)
  Expr bach_uu;
};
PPClosedForms pp_closed_forms(const PPWaveProfile& p);

struct ConformallyFlatVerdict {
  bool flat = true;
  std::string witness;  // first nonzero component, empty when flat
  Expr witness_expr;
};
ConformallyFlatVerdict is_conformally_flat(const PPWaveProfile& p);

// Exact verification of the curvature characterizations of a pp-wave:
//  (a) kappa_[a R_bc]de = 0
//  (b) R_ab^{ef} R_efcd = 0
//  (c) image of every curvature operator restricted to K-orthogonal
//      directions lies in R*K (containment; fullness flagged per point)
// plus nullity and parallelism of K.
struct CharacterizationReport {
  bool kappa_skew_zero = false;
  bool trace_condition = false;
  bool image_in_line = false;
  bool k_null = false;
  bool k_parallel = false;
  int points_checked = 0;
  int points_with_full_image = 0;
  bool all_passed() const {
    return kappa_skew_zero && trace_condition && image_in_line && k_null && k_parallel;
  }
};
CharacterizationReport verify_pp_characterizations(const PPWaveProfile& p,
                                                   const std::vector<std::map<VarId, Rational>>& points);

// Ricci-flat (equivalently Einstein) iff lap(h) == 0.
bool is_ricci_flat(const PPWaveProfile& p);

}  // namespace ambientlab
