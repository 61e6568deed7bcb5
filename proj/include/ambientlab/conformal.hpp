#pragma once

#include "ambientlab/ppwave.hpp"
#include "ambientlab/sampling.hpp"

#include <optional>
#include <string>

namespace ambientlab {

struct VectorFieldExpr {
  std::vector<Expr> comp;  // contravariant components, one per coordinate
};

// Trace-free part of E = P - grad(d Upsilon) + d Upsilon (x) d Upsilon,
// i.e. E - (tr_g E / n) g. Zero iff the metric is conformally Einstein with
// scaling function Upsilon (pure-trace criterion).
TensorComponents<Expr> conformal_einstein_residual(const MetricField& g, const Expr& upsilon);

// Necessary conditions for conformally Einstein, in the engine's sign
// conventions (the Weyl sign here is opposite to the source displays, so the
// vanishing combinations are C - W(Y,.,.,.) and B - (n-4) W(Y,.,.,Y)):
//   res212_abc = C_abc - Y^d W_dabc
//   res213_ab  = B_ab  - (n-4) Y^c Y^d W_cabd
struct WeaklyGenericResiduals {
  TensorComponents<Expr> res212;  // dense rank 3
  TensorComponents<Expr> res213;  // dense rank 2
};
WeaklyGenericResiduals weakly_generic_conditions(const MetricField& g, const VectorFieldExpr& y);

// pp-wave specialization of the conditions above (n > 3):
//   pp212_i = d_i lap h - Y^i lap h + (n-2) sum_k Y^k h_ki
//   pp213   = lap^2 h - (n-4) lap h sum (Y^k)^2 + (n-2)(n-4) sum Y^k Y^l h_kl
//   duy     = Y^u
struct PPConditionResiduals {
  std::vector<Expr> pp212;
  Expr pp213;
  Expr duy;
};
PPConditionResiduals pp_conditions(const PPWaveProfile& p, const VectorFieldExpr& y);

struct GaussianRational {
  Rational re, im;
  GaussianRational conj() const { return {re, -im}; }
  bool is_zero() const { return re == 0 && im == 0; }
};

// alpha(Z, u) = sum_k c_k(u) Z^k with Gaussian-rational coefficients, in the
// integer-normalized chart Z = x1 + i x2 (the sqrt(2) of the usual
// z = (x1 + i x2)/sqrt(2) is absorbed into the coefficients; verdicts are
// invariant under that rescaling and all expansions stay rational).
struct HolomorphicPoly {
  // coeff[k][j] = coefficient of Z^k u^j
  std::vector<std::vector<GaussianRational>> coeff;

  bool is_zero() const;
  // d^2/dZ^2 alpha == 0, i.e. degree <= 1 in Z.
  bool second_z_derivative_vanishes() const;
};

// Real polynomial profile h = Zbar alpha + Z conj(alpha) + beta + conj(beta);
// every such profile satisfies lap^2 h = 0 (Bach-flat), and conversely.
PPWaveProfile bachflat4_profile(const HolomorphicPoly& alpha, const HolomorphicPoly& beta);

// Full 4-dimensional pipeline for beta = 0: Bach-flatness, the candidate
// field Y = -(2 x1 d1 + 2 x2 d2)/(x1^2+x2^2) + f dr solving the
// Cotton-flatness condition, and the pure-trace failure establishing
// "not conformally Einstein" whenever d^2 alpha != 0.
struct Bachflat4Report {
  bool bach_flat_engine = false;       // engine Bach tensor identically zero
  bool d2alpha_zero = false;
  bool conformally_flat = false;       // engine Weyl identically zero
  bool candidate_checked = false;      // false when conformally flat (short-circuit)
  double max_res212 = 0;               // candidate Y in condition (212), over samples
  double max_res213 = 0;
  double max_dzdzbar_error = 0;        // |(E_11+E_22) - 2/(z zbar)|
  double min_dzdzbar_value = 0;        // nowhere-vanishing witness
  double max_drdu = 0;                 // |E_ru|, identically zero component
  bool dr_y_r_independent = false;     // corollary: d_r(dr(Y)) = 0
  bool cotton_flat = false;            // (212) solved by a gradient
  bool conformally_einstein = false;
  uint64_t seed = 0;
  int points = 0;
  std::string verdict;
};
Bachflat4Report bachflat4_analysis(const HolomorphicPoly& alpha, const Expr& f_of_u,
                                   uint64_t seed, int num_points, double tolerance);

// f(u) = f0 / (1 - f0 (u - u0)), the solution of fdot = f^2; the conformal
// factor flow between non-homothetic Ricci-flat pp-waves.
struct BrinkmannFlow {
  Rational f0, u0;
  Expr numerator;    // f0
  Expr denominator;  // 1 - f0 (u - u0), polynomial in u
  Rational value(const Rational& u) const;
  Rational derivative_value(const Rational& u) const;  // f0^2 / den^2
  // fdot - f^2 == 0 as a rational identity over the common denominator.
  bool satisfies_ode() const;
};
BrinkmannFlow brinkmann_flow(const Rational& f0, const Rational& u0);

// Max |trace-free part of P - grad(d Upsilon) + (d Upsilon)^2| over sample
// points, for d Upsilon = f du with f from the flow, on a pp-wave metric.
// Exact rational evaluation pointwise; poles of f are rejected.
double brinkmann_conformal_residual(const PPWaveProfile& p, const BrinkmannFlow& flow,
                                    uint64_t seed, int num_points);

// The Example-style origin test: a point where every Hessian entry of h and
// lap h vanish but lap^2 h does not makes pp213 unsatisfiable for every Y.
struct UnsatisfiablePoint {
  bool found = false;
  std::map<VarId, Rational> point;
  Rational pp213_value;  // = lap^2 h at the point
};
UnsatisfiablePoint find_pp213_obstruction(const PPWaveProfile& p, uint64_t seed, int num_points);

}  // namespace ambientlab
