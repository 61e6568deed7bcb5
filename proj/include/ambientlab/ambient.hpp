#pragma once

#include "ambientlab/ppwave.hpp"

#include <optional>
#include <vector>

namespace ambientlab {

// Coefficients of the series H = sum_k a_k rho^k solving
//   (2-n) H_rho + 2 rho H_rhorho - lap H = lap h,   H(rho=0) = 0,
// i.e. a_k = lap^k h / (k! p_k) with p_k = prod_{j<=k} (2j - n). For even
// n = 2s the series is structurally truncated at order s-1 and the
// obstruction lap^s h is attached instead of raising an error.
struct AmbientSeries {
  int n = 0;
  PPWaveProfile profile;
  std::vector<Expr> coeffs;  // a_1 .. a_K
  int truncation_order = 0;  // requested K
  std::optional<Expr> even_obstructed;  // lap^s h when n = 2s

  Expr H() const;  // sum a_k rho^k
  bool obstructed() const { return even_obstructed && !even_obstructed->is_zero(); }
  static VarId rho_var() { return SymbolTable::intern("rho"); }
  static VarId t_var() { return SymbolTable::intern("t"); }
  static VarId x_var() { return SymbolTable::intern("x"); }  // Poincare boundary coordinate
};

// p_k = prod_{j=1..k} (2j - n); exactly zero when n is even and k >= n/2.
Rational pk(int n, int k);

AmbientSeries build_series(const PPWaveProfile& p, int order);

// lap^s h du^2 for n = 2s; throws std::domain_error for odd n.
TensorComponents<Expr> obstruction(const PPWaveProfile& p);
Expr obstruction_uu(const PPWaveProfile& p);

// The (n+2)-dimensional metric
//   2 d(rho t) dt + t^2 ( 2 du (dr + (h+H) du) + sum (dx^i)^2 )
// in coordinate order (rho, x^1..x^{n-2}, u, r, t), base point t=1.
MetricField ambient_metric(const AmbientSeries& s);
MetricField ambient_metric_with(const PPWaveProfile& p, const Expr& H);

// (2-n) H_rho + 2 rho H_rhorho - lap H - lap h; the uu-component of the
// Ricci tensor of the metric above, for arbitrary polynomial H.
Expr lemma_ricci_residual(const PPWaveProfile& p, const Expr& H);

struct AmbientRicciReport {
  bool only_uu_nonzero = false;
  bool matches_lemma_residual = false;
  Expr residual_uu;          // engine value of Ric(gbar)_uu
  bool identically_zero = false;
  // Odd n with a non-terminating series: residual vanishes through rho^{K-1}
  // and equals -lap(a_K) rho^K beyond.
  bool vanishes_below_truncation = false;
  bool ok(bool expect_flat) const {
    return only_uu_nonzero && matches_lemma_residual &&
           (expect_flat ? identically_zero : vanishes_below_truncation);
  }
};
AmbientRicciReport verify_ambient_ricci_flat(AmbientSeries const& s);

// Poincare metric x^-2 (dx^2 + 1/2 g(-x^2)) on (x, x^1..x^{n-2}, u, r),
// base point x=1. The family argument -x^2 is the parameterization of the
// rho<0 side carrying the Einstein normalization Ric(g+) = -n g+.
MetricField poincare_metric(const AmbientSeries& s);

// Exact residual tensor Ric(g+) + n g+ (identically zero whenever the
// ambient metric is exactly Ricci-flat).
TensorComponents<Expr> poincare_einstein_residual(const AmbientSeries& s);

// Taylor coefficients in x of sqrt(det g_x / det g_0) for the family
// g_x = 1/2 g(-x^2); index k holds the x^k coefficient, starting at k=0.
// For every pp-wave the determinant is rho-independent, so all coefficients
// beyond the constant 1 vanish.
std::vector<Expr> volume_coefficients(const AmbientSeries& s, int order);

struct PartialSumReport {
  std::vector<double> terms;         // a_k rho^k evaluated, k = 1..Kmax
  std::vector<double> partial_sums;  // S_1..S_Kmax
  std::vector<double> diffs;         // |S_{k+1} - S_k|
};
// Numeric partial sums of H at a point, for odd n and a jet-evaluable
// profile (analytic atom or polynomial).
PartialSumReport series_partial_sums(const PPWaveProfile& p, std::span<const double> point,
                                     double rho, int kmax);

}  // namespace ambientlab
