#pragma once

#include "ambientlab/ambient.hpp"

namespace ambientlab {

// The frame dual to the ambient coframe
//   theta^0 = d(rho t), theta^i = t dx^i, theta^{n-1} = t^2 (dr + (h+H) du),
//   theta^n = du, theta^{n+1} = dt:
//   E_0 = t^-1 d_rho, E_i = t^-1 d_i, E_{n-1} = t^-2 d_r,
//   E_n = d_u - (h+H) d_r, E_{n+1} = d_t - (rho/t) d_rho.
// Components are Laurent-exact in t.
struct FrameField {
  std::vector<std::vector<Expr>> vectors;  // (n+2) frame vectors x (n+2) components
};
FrameField ambient_frame(const AmbientSeries& s);

// Gram matrix gbar(E_mu, E_nu); equals the constant matrix with
// G(0,n+1) = G(n-1,n) = 1, G(i,j) = delta_ij for every profile.
ExprMatrix frame_gram(const FrameField& f, const MetricField& ambient);
bool frame_gram_is_standard(const ExprMatrix& gram, int n);

// Invariance of the totally null plane N = span(d_rho, d_r) under the
// Levi-Civita connection: for every frame direction X and V in {E_0, E_{n-1}},
// gbar(grad_X V, W) = 0 for all W in {E_0, E_i, E_{n-1}} (N = (N-perp)-perp).
struct NullPlaneReport {
  bool plane_totally_null = false;    // gbar restricted to span(d_rho, d_r) is zero
  bool symbolic_invariance = false;   // deviations identically zero as polynomials
  double max_numeric_deviation = 0;   // jet-tier check at sample points
  int points_checked = 0;
  bool passed(double tol) const {
    return plane_totally_null && symbolic_invariance && max_numeric_deviation < tol;
  }
};
NullPlaneReport null_plane_invariance(const AmbientSeries& s, uint64_t seed, int num_points);

// Exact reproduction of the six connection 1-form families of the ambient
// coframe computation through gbar(grad_X E_mu, E_nu), including
// antisymmetry and vanishing of every other family.
struct ConnectionFormsReport {
  bool all_families_match = false;
  bool antisymmetric = false;
  std::string first_mismatch;
};
ConnectionFormsReport verify_connection_forms(const AmbientSeries& s);

}  // namespace ambientlab
