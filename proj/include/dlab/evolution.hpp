// Time cutoffs eta and a, free Schroedinger propagator, operators L and N2.
#pragma once

#include <functional>

#include "dlab/grid.hpp"

namespace dlab {

// Even bump: 1 on |t| <= plateau, 0 on |t| >= support, smooth bridge between.
struct BumpProfile {
  double plateau = 1;
  double support = 2;

  double eval(double t) const;
};

double eval_eta(double t);  // default profile (1, 2)
double eval_a(double t);    // a(t) = sgn(t) eta(t/5) / 2, so a(0) = 0

// multiplies by e^{-i t xi^2}; unitary on every H^s
Profile propagate(const Profile& fhat, double t);

// u(t, xi) = eta(t) e^{-i t xi^2} fhat(xi) on the time lattice
Field apply_L(const Profile& fhat);

// N2(u, v)(t) = eta(t) e^{it dxx} Int a(s) e^{-is dxx} (u v)(s) ds
//             + Int a(t-s) e^{i(t-s) dxx} (u v)(s) ds
// Products are dealiased by 2x zero padding; spectrum of u v that does not fit
// on the grid is discarded, and if its relative mass exceeds aliasing_budget a
// ResolutionError is raised (budget >= 1 documents unchecked truncation).
Field apply_N2(const Field& u, const Field& v, double aliasing_budget = 1e-8,
               double* alias_ratio_out = nullptr);

// |Int_0^t g - (eta(t) Int a g + Int a(t - s) g(s) ds)| by trapezoid quadrature
double duhamel_identity_defect(const std::function<cplx(double)>& g, double t, double ds = 1e-3,
                               double s_lo = -16, double s_hi = 16);

}  // namespace dlab
