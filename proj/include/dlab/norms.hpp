// Function-space norms: H^s, C0_t H^s, X^{s,b}, Besov-X, Y, Z sum space, weighted W.
#pragma once

#include <string>

#include "dlab/dyadic.hpp"
#include "dlab/grid.hpp"

namespace dlab {

struct NormReport {
  double value = 0;
  std::string method = "direct";
  bool converged = true;  // convex oracle reached its relative tolerance
  bool saturated = false;  // weight hit the overflow cap somewhere with mass
};

// (sum_k <xi_k>^{2s} |fhat(xi_k)|^2 dxi)^{1/2}
double hs_norm(const Profile& fhat, double s);
double hs_norm_row(const Grid& g, const cplx* mode_row, double s);

// max over grid times in [t0, t1] of the spatial H^s norm of a mode field
double cth_norm(const Field& u, double s, double t0, double t1);

// || <xi>^s <tau - xi^2>^b F ||_{L^2_tau L^2_xi}
double xsb_norm(const Field& F, double s, double b);

// (sum_j 2^{-2j} (sum_d 2^{d/2} ||F||_{L^2(A_j cap B_d)})^2)^{1/2}
double besov_norm(const Field& F);

// || <xi>^{-1} F ||_{L^2_xi L^1_tau} + || F ||_{L^2_xi L^2_tau}
double y_norm(const Field& F);

enum class ZMethod { PasteHeuristic, ConvexOracle };

// inf { besov(f1) + y(f2) : f = f1 + f2 } over per-cell nonnegative splits.
// PasteHeuristic assigns whole cells: Besov side on d <= 2j + offset, Y side
// elsewhere.  ConvexOracle refines that split by coordinate descent on the
// per-cell allocation.  Optional outputs receive the achieved split of |F|.
NormReport z_norm(const Field& F, ZMethod method = ZMethod::PasteHeuristic, int offset = 2,
                  Field* f1_out = nullptr, Field* f2_out = nullptr);

// w(tau) = max(1, -tau)^10, capped at 1e300
double weight(double tau);

// z_norm of w(tau) |F|
NormReport w_norm(const Field& F, ZMethod method = ZMethod::PasteHeuristic, int offset = 2);

// solution-space norm: w_norm of <xi>^{s+1} F
NormReport ss_norm(const Field& F, double s, ZMethod method = ZMethod::PasteHeuristic,
                   int offset = 2);

enum class Embedding { f21, f22, f11, f12 };

struct RatioReport {
  double lhs = 0;     // measured left-hand norm
  double factor = 1;  // stated dyadic factor
  double z = 0;       // z_norm of the field
  double ratio = 0;   // lhs / (factor * z); the empirical constant
  int j = -1, d = -1;
  int offset = 0;
};

// Empirical constants of the mixed-norm embeddings.  f22/f11/f12 require
// support in a single annulus A_j; d is the deepest shell floor present.
RatioReport embedding_check(const Field& F, Embedding which, ZMethod method = ZMethod::PasteHeuristic,
                            int offset = 2);

enum class PasteSide { A, B };

// Side A: support in union_j A_j cap B_{>= 2j - offset}, ratio = y / z.
// Side B: support in union_j A_j cap B_{<= 2j + offset}, ratio = besov / z.
RatioReport pasting_check(const Field& F, PasteSide side, int offset = 2);

}  // namespace dlab
