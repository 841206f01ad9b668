// Analytic lattice spacetime transform of the first iterate for band data.
#pragma once

#include <vector>

#include "dlab/grid.hpp"

namespace dlab {

enum class TimeKernel { Eta, EtaSq, EtaFourth, A, AEtaSq };

// Lattice time transforms dt sum_n k(t_n) e^{i t_n tau} of the cutoff kernels,
// tabulated once on a fine reference lattice.  Any run lattice with period
// P = 2 pi / dt is recovered exactly: arguments reduce mod P, the smooth
// kernels (eta, eta^2, eta^4; real even) match the continuum transform inside
// the table and vanish beyond it, and the sign-jump kernels (a, a eta^2;
// imaginary odd) carry their 1/sigma image tails resummed into
// (pi/P) cot(pi sigma / P) differences.  Valid for P > 1600.
class TimeKernelTables {
 public:
  static const TimeKernelTables& get();

  double sig_max() const { return sigMax_; }
  double reach() const { return reach_; }  // smooth kernels negligible beyond this

  double eta_hat(double sig, double P) const;
  double h2_hat(double sig, double P) const;
  double h4_hat(double sig, double P) const;
  cplx a_hat(double sig, double P) const;
  cplx g_hat(double sig, double P) const;

 private:
  TimeKernelTables();
  double interp(const std::vector<double>& tab, double sig) const;
  double jump(const std::vector<double>& tab, double sig, double P) const;

  double dsig_ = 0, sigMax_ = 0, Pref_ = 0, reach_ = 0;
  long long half_ = 0;
  std::vector<double> etaTab_, h2Tab_, h4Tab_, aTab_, gTab_;
};

// table-backed evaluation on the run lattice with period P = 2 pi / dt
cplx kernel_hat(TimeKernel which, double sig, double P);

// direct lattice sum for cross-checks (all kernels vanish for |t| > 10)
cplx kernel_lattice_direct(TimeKernel which, double sig, double dt);

// Full tau columns of the spacetime transform of the Duhamel iterate that
// apply_N2 builds from L fhat: the parabola ridge etahat(tau - xi^2) C1(xi)
// plus ahat(tau - xi^2) times the comb of eta^2 teeth at the pair frequencies.
// Entry r of a column is tau index m = r - Nt/2.
std::vector<std::vector<cplx>> transform_columns(const Profile& fhat, const std::vector<int>& ks);

// Picard-path A_2 for band data on grids too wide to materialize as fields:
// only the |s| < 2 rows of the product exist, and the output is read on the
// selected columns.  Matches apply_N2 row for row; result[i][j] is time
// times[i] at column ks[j].
std::vector<std::vector<cplx>> banded_a2(const Profile& fhat, const std::vector<double>& times,
                                         const std::vector<int>& ks);

}  // namespace dlab
