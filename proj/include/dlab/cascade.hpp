// Band-data cascade experiment: f_N family, direct first-iterate quadrature, exponent fits.
#pragma once

#include <vector>

#include "dlab/grid.hpp"

namespace dlab {

enum class Normalize { Ball, UnitHs };

struct CascadeConfig {
  double r = 1;
  double s = -1.25;
  double sPrime = -3;
  std::vector<int> NList;
  Normalize normalize = Normalize::Ball;
};

// N list ascending, every N > 100, r > 0
void validate(const CascadeConfig& cfg);

// Indicator bands v on |xi| in [N-10, N+10], both signs; v = r N / 1000 (Ball)
// or rescaled so hs_norm(f, s) == 1 exactly (UnitHs).
Profile make_fN(const GridPtr& g, double r, int N, Normalize normalize, double s = -1);

// Spatial grid for the experiment: L = 8N for N <= 256 (comb spacing pi/2
// independent of N), capped at L = 2048 above that so Nx stays addressable;
// dxi <= 1/4 and xi_max comfortably past the bands either way.
GridPtr cascade_grid(int N);

struct A2Options {
  enum class Nodes { Fixed, Matched };
  Nodes nodes = Nodes::Fixed;
  int minNodes = 64;    // Fixed: at least this many uniform panels
  int xi1Stride = 1;    // subsample the inner lattice sum (trapezoid weights per run)
  double xiCap = -1;    // when >= 0 restrict output columns to |xi| <= xiCap
  int xiOutStride = 1;  // evaluate every stride-th output column, weight accordingly
};

// H^{s'}-weighted L^2_xi norm of the first-iterate integral
//   I(t,xi) = int_0^t int e^{-i(t-t')xi^2} e^{-it'(xi1^2+(xi-xi1)^2)}
//             fhat(xi1) fhat(xi-xi1) dxi1/(2pi) dt'
// with the t' integral done as an exact closed-form trapezoid (geometric
// phase sums), Matched nodes reproducing the Duhamel lattice quadrature.
double a2_direct(const Profile& fhat, double t, double sPrime, const A2Options& opt = {});

// underlying column values I(t, xi_k) for signed column indices ks
std::vector<cplx> a2_direct_columns(const Profile& fhat, double t, const std::vector<int>& ks,
                                    const A2Options& opt = {});

// min over t' in [0,t], |xi| <= 1, xi1 across the bands of cos of the total
// oscillator phase; stays above 1/2 while t N^2 is small
double phase_check(int N, double t);

struct CascadeRow {
  int N = 0;
  double hs_data_norm = 0;
  double sup_t_a2_norm = 0;
  double a2_at_witness_t = 0;  // H^{s'} size at t = 1/(100 N^2)
  double phase_min = 0;
  double beta_running = 0;  // running log-log slope of hs_data_norm, 0 in the first row
};

struct CascadeReport {
  std::vector<CascadeRow> rows;
  double fitted_slope = 0;       // log-log slope of hs_data_norm over the full list
  double witness_variation = 0;  // (max - min) / max of a2_at_witness_t
  bool pass = false;             // slope within 0.05 of 1+s and witness variation < 20%
};

CascadeReport cascade_experiment(const CascadeConfig& cfg);

// --- spacetime-transform probes (analytic band engine, see engine.hpp) ---

struct ProbeOptions {
  double kappa = 3.2;  // virtual tau extent >= kappa N^2
  double TwV = 16;     // virtual time half-width, sets dtau = pi / TwV
  int xiSamples = 33;  // rectangle scan columns across |xi| <= 1
};

struct RectangleReport {
  double s = 0;
  std::vector<int> N;
  std::vector<double> peak;  // max of <tau - xi^2> |u~| over the rectangle
  double beta = 0;           // fitted log-log slope of peak vs N
};

// Peak of the weighted spacetime transform of the first iterate on the
// rectangle |xi| <= 1, |tau - 2N^2| <= N.  Pre: normalize == UnitHs.
RectangleReport rectangle_exponent(const CascadeConfig& cfg, const ProbeOptions& opt = {});

struct XsbPoint {
  double s = 0, b = 0;
  double gamma = 0;           // fitted log-log slope of the norm vs N
  std::vector<double> value;  // one per N
};

struct XsbProbeReport {
  std::vector<int> N;
  std::vector<XsbPoint> points;
};

// X^{s,b} norms of the first iterate's transform at s = b - 5/4 +- ds for each
// b in bList; the growth exponent changes sign across that line.
XsbProbeReport xsb_probe(const std::vector<int>& NList, const std::vector<double>& bList,
                         double ds, const ProbeOptions& opt = {});

}  // namespace dlab
