// Randomized and structured verification of the dyadic bilinear estimates.
#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "dlab/dyadic.hpp"
#include "dlab/grid.hpp"

namespace dlab {

enum class TestKind { UniformRandom, ParabolaHugging, Column, Band };

struct TestFunctionSpec {
  CellSelector cell;                        // dyadic support region
  TestKind kind = TestKind::UniformRandom;  // shape of the mass inside it
  std::uint64_t seed = 0;
  int sign = 0;  // xi half-space: +1 keeps xi > 0, -1 keeps xi < 0, 0 keeps both
};

// Nonnegative spectral field supported exactly in the requested region,
// deterministic in the spec.  ParabolaHugging additionally clips to d <= 2,
// Column keeps a single xi column, Band keeps a narrow band around
// +-(3/2) 2^j (the exact-j selector value, or the top matching annulus).
Field gen_test_function(const GridPtr& g, const TestFunctionSpec& spec);

// |lhs - rhs| of the identity tau - xi^2 = (tau1 - xi1^2) + (tau2 - xi2^2)
// - 2 xi1 xi2 under tau = tau1 + tau2, xi = xi1 + xi2.
double resonance_defect(double tau1, double xi1, double tau2, double xi2);

// max of the three <.> deviations minus 2^-5 <xi1 xi2>; never negative.
double resonance_margin(double tau1, double xi1, double tau2, double xi2);

enum class ConvPath { Auto, Direct, Fft };

// Exact linear spacetime convolution carrying the dtau dxi measure,
// restricted back to the input lattice.  Auto picks the direct sum for
// sparse inputs and the zero-padded FFT otherwise; both give the same
// values to rounding.
Field convolve(const Field& f, const Field& g, ConvPath path = ConvPath::Auto);

enum class EstimateId {
  BilHalt,       // || f*g ||_L2 <= C 2^{j1+j2} <D>^{-1/2} besov(f) besov(g)
  BilDual,       // 2^{-d/2} || f*g ||_{L2(A_j+ cap B_d)} <= C 2^{j1} (2^{d/2}+D)^{-1/2} besov(f) ||g||_L2
  MeasureBound,  // shell-intersection cell area <= C 2^{d1+d2} / (2^{d1/2} + D)
  KPoint,        // w(tau) <= C w(tau1) w(tau2) on the full lattice scan
  HighLow,       // || 1_{A_j} <tau-xi^2>^{-1} f*g ||_besov <= C (2^{-j2/10} + 2^{-(j-j2)/10}) z(f) z(g)
  HighHigh,      // || 1_{A_{<=j1-offset}} w <tau-xi^2>^{-1} (f/w * g/w) ||_Y <= C z(f) z(g)
  WBilinear,     // || <tau-xi^2>^{-1} f*g ||_W <= C w(f) w(g)
  YyBilinear,    // || w <tau-xi^2>^{-1} (f/w * g/w) ||_Z <= C y(f) y(g)
};

std::string estimate_name(EstimateId id);
EstimateId parse_estimate(const std::string& name);  // ConfigError on unknown names

struct EstimateParams {
  int j1 = -1, j2 = -1;  // input annuli; -1 picks grid-coupled defaults per trial
  int j = -1;            // output annulus (bil-dual, high-low)
  int d = -1;            // output shell (bil-dual) or first shell (measure-bound)
  int d2 = -1;           // second shell (measure-bound)
  double D = -1;         // xi separation; -1 cycles {0, 1/4, 1/2} of xi_max
  int offset = 2;        // desk offset standing in for the paper-scale slack
  bool wrongExponent = false;  // bil-halt control: claim one extra power of <D> decay
};

// LHS / RHS of one estimate on given fields; the empirical constant.
// MeasureBound and KPoint read only the lattice from f.  Hypothesis
// violations throw UsageError naming the violated support condition.
double estimate_ratio(EstimateId id, const Field& f, const Field& g, const EstimateParams& p);

struct Trial {
  TestFunctionSpec f, g;
  EstimateParams params;  // resolved: no -1 fields remain
};

// Deterministic trial plan satisfying the estimate's hypotheses on this grid.
Trial plan_trial(EstimateId id, const GridPtr& g, const EstimateParams& base, std::uint64_t seed,
                 int trial);

// Generates the planned fields and evaluates the estimate.
double trial_ratio(EstimateId id, const GridPtr& g, const EstimateParams& base, std::uint64_t seed,
                   int trial);

struct SweepPoint {
  GridSpec grid;
  double maxRatio = 0;
  int argmaxTrial = -1;
};

struct SweepReport {
  EstimateId estimate = EstimateId::BilHalt;
  int trials = 0;
  std::vector<SweepPoint> trend;  // one per grid, coarsest first
  Trial argmax;                   // trial behind the largest ratio seen overall
  bool raised = false;            // finest max grew past 1.5x the coarsest max
};

// Runs the seeded trials on every grid; an explicit base.D >= 0 is scaled
// with xi_max across the list so separation-driven decay stays falsifiable.
// KPoint ignores trials (the scan is field-free; one point per grid).
SweepReport refinement_sweep(EstimateId id, const EstimateParams& base, int trials,
                             std::uint64_t seed, const std::vector<GridSpec>& grids);

// Three extent-doubling refinements at fixed lattice spacing.
std::vector<GridSpec> default_fuzz_grids();

}  // namespace dlab
