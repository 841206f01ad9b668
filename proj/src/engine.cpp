// Analytic lattice spacetime transform of the first iterate for band data.
#include "dlab/engine.hpp"

#include <algorithm>
#include <cmath>

#include "dlab/cascade.hpp"
#include "dlab/evolution.hpp"
#include "dlab/fft.hpp"

namespace dlab {

namespace {

double kernel_value(TimeKernel which, double t) {
  switch (which) {
    case TimeKernel::Eta: return eval_eta(t);
    case TimeKernel::EtaSq: {
      double e = eval_eta(t);
      return e * e;
    }
    case TimeKernel::EtaFourth: {
      double e = eval_eta(t);
      return e * e * e * e;
    }
    case TimeKernel::A: return eval_a(t);
    case TimeKernel::AEtaSq: {
      double e = eval_eta(t);
      return eval_a(t) * e * e;
    }
  }
  return 0;
}

// (pi/P) cot(pi sig / P) - (pi/Pref) cot(pi sig / Pref); the 1/sig poles
// cancel, so small sig goes through the series difference
double cot_diff(double sig, double P, double Pref) {
  double a = M_PI / P, b = M_PI / Pref;
  if (std::abs(sig) < 1.0) {
    double a2 = a * a, b2 = b * b, s2 = sig * sig;
    return -sig * ((a2 - b2) / 3.0 + s2 * ((a2 * a2 - b2 * b2) / 45.0 +
                                           s2 * (a2 * a2 * a2 - b2 * b2 * b2) * (2.0 / 945.0)));
  }
  double x = a * sig, y = b * sig;
  return a * std::cos(x) / std::sin(x) - b * std::cos(y) / std::sin(y);
}

double ls_slope(const std::vector<double>& x, const std::vector<double>& y) {
  size_t n = x.size();
  if (n < 2) return 0;
  double mx = 0, my = 0;
  for (size_t i = 0; i < n; ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= double(n);
  my /= double(n);
  double num = 0, den = 0;
  for (size_t i = 0; i < n; ++i) {
    num += (x[i] - mx) * (y[i] - my);
    den += (x[i] - mx) * (x[i] - mx);
  }
  return den > 0 ? num / den : 0;
}

struct Run {
  long long lo = 0, hi = 0;
};

std::vector<Run> support_runs(const Profile& f) {
  std::vector<Run> runs;
  long long half = f.grid->nx() / 2;
  bool in = false;
  long long start = 0;
  for (long long k = -half; k < half; ++k) {
    bool nz = f.at(int(k)) != cplx(0, 0);
    if (nz && !in) {
      in = true;
      start = k;
    } else if (!nz && in) {
      in = false;
      runs.push_back({start, k - 1});
    }
  }
  if (in) runs.push_back({start, half - 1});
  return runs;
}

// tau lattice of a probe: dtau = pi/TwV, extent >= kappa N^2, period P = Nt dtau.
// Nt is the smallest fitting even integer (not a power of two) so that P/N^2
// stays constant across N and the cot periodization level never jumps.
struct VirtualLattice {
  double dtau = 0, tauMax = 0, P = 0;
  long long nt = 0;
  VirtualLattice(double TwV, double kappa, long long N) {
    if (!(TwV > 0) || !(kappa > 0)) throw ConfigError("probe: TwV and kappa must be positive");
    dtau = M_PI / TwV;
    double need = kappa * double(N) * double(N);
    long long half = (long long)std::ceil(need / dtau);
    nt = 2 * half;
    tauMax = double(half) * dtau;
    P = double(nt) * dtau;
  }
};

// sum over the lattice bands |xi| in [N-10, N+10] of <xi>^{2s} dxi
double band_hs_sum(int N, double dxi, double s) {
  long long lo = (long long)std::ceil((double(N) - 10.0) / dxi);
  long long hi = (long long)std::floor((double(N) + 10.0) / dxi);
  double sum = 0;
  for (long long k = lo; k <= hi; ++k) sum += std::pow(bracket(double(k) * dxi), 2.0 * s);
  return 2.0 * sum * dxi;
}

// strided node visitor over run indices [0, n) with trapezoid weights
template <class F>
void strided_nodes(long long n, long long stride, F&& fn) {
  if (n <= 0) return;
  if (stride <= 1 || n < 2 * stride + 2) {
    for (long long j = 0; j < n; ++j) fn(j, 1.0);
    return;
  }
  std::vector<long long> js;
  for (long long j = 0; j + 1 < n; j += stride) js.push_back(j);
  js.push_back(n - 1);
  size_t m = js.size();
  for (size_t i = 0; i < m; ++i) {
    double w;
    if (i == 0)
      w = 0.5 * double(js[1] - js[0]) + 0.5;
    else if (i + 1 == m)
      w = 0.5 * double(js[m - 1] - js[m - 2]) + 0.5;
    else
      w = 0.5 * double(js[i + 1] - js[i - 1]);
    fn(js[i], w);
  }
}

}  // namespace

const TimeKernelTables& TimeKernelTables::get() {
  static const TimeKernelTables t;
  return t;
}

TimeKernelTables::TimeKernelTables() {
  // dsig = pi/1024 keeps the cubic interpolation error ~2e-8 even for the
  // wide a kernel, whose transform ripples on scale pi/10
  const double TwRef = 1024.0;
  const long long ntRef = 1LL << 23;
  const double dtRef = 2.0 * TwRef / double(ntRef);
  dsig_ = M_PI / TwRef;
  Pref_ = 2.0 * M_PI / dtRef;
  sigMax_ = 800.0;
  half_ = (long long)std::floor((sigMax_ + 20.0) / dsig_);

  std::vector<cplx> buf(static_cast<size_t>(ntRef));
  auto build = [&](TimeKernel which, std::vector<double>& tab, bool imagPart) {
    std::fill(buf.begin(), buf.end(), cplx(0, 0));
    long long span = (long long)std::ceil(10.0 / dtRef) + 2;
    for (long long n = -span; n <= span; ++n) {
      double v = kernel_value(which, double(n) * dtRef);
      if (v != 0.0) buf[size_t(n + ntRef / 2)] = v;
    }
    fft_centered(buf.data(), int(ntRef), +1, dtRef);
    tab.resize(size_t(2 * half_ + 1));
    for (long long m = -half_; m <= half_; ++m) {
      cplx z = buf[size_t(m + ntRef / 2)];
      tab[size_t(m + half_)] = imagPart ? z.imag() : z.real();
    }
  };
  build(TimeKernel::Eta, etaTab_, false);
  build(TimeKernel::EtaSq, h2Tab_, false);
  build(TimeKernel::EtaFourth, h4Tab_, false);
  build(TimeKernel::A, aTab_, true);
  build(TimeKernel::AEtaSq, gTab_, true);

  auto reach_of = [&](const std::vector<double>& tab) {
    double peak = 0;
    for (double v : tab) peak = std::max(peak, std::abs(v));
    double thr = 1e-10 * peak;
    long long m = half_;
    while (m > 1 && std::abs(tab[size_t(half_ + m)]) < thr &&
           std::abs(tab[size_t(half_ - m)]) < thr)
      --m;
    return double(m + 1) * dsig_;
  };
  reach_ = std::max({reach_of(etaTab_), reach_of(h2Tab_), reach_of(h4Tab_)});
}

double TimeKernelTables::interp(const std::vector<double>& tab, double sig) const {
  double x = sig / dsig_ + double(half_);
  long long i = (long long)std::floor(x);
  i = std::max<long long>(1, std::min<long long>(i, 2 * half_ - 2));
  double u = x - double(i);
  const double* p = tab.data() + i;
  double a0 = -0.5 * p[-1] + 1.5 * p[0] - 1.5 * p[1] + 0.5 * p[2];
  double a1 = p[-1] - 2.5 * p[0] + 2.0 * p[1] - 0.5 * p[2];
  double a2 = 0.5 * (p[1] - p[-1]);
  return ((a0 * u + a1) * u + a2) * u + p[0];
}

double TimeKernelTables::jump(const std::vector<double>& tab, double sig, double P) const {
  double s = std::remainder(sig, P);
  if (std::abs(s) <= sigMax_) return interp(tab, s) + cot_diff(s, P, Pref_);
  // beyond the table only the resummed 1/sigma images survive
  double x = M_PI * s / P;
  return (M_PI / P) * std::cos(x) / std::sin(x);
}

double TimeKernelTables::eta_hat(double sig, double P) const {
  double s = std::remainder(sig, P);
  return std::abs(s) <= sigMax_ ? interp(etaTab_, s) : 0.0;
}

double TimeKernelTables::h2_hat(double sig, double P) const {
  double s = std::remainder(sig, P);
  return std::abs(s) <= sigMax_ ? interp(h2Tab_, s) : 0.0;
}

double TimeKernelTables::h4_hat(double sig, double P) const {
  double s = std::remainder(sig, P);
  return std::abs(s) <= sigMax_ ? interp(h4Tab_, s) : 0.0;
}

cplx TimeKernelTables::a_hat(double sig, double P) const { return cplx(0, jump(aTab_, sig, P)); }

cplx TimeKernelTables::g_hat(double sig, double P) const { return cplx(0, jump(gTab_, sig, P)); }

cplx kernel_hat(TimeKernel which, double sig, double P) {
  const TimeKernelTables& t = TimeKernelTables::get();
  switch (which) {
    case TimeKernel::Eta: return cplx(t.eta_hat(sig, P), 0);
    case TimeKernel::EtaSq: return cplx(t.h2_hat(sig, P), 0);
    case TimeKernel::EtaFourth: return cplx(t.h4_hat(sig, P), 0);
    case TimeKernel::A: return t.a_hat(sig, P);
    case TimeKernel::AEtaSq: return t.g_hat(sig, P);
  }
  return cplx(0, 0);
}

cplx kernel_lattice_direct(TimeKernel which, double sig, double dt) {
  long long span = (long long)std::ceil(10.0 / dt) + 2;
  cplx acc(0, 0);
  for (long long n = -span; n <= span; ++n) {
    double t = double(n) * dt;
    double v = kernel_value(which, t);
    if (v != 0.0) acc += v * std::polar(1.0, t * sig);
  }
  return dt * acc;
}

std::vector<std::vector<cplx>> transform_columns(const Profile& fhat, const std::vector<int>& ks) {
  const Grid& g = *fhat.grid;
  const TimeKernelTables& T = TimeKernelTables::get();
  const long long nt = g.nt();
  const double dtau = g.dtau(), P = double(nt) * dtau;
  if (P <= 1600.0)
    throw ResolutionError("transform_columns: tau extent too small for the kernel tables");
  auto runs = support_runs(fhat);
  std::vector<std::vector<cplx>> out(ks.size());
  const long long mR = (long long)std::ceil(T.reach() / dtau);
  const double scale = g.dxi() / (2.0 * M_PI);
  parallel_for_each(ks.size(), [&](std::size_t i) {
    long long k = ks[i];
    double xi = g.xi(int(k)), xi2 = xi * xi;
    std::vector<cplx> comb(size_t(nt), cplx(0, 0));
    cplx c1(0, 0);
    for (const Run& ra : runs) {
      for (const Run& rb : runs) {
        long long a = std::max(ra.lo, k - rb.hi), b = std::min(ra.hi, k - rb.lo);
        for (long long k1 = a; k1 <= b; ++k1) {
          cplx cu = fhat.at(int(k1)) * fhat.at(int(k - k1));
          if (cu == cplx(0, 0)) continue;
          double xi1 = g.xi(int(k1)), xib = xi - xi1;
          double Q = xi1 * xi1 + xib * xib;
          c1 += cu * T.g_hat(xi2 - Q, P);
          long long mc = llround(Q / dtau);
          for (long long m = mc - mR; m <= mc + mR; ++m) {
            double tooth = T.h2_hat(double(m) * dtau - Q, P);
            long long mw = m;
            while (mw < -nt / 2) mw += nt;
            while (mw >= nt / 2) mw -= nt;
            comb[size_t(mw + nt / 2)] += cu * tooth;
          }
        }
      }
    }
    std::vector<cplx> col(static_cast<size_t>(nt));
    for (long long r = 0; r < nt; ++r) {
      double sig = double(r - nt / 2) * dtau - xi2;
      col[size_t(r)] = scale * (T.eta_hat(sig, P) * c1 + T.a_hat(sig, P) * comb[size_t(r)]);
    }
    out[i] = std::move(col);
  });
  return out;
}

std::vector<std::vector<cplx>> banded_a2(const Profile& fhat, const std::vector<double>& times,
                                         const std::vector<int>& ks) {
  const Grid& g = *fhat.grid;
  const int nx = g.nx(), nt = g.nt();
  if (g.spec().Tw < 8) throw UsageError("banded_a2: needs Tw >= 8 so the cutoff rows fit");

  std::vector<int> rows;  // centered time indices with eta != 0
  for (int n = -nt / 2; n < nt / 2; ++n)
    if (eval_eta(g.t(n)) != 0.0) rows.push_back(n);

  // product rows on the selected columns, dealiased exactly like apply_N2
  std::vector<std::vector<cplx>> wrows(rows.size());
  std::vector<double> kept(rows.size(), 0.0), lost(rows.size(), 0.0);
  parallel_for_each(rows.size(), [&](std::size_t ri) {
    int n = rows[ri];
    double s = g.t(n);
    double eta = eval_eta(s);
    const int big = 2 * nx;
    std::vector<cplx> a(size_t(big), cplx(0, 0));
    for (int c = 0; c < nx; ++c) {
      cplx fv = fhat.v[size_t(c)];
      if (fv == cplx(0, 0)) continue;
      double xi1 = g.xi(c - nx / 2);
      a[size_t(c + nx / 2)] = eta * std::polar(1.0, -s * xi1 * xi1) * fv;
    }
    fft_centered(a.data(), big, -1, g.dxi() / (2.0 * M_PI));
    for (int i = 0; i < big; ++i) a[size_t(i)] *= a[size_t(i)];
    fft_centered(a.data(), big, +1, g.dx() / 2.0);
    double k2 = 0, l2 = 0;
    for (int i = 0; i < big; ++i) {
      int k = i - big / 2;
      if (k >= -nx / 2 && k < nx / 2)
        k2 += std::norm(a[size_t(i)]);
      else
        l2 += std::norm(a[size_t(i)]);
    }
    kept[ri] = k2;
    lost[ri] = l2;
    std::vector<cplx> wr(ks.size());
    for (std::size_t j = 0; j < ks.size(); ++j) wr[j] = a[size_t(ks[j] + big / 2)];
    wrows[ri] = std::move(wr);
  });
  double kept2 = 0, lost2 = 0;
  for (std::size_t ri = 0; ri < rows.size(); ++ri) {
    kept2 += kept[ri];
    lost2 += lost[ri];
  }
  if (kept2 + lost2 > 0 && lost2 / (kept2 + lost2) > 1e-8)
    throw ResolutionError("banded_a2: product spectrum does not fit the grid");

  const double dt = g.dt();
  std::vector<std::vector<cplx>> out(times.size());
  for (std::size_t ti = 0; ti < times.size(); ++ti) {
    double t = times[ti];
    double nd = t / dt;
    long long nOut = llround(nd);
    if (std::abs(nd - double(nOut)) > 1e-9 * std::max(1.0, std::abs(nd)) || nOut < -nt / 2 ||
        nOut >= nt / 2)
      throw UsageError("banded_a2: times must sit on the grid's time lattice");
    double etaT = eval_eta(t);
    std::vector<cplx> row(ks.size());
    parallel_for_each(ks.size(), [&](std::size_t j) {
      double xi = g.xi(ks[j]), xi2 = xi * xi;
      cplx term1(0, 0), term2(0, 0);
      for (std::size_t ri = 0; ri < rows.size(); ++ri) {
        int ns = rows[ri];
        cplx wv = wrows[ri][j];
        double s = g.t(ns);
        double as = eval_a(s);
        if (as != 0.0) term1 += as * std::polar(1.0, s * xi2) * wv;
        long long p = (nOut - ns) % nt;
        if (p < 0) p += nt;
        double sig = p <= nt / 2 ? double(p) * dt : double(p - nt) * dt;
        double ats = eval_a(sig);
        if (ats != 0.0) term2 += ats * std::polar(1.0, -sig * xi2) * wv;
      }
      row[j] = etaT * std::polar(1.0, -t * xi2) * (dt * term1) + dt * term2;
    });
    out[ti] = std::move(row);
  }
  return out;
}

RectangleReport rectangle_exponent(const CascadeConfig& cfg, const ProbeOptions& opt) {
  validate(cfg);
  if (cfg.normalize != Normalize::UnitHs)
    throw UsageError("rectangle_exponent: needs normalize = unitHs");
  if (opt.xiSamples < 3) throw ConfigError("rectangle_exponent: needs at least 3 xi samples");
  const TimeKernelTables& T = TimeKernelTables::get();
  const double R = T.reach();
  RectangleReport rep;
  rep.s = cfg.s;
  std::vector<double> lnN, lnP;
  for (int N : cfg.NList) {
    VirtualLattice vl(opt.TwV, opt.kappa, N);
    double c2 = 2.0 * double(N) * double(N);
    if (vl.tauMax < c2 + double(N) + R + 10.0)
      throw ResolutionError("rectangle_exponent: rectangle leaves the tau lattice, raise kappa");
    double dxi = M_PI / (8.0 * double(N));
    double v2 = 1.0 / band_hs_sum(N, dxi, cfg.s);
    long long kpLo = (long long)std::ceil((double(N) - 10.0) / dxi);
    long long kpHi = (long long)std::floor((double(N) + 10.0) / dxi);
    long long mLo = (long long)std::ceil((c2 - double(N)) / vl.dtau);
    long long mHi = (long long)std::floor((c2 + double(N)) / vl.dtau);
    long long mR = (long long)std::ceil(R / vl.dtau);
    std::vector<double> slot(size_t(opt.xiSamples), 0.0);
    parallel_for_each(size_t(opt.xiSamples), [&](std::size_t i) {
      long long k = llround((-1.0 + 2.0 * double(i) / double(opt.xiSamples - 1)) / dxi);
      double xi = double(k) * dxi, xi2 = xi * xi;
      long long a = std::max(kpLo, k + kpLo), b = std::min(kpHi, k + kpHi);
      if (b < a) return;
      auto Qof = [&](long long k1) {
        double xi1 = double(k1) * dxi, xib = xi - xi1;
        return xi1 * xi1 + xib * xib;
      };
      // teeth landing near the rectangle; Q is increasing across the run
      double qlo = double(mLo) * vl.dtau - R - 1.0, qhi = double(mHi) * vl.dtau + R + 1.0;
      long long s = a, e = b;
      while (s < e && Qof(s) < qlo) {
        long long mid = s + (e - s) / 2;
        if (Qof(mid) < qlo)
          s = mid + 1;
        else
          e = mid;
      }
      std::vector<cplx> buf(size_t(mHi - mLo + 1), cplx(0, 0));
      for (long long k1 = s; k1 <= b; ++k1) {
        double Q = Qof(k1);
        if (Q > qhi) break;
        long long mc = llround(Q / vl.dtau);
        long long m0 = std::max(mLo, mc - mR), m1 = std::min(mHi, mc + mR);
        for (long long m = m0; m <= m1; ++m)
          buf[size_t(m - mLo)] += T.h2_hat(double(m) * vl.dtau - Q, vl.P);
      }
      double peak = 0;
      for (long long m = mLo; m <= mHi; ++m) {
        double sig = double(m) * vl.dtau - xi2;
        double v = bracket(sig) * std::abs(T.a_hat(sig, vl.P)) * std::abs(buf[size_t(m - mLo)]);
        peak = std::max(peak, v);
      }
      slot[i] = peak;
    });
    double peak = *std::max_element(slot.begin(), slot.end());
    peak *= v2 * 2.0 * dxi / (2.0 * M_PI);  // unit-norm amplitude, both band pairings
    rep.N.push_back(N);
    rep.peak.push_back(peak);
    lnN.push_back(std::log(double(N)));
    lnP.push_back(std::log(peak));
  }
  rep.beta = ls_slope(lnN, lnP);
  return rep;
}

XsbProbeReport xsb_probe(const std::vector<int>& NList, const std::vector<double>& bList,
                         double ds, const ProbeOptions& opt) {
  if (NList.size() < 2) throw ConfigError("xsb_probe: needs at least two N");
  int prev = 0;
  for (int N : NList) {
    if (N <= 100) throw ConfigError("xsb_probe: every N must exceed 100");
    if (N <= prev) throw ConfigError("xsb_probe: N list must be strictly ascending");
    prev = N;
  }
  if (bList.empty()) throw ConfigError("xsb_probe: b list is empty");
  if (!(ds > 0)) throw ConfigError("xsb_probe: ds must be positive");

  const TimeKernelTables& T = TimeKernelTables::get();
  const double R = T.reach();
  const size_t nb = bList.size();
  XsbProbeReport rep;
  rep.N = NList;
  for (double b : bList) {
    for (double sgn : {-1.0, 1.0}) {
      XsbPoint p;
      p.b = b;
      p.s = b - 1.25 + sgn * ds;
      rep.points.push_back(p);
    }
  }

  // per-xi cascade-window masses at unit band amplitude, one row per sample
  const double step = 0.25;
  for (int N : NList) {
    VirtualLattice vl(opt.TwV, opt.kappa, N);
    double c2 = 2.0 * double(N) * double(N);
    if (vl.tauMax < c2 + 42.0 * double(N) + R + 10.0)
      throw ResolutionError("xsb_probe: comb leaves the tau lattice, raise kappa");
    double dxi = M_PI / (8.0 * double(N));
    long long kpLo = (long long)std::ceil((double(N) - 10.0) / dxi);
    long long kpHi = (long long)std::floor((double(N) + 10.0) / dxi);
    long long mR = (long long)std::ceil(R / vl.dtau);
    const int nSamp = 81;  // 0.25 spacing across the reachable window [0, 20]
    std::vector<double> xiS(static_cast<size_t>(nSamp));
    std::vector<std::vector<double>> mass(nb, std::vector<double>(size_t(nSamp), 0.0));
    std::vector<std::vector<double>> slots(size_t(nSamp), std::vector<double>(nb, 0.0));
    parallel_for_each(size_t(nSamp), [&](std::size_t i) {
      long long k = llround(step * double(i) / dxi);
      double xi = double(k) * dxi, xi2 = xi * xi;
      xiS[i] = xi;
      long long a = std::max(kpLo, k + kpLo), bHi = std::min(kpHi, k + kpHi);
      if (bHi < a) return;
      long long rl = bHi - a + 1;
      std::vector<double> Q(static_cast<size_t>(rl));
      for (long long j = 0; j < rl; ++j) {
        double xi1 = double(a + j) * dxi, xib = xi - xi1;
        Q[size_t(j)] = xi1 * xi1 + xib * xib;
      }
      double minSp = (4.0 * double(a) * dxi - 2.0 * xi) * dxi;
      long long lagMax = (long long)std::ceil(R / minSp) + 1;
      double F0 = 2.0 * M_PI * T.h4_hat(0.0, vl.P);
      // parabola ridge amplitude and eta^2 mass on this column's offsets
      cplx c1(0, 0);
      std::vector<double> cmb(nb, 0.0);
      strided_nodes(rl, rl / 256, [&](long long j, double w) {
        c1 += w * T.g_hat(xi2 - Q[size_t(j)], vl.P);
        auto wb = [&](double tau, double* out) {
          double sig = tau - xi2;
          double ai = std::abs(T.a_hat(sig, vl.P).imag());
          double br = bracket(sig);
          for (size_t bi = 0; bi < nb; ++bi)
            out[bi] = std::pow(br, 2.0 * bList[bi]) * ai * ai;
        };
        std::vector<double> wv(nb);
        wb(Q[size_t(j)], wv.data());
        for (size_t bi = 0; bi < nb; ++bi) cmb[bi] += w * wv[bi] * F0;
        for (long long l = 1; l <= std::min(lagMax, j); ++l) {
          double dq = Q[size_t(j)] - Q[size_t(j - l)];
          if (dq > R) break;
          double F = 2.0 * M_PI * T.h4_hat(dq, vl.P);
          wb(0.5 * (Q[size_t(j)] + Q[size_t(j - l)]), wv.data());
          for (size_t bi = 0; bi < nb; ++bi) cmb[bi] += w * 2.0 * wv[bi] * F;
        }
      });
      double c = dxi / (2.0 * M_PI);
      double c1sq = std::norm(2.0 * c * c1);  // both band pairings
      long long m0 = llround(xi2 / vl.dtau);
      for (size_t bi = 0; bi < nb; ++bi) {
        double mb = 0;
        for (long long m = m0 - mR; m <= m0 + mR; ++m) {
          double sig = double(m) * vl.dtau - xi2;
          double e = T.eta_hat(sig, vl.P);
          mb += std::pow(bracket(sig), 2.0 * bList[bi]) * e * e;
        }
        mb *= vl.dtau;
        slots[i][bi] = 4.0 * c * c * cmb[bi] + c1sq * mb;
      }
    });
    for (size_t i = 0; i < size_t(nSamp); ++i)
      for (size_t bi = 0; bi < nb; ++bi) mass[bi][i] = slots[i][bi];

    // cell widths for the snapped sample positions, doubled for the mirror side
    std::vector<double> wq(size_t(nSamp), 0.0);
    for (size_t i = 0; i < size_t(nSamp); ++i) {
      double lo = i == 0 ? xiS[0] : 0.5 * (xiS[i - 1] + xiS[i]);
      double hi = i + 1 == size_t(nSamp) ? xiS[i] : 0.5 * (xiS[i] + xiS[i + 1]);
      wq[i] = 2.0 * (hi - lo);
    }
    for (XsbPoint& p : rep.points) {
      size_t bi = 0;
      while (bList[bi] != p.b) ++bi;
      double v2 = 1.0 / band_hs_sum(N, dxi, p.s);
      double sum = 0;
      for (size_t i = 0; i < size_t(nSamp); ++i)
        sum += wq[i] * std::pow(bracket(xiS[i]), 2.0 * p.s) * mass[bi][i];
      p.value.push_back(v2 * std::sqrt(sum));
    }
  }
  std::vector<double> lnN;
  for (int N : NList) lnN.push_back(std::log(double(N)));
  for (XsbPoint& p : rep.points) {
    std::vector<double> lnV;
    for (double v : p.value) lnV.push_back(std::log(v));
    p.gamma = ls_slope(lnN, lnV);
  }
  return rep;
}

}  // namespace dlab
