// Test-function generation, exact spacetime convolution, estimate ratio sweeps.
#include "dlab/fuzz.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>

#include "dlab/fft.hpp"
#include "dlab/norms.hpp"

namespace dlab {

namespace {

double pow2d(int e) { return std::ldexp(1.0, e); }

// inner |x| edge of the <x> dyadic block [2^e, 2^{e+1}); 0 when e <= 0
double edge(int e) { return e <= 0 ? 0.0 : std::sqrt(pow2d(2 * e) - 1.0); }

struct Support {
  bool empty = true;
  int jlo = 0, jhi = 0;      // annulus range carrying mass
  std::vector<double> cols;  // xi of live columns, ascending
};

Support scan_support(const Field& f) {
  const Grid& g = *f.grid();
  const DyadicCache& dc = g.dyadic();
  const int nx = g.nx(), nt = g.nt();
  Support s;
  for (int c = 0; c < nx; ++c) {
    bool live = false;
    for (int r = 0; r < nt && !live; ++r) live = f.values()[std::size_t(r) * nx + c] != 0.0;
    if (!live) continue;
    int j = dc.j_col[c];
    if (s.empty) {
      s.jlo = s.jhi = j;
      s.empty = false;
    } else {
      s.jlo = std::min(s.jlo, j);
      s.jhi = std::max(s.jhi, j);
    }
    s.cols.push_back(g.xi(c - nx / 2));
  }
  return s;
}

// smallest |a - b| over two ascending column lists
double min_gap(const std::vector<double>& a, const std::vector<double>& b) {
  double best = HUGE_VAL;
  std::size_t i = 0, j = 0;
  while (i < a.size() && j < b.size()) {
    best = std::min(best, std::abs(a[i] - b[j]));
    if (a[i] < b[j]) ++i;
    else ++j;
  }
  return best;
}

void require_annulus(const Support& s, int j, const char* msg) {
  if (!s.empty && (s.jlo != j || s.jhi != j)) throw UsageError(msg);
}

void mul_inv_bracket(Field& F) {
  const Grid& g = *F.grid();
  const int nx = g.nx(), nt = g.nt();
  for (int r = 0; r < nt; ++r) {
    double tau = g.tau(r - nt / 2);
    cplx* row = F.row(r);
    for (int c = 0; c < nx; ++c) {
      double xi = g.xi(c - nx / 2);
      row[c] /= bracket(tau - xi * xi);
    }
  }
}

void scale_weight(Field& F, bool divide) {
  const Grid& g = *F.grid();
  const int nx = g.nx(), nt = g.nt();
  for (int r = 0; r < nt; ++r) {
    double w = weight(g.tau(r - nt / 2));
    cplx* row = F.row(r);
    for (int c = 0; c < nx; ++c) row[c] = divide ? row[c] / w : row[c] * w;
  }
}

void keep_nonnegative_xi(Field& F) {
  const int nx = F.cols(), nt = F.rows();
  for (int r = 0; r < nt; ++r) {
    cplx* row = F.row(r);
    for (int c = 0; c < nx / 2; ++c) row[c] = 0.0;
  }
}

double l2(const Field& F) { return xsb_norm(F, 0.0, 0.0); }

double ratio_guard(double lhs, double rhs) { return rhs > 0 ? lhs / rhs : 0.0; }

// largest annulus whose lattice columns are all present: 2^{j+1} <= xi_max
int top_annulus(const Grid& g) {
  int j = 0;
  while (pow2d(j + 2) <= g.xi_max() * (1.0 + 1e-12)) ++j;
  return j;
}

// worst-case cell count of {tau1 in the d1 shell, tau - tau1 in the d2 shell,
// |xi1 - xi2| >= D} on the (tau1, xi1) lattice, at xi = 0 so xi2 = -xi1
double measure_bound_ratio(const Grid& g, int d1, int d2, double D) {
  const int nx = g.nx(), nt = g.nt();
  const double dt = g.dtau();
  const double lo1 = edge(d1), hi1 = edge(d1 + 1);
  const double lo2 = edge(d2), hi2 = edge(d2 + 1);

  auto count_at = [&](double tau) {
    long long n = 0;
    for (int k = -nx / 2; k < nx / 2; ++k) {
      double xi1 = g.xi(k);
      if (D > 0 && 2.0 * std::abs(xi1) < D - 1e-9) continue;
      double q1 = xi1 * xi1;
      long long mlo = (long long)std::ceil((q1 - hi1) / dt);
      long long mhi = (long long)std::floor((q1 + hi1) / dt);
      mlo = std::max(mlo, (long long)(-nt / 2));
      mhi = std::min(mhi, (long long)(nt / 2 - 1));
      for (long long m = mlo; m <= mhi; ++m) {
        double tau1 = double(m) * dt;
        double a1 = std::abs(tau1 - q1);
        if (a1 < lo1 || a1 >= hi1) continue;
        double a2 = std::abs((tau - tau1) - q1);
        if (a2 >= lo2 && a2 < hi2) ++n;
      }
    }
    return n;
  };

  std::vector<double> taus;
  for (int v = 0; v <= 16; ++v) taus.push_back(double(v) * pow2d(d1) / 4.0);
  if (D > 0)
    for (int v = -8; v <= 8; ++v) taus.push_back(0.5 * D * D + double(v) * pow2d(d1) / 4.0);
  long long best = 0;
  for (double tau : taus) best = std::max(best, count_at(tau));

  double area = double(best) * g.dtau() * g.dxi();
  double rhs = pow2d(d1 + d2) / (std::pow(2.0, 0.5 * d1) + D);
  return area / rhs;
}

double kpoint_ratio(const Grid& g) {
  const int nt = g.nt();
  std::vector<double> w(static_cast<std::size_t>(nt));
  for (int r = 0; r < nt; ++r) w[std::size_t(r)] = weight(g.tau(r - nt / 2));
  double best = 0;
  for (int a = 0; a < nt; ++a) {
    double ta = g.tau(a - nt / 2);
    for (int b = a; b < nt; ++b) {
      double r = weight(ta + g.tau(b - nt / 2)) / (w[std::size_t(a)] * w[std::size_t(b)]);
      if (r > best) best = r;
    }
  }
  return best;
}

constexpr TestKind kKinds[4] = {TestKind::ParabolaHugging, TestKind::UniformRandom,
                                TestKind::Column, TestKind::Band};

}  // namespace

Field gen_test_function(const GridPtr& gp, const TestFunctionSpec& spec) {
  const Grid& g = *gp;
  const DyadicCache& dc = g.dyadic();
  const int nx = g.nx(), nt = g.nt();
  Field out(gp, Rep::Spectral);

  std::vector<int> cols;
  for (int c = 0; c < nx; ++c) {
    double xi = g.xi(c - nx / 2);
    if (spec.sign > 0 && !(xi > 0)) continue;
    if (spec.sign < 0 && !(xi < 0)) continue;
    if (!spec.cell.j.matches(dc.j_col[std::size_t(c)])) continue;
    cols.push_back(c);
  }

  if (spec.kind == TestKind::Column && !cols.empty()) {
    std::uint64_t h = hash_combine(spec.seed, 0x636f6cu);
    cols = {cols[h % cols.size()]};
  } else if (spec.kind == TestKind::Band && !cols.empty()) {
    int jc = 0;
    if (spec.cell.j.kind == SelKind::Exact) {
      jc = spec.cell.j.value;
    } else {
      for (int c : cols) jc = std::max(jc, int(dc.j_col[std::size_t(c)]));
    }
    double c0 = 1.5 * pow2d(jc);
    double halfw = std::max(pow2d(jc) / 8.0, g.dxi());
    std::vector<int> kept;
    for (int c : cols)
      if (std::abs(std::abs(g.xi(c - nx / 2)) - c0) <= halfw) kept.push_back(c);
    cols = kept;
  }

  std::size_t npts = 0;
  const bool hug = spec.kind == TestKind::ParabolaHugging;
  for (int c : cols) {
    for (int r = 0; r < nt; ++r) {
      int dv = dc.d_of[std::size_t(r) * nx + c];
      if (!spec.cell.d.matches(dv)) continue;
      if (hug && dv > 2) continue;
      double u = u01(hash_combine(hash_combine(spec.seed, std::uint64_t(r)), std::uint64_t(c)));
      out.values()[std::size_t(r) * nx + c] = 0.5 * (1.0 + u);
      ++npts;
    }
  }
  if (npts == 0) throw UsageError("gen_test_function: the requested cell is empty on this grid");
  return out;
}

double resonance_defect(double tau1, double xi1, double tau2, double xi2) {
  double tau = tau1 + tau2, xi = xi1 + xi2;
  double lhs = tau - xi * xi;
  double rhs = (tau1 - xi1 * xi1) + (tau2 - xi2 * xi2) - 2.0 * xi1 * xi2;
  return std::abs(lhs - rhs);
}

double resonance_margin(double tau1, double xi1, double tau2, double xi2) {
  double tau = tau1 + tau2, xi = xi1 + xi2;
  double big = std::max({bracket(tau - xi * xi), bracket(tau1 - xi1 * xi1),
                         bracket(tau2 - xi2 * xi2)});
  return big - bracket(xi1 * xi2) / 32.0;
}

Field convolve(const Field& f, const Field& g, ConvPath path) {
  if (!f.grid() || !g.grid() || !f.grid()->same_lattice(*g.grid()))
    throw UsageError("convolve: fields must share one lattice");
  if (f.rep() != Rep::Spectral || g.rep() != Rep::Spectral)
    throw UsageError("convolve: spectral representation required");
  const Grid& gr = *f.grid();
  const int nx = gr.nx(), nt = gr.nt();
  const double meas = gr.dtau() * gr.dxi();

  if (path == ConvPath::Auto) {
    auto nnz = [](const Field& F) {
      std::size_t n = 0;
      for (const cplx& v : F.values()) n += v != 0.0;
      return double(n);
    };
    path = nnz(f) * nnz(g) <= 16e6 ? ConvPath::Direct : ConvPath::Fft;
  }

  Field out(f.grid(), Rep::Spectral);
  if (path == ConvPath::Direct) {
    struct Pt {
      int m, k;
      cplx v;
    };
    auto points = [&](const Field& F) {
      std::vector<Pt> ps;
      for (int r = 0; r < nt; ++r) {
        const cplx* row = F.row(r);
        for (int c = 0; c < nx; ++c)
          if (row[c] != 0.0) ps.push_back({r - nt / 2, c - nx / 2, row[c]});
      }
      return ps;
    };
    const auto pf = points(f), pg = points(g);
    for (const Pt& a : pf)
      for (const Pt& b : pg) {
        int m = a.m + b.m, k = a.k + b.k;
        if (m < -nt / 2 || m >= nt / 2 || k < -nx / 2 || k >= nx / 2) continue;
        out.at(m, k) += a.v * b.v;
      }
    for (cplx& v : out.values()) v *= meas;
    return out;
  }

  // circular convolution on the doubled lattice is the linear one here
  const int bx = 2 * nx, bt = 2 * nt;
  std::vector<cplx> A(std::size_t(bx) * bt), B(std::size_t(bx) * bt);
  auto embed = [&](std::vector<cplx>& buf, const Field& F) {
    for (int r = 0; r < nt; ++r)
      std::memcpy(&buf[std::size_t(r + nt / 2) * bx + nx / 2], F.row(r),
                  std::size_t(nx) * sizeof(cplx));
  };
  embed(A, f);
  embed(B, g);
  auto pass2d = [&](std::vector<cplx>& buf, int sign, double colWeight) {
    for (int r = 0; r < bt; ++r) fft_centered(&buf[std::size_t(r) * bx], bx, sign, 1.0);
    std::vector<cplx> col(static_cast<std::size_t>(bt));
    for (int c = 0; c < bx; ++c) {
      for (int r = 0; r < bt; ++r) col[std::size_t(r)] = buf[std::size_t(r) * bx + c];
      fft_centered(col.data(), bt, sign, colWeight);
      for (int r = 0; r < bt; ++r) buf[std::size_t(r) * bx + c] = col[std::size_t(r)];
    }
  };
  pass2d(A, -1, 1.0);
  pass2d(B, -1, 1.0);
  for (std::size_t i = 0; i < A.size(); ++i) A[i] *= B[i];
  pass2d(A, +1, meas / (double(bx) * double(bt)));
  for (int r = 0; r < nt; ++r)
    std::memcpy(out.row(r), &A[std::size_t(r + nt / 2) * bx + nx / 2],
                std::size_t(nx) * sizeof(cplx));
  return out;
}

std::string estimate_name(EstimateId id) {
  switch (id) {
    case EstimateId::BilHalt: return "bil-halt";
    case EstimateId::BilDual: return "bil-dual";
    case EstimateId::MeasureBound: return "measure-bound";
    case EstimateId::KPoint: return "k-point";
    case EstimateId::HighLow: return "high-low";
    case EstimateId::HighHigh: return "high-high";
    case EstimateId::WBilinear: return "W-bilinear";
    case EstimateId::YyBilinear: return "yy-bilinear";
  }
  return "?";
}

EstimateId parse_estimate(const std::string& name) {
  for (EstimateId id : {EstimateId::BilHalt, EstimateId::BilDual, EstimateId::MeasureBound,
                        EstimateId::KPoint, EstimateId::HighLow, EstimateId::HighHigh,
                        EstimateId::WBilinear, EstimateId::YyBilinear})
    if (estimate_name(id) == name) return id;
  throw ConfigError("unknown estimate: " + name +
                    " (expected bil-halt, bil-dual, measure-bound, k-point, high-low, "
                    "high-high, W-bilinear, yy-bilinear)");
}

double estimate_ratio(EstimateId id, const Field& f, const Field& g, const EstimateParams& p) {
  if (!f.grid() || !g.grid()) throw UsageError("estimate_ratio: fields must carry a grid");
  if (p.wrongExponent && id != EstimateId::BilHalt)
    throw UsageError("the wrong-exponent control is defined for bil-halt only");
  const double D = std::max(0.0, p.D);

  switch (id) {
    case EstimateId::BilHalt: {
      if (p.j1 < 0 || p.j2 < 0) throw UsageError("bil-halt: j1 and j2 must be set");
      Support sf = scan_support(f), sg = scan_support(g);
      if (sf.empty || sg.empty) return 0.0;
      require_annulus(sf, p.j1, "bil-halt: f must be supported in the annulus A_j1");
      require_annulus(sg, p.j2, "bil-halt: g must be supported in the annulus A_j2");
      if (D > 0 && min_gap(sf.cols, sg.cols) < D - 1e-9)
        throw UsageError("bil-halt: supports must be separated by |xi1 - xi2| >= D");
      double lhs = l2(convolve(f, g));
      double dpow = p.wrongExponent ? -1.5 : -0.5;
      double rhs = pow2d(p.j1 + p.j2) * std::pow(bracket(D), dpow) * besov_norm(f) * besov_norm(g);
      return ratio_guard(lhs, rhs);
    }

    case EstimateId::BilDual: {
      if (p.j1 < 0 || p.j < 0 || p.d < 0) throw UsageError("bil-dual: j1, j and d must be set");
      Support sf = scan_support(f), sg = scan_support(g);
      if (sf.empty || sg.empty) return 0.0;
      require_annulus(sf, p.j1, "bil-dual: f must be supported in the annulus A_j1");
      if (D > 0) {
        double olo = edge(p.j), ohi = edge(p.j + 1);
        double gap = HUGE_VAL;
        for (double xi1 : sf.cols) {
          if (-xi1 >= olo && -xi1 <= ohi) gap = 0.0;
          else gap = std::min(gap, std::min(std::abs(xi1 + olo), std::abs(xi1 + ohi)));
        }
        if (gap < D - 1e-9)
          throw UsageError("bil-dual: need |xi1 + xi| >= D between f and the output region");
      }
      Field outp = restrict_cells(convolve(f, g), CellSelector{axis_exact(p.j), axis_exact(p.d)});
      keep_nonnegative_xi(outp);
      double lhs = std::pow(2.0, -0.5 * p.d) * l2(outp);
      double rhs = pow2d(p.j1) / std::sqrt(std::pow(2.0, 0.5 * p.d) + D) * besov_norm(f) * l2(g);
      return ratio_guard(lhs, rhs);
    }

    case EstimateId::MeasureBound: {
      if (p.d < 0 || p.d2 < 0) throw UsageError("measure-bound: d and d2 must be set");
      if (p.d2 > p.d) throw UsageError("measure-bound: requires d1 >= d2");
      return measure_bound_ratio(*f.grid(), p.d, p.d2, D);
    }

    case EstimateId::KPoint:
      return kpoint_ratio(*f.grid());

    case EstimateId::HighLow: {
      if (p.j1 < 0 || p.j2 < 0 || p.j < 0) throw UsageError("high-low: j, j1 and j2 must be set");
      if (std::abs(p.j1 - p.j) > 10 || p.j2 > p.j + 11)
        throw UsageError("high-low: requires |j1 - j| <= 10 and j2 <= j + 11");
      Support sf = scan_support(f), sg = scan_support(g);
      if (sf.empty || sg.empty) return 0.0;
      require_annulus(sf, p.j1, "high-low: f must be supported in the annulus A_j1");
      require_annulus(sg, p.j2, "high-low: g must be supported in the annulus A_j2");
      Field outp = restrict_cells(convolve(f, g), CellSelector{axis_exact(p.j), axis_any()});
      mul_inv_bracket(outp);
      double lhs = besov_norm(outp);
      double fac = std::pow(2.0, -p.j2 / 10.0) + std::pow(2.0, -(p.j - p.j2) / 10.0);
      double rhs = fac * z_norm(f).value * z_norm(g).value;
      return ratio_guard(lhs, rhs);
    }

    case EstimateId::HighHigh: {
      if (p.j1 < 0 || p.j2 < 0) throw UsageError("high-high: j1 and j2 must be set");
      if (std::abs(p.j1 - p.j2) > 1) throw UsageError("high-high: requires |j1 - j2| <= 1");
      Support sf = scan_support(f), sg = scan_support(g);
      if (sf.empty || sg.empty) return 0.0;
      require_annulus(sf, p.j1, "high-high: f must be supported in the annulus A_j1");
      require_annulus(sg, p.j2, "high-high: g must be supported in the annulus A_j2");
      Field fw = f, gw = g;
      scale_weight(fw, true);
      scale_weight(gw, true);
      Field conv = convolve(fw, gw);
      scale_weight(conv, false);
      mul_inv_bracket(conv);
      Field outp = restrict_cells(conv, CellSelector{axis_at_most(p.j1 - p.offset), axis_any()});
      double lhs = y_norm(outp);
      double rhs = z_norm(f).value * z_norm(g).value;
      return ratio_guard(lhs, rhs);
    }

    case EstimateId::WBilinear: {
      Support sf = scan_support(f), sg = scan_support(g);
      if (sf.empty || sg.empty) return 0.0;
      Field conv = convolve(f, g);
      mul_inv_bracket(conv);
      double lhs = w_norm(conv, ZMethod::PasteHeuristic, p.offset).value;
      double rhs = w_norm(f, ZMethod::PasteHeuristic, p.offset).value *
                   w_norm(g, ZMethod::PasteHeuristic, p.offset).value;
      return ratio_guard(lhs, rhs);
    }

    case EstimateId::YyBilinear: {
      Support sf = scan_support(f), sg = scan_support(g);
      if (sf.empty || sg.empty) return 0.0;
      Field fw = f, gw = g;
      scale_weight(fw, true);
      scale_weight(gw, true);
      Field conv = convolve(fw, gw);
      scale_weight(conv, false);
      mul_inv_bracket(conv);
      double lhs = z_norm(conv, ZMethod::PasteHeuristic, p.offset).value;
      double rhs = y_norm(f) * y_norm(g);
      return ratio_guard(lhs, rhs);
    }
  }
  throw UsageError("estimate_ratio: unknown estimate");
}

Trial plan_trial(EstimateId id, const GridPtr& gp, const EstimateParams& base, std::uint64_t seed,
                 int trial) {
  const Grid& g = *gp;
  Rng rng(hash_combine(hash_combine(seed, std::uint64_t(trial)), std::uint64_t(id)));
  const int jTop = top_annulus(g);
  Trial t;
  t.params = base;
  EstimateParams& p = t.params;
  if (p.D < 0) {
    const double frac[3] = {0.0, 0.25, 0.5};
    p.D = frac[trial % 3] * g.xi_max();
  }
  std::uint64_t fseed = rng.next(), gseed = rng.next();

  switch (id) {
    case EstimateId::BilHalt: {
      int kf = int(rng.below(3)), kg = int(rng.below(3));
      int df = int(2 + rng.below(3)), dg = int(2 + rng.below(3));
      int sf = int(rng.below(3)) - 1, sg = int(rng.below(3)) - 1;
      if (p.j1 < 0) p.j1 = jTop;
      if (p.j2 < 0) p.j2 = jTop - trial % 2;
      if (p.D > 0) {
        sf = +1;
        sg = -1;
      }
      t.f = {{axis_exact(p.j1), axis_at_most(df)}, kKinds[kf], fseed, sf};
      t.g = {{axis_exact(p.j2), axis_at_most(dg)}, kKinds[kg], gseed, sg};
      break;
    }

    case EstimateId::BilDual: {
      int kf = int(rng.below(2));
      int dg = int(2 + rng.below(3));
      if (p.j1 < 0) p.j1 = jTop;
      if (p.j < 0) p.j = std::max(1, jTop - 1 - int(rng.below(2)));
      if (p.d < 0) p.d = 2 * int(rng.below(3));
      t.f = {{axis_exact(p.j1), axis_at_most(4)}, kKinds[kf], fseed, +1};
      t.g = {{axis_at_most(jTop), axis_at_most(dg)}, TestKind::UniformRandom, gseed, 0};
      break;
    }

    case EstimateId::MeasureBound: {
      if (p.d < 0) p.d = 4 + trial % 3;
      if (p.d2 < 0) p.d2 = int(rng.below(std::uint64_t(p.d) + 1));
      t.f = t.g = {{axis_exact(0), axis_at_most(2)}, TestKind::UniformRandom, fseed, 0};
      break;
    }

    case EstimateId::KPoint: {
      t.f = t.g = {{axis_exact(0), axis_at_most(2)}, TestKind::UniformRandom, fseed, 0};
      break;
    }

    case EstimateId::HighLow: {
      int kf = int(rng.below(4)), kg = int(rng.below(4));
      int df = int(2 + rng.below(3)), dg = int(2 + rng.below(3));
      if (p.j < 0) p.j = jTop;
      if (p.j1 < 0) p.j1 = jTop;
      if (p.j2 < 0) p.j2 = int(rng.below(std::uint64_t(std::max(1, jTop))));
      t.f = {{axis_exact(p.j1), axis_at_most(df)}, kKinds[kf], fseed, 0};
      t.g = {{axis_exact(p.j2), axis_at_most(dg)}, kKinds[kg], gseed, 0};
      break;
    }

    case EstimateId::HighHigh: {
      bool bands = rng.below(4) != 0;
      int df = int(2 + rng.below(3)), dg = int(2 + rng.below(3));
      if (p.j1 < 0) p.j1 = jTop;
      if (p.j2 < 0) p.j2 = p.j1;
      TestKind k = bands ? TestKind::Band : TestKind::UniformRandom;
      t.f = {{axis_exact(p.j1), axis_at_most(df)}, k, fseed, +1};
      t.g = {{axis_exact(p.j2), axis_at_most(dg)}, k, gseed, -1};
      break;
    }

    case EstimateId::WBilinear:
    case EstimateId::YyBilinear: {
      int kf = int(rng.below(4)), kg = int(rng.below(4));
      int jf = int(rng.below(std::uint64_t(jTop) + 1)), jg = int(rng.below(std::uint64_t(jTop) + 1));
      int df = int(2 + rng.below(3)), dg = int(2 + rng.below(3));
      int sf = int(rng.below(3)) - 1, sg = int(rng.below(3)) - 1;
      t.f = {{axis_exact(jf), axis_at_most(df)}, kKinds[kf], fseed, sf};
      t.g = {{axis_exact(jg), axis_at_most(dg)}, kKinds[kg], gseed, sg};
      break;
    }
  }
  return t;
}

double trial_ratio(EstimateId id, const GridPtr& g, const EstimateParams& base, std::uint64_t seed,
                   int trial) {
  Trial t = plan_trial(id, g, base, seed, trial);
  if (id == EstimateId::MeasureBound || id == EstimateId::KPoint) {
    Field dummy(g, Rep::Spectral);
    return estimate_ratio(id, dummy, dummy, t.params);
  }
  Field f = gen_test_function(g, t.f);
  Field h = gen_test_function(g, t.g);
  return estimate_ratio(id, f, h, t.params);
}

SweepReport refinement_sweep(EstimateId id, const EstimateParams& base, int trials,
                             std::uint64_t seed, const std::vector<GridSpec>& grids) {
  if (grids.empty()) throw ConfigError("fuzz: need at least one grid");
  if (trials <= 0) throw ConfigError("fuzz: trials must be positive");
  std::vector<GridPtr> gs;
  for (const GridSpec& spec : grids) gs.push_back(make_grid(spec));
  for (std::size_t i = 1; i < gs.size(); ++i) {
    bool ok = gs[i]->xi_max() > gs[i - 1]->xi_max() && gs[i]->tau_max() >= gs[i - 1]->tau_max() &&
              gs[i]->dxi() <= gs[i - 1]->dxi() && gs[i]->dtau() <= gs[i - 1]->dtau();
    if (!ok)
      throw ConfigError("fuzz: grids must refine: frequency extents grow, spacings do not");
  }

  SweepReport rep;
  rep.estimate = id;
  rep.trials = trials;
  double bestAll = -1.0;
  for (std::size_t gi = 0; gi < gs.size(); ++gi) {
    EstimateParams p = base;
    if (p.D >= 0) p.D *= gs[gi]->xi_max() / gs[0]->xi_max();
    const int n = id == EstimateId::KPoint ? 1 : trials;
    std::vector<double> ratios(static_cast<std::size_t>(n));
    parallel_for_each(std::size_t(n), [&](std::size_t tr) {
      ratios[tr] = trial_ratio(id, gs[gi], p, seed, int(tr));
    });
    SweepPoint pt;
    pt.grid = grids[gi];
    for (int tr = 0; tr < n; ++tr)
      if (ratios[std::size_t(tr)] > pt.maxRatio) {
        pt.maxRatio = ratios[std::size_t(tr)];
        pt.argmaxTrial = tr;
      }
    if (pt.maxRatio > bestAll && pt.argmaxTrial >= 0) {
      bestAll = pt.maxRatio;
      rep.argmax = plan_trial(id, gs[gi], p, seed, pt.argmaxTrial);
    }
    rep.trend.push_back(pt);
  }
  rep.raised = rep.trend.back().maxRatio > 1.5 * rep.trend.front().maxRatio;
  return rep;
}

std::vector<GridSpec> default_fuzz_grids() {
  return {{2.0 * M_PI, 32, M_PI, 512},
          {2.0 * M_PI, 64, M_PI, 2048},
          {2.0 * M_PI, 128, M_PI, 8192}};
}

}  // namespace dlab
