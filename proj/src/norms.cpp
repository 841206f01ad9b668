#include "dlab/norms.hpp"

#include <algorithm>
#include <cmath>

namespace dlab {

double hs_norm(const Profile& fhat, double s) {
  const Grid& g = *fhat.grid;
  double sum = 0;
  for (int k = -g.nx() / 2; k < g.nx() / 2; ++k)
    sum += std::pow(bracket(g.xi(k)), 2 * s) * std::norm(fhat.at(k));
  return std::sqrt(sum * g.dxi());
}

double hs_norm_row(const Grid& g, const cplx* mode_row, double s) {
  double sum = 0;
  for (int c = 0; c < g.nx(); ++c)
    sum += std::pow(bracket(g.xi(c - g.nx() / 2)), 2 * s) * std::norm(mode_row[c]);
  return std::sqrt(sum * g.dxi());
}

double cth_norm(const Field& u, double s, double t0, double t1) {
  if (u.rep() != Rep::Mode) throw UsageError("cth_norm: expects a mode field");
  const Grid& g = *u.grid();
  double best = -1;
  for (int n = -g.nt() / 2; n < g.nt() / 2; ++n) {
    double t = g.t(n);
    if (t < t0 || t > t1) continue;
    best = std::max(best, hs_norm_row(g, u.row(n + g.nt() / 2), s));
  }
  if (best < 0) throw UsageError("cth_norm: no grid times in the requested range");
  return best;
}

double xsb_norm(const Field& F, double s, double b) {
  if (F.rep() != Rep::Spectral) throw UsageError("xsb_norm: expects a spectral field");
  const Grid& g = *F.grid();
  const int nx = g.nx();
  std::vector<double> partial(F.rows(), 0.0);
  parallel_for_each(std::size_t(F.rows()), [&](std::size_t r) {
    double tau = g.tau(int(r) - g.nt() / 2);
    const cplx* row = F.row(int(r));
    double acc = 0;
    for (int c = 0; c < nx; ++c) {
      double xi = g.xi(c - nx / 2);
      acc += std::pow(bracket(xi), 2 * s) * std::pow(bracket(tau - xi * xi), 2 * b) *
             std::norm(row[c]);
    }
    partial[r] = acc;
  });
  double sum = 0;
  for (double p : partial) sum += p;
  return std::sqrt(sum * g.dxi() * g.dtau());
}

namespace {

// Per-cell and per-column aggregates of |F| on the dyadic decomposition.
struct CellStats {
  int jmax = 0, dmax = 0;
  std::vector<double> mass2;                              // [j*(dmax+1)+d] sum |F|^2 dtau dxi
  std::vector<std::vector<std::pair<int, double>>> col_l1;  // per column: (d, sum |F| dtau)
  std::vector<double> col_w;                              // <xi_k>^{-2} dxi
  std::vector<int> col_j;

  std::size_t cell(int j, int d) const { return std::size_t(j) * (dmax + 1) + d; }
};

CellStats collect_cells(const Field& F) {
  const Grid& g = *F.grid();
  const DyadicCache& dc = g.dyadic();
  const int nx = g.nx(), nt = g.nt();
  CellStats cs;
  cs.jmax = dc.jmax;
  cs.dmax = dc.dmax;
  cs.mass2.assign(std::size_t(cs.jmax + 1) * (cs.dmax + 1), 0.0);
  cs.col_l1.resize(nx);
  cs.col_w.resize(nx);
  cs.col_j.resize(nx);
  const double cell_measure = g.dtau() * g.dxi();
  std::vector<double> l1_by_d(cs.dmax + 1);
  for (int c = 0; c < nx; ++c) {
    cs.col_j[c] = dc.j_col[c];
    double xi = g.xi(c - nx / 2);
    cs.col_w[c] = g.dxi() / (bracket(xi) * bracket(xi));
    std::fill(l1_by_d.begin(), l1_by_d.end(), 0.0);
    for (int r = 0; r < nt; ++r) {
      double a = std::abs(F.row(r)[c]);
      if (a == 0) continue;
      int d = dc.d_of[std::size_t(r) * nx + c];
      l1_by_d[d] += a;
      cs.mass2[cs.cell(cs.col_j[c], d)] += a * a * cell_measure;
    }
    for (int d = 0; d <= cs.dmax; ++d)
      if (l1_by_d[d] != 0) cs.col_l1[c].push_back({d, l1_by_d[d] * g.dtau()});
  }
  return cs;
}

double besov_from_cells(const CellStats& cs, const std::vector<double>& alpha) {
  double total = 0;
  for (int j = 0; j <= cs.jmax; ++j) {
    double inner = 0;
    for (int d = 0; d <= cs.dmax; ++d) {
      double m2 = cs.mass2[cs.cell(j, d)];
      if (m2 != 0) inner += std::pow(2.0, d / 2.0) * alpha[cs.cell(j, d)] * std::sqrt(m2);
    }
    total += std::pow(2.0, -2.0 * j) * inner * inner;
  }
  return std::sqrt(total);
}

double y_from_cells(const CellStats& cs, const std::vector<double>& alpha) {
  double l1part = 0, l2part = 0;
  for (std::size_t c = 0; c < cs.col_l1.size(); ++c) {
    double colsum = 0;
    for (auto [d, s] : cs.col_l1[c]) colsum += (1 - alpha[cs.cell(cs.col_j[c], d)]) * s;
    l1part += cs.col_w[c] * colsum * colsum;
  }
  for (int j = 0; j <= cs.jmax; ++j)
    for (int d = 0; d <= cs.dmax; ++d) {
      double a = 1 - alpha[cs.cell(j, d)];
      l2part += a * a * cs.mass2[cs.cell(j, d)];
    }
  return std::sqrt(l1part) + std::sqrt(l2part);
}

// golden-section minimum of a convex function on [0,1]
template <class F>
double golden_min(const F& phi, double tol = 1e-7) {
  const double invphi = (std::sqrt(5.0) - 1) / 2;
  double a = 0, b = 1;
  double x1 = b - invphi * (b - a), x2 = a + invphi * (b - a);
  double f1 = phi(x1), f2 = phi(x2);
  while (b - a > tol) {
    if (f1 < f2) {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - invphi * (b - a);
      f1 = phi(x1);
    } else {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + invphi * (b - a);
      f2 = phi(x2);
    }
  }
  return (a + b) / 2;
}

}  // namespace

double besov_norm(const Field& F) {
  if (F.rep() != Rep::Spectral) throw UsageError("besov_norm: expects a spectral field");
  CellStats cs = collect_cells(F);
  std::vector<double> ones(cs.mass2.size(), 1.0);
  return besov_from_cells(cs, ones);
}

double y_norm(const Field& F) {
  if (F.rep() != Rep::Spectral) throw UsageError("y_norm: expects a spectral field");
  CellStats cs = collect_cells(F);
  std::vector<double> zeros(cs.mass2.size(), 0.0);
  return y_from_cells(cs, zeros);
}

NormReport z_norm(const Field& F, ZMethod method, int offset, Field* f1_out, Field* f2_out) {
  if (F.rep() != Rep::Spectral) throw UsageError("z_norm: expects a spectral field");
  CellStats cs = collect_cells(F);

  // paste-heuristic: the boundary split plus the two one-sided allocations,
  // keeping whichever is least (so z never exceeds min(besov, y))
  std::vector<double> alpha(cs.mass2.size(), 0.0);
  for (int j = 0; j <= cs.jmax; ++j)
    for (int d = 0; d <= cs.dmax; ++d)
      if (d <= 2 * j + offset) alpha[cs.cell(j, d)] = 1.0;
  double split = besov_from_cells(cs, alpha) + y_from_cells(cs, alpha);
  std::vector<double> ones(cs.mass2.size(), 1.0), zeros(cs.mass2.size(), 0.0);
  double all_x = besov_from_cells(cs, ones);
  double all_y = y_from_cells(cs, zeros);
  if (all_x < split || all_y < split) {
    alpha = all_x <= all_y ? ones : zeros;
    split = std::min(all_x, all_y);
  }

  NormReport rep;
  rep.method = "paste-heuristic";
  rep.value = split;

  if (method == ZMethod::ConvexOracle) {
    rep.method = "convex-oracle";
    double obj = rep.value;
    bool converged = false;
    const int max_sweeps = 200;
    for (int sweep = 0; sweep < max_sweeps && !converged; ++sweep) {
      for (int j = 0; j <= cs.jmax; ++j)
        for (int d = 0; d <= cs.dmax; ++d) {
          std::size_t c = cs.cell(j, d);
          if (cs.mass2[c] == 0) continue;
          alpha[c] = golden_min([&](double a) {
            double save = alpha[c];
            alpha[c] = a;
            double v = besov_from_cells(cs, alpha) + y_from_cells(cs, alpha);
            alpha[c] = save;
            return v;
          });
        }
      double next = besov_from_cells(cs, alpha) + y_from_cells(cs, alpha);
      converged = std::abs(obj - next) <= 1e-8 * std::max(next, 1e-300);
      obj = next;
    }
    rep.value = obj;
    rep.converged = converged;
  }

  if (f1_out || f2_out) {
    const Grid& g = *F.grid();
    const DyadicCache& dc = g.dyadic();
    Field f1(F.grid(), Rep::Spectral), f2(F.grid(), Rep::Spectral);
    for (int r = 0; r < F.rows(); ++r)
      for (int c = 0; c < F.cols(); ++c) {
        double a = std::abs(F.row(r)[c]);
        double al = alpha[cs.cell(dc.j_col[c], dc.d_of[std::size_t(r) * F.cols() + c])];
        f1.row(r)[c] = al * a;
        f2.row(r)[c] = (1 - al) * a;
      }
    if (f1_out) *f1_out = std::move(f1);
    if (f2_out) *f2_out = std::move(f2);
  }
  return rep;
}

double weight(double tau) {
  double base = std::max(1.0, -tau);
  double p = std::pow(base, 10.0);
  if (!(p < 1e300)) return 1e300;
  return p;
}

NormReport w_norm(const Field& F, ZMethod method, int offset) {
  if (F.rep() != Rep::Spectral) throw UsageError("w_norm: expects a spectral field");
  const Grid& g = *F.grid();
  Field wf(F.grid(), Rep::Spectral);
  bool saturated = false;
  for (int r = 0; r < F.rows(); ++r) {
    double w = weight(g.tau(r - g.nt() / 2));
    const cplx* src = F.row(r);
    cplx* dst = wf.row(r);
    for (int c = 0; c < F.cols(); ++c) {
      dst[c] = std::abs(src[c]) * w;
      if (w == 1e300 && src[c] != cplx(0)) saturated = true;
    }
  }
  NormReport rep = z_norm(wf, method, offset);
  rep.saturated = saturated;
  return rep;
}

NormReport ss_norm(const Field& F, double s, ZMethod method, int offset) {
  if (F.rep() != Rep::Spectral) throw UsageError("ss_norm: expects a spectral field");
  const Grid& g = *F.grid();
  Field weighted = F;
  for (int c = 0; c < F.cols(); ++c) {
    double m = std::pow(bracket(g.xi(c - g.nx() / 2)), s + 1);
    for (int r = 0; r < F.rows(); ++r) weighted.row(r)[c] *= m;
  }
  return w_norm(weighted, method, offset);
}

namespace {

// mixed norms over the whole lattice; inner tau sums carry dtau, xi gets dxi
struct MixedNorms {
  double l2x_l1t_weighted = 0;  // || <xi>^{-1} f ||_{L^2_xi L^1_tau}
  double l2x_l2t = 0;
  double l1x_l1t = 0;
  double l1x_l2t = 0;
};

MixedNorms mixed_norms(const Field& F) {
  const Grid& g = *F.grid();
  const int nx = g.nx(), nt = g.nt();
  MixedNorms m;
  double acc21 = 0, acc22 = 0, acc11 = 0, acc12 = 0;
  for (int c = 0; c < nx; ++c) {
    double l1 = 0, l2sq = 0;
    for (int r = 0; r < nt; ++r) {
      double a = std::abs(F.row(r)[c]);
      l1 += a;
      l2sq += a * a;
    }
    l1 *= g.dtau();
    l2sq *= g.dtau();
    double br = bracket(g.xi(c - nx / 2));
    acc21 += (l1 / br) * (l1 / br);
    acc22 += l2sq;
    acc11 += l1;
    acc12 += std::sqrt(l2sq);
  }
  m.l2x_l1t_weighted = std::sqrt(acc21 * g.dxi());
  m.l2x_l2t = std::sqrt(acc22 * g.dxi());
  m.l1x_l1t = acc11 * g.dxi();
  m.l1x_l2t = acc12 * g.dxi();
  return m;
}

}  // namespace

RatioReport embedding_check(const Field& F, Embedding which, ZMethod method, int offset) {
  if (F.rep() != Rep::Spectral) throw UsageError("embedding_check: expects a spectral field");
  CellStats cs = collect_cells(F);
  int jsup = -1, dmin = -1;
  for (int j = 0; j <= cs.jmax; ++j)
    for (int d = 0; d <= cs.dmax; ++d)
      if (cs.mass2[cs.cell(j, d)] != 0) {
        if (which != Embedding::f21 && jsup >= 0 && j != jsup)
          throw UsageError("embedding_check: support spans several annuli");
        jsup = j;
        if (dmin < 0 || d < dmin) dmin = d;
      }

  RatioReport rr;
  rr.offset = offset;
  rr.j = jsup;
  rr.d = dmin;
  if (jsup < 0) return rr;  // zero field

  MixedNorms m = mixed_norms(F);
  switch (which) {
    case Embedding::f21:
      rr.lhs = m.l2x_l1t_weighted;
      rr.factor = 1;
      break;
    case Embedding::f22:
      rr.lhs = m.l2x_l2t;
      rr.factor = 1 + std::pow(2.0, jsup - dmin / 2.0);
      break;
    case Embedding::f11:
      rr.lhs = m.l1x_l1t;
      rr.factor = std::pow(2.0, 1.5 * jsup);
      break;
    case Embedding::f12:
      rr.lhs = m.l1x_l2t;
      rr.factor = std::pow(2.0, jsup / 2.0) + std::pow(2.0, 1.5 * jsup - dmin / 2.0);
      break;
  }
  rr.z = z_norm(F, method, offset).value;
  rr.ratio = rr.z > 0 ? rr.lhs / (rr.factor * rr.z) : 0;
  return rr;
}

RatioReport pasting_check(const Field& F, PasteSide side, int offset) {
  if (F.rep() != Rep::Spectral) throw UsageError("pasting_check: expects a spectral field");
  CellStats cs = collect_cells(F);
  for (int j = 0; j <= cs.jmax; ++j)
    for (int d = 0; d <= cs.dmax; ++d) {
      if (cs.mass2[cs.cell(j, d)] == 0) continue;
      if (side == PasteSide::A && d < 2 * j - offset)
        throw UsageError("pasting_check: side A needs support in B_{>= 2j - offset}");
      if (side == PasteSide::B && d > 2 * j + offset)
        throw UsageError("pasting_check: side B needs support in B_{<= 2j + offset}");
    }
  RatioReport rr;
  rr.offset = offset;
  rr.lhs = side == PasteSide::A ? y_norm(F) : besov_norm(F);
  rr.factor = 1;
  rr.z = z_norm(F, ZMethod::PasteHeuristic, offset).value;
  rr.ratio = rr.z > 0 ? rr.lhs / rr.z : 0;
  return rr;
}

}  // namespace dlab
