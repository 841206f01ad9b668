#include "dlab/evolution.hpp"

#include <cmath>

#include "dlab/fft.hpp"

namespace dlab {

double BumpProfile::eval(double t) const {
  double a = std::abs(t);
  if (a <= plateau) return 1;
  if (a >= support) return 0;
  // smooth step via e^{-1/v}: infinitely flat at both ends of the ramp
  double u = (a - plateau) / (support - plateau);
  double s0 = std::exp(-1.0 / (1.0 - u));
  double s1 = std::exp(-1.0 / u);
  return s0 / (s0 + s1);
}

double eval_eta(double t) {
  static const BumpProfile eta{1, 2};
  return eta.eval(t);
}

double eval_a(double t) { return 0.5 * sgn(t) * eval_eta(t / 5); }

Profile propagate(const Profile& fhat, double t) {
  const Grid& g = *fhat.grid;
  Profile out(fhat.grid);
  for (int k = -g.nx() / 2; k < g.nx() / 2; ++k) {
    double xi = g.xi(k);
    out.at(k) = std::polar(1.0, -t * xi * xi) * fhat.at(k);
  }
  return out;
}

Field apply_L(const Profile& fhat) {
  const Grid& g = *fhat.grid;
  Field u(fhat.grid, Rep::Mode);
  parallel_for_each(std::size_t(g.nt()), [&](std::size_t r) {
    int n = int(r) - g.nt() / 2;
    double t = g.t(n);
    double eta = eval_eta(t);
    cplx* row = u.row(int(r));
    if (eta == 0) return;
    for (int k = -g.nx() / 2; k < g.nx() / 2; ++k) {
      double xi = g.xi(k);
      row[k + g.nx() / 2] = eta * std::polar(1.0, -t * xi * xi) * fhat.at(k);
    }
  });
  return u;
}

namespace {

// dealiased pointwise product of two mode rows, kept modes + discarded mass
void product_row(const Grid& g, const cplx* ur, const cplx* vr, cplx* out, double& kept2,
                 double& lost2) {
  const int nx = g.nx(), big = 2 * nx;
  std::vector<cplx> a(big, cplx(0)), b(big, cplx(0));
  for (int c = 0; c < nx; ++c) {
    a[c + nx / 2] = ur[c];
    b[c + nx / 2] = vr[c];
  }
  fft_centered(a.data(), big, -1, g.dxi() / (2 * M_PI));
  fft_centered(b.data(), big, -1, g.dxi() / (2 * M_PI));
  for (int i = 0; i < big; ++i) a[i] *= b[i];
  fft_centered(a.data(), big, +1, g.dx() / 2);
  for (int i = 0; i < big; ++i) {
    int k = i - big / 2;
    if (k >= -nx / 2 && k < nx / 2) {
      out[k + nx / 2] = a[i];
      kept2 += std::norm(a[i]);
    } else {
      lost2 += std::norm(a[i]);
    }
  }
}

}  // namespace

Field apply_N2(const Field& u, const Field& v, double aliasing_budget, double* alias_ratio_out) {
  if (u.rep() != Rep::Mode || v.rep() != Rep::Mode)
    throw UsageError("apply_N2: expects mode fields");
  if (!u.grid()->same_lattice(*v.grid())) throw UsageError("apply_N2: grid mismatch");
  const Grid& g = *u.grid();
  const int nx = g.nx(), nt = g.nt();

  Field w(u.grid(), Rep::Mode);
  std::vector<double> kept(nt, 0.0), lost(nt, 0.0);
  parallel_for_each(std::size_t(nt), [&](std::size_t r) {
    product_row(g, u.row(int(r)), v.row(int(r)), w.row(int(r)), kept[r], lost[r]);
  });
  double kept2 = 0, lost2 = 0;
  for (int r = 0; r < nt; ++r) {
    kept2 += kept[r];
    lost2 += lost[r];
  }
  double ratio = kept2 + lost2 > 0 ? lost2 / (kept2 + lost2) : 0;
  if (alias_ratio_out) *alias_ratio_out = ratio;
  if (aliasing_budget < 1 && ratio > aliasing_budget)
    throw ResolutionError("apply_N2: product spectrum does not fit the grid");

  Field out(u.grid(), Rep::Mode);
  parallel_for(std::size_t(nx), [&](std::size_t lo, std::size_t hi) {
    std::vector<cplx> col(nt), kernel(nt);
    for (std::size_t c = lo; c < hi; ++c) {
      double xi = g.xi(int(c) - nx / 2);
      double xi2 = xi * xi;

      // first term: one s-integral, then modulate by eta(t) e^{-it xi^2}
      cplx integral(0);
      for (int r = 0; r < nt; ++r) {
        double s = g.t(r - nt / 2);
        double as = eval_a(s);
        if (as != 0) integral += as * std::polar(1.0, s * xi2) * w.row(r)[c];
      }
      integral *= g.dt();

      // second term: circular convolution in t with a(sigma) e^{-i sigma xi^2}
      for (int r = 0; r < nt; ++r) col[r] = w.row(r)[c];
      for (int p = 0; p < nt; ++p) {
        int sig = p <= nt / 2 ? p : p - nt;  // raw-difference layout with wrap
        double s = sig * g.dt();
        double as = eval_a(s);
        kernel[p] = as == 0 ? cplx(0) : as * std::polar(1.0, -s * xi2);
      }
      // out_raw[n] = dt * sum_m kernel[(n-m) mod nt] col_raw[m]; the raw layout
      // of col is its centered one rotated by nt/2, and the rotations cancel
      // between forward and inverse, so only kernel needs the raw layout.
      fft_raw(col.data(), nt, -1);
      fft_raw(kernel.data(), nt, -1);
      for (int r = 0; r < nt; ++r) col[r] *= kernel[r] * (g.dt() / double(nt));
      fft_raw(col.data(), nt, +1);

      for (int r = 0; r < nt; ++r) {
        double t = g.t(r - nt / 2);
        double eta = eval_eta(t);
        cplx term1 = eta == 0 ? cplx(0) : eta * std::polar(1.0, -t * xi2) * integral;
        out.row(r)[c] = term1 + col[r];
      }
    }
  });
  return out;
}

double duhamel_identity_defect(const std::function<cplx(double)>& g, double t, double ds,
                               double s_lo, double s_hi) {
  if (t < 0 || t > 1) throw UsageError("duhamel_identity_defect: needs 0 <= t <= 1");
  auto trapz = [&](double lo, double hi, const std::function<cplx(double)>& fn) {
    long n = std::lround(std::ceil((hi - lo) / ds));
    if (n < 1) n = 1;
    double h = (hi - lo) / double(n);
    cplx acc = 0.5 * (fn(lo) + fn(hi));
    for (long i = 1; i < n; ++i) acc += fn(lo + i * h);
    return acc * h;
  };
  cplx lhs = trapz(0, t, g);
  cplx rhs = eval_eta(t) * trapz(s_lo, s_hi, [&](double s) { return eval_a(s) * g(s); }) +
             trapz(s_lo, s_hi, [&](double s) { return eval_a(t - s) * g(s); });
  return std::abs(lhs - rhs);
}

}  // namespace dlab
