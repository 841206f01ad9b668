#include "dlab/grid.hpp"

#include <cmath>

#include "dlab/dyadic.hpp"
#include "dlab/fft.hpp"

namespace dlab {

Grid::Grid(const GridSpec& spec) : spec_(spec) {
  dx_ = 2.0 * spec.L / spec.Nx;
  dt_ = 2.0 * spec.Tw / spec.Nt;
  dxi_ = M_PI / spec.L;
  dtau_ = M_PI / spec.Tw;
}

const DyadicCache& Grid::dyadic() const {
  std::call_once(dyadic_once_, [this] { dyadic_ = std::make_shared<DyadicCache>(*this); });
  return *dyadic_;
}

GridPtr make_grid(const GridSpec& spec) {
  if (!(spec.L > 0) || !(spec.Tw > 0))
    throw ConfigError("grid: L and Tw must be positive");
  if (spec.Nx < 4 || spec.Nt < 4 || !is_pow2(spec.Nx) || !is_pow2(spec.Nt))
    throw ConfigError("grid: Nx and Nt must be powers of two, at least 4");
  return std::make_shared<Grid>(spec);
}

bool Field::finite() const {
  for (const cplx& z : v_)
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return false;
  return true;
}

Field& Field::operator+=(const Field& o) {
  if (!grid_->same_lattice(*o.grid_) || rep_ != o.rep_)
    throw UsageError("field add: mismatched grids or representations");
  for (std::size_t i = 0; i < v_.size(); ++i) v_[i] += o.v_[i];
  return *this;
}

Field& Field::operator-=(const Field& o) {
  if (!grid_->same_lattice(*o.grid_) || rep_ != o.rep_)
    throw UsageError("field sub: mismatched grids or representations");
  for (std::size_t i = 0; i < v_.size(); ++i) v_[i] -= o.v_[i];
  return *this;
}

Field& Field::operator*=(cplx c) {
  for (cplx& z : v_) z *= c;
  return *this;
}

namespace {

// forward-in-x: f-hat(xi_k) = Dx sum_p f(x_p) e^{+i x_p xi_k} (row-wise)
// inverse-in-x: f(x_p) = (Dxi/2pi) sum_k f-hat(xi_k) e^{-i x_p xi_k}
void transform_rows(Field& f, int sign, double weight) {
  const int nx = f.cols(), nt = f.rows();
  parallel_for_each(std::size_t(nt),
                    [&](std::size_t r) { fft_centered(f.row(int(r)), nx, sign, weight); });
}

void transform_cols(Field& f, int sign, double weight) {
  const int nx = f.cols(), nt = f.rows();
  parallel_for(std::size_t(nx), [&](std::size_t lo, std::size_t hi) {
    std::vector<cplx> col(nt);
    for (std::size_t c = lo; c < hi; ++c) {
      for (int r = 0; r < nt; ++r) col[r] = f.row(r)[c];
      fft_centered(col.data(), nt, sign, weight);
      for (int r = 0; r < nt; ++r) f.row(r)[c] = col[r];
    }
  });
}

Field relabel(Field f, Rep rep) {
  Field res(f.grid(), rep);
  res.values() = std::move(f.values());
  return res;
}

}  // namespace

Field transform(const Field& f, Dir dir) {
  const Grid& g = *f.grid();
  Field out = f;
  switch (f.rep()) {
    case Rep::Physical:
      if (dir != Dir::Forward) throw UsageError("transform: physical field has no inverse-x step");
      transform_rows(out, +1, g.dx());
      return relabel(std::move(out), Rep::Mode);
    case Rep::Mode:
      if (dir == Dir::Forward) {
        transform_cols(out, +1, g.dt());
        return relabel(std::move(out), Rep::Spectral);
      }
      transform_rows(out, -1, g.dxi() / (2.0 * M_PI));
      return relabel(std::move(out), Rep::Physical);
    case Rep::Spectral:
      if (dir != Dir::Inverse) throw UsageError("transform: spectral field has no forward-t step");
      transform_cols(out, -1, g.dtau() / (2.0 * M_PI));
      return relabel(std::move(out), Rep::Mode);
  }
  throw UsageError("transform: unknown representation");
}

Field to_rep(const Field& f, Rep target) {
  Field cur = f;
  auto step = [&](Dir d) { cur = transform(cur, d); };
  while (cur.rep() != target) {
    int c = int(cur.rep()), t = int(target);
    step(t > c ? Dir::Forward : Dir::Inverse);
  }
  return cur;
}

double l2_norm(const Field& f) {
  const Grid& g = *f.grid();
  double cell = 0;
  switch (f.rep()) {
    case Rep::Physical: cell = g.dx() * g.dt(); break;
    case Rep::Mode: cell = g.dxi() * g.dt(); break;
    case Rep::Spectral: cell = g.dxi() * g.dtau(); break;
  }
  // deterministic reduction: per-row partials summed in row order
  std::vector<double> partial(f.rows(), 0.0);
  parallel_for_each(std::size_t(f.rows()), [&](std::size_t r) {
    const cplx* row = f.row(int(r));
    double s = 0;
    for (int c = 0; c < f.cols(); ++c) s += std::norm(row[c]);
    partial[r] = s;
  });
  double s = 0;
  for (double p : partial) s += p;
  return std::sqrt(s * cell);
}

double parseval_defect(const Field& f) {
  if (!f.finite()) throw UsageError("parseval_defect: field has non-finite values");
  if (f.rep() == Rep::Spectral)
    throw UsageError("parseval_defect: expects a physical or mode field");
  double n2 = l2_norm(f);
  n2 *= n2;
  Field hat = transform(f, Dir::Forward);
  double h2 = l2_norm(hat);
  h2 *= h2;
  return std::abs(h2 - 2.0 * M_PI * n2) / std::max(1.0, n2);
}

Profile rescale(const Profile& fhat, double lambda) {
  if (lambda < 1.0) throw UsageError("rescale: lambda must be >= 1");
  const Grid& g = *fhat.grid;
  Profile out(fhat.grid);
  if (lambda == 1.0) {
    out.v = fhat.v;
    return out;
  }
  // The output stretches the physical profile by lambda, so input mass beyond
  // |x| > 0.9 L / lambda lands outside the box and wraps around.
  const int nx = g.nx();
  std::vector<cplx> phys = fhat.v;
  fft_centered(phys.data(), nx, -1, g.dxi() / (2.0 * M_PI));
  double tail = 0, total = 0;
  for (int k = -nx / 2; k < nx / 2; ++k) {
    double m = std::norm(phys[k + nx / 2]);
    total += m;
    if (std::abs(g.x(k)) >= 0.9 * g.spec().L / lambda) tail += m;
  }
  if (total > 0 && tail / total > 1e-10)
    throw ResolutionError("rescale: profile too wide, stretched support leaves the box");
  // cubic (Catmull-Rom) interpolation of f-hat at lambda*xi
  auto sample = [&](double xi) -> cplx {
    double fk = xi / g.dxi();
    int k0 = int(std::floor(fk));
    double u = fk - k0;
    cplx p[4];
    for (int i = -1; i <= 2; ++i) {
      int k = k0 + i;
      p[i + 1] = (k >= -nx / 2 && k < nx / 2) ? fhat.at(k) : cplx(0);
    }
    cplx a = 0.5 * (2.0 * p[1]);
    cplx b = 0.5 * (p[2] - p[0]);
    cplx c = 0.5 * (2.0 * p[0] - 5.0 * p[1] + 4.0 * p[2] - p[3]);
    cplx d = 0.5 * (-p[0] + 3.0 * p[1] - 3.0 * p[2] + p[3]);
    return a + b * u + c * (u * u) + d * (u * u * u);
  };
  for (int k = -nx / 2; k < nx / 2; ++k) out.at(k) = sample(lambda * g.xi(k)) / lambda;
  return out;
}

}  // namespace dlab
