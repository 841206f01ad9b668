#include "dlab/dyadic.hpp"

#include <cmath>

namespace dlab {

DyadicCell cell_index(double tau, double xi) {
  // ilogb is an exact floor(log2) for values >= 1, unlike log2 near powers of two
  DyadicCell c;
  c.j = std::ilogb(bracket(xi));
  c.d = std::ilogb(bracket(tau - xi * xi));
  return c;
}

DyadicCache::DyadicCache(const Grid& g) {
  const int nx = g.nx(), nt = g.nt();
  j_col.resize(nx);
  d_of.resize(std::size_t(nx) * nt);
  for (int k = -nx / 2; k < nx / 2; ++k) {
    int j = std::ilogb(bracket(g.xi(k)));
    j_col[k + nx / 2] = std::uint8_t(j);
    if (j > jmax) jmax = j;
  }
  int dm = 0;
  parallel_for(std::size_t(nt), [&](std::size_t lo, std::size_t hi) {
    for (std::size_t r = lo; r < hi; ++r) {
      double tau = g.tau(int(r) - nt / 2);
      for (int k = -nx / 2; k < nx / 2; ++k) {
        int d = std::ilogb(bracket(tau - g.xi(k) * g.xi(k)));
        d_of[r * nx + (k + nx / 2)] = std::uint8_t(d);
      }
    }
  });
  for (std::uint8_t d : d_of)
    if (d > dm) dm = d;
  dmax = dm;
}

Field restrict_cells(const Field& f, const CellSelector& sel) {
  if (f.rep() != Rep::Spectral) throw UsageError("restrict_cells: expects a spectral field");
  const Grid& g = *f.grid();
  const DyadicCache& dc = g.dyadic();
  Field out = f;
  const int nx = g.nx();
  parallel_for_each(std::size_t(f.rows()), [&](std::size_t r) {
    cplx* row = out.row(int(r));
    const std::uint8_t* drow = dc.d_of.data() + r * nx;
    for (int c = 0; c < nx; ++c)
      if (!sel.matches(dc.j_col[c], drow[c])) row[c] = cplx(0);
  });
  return out;
}

double partition_defect(const Field& f, int jmax, int dmax) {
  if (f.rep() != Rep::Spectral) throw UsageError("partition_defect: expects a spectral field");
  const Grid& g = *f.grid();
  const DyadicCache& dc = g.dyadic();
  const int nx = g.nx();
  double outside = 0, total = 0;
  for (int r = 0; r < f.rows(); ++r) {
    const cplx* row = f.row(r);
    const std::uint8_t* drow = dc.d_of.data() + std::size_t(r) * nx;
    for (int c = 0; c < nx; ++c) {
      double m = std::norm(row[c]);
      total += m;
      if (dc.j_col[c] > jmax || drow[c] > dmax) outside += m;
    }
  }
  if (total == 0) return 0;
  return std::sqrt(outside / total);
}

}  // namespace dlab
