// Dyadic annuli in xi, parabolic shells in tau-xi^2: indexing, masks, restriction.
#pragma once

#include <cstdint>

#include "dlab/grid.hpp"

namespace dlab {

struct DyadicCell {
  int j = 0;  // annulus: 2^j <= <xi> < 2^{j+1}
  int d = 0;  // shell:   2^d <= <tau - xi^2> < 2^{d+1}
};

DyadicCell cell_index(double tau, double xi);

enum class SelKind { Any, Exact, AtMost, AtLeast, Greater, Less };

struct AxisSelector {
  SelKind kind = SelKind::Any;
  int value = 0;

  bool matches(int v) const {
    switch (kind) {
      case SelKind::Any: return true;
      case SelKind::Exact: return v == value;
      case SelKind::AtMost: return v <= value;
      case SelKind::AtLeast: return v >= value;
      case SelKind::Greater: return v > value;
      case SelKind::Less: return v < value;
    }
    return false;
  }
};

inline AxisSelector axis_any() { return {SelKind::Any, 0}; }
inline AxisSelector axis_exact(int v) { return {SelKind::Exact, v}; }
inline AxisSelector axis_at_most(int v) { return {SelKind::AtMost, v}; }
inline AxisSelector axis_at_least(int v) { return {SelKind::AtLeast, v}; }
inline AxisSelector axis_greater(int v) { return {SelKind::Greater, v}; }
inline AxisSelector axis_less(int v) { return {SelKind::Less, v}; }

struct CellSelector {
  AxisSelector j, d;
  bool matches(int jv, int dv) const { return j.matches(jv) && d.matches(dv); }
};

// Per-grid cell indices; one byte per point stands in for the full mask set.
struct DyadicCache {
  explicit DyadicCache(const Grid& g);

  std::vector<std::uint8_t> j_col;  // per column c = k + Nx/2 (j depends on xi only)
  std::vector<std::uint8_t> d_of;   // per point, Field layout
  int jmax = 0, dmax = 0;           // largest indices present on the lattice
};

// Zeroes every spectral lattice point whose cell does not match sel.
Field restrict_cells(const Field& f, const CellSelector& sel);

// Relative mass of f outside the union of cells with j <= jmax, d <= dmax.
double partition_defect(const Field& f, int jmax, int dmax);

}  // namespace dlab
