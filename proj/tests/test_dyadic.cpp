// Cell indexing, restriction projections, partitions, half-space separation.
#include <cmath>

#include "dlab/dyadic.hpp"
#include "doctest.h"

using namespace dlab;

namespace {

Field random_spectral(GridPtr g, std::uint64_t seed) {
  Field f(g, Rep::Spectral);
  Rng rng(seed);
  for (cplx& z : f.values()) z = cplx(rng.uniform(-1, 1), rng.uniform(-1, 1));
  return f;
}

}  // namespace

TEST_CASE("cell_index on known points") {
  DyadicCell c = cell_index(0, 0);
  CHECK(c.j == 0);
  CHECK(c.d == 0);

  c = cell_index(4, 2);  // tau - xi^2 = 0, <2> = sqrt5 in [2,4)
  CHECK(c.j == 1);
  CHECK(c.d == 0);

  c = cell_index(0, 3);  // <3> = sqrt10 in [2,4), <-9> = sqrt82 in [8,16)
  CHECK(c.j == 1);
  CHECK(c.d == 3);

  // half-open boundaries: <xi> exactly a power of two stays in the upper cell
  CHECK(cell_index(0, std::sqrt(3.0)).j == 1);
}

TEST_CASE("restrict is a projection partitioning the lattice") {
  auto g = make_grid({2.0, 32, 0.5, 32});  // xi up to 25, tau up to 100
  Field f = random_spectral(g, 5);

  Field all = restrict_cells(f, {axis_any(), axis_any()});
  CHECK(all.values() == f.values());

  Field a1 = restrict_cells(f, {axis_exact(1), axis_any()});
  Field a1a2 = restrict_cells(a1, {axis_exact(2), axis_any()});
  CHECK(l2_norm(a1a2) == 0.0);
  Field a1again = restrict_cells(a1, {axis_exact(1), axis_any()});
  CHECK(a1again.values() == a1.values());

  const DyadicCache& dc = g->dyadic();
  Field sum(g, Rep::Spectral);
  for (int j = 0; j <= dc.jmax; ++j) sum += restrict_cells(f, {axis_exact(j), axis_any()});
  CHECK(sum.values() == f.values());  // masks are disjoint, so exact

  Field upto = restrict_cells(f, {axis_at_most(2), axis_any()});
  Field sum2(g, Rep::Spectral);
  for (int j = 0; j <= 2; ++j) sum2 += restrict_cells(f, {axis_exact(j), axis_any()});
  CHECK(upto.values() == sum2.values());

  Field phys(g, Rep::Physical);
  CHECK_THROWS_AS(restrict_cells(phys, {axis_any(), axis_any()}), UsageError);
}

TEST_CASE("selector kinds carve complementary ranges") {
  auto g = make_grid({2.0, 32, 0.5, 32});
  Field f = random_spectral(g, 6);
  Field lo = restrict_cells(f, {axis_any(), axis_at_most(3)});
  Field hi = restrict_cells(f, {axis_any(), axis_greater(3)});
  CHECK((lo + hi).values() == f.values());
  Field lo2 = restrict_cells(f, {axis_any(), axis_less(4)});
  CHECK(lo2.values() == lo.values());
  Field hi2 = restrict_cells(f, {axis_any(), axis_at_least(4)});
  CHECK(hi2.values() == hi.values());
}

TEST_CASE("partition defect") {
  auto g = make_grid({2.0, 32, 0.5, 32});
  const DyadicCache& dc = g->dyadic();
  Field f = random_spectral(g, 7);
  CHECK(partition_defect(f, dc.jmax, dc.dmax) == 0.0);
  CHECK(partition_defect(f, dc.jmax - 1, dc.dmax) > 0.0);

  Field z(g, Rep::Spectral);
  CHECK(partition_defect(z, 0, 0) == 0.0);

  // a field living on low cells only is unaffected by tight bounds
  Field low = restrict_cells(f, {axis_at_most(1), axis_at_most(2)});
  CHECK(partition_defect(low, 1, 2) == 0.0);
}

TEST_CASE("opposite half-space annuli are separated in xi") {
  auto g = make_grid({8.0, 256, 0.5, 4});  // xi spacing pi/8 up to 50
  const DyadicCache& dc = g->dyadic();
  for (int j1 = 1; j1 <= dc.jmax; ++j1) {
    for (int j2 = std::max(1, j1 - 1); j2 <= std::min(int(dc.jmax), j1 + 1); ++j2) {
      double min_pos = 1e300, min_neg = 1e300;
      for (int k = -128; k < 128; ++k) {
        double xi = g->xi(k);
        int j = cell_index(0, xi).j;
        if (xi > 0 && j == j1) min_pos = std::min(min_pos, xi);
        if (xi < 0 && j == j2) min_neg = std::min(min_neg, -xi);
      }
      if (min_pos > 1e299 || min_neg > 1e299) continue;
      CHECK(min_pos + min_neg >= std::pow(2.0, j1) / 10);
    }
  }
}
