// Iterate recursion vs tree enumeration, homogeneity, contraction behavior.
#include <cmath>
#include <vector>

#include "dlab/evolution.hpp"
#include "dlab/norms.hpp"
#include "dlab/picard.hpp"
#include "doctest.h"

using namespace dlab;

namespace {

Profile random_profile(GridPtr g, std::uint64_t seed, int kmax) {
  Profile f(g);
  Rng rng(seed);
  for (int k = -kmax; k <= kmax; ++k) f.at(k) = cplx(rng.uniform(-1, 1), rng.uniform(-1, 1));
  return f;
}

double max_abs(const Field& f) {
  double m = 0;
  for (const cplx& z : f.values()) m = std::max(m, std::abs(z));
  return m;
}

// toy problem: L(f) spreads f(0) over the grid, N_k multiplies pointwise,
// so A_n = (number of k-ary trees with n leaves) * f(0)^n exactly
IterationProblem toy_problem(GridPtr g, int k) {
  IterationProblem p;
  p.k = k;
  p.L = [g](const Profile& f) {
    Field out(g, Rep::Mode);
    for (cplx& z : out.values()) z = f.at(0);
    return out;
  };
  p.Nk = [](const std::vector<const Field*>& args) {
    Field out = *args[0];
    for (std::size_t j = 1; j < args.size(); ++j)
      for (std::size_t i = 0; i < out.values().size(); ++i)
        out.values()[i] *= args[j]->values()[i];
    return out;
  };
  p.normD = [](const Profile& f) { return std::abs(f.at(0)); };
  p.normS = [](const Field& u) {
    double m = 0;
    for (const cplx& z : u.values()) m = std::max(m, std::abs(z));
    return m;
  };
  return p;
}

// every bracketing of n leaves, applied to the real operators one by one
std::vector<Field> all_trees(const IterationProblem& p, const Profile& f, int n) {
  if (n == 1) return {p.L(f)};
  std::vector<Field> out;
  for (int i = 1; i < n; ++i) {
    std::vector<Field> left = all_trees(p, f, i);
    std::vector<Field> right = all_trees(p, f, n - i);
    for (const Field& a : left)
      for (const Field& b : right) out.push_back(p.Nk({&a, &b}));
  }
  return out;
}

}  // namespace

TEST_CASE("iterate counts k-ary trees exactly on the pointwise toy") {
  auto g = make_grid({1.0, 4, 1.0, 4});
  Profile f(g);
  f.at(0) = 0.5;  // dyadic data keeps every arithmetic step exact

  IterationProblem p2 = toy_problem(g, 2);
  double catalan[] = {1, 1, 2, 5, 14};  // binary trees with n leaves
  for (int n = 1; n <= 5; ++n) {
    Field an = iterate_A(p2, f, n);
    double want = catalan[n - 1] * std::pow(0.5, n);
    for (const cplx& z : an.values()) CHECK(z == cplx(want));
  }

  IterationProblem p3 = toy_problem(g, 3);
  double ternary[] = {1, 0, 1, 0, 3};  // ternary trees: even leaf counts impossible
  for (int n = 1; n <= 5; ++n) {
    Field an = iterate_A(p3, f, n);
    double want = ternary[n - 1] * std::pow(0.5, n);
    for (const cplx& z : an.values()) CHECK(z == cplx(want));
  }

  CHECK_THROWS_AS(iterate_A(p2, f, 0), UsageError);
}

TEST_CASE("vanishing nonlinearity leaves only the linear flow") {
  auto g = make_grid({4.0, 32, 8.0, 64});
  IterationProblem p = default_problem();
  p.Nk = [g](const std::vector<const Field*>&) { return Field(g, Rep::Mode); };
  Profile f = random_profile(g, 5, 10);
  Field a1 = iterate_A(p, f, 1);
  CHECK(max_abs(a1 - apply_L(f)) == 0.0);
  for (int n = 2; n <= 4; ++n) CHECK(max_abs(iterate_A(p, f, n)) == 0.0);
}

TEST_CASE("iterates match the explicit tree enumeration") {
  auto g = make_grid({4.0, 32, 16.0, 256});
  IterationProblem p = default_problem();
  Profile f = random_profile(g, 6, 3);  // band 3, so A_4 stays inside the grid

  for (int n = 2; n <= 4; ++n) {
    std::vector<Field> trees = all_trees(p, f, n);
    Field sum(g, Rep::Mode);
    for (const Field& t : trees) sum += t;
    Field an = iterate_A(p, f, n);
    CHECK(max_abs(an - sum) <= 1e-12 * std::max(1.0, max_abs(an)));
  }
  CHECK(all_trees(p, f, 4).size() == 5);
}

TEST_CASE("iterates are homogeneous of degree n") {
  auto g = make_grid({4.0, 32, 16.0, 256});
  IterationProblem p = default_problem();
  Profile f = random_profile(g, 7, 3);

  for (int n = 1; n <= 4; ++n) {
    for (double lambda : {-1.0, 0.5, 2.0}) {
      HomogeneityResult hr = homogeneity_defect(p, f, lambda, n);
      CHECK_FALSE(hr.absolute);
      CHECK(hr.defect <= 1e-10);
    }
    HomogeneityResult zr = homogeneity_defect(p, f, 0.0, n);
    CHECK(zr.absolute);
    CHECK(zr.defect == 0.0);
  }
}

TEST_CASE("contraction on small gaussian data") {
  auto g = make_grid({16.0, 256, 16.0, 2048});
  Profile f(g);
  for (int k = -g->nx() / 2; k < g->nx() / 2; ++k)
    f.at(k) = std::exp(-g->xi(k) * g->xi(k) / 2);
  double scale = 1e-3 / hs_norm(f, -1);
  for (cplx& z : f.v) z *= scale;
  REQUIRE(hs_norm(f, -1) == doctest::Approx(1e-3).epsilon(1e-12));

  IterationProblem p = default_problem();
  ContractionConfig cfg;
  ContractionResult res = contraction_solve(p, f, cfg);
  CHECK_FALSE(res.diverged);
  CHECK(res.residual < 1e-8);
  REQUIRE(res.diff_norms.size() >= 2);
  for (std::size_t i = 0; i + 1 < res.diff_norms.size(); ++i)
    CHECK(res.diff_norms[i + 1] < 0.5 * res.diff_norms[i]);

  REQUIRE(int(res.partial_sum_gaps.size()) == cfg.Kmax);
  for (int K = 1; K < cfg.Kmax; ++K) {
    if (res.partial_sum_gaps[K - 1] > 100 * cfg.tol)
      CHECK(res.partial_sum_gaps[K] < 0.5 * res.partial_sum_gaps[K - 1]);
  }
  CHECK(res.partial_sum_gaps.back() <= 10 * cfg.tol);
  CHECK(res.partial_sum_norms.back() ==
        doctest::Approx(cth_norm(res.u, -1, 0, 1)).epsilon(1e-6));

  // zero data converges in one silent step
  Profile zero(g);
  ContractionResult zres = contraction_solve(p, zero, cfg);
  CHECK(zres.diff_norms.size() == 1);
  CHECK(max_abs(zres.u) == 0.0);

  // data outside the contraction ball is refused up front
  Profile big = f;
  for (cplx& z : big.v) z *= 500;
  CHECK_THROWS_AS(contraction_solve(p, big, cfg), UsageError);
}

TEST_CASE("divergence is detected on the runaway toy") {
  auto g = make_grid({1.0, 4, 1.0, 4});
  Profile f(g);
  f.at(0) = 1.0;  // u = 1 + u^2 has no real fixed point
  IterationProblem p = toy_problem(g, 2);
  ContractionConfig cfg;
  cfg.eps0 = 10;
  ContractionResult res = contraction_solve(p, f, cfg);
  CHECK(res.diverged);
  CHECK(res.diff_norms.size() >= 4);
}

TEST_CASE("contraction limit matches the closed-form toy fixed point") {
  auto g = make_grid({1.0, 4, 1.0, 4});
  Profile f(g);
  f.at(0) = 0.1;
  IterationProblem p = toy_problem(g, 2);
  ContractionConfig cfg;
  cfg.eps0 = 0.5;
  cfg.tol = 1e-13;
  ContractionResult res = contraction_solve(p, f, cfg);
  double star = (1 - std::sqrt(1 - 0.4)) / 2;  // u = 0.1 + u^2
  CHECK_FALSE(res.diverged);
  for (const cplx& z : res.u.values()) CHECK(std::abs(z - star) <= 1e-12);
}

TEST_CASE("lipschitz probe of the iterate maps") {
  auto g = make_grid({4.0, 32, 16.0, 256});
  IterationProblem p = default_problem();
  Profile f = random_profile(g, 8, 3);
  Profile h = random_profile(g, 9, 3);

  CHECK(lipschitz_probe(p, f, h, 1) == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(lipschitz_probe(p, f, f, 2) == 0.0);

  for (int n = 2; n <= 3; ++n) {
    double c = lipschitz_probe(p, f, h, n);
    CHECK(c > 0);
    CHECK(c < 1e3);
    // the normalization makes the probe scale-free
    Profile f3 = f, h3 = h;
    for (cplx& z : f3.v) z *= 3;
    for (cplx& z : h3.v) z *= 3;
    CHECK(lipschitz_probe(p, f3, h3, n) == doctest::Approx(c).epsilon(1e-10));
  }
}
