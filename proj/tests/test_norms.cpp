// Frozen norm values, sum-space oracle agreement, embeddings, pastings.
#include <cmath>

#include "dlab/evolution.hpp"
#include "dlab/norms.hpp"
#include "doctest.h"

using namespace dlab;

namespace {

Field random_spectral(GridPtr g, std::uint64_t seed) {
  Field f(g, Rep::Spectral);
  Rng rng(seed);
  for (cplx& z : f.values()) z = cplx(rng.uniform(-1, 1), rng.uniform(-1, 1));
  return f;
}

Field random_on_cells(GridPtr g, std::uint64_t seed, const CellSelector& sel) {
  return restrict_cells(random_spectral(g, seed), sel);
}

}  // namespace

TEST_CASE("hs_norm on indicator and band profiles") {
  {
    auto g = make_grid({16 * M_PI, 256, 1.0, 4});  // dxi = 1/16
    Profile ind(g);
    for (int k = -g->nx() / 2; k < g->nx() / 2; ++k)
      if (std::abs(g->xi(k)) <= 1) ind.at(k) = 1;
    double coarse = hs_norm(ind, 0);
    CHECK(std::abs(coarse * coarse - 2.0) <= 2.5 * g->dxi());

    auto gf = make_grid({64 * M_PI, 1024, 1.0, 4});  // dxi = 1/64
    Profile ind2(gf);
    for (int k = -gf->nx() / 2; k < gf->nx() / 2; ++k)
      if (std::abs(gf->xi(k)) <= 1) ind2.at(k) = 1;
    double fine = hs_norm(ind2, 0);
    CHECK(std::abs(fine * fine - 2.0) <= 2.5 * gf->dxi());
    CHECK(std::abs(fine - std::sqrt(2.0)) < std::abs(coarse - std::sqrt(2.0)));
  }

  {
    // band amplitude N/1000 on ||xi| - N| <= 10 at N = 100, measured in H^{-1}
    auto g = make_grid({32 * M_PI, 8192, 1.0, 4});  // dxi = 1/32, xi up to 128
    Profile band(g);
    for (int k = -g->nx() / 2; k < g->nx() / 2; ++k)
      if (std::abs(std::abs(g->xi(k)) - 100.0) <= 10.0) band.at(k) = 0.1;
    double val = hs_norm(band, -1);
    double integral = 2 * 0.01 * (std::atan(110.0) - std::atan(90.0));
    CHECK(val == doctest::Approx(std::sqrt(integral)).epsilon(2e-3));
    CHECK(val == doctest::Approx(6.36e-3).epsilon(0.02));
  }

  Profile zero(make_grid({1.0, 8, 1.0, 4}));
  CHECK(hs_norm(zero, -1) == 0.0);
}

TEST_CASE("cth_norm takes the sup over grid times") {
  auto g = make_grid({8.0, 64, 2.0, 32});
  Profile fhat(g);
  Rng rng(3);
  for (int k = -32; k < 32; ++k) fhat.at(k) = cplx(rng.uniform(-1, 1), rng.uniform(-1, 1));

  Field steady(g, Rep::Mode);
  for (int r = 0; r < steady.rows(); ++r)
    for (int k = -32; k < 32; ++k) steady.at(r - 16, k) = fhat.at(k);
  CHECK(cth_norm(steady, -0.5, -2, 2) == doctest::Approx(hs_norm(fhat, -0.5)).epsilon(1e-12));

  // free evolution: unitary, so the L^2-in-x norm is constant in t
  Field freeev(g, Rep::Mode);
  for (int n = -16; n < 16; ++n) {
    Profile pt = propagate(fhat, g->t(n));
    for (int k = -32; k < 32; ++k) freeev.at(n, k) = pt.at(k);
  }
  double lo = 1e300, hi = 0;
  for (int n = -16; n < 16; ++n) {
    double v = hs_norm_row(*g, freeev.row(n + 16), 0);
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  CHECK(hi - lo < 1e-10);
  CHECK(cth_norm(freeev, 0, -2, 2) == doctest::Approx(hs_norm(fhat, 0)).epsilon(1e-12));

  CHECK_THROWS_AS(cth_norm(steady, 0, 5.0, 6.0), UsageError);
  Field spec(g, Rep::Spectral);
  CHECK_THROWS_AS(cth_norm(spec, 0, 0, 1), UsageError);
}

TEST_CASE("xsb_norm frozen values") {
  auto g = make_grid({M_PI, 16, M_PI, 64});  // dxi = dtau = 1
  Field f(g, Rep::Spectral);
  f.at(0, 3) = 1;  // (tau, xi) = (0, 3)
  double expect = std::pow(bracket(3), -0.7) * std::pow(bracket(-9), 0.3) *
                  std::sqrt(g->dxi() * g->dtau());
  CHECK(xsb_norm(f, -0.7, 0.3) == doctest::Approx(expect).epsilon(1e-12));

  // supported on the parabola: any b gives the plain L^2 norm when s = 0
  Field par(g, Rep::Spectral);
  for (int k = -5; k <= 5; ++k) par.at(k * k, k) = cplx(k, 1);
  CHECK(xsb_norm(par, 0, 0.9) == doctest::Approx(l2_norm(par)).epsilon(1e-12));
  CHECK(xsb_norm(par, 0, -0.4) == doctest::Approx(l2_norm(par)).epsilon(1e-12));

  Field z(g, Rep::Spectral);
  CHECK(xsb_norm(z, 1, 1) == 0.0);
}

TEST_CASE("besov_norm single-cell and split-cell values") {
  auto g = make_grid({M_PI, 16, M_PI, 64});
  Field f(g, Rep::Spectral);
  f.at(0, 3) = 2.0;  // j = 1, d = 3
  double M = 2.0 * std::sqrt(g->dxi() * g->dtau());
  CHECK(besov_norm(f) == doctest::Approx(0.5 * std::pow(2.0, 1.5) * M).epsilon(1e-12));

  Field two(g, Rep::Spectral);
  two.at(9, 3) = 1.5;   // tau - xi^2 = 0: j = 1, d = 0
  two.at(14, 3) = 0.5;  // tau - xi^2 = 5: j = 1, d = 2
  double m0 = 1.5 * std::sqrt(g->dxi() * g->dtau());
  double m2 = 0.5 * std::sqrt(g->dxi() * g->dtau());
  CHECK(besov_norm(two) == doctest::Approx(0.5 * (m0 + 2 * m2)).epsilon(1e-12));
}

TEST_CASE("y_norm unit column") {
  auto g = make_grid({M_PI, 16, 16 * M_PI, 128});  // dxi = 1, dtau = 1/16
  Field f(g, Rep::Spectral);
  for (int m = 0; m < 16; ++m) f.at(m, 0) = 1;  // tau in [0, 1)
  CHECK(y_norm(f) == doctest::Approx(2.0 * std::sqrt(g->dxi())).epsilon(1e-12));

  Field threef = f * cplx(-3.0);
  CHECK(y_norm(threef) == doctest::Approx(3 * y_norm(f)).epsilon(1e-12));
}

TEST_CASE("z_norm bounds, methods, and the two-cell oracle") {
  auto g = make_grid({2.0, 32, 0.5, 64});
  Field z(g, Rep::Spectral);
  CHECK(z_norm(z, ZMethod::PasteHeuristic).value == 0.0);
  CHECK(z_norm(z, ZMethod::ConvexOracle).value == 0.0);

  for (int trial = 0; trial < 8; ++trial) {
    Field f = random_spectral(g, 40 + trial);
    double zh = z_norm(f, ZMethod::PasteHeuristic).value;
    NormReport zo = z_norm(f, ZMethod::ConvexOracle);
    CHECK(zh <= std::min(besov_norm(f), y_norm(f)) * (1 + 1e-12));
    CHECK(zo.value <= zh * (1 + 1e-12));
    CHECK(zh <= 2 * zo.value);
    CHECK(zo.converged);
  }

  // decomposition: f1 + f2 = |F|, both parts between 0 and |F|
  Field f = random_spectral(g, 77);
  Field f1, f2;
  z_norm(f, ZMethod::ConvexOracle, 2, &f1, &f2);
  for (std::size_t i = 0; i < f.values().size(); ++i) {
    double a = std::abs(f.values()[i]);
    double p = f1.values()[i].real(), q = f2.values()[i].real();
    CHECK(p >= -1e-15);
    CHECK(p <= a + 1e-15);
    CHECK(std::abs(p + q - a) <= 1e-12 * std::max(1.0, a));
  }

  // two cells straddling the paste boundary: oracle vs exhaustive grid search
  // over per-cell allocations, with the objective written out by hand
  auto g2 = make_grid({M_PI, 16, M_PI, 256});
  Field twocell(g2, Rep::Spectral);
  twocell.at(10, 3) = 1.3;  // j = 1, tau - xi^2 = 1: d = 0 (near parabola)
  twocell.at(60, 3) = 0.9;  // tau - xi^2 = 51: d = 5 (deep shell)
  NormReport oracle = z_norm(twocell, ZMethod::ConvexOracle);
  CHECK(oracle.converged);
  double cell = std::sqrt(g2->dxi() * g2->dtau());
  double ma = 1.3 * cell, mb = 0.9 * cell;  // per-cell L^2 masses, same annulus
  double best = 1e300;
  for (int i = 0; i <= 1000; ++i)
    for (int j = 0; j <= 1000; ++j) {
      double a1 = i / 1000.0, a2 = j / 1000.0;
      double besov = 0.5 * (a1 * ma + std::pow(2.0, 2.5) * a2 * mb);
      double col_l1 = ((1 - a1) * 1.3 + (1 - a2) * 0.9) * g2->dtau();
      double y1 = col_l1 / bracket(3) * std::sqrt(g2->dxi());
      double y2 = std::sqrt((1 - a1) * (1 - a1) * ma * ma + (1 - a2) * (1 - a2) * mb * mb);
      best = std::min(best, besov + y1 + y2);
    }
  CHECK(oracle.value == doctest::Approx(best).epsilon(1e-3));
}

TEST_CASE("weight function and w_norm") {
  CHECK(weight(5) == 1.0);
  CHECK(weight(0) == 1.0);
  CHECK(weight(-1) == 1.0);
  CHECK(weight(-2) == 1024.0);
  CHECK(weight(-1e31) == 1e300);

  auto g = make_grid({2.0, 32, 0.5, 64});
  Field f = random_spectral(g, 9);
  for (int m = -32; m < 1; ++m)  // keep tau > 0 only
    for (int k = -16; k < 16; ++k) f.at(m, k) = 0;
  CHECK(w_norm(f).value == doctest::Approx(z_norm(f).value).epsilon(1e-12));
  CHECK_FALSE(w_norm(f).saturated);

  auto tiny = make_grid({1.0, 4, 2e-31, 4});
  Field sat(tiny, Rep::Spectral);
  sat.at(-2, 0) = 1;  // tau = -2 pi / 2e-31: deep negative
  CHECK(w_norm(sat).saturated);
}

TEST_CASE("norm axioms on random fields") {
  auto g = make_grid({2.0, 32, 0.5, 64});
  for (int trial = 0; trial < 4; ++trial) {
    Field f = random_spectral(g, 300 + trial);
    Field h = random_spectral(g, 400 + trial);
    cplx alpha(-2.5, 0);
    for (auto norm : {+[](const Field& x) { return xsb_norm(x, -1, 0.5); },
                      +[](const Field& x) { return besov_norm(x); },
                      +[](const Field& x) { return y_norm(x); },
                      +[](const Field& x) { return z_norm(x).value; },
                      +[](const Field& x) { return w_norm(x).value; }}) {
      CHECK(norm(f * alpha) == doctest::Approx(2.5 * norm(f)).epsilon(1e-10));
      CHECK(norm(f + h) <= (norm(f) + norm(h)) * (1 + 1e-10));
      CHECK(norm(f) > 0);
    }
  }
}

TEST_CASE("W monotone under pointwise domination, phase blind") {
  auto g = make_grid({2.0, 32, 0.5, 64});
  for (int trial = 0; trial < 6; ++trial) {
    Field big = random_spectral(g, 500 + trial);
    Field small = big;
    Rng rng(600 + trial);
    for (cplx& v : small.values()) v *= rng.uniform() * std::polar(1.0, rng.uniform(0, 6.28));
    CHECK(w_norm(small).value <= w_norm(big).value * (1 + 1e-12));
    CHECK(w_norm(small, ZMethod::ConvexOracle).value <=
          w_norm(big, ZMethod::ConvexOracle).value * (1 + 1e-6));
  }

  Field f = random_spectral(g, 700);
  Field mag = f;
  for (cplx& v : mag.values()) v = std::abs(v);
  CHECK(w_norm(f).value == w_norm(mag).value);
}

TEST_CASE("solution-space norm is monotone in s") {
  auto g = make_grid({2.0, 32, 0.5, 64});
  Field f = random_spectral(g, 800);
  double sm1 = ss_norm(f, -1).value;
  double smh = ss_norm(f, -0.5).value;
  double s0 = ss_norm(f, 0).value;
  CHECK(sm1 <= smh * (1 + 1e-12));
  CHECK(smh <= s0 * (1 + 1e-12));
}

TEST_CASE("shell-depth embeddings into X^{-1,b}") {
  // unit lattice spacings so every shell down to d = 2 holds points
  auto g = make_grid({M_PI, 16, M_PI, 4096});
  double prevL = -1, prevR = -1;
  for (int d = 2; d <= 10; d += 4) {
    Field f = random_on_cells(g, 900 + d, {axis_exact(2), axis_exact(d)});
    REQUIRE(l2_norm(f) > 0);
    double left = xsb_norm(f, -1, 0.25) / besov_norm(f);   // b < 1/2: decays in d
    double right = besov_norm(f) / xsb_norm(f, -1, 0.75);  // b > 1/2: decays in d
    if (prevL >= 0) {
      CHECK(left < prevL);
      CHECK(right < prevR);
    }
    prevL = left;
    prevR = right;
  }
}

TEST_CASE("embedding checks produce finite stable constants") {
  auto g = make_grid({2.0, 32, 0.125, 256});
  Field zero(g, Rep::Spectral);
  CHECK(embedding_check(zero, Embedding::f21).ratio == 0.0);

  Field f = random_on_cells(g, 42, {axis_exact(3), axis_at_least(4)});
  REQUIRE(l2_norm(f) > 0);
  for (Embedding e : {Embedding::f21, Embedding::f22, Embedding::f11, Embedding::f12}) {
    RatioReport rr = embedding_check(f, e);
    CHECK(rr.ratio > 0);
    CHECK(rr.ratio < 1e3);
    if (e != Embedding::f21) {
      CHECK(rr.j == 3);
      CHECK(rr.d == 4);
    }
  }

  // a single tau column (one xi), the Hoelder-in-xi extreme for f11
  Field col(g, Rep::Spectral);
  for (int m = 0; m < 64; ++m) col.at(m, 10) = 1;
  RatioReport cr = embedding_check(col, Embedding::f11);
  CHECK(cr.ratio > 0);
  CHECK(cr.ratio < 10);

  Field wide = random_spectral(g, 43);
  CHECK_THROWS_AS(embedding_check(wide, Embedding::f22), UsageError);
}

TEST_CASE("pasting checks on the two support regimes") {
  auto g = make_grid({2.0, 32, 0.125, 256});
  Field deep = random_on_cells(g, 44, {axis_exact(2), axis_at_least(6)});
  REQUIRE(l2_norm(deep) > 0);
  RatioReport ra = pasting_check(deep, PasteSide::A);
  CHECK(ra.ratio > 0);
  CHECK(ra.ratio < 1e3);

  Field shallow = random_on_cells(g, 45, {axis_exact(4), axis_at_most(6)});
  REQUIRE(l2_norm(shallow) > 0);
  RatioReport rb = pasting_check(shallow, PasteSide::B);
  CHECK(rb.ratio > 0);
  CHECK(rb.ratio < 1e3);

  CHECK_THROWS_AS(pasting_check(shallow, PasteSide::A), UsageError);
  CHECK_THROWS_AS(pasting_check(deep, PasteSide::B), UsageError);
}

TEST_CASE("rescaled Gaussian obeys the lambda^{-1/2} law in H^{-1}") {
  auto g = make_grid({64 * M_PI, 4096, 1.0, 4});
  Profile fhat(g);
  for (int k = -2048; k < 2048; ++k) {
    double xi = g->xi(k);
    fhat.at(k) = std::sqrt(2 * M_PI) * std::exp(-xi * xi / 2);
  }
  double base = hs_norm(fhat, -1);
  CHECK(hs_norm(rescale(fhat, 4.0), -1) / base <= 2.0 * std::pow(4.0, -0.5));

  std::vector<double> lx, ly;
  for (double lam : {2.0, 4.0, 8.0, 16.0}) {
    lx.push_back(std::log(lam));
    ly.push_back(std::log(hs_norm(rescale(fhat, lam), -1) / base));
  }
  double n = lx.size(), sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < lx.size(); ++i) {
    sx += lx[i];
    sy += ly[i];
    sxx += lx[i] * lx[i];
    sxy += lx[i] * ly[i];
  }
  double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
  CHECK(slope <= -0.5 + 0.05);
}
