// Lattice construction, transform conventions, Parseval, rescale, DLF1 files.
#include <cmath>
#include <cstdio>

#include "dlab/dlf1.hpp"
#include "dlab/grid.hpp"
#include "doctest.h"

using namespace dlab;

namespace {

Field random_field(GridPtr g, Rep rep, std::uint64_t seed) {
  Field f(g, rep);
  Rng rng(seed);
  for (cplx& z : f.values()) z = cplx(rng.uniform(-1, 1), rng.uniform(-1, 1));
  return f;
}

double max_abs_diff(const Field& a, const Field& b) {
  double m = 0;
  for (std::size_t i = 0; i < a.values().size(); ++i)
    m = std::max(m, std::abs(a.values()[i] - b.values()[i]));
  return m;
}

}  // namespace

TEST_CASE("grid spacings and axes") {
  auto g = make_grid({M_PI, 8, M_PI, 8});
  CHECK(g->dxi() == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(g->xi(-4) == doctest::Approx(-4.0));
  CHECK(g->xi(3) == doctest::Approx(3.0));
  CHECK(g->dx() == doctest::Approx(2 * M_PI / 8));

  auto g2 = make_grid({32 * M_PI, 4096, M_PI, 8});
  CHECK(g2->dxi() == doctest::Approx(1.0 / 32).epsilon(1e-15));
}

TEST_CASE("grid validation") {
  CHECK_THROWS_AS(make_grid({M_PI, 6, M_PI, 8}), ConfigError);
  CHECK_THROWS_AS(make_grid({M_PI, 8, M_PI, 12}), ConfigError);
  CHECK_THROWS_AS(make_grid({-1.0, 8, M_PI, 8}), ConfigError);
  CHECK_THROWS_AS(make_grid({M_PI, 8, 0.0, 8}), ConfigError);
  CHECK_THROWS_AS(make_grid({M_PI, 2, M_PI, 8}), ConfigError);
}

TEST_CASE("transform roundtrips are the identity") {
  auto g = make_grid({4.0, 32, 2.0, 16});
  for (Rep rep : {Rep::Physical, Rep::Mode}) {
    Field f = random_field(g, rep, 11 + int(rep));
    Field back = transform(transform(f, Dir::Forward), Dir::Inverse);
    CHECK(max_abs_diff(f, back) < 1e-12);
  }
  Field f = random_field(g, Rep::Physical, 99);
  Field again = to_rep(to_rep(f, Rep::Spectral), Rep::Physical);
  CHECK(max_abs_diff(f, again) < 1e-12);
}

TEST_CASE("transform is linear and maps zero to zero") {
  auto g = make_grid({4.0, 16, 2.0, 8});
  Field z(g, Rep::Physical);
  Field zt = transform(z, Dir::Forward);
  CHECK(l2_norm(zt) == 0.0);

  Field a = random_field(g, Rep::Physical, 1);
  Field b = random_field(g, Rep::Physical, 2);
  cplx ca(0.3, -1.1), cb(2.0, 0.7);
  Field lhs = transform(a * ca + b * cb, Dir::Forward);
  Field rhs = transform(a, Dir::Forward) * ca + transform(b, Dir::Forward) * cb;
  CHECK(max_abs_diff(lhs, rhs) < 1e-12);
}

TEST_CASE("representation mismatch is a usage error") {
  auto g = make_grid({4.0, 16, 2.0, 8});
  Field phys(g, Rep::Physical);
  CHECK_THROWS_AS(transform(phys, Dir::Inverse), UsageError);
  Field spec(g, Rep::Spectral);
  CHECK_THROWS_AS(transform(spec, Dir::Forward), UsageError);
}

TEST_CASE("Gaussian transforms to sqrt(2pi) Gaussian") {
  auto g = make_grid({16 * M_PI, 1024, 1.0, 4});
  Field f(g, Rep::Physical);
  for (int k = -512; k < 512; ++k) {
    double x = g->x(k);
    f.at(0, k) = std::exp(-x * x / 2);
  }
  Field fh = transform(f, Dir::Forward);
  double worst = 0;
  for (int k = -512; k < 512; ++k) {
    double xi = g->xi(k);
    cplx expect = std::sqrt(2 * M_PI) * std::exp(-xi * xi / 2);
    worst = std::max(worst, std::abs(fh.at(0, k) - expect));
  }
  CHECK(worst < 1e-8);
}

TEST_CASE("Parseval defect at machine precision") {
  for (auto spec : {GridSpec{4.0, 32, 2.0, 16}, GridSpec{16 * M_PI, 256, 8.0, 64}}) {
    auto g = make_grid(spec);
    for (int trial = 0; trial < 5; ++trial) {
      Field f = random_field(g, Rep::Physical, 100 + trial);
      CHECK(parseval_defect(f) < 1e-12);
      Field m = random_field(g, Rep::Mode, 200 + trial);
      CHECK(parseval_defect(m) < 1e-12);
    }
  }
  Field z(make_grid({4.0, 16, 2.0, 8}), Rep::Physical);
  CHECK(parseval_defect(z) == 0.0);
}

TEST_CASE("rescale identity, composition, and overflow") {
  auto g = make_grid({64 * M_PI, 4096, 1.0, 4});
  Profile fhat(g);
  for (int k = -2048; k < 2048; ++k) {
    double xi = g->xi(k);
    fhat.at(k) = std::sqrt(2 * M_PI) * std::exp(-xi * xi / 2);
  }

  Profile same = rescale(fhat, 1.0);
  for (int k = -2048; k < 2048; ++k) CHECK(same.at(k) == fhat.at(k));

  Profile twice = rescale(rescale(fhat, 2.0), 2.0);
  Profile quad = rescale(fhat, 4.0);
  double worst = 0;
  for (int k = -2048; k < 2048; ++k) worst = std::max(worst, std::abs(twice.at(k) - quad.at(k)));
  CHECK(worst < 1e-4);

  // exact values: rescaled hat is lambda^-1 f-hat(lambda xi)
  Profile r4 = rescale(fhat, 4.0);
  double worst4 = 0;
  for (int k = -512; k < 512; ++k) {
    double xi = g->xi(k);
    cplx expect = 0.25 * std::sqrt(2 * M_PI) * std::exp(-16 * xi * xi / 2);
    worst4 = std::max(worst4, std::abs(r4.at(k) - expect));
  }
  CHECK(worst4 < 1e-6);

  // a profile as wide as the box cannot be stretched
  auto gsmall = make_grid({16 * M_PI, 1024, 1.0, 4});
  Profile wide(gsmall);
  for (int k = -512; k < 512; ++k) {
    double xi = gsmall->xi(k);
    wide.at(k) = std::exp(-xi * xi / 2);
  }
  CHECK_THROWS_AS(rescale(wide, 16.0), ResolutionError);
  CHECK_THROWS_AS(rescale(wide, 0.5), UsageError);
}

TEST_CASE("dlf1 roundtrip preserves bytes") {
  auto g = make_grid({4.0, 16, 2.0, 8});
  Field f = random_field(g, Rep::Spectral, 7);
  std::string path = "dlf1_roundtrip.tmp";
  write_dlf1(path, f);
  Field back = read_dlf1(path);
  CHECK(back.rep() == Rep::Spectral);
  CHECK(back.grid()->same_lattice(*g));
  CHECK(back.values() == f.values());
  std::remove(path.c_str());

  std::FILE* fp = std::fopen("dlf1_bad.tmp", "wb");
  std::fputs("NOPE", fp);
  std::fclose(fp);
  CHECK_THROWS_AS(read_dlf1("dlf1_bad.tmp"), IoError);
  std::remove("dlf1_bad.tmp");
  CHECK_THROWS_AS(read_dlf1("dlf1_missing.tmp"), IoError);
}
