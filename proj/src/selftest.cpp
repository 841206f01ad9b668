// Quick invariant suite: transforms, dyadic masks, norms, operators, estimates.
#include "dlab/selftest.hpp"

#include <cmath>

#include "dlab/evolution.hpp"
#include "dlab/fuzz.hpp"
#include "dlab/norms.hpp"
#include "dlab/picard.hpp"
#include "dlab/report.hpp"

namespace dlab {

namespace {

struct Ctx {
  const std::function<void(const std::string&)>& emit;
  int failures = 0;

  void check(const std::string& name, bool ok, const std::string& detail) {
    emit((ok ? "ok   " : "FAIL ") + name + "  " + detail);
    if (!ok) ++failures;
  }
};

Field random_field(const GridPtr& g, std::uint64_t seed, Rep rep) {
  Field f(g, rep);
  Rng rng(seed);
  for (cplx& v : f.values()) v = cplx(rng.uniform(-1, 1), rng.uniform(-1, 1));
  return f;
}

double max_rel_dev(const Field& a, const Field& b) {
  double scale = 0, dev = 0;
  for (std::size_t i = 0; i < a.values().size(); ++i) {
    scale = std::max(scale, std::abs(a.values()[i]));
    dev = std::max(dev, std::abs(a.values()[i] - b.values()[i]));
  }
  return scale > 0 ? dev / scale : dev;
}

}  // namespace

int run_selftest(const std::function<void(const std::string&)>& emit) {
  Ctx c{emit};
  auto guard = [&](const char* name, const std::function<void()>& fn) {
    try {
      fn();
    } catch (const std::exception& e) {
      c.check(name, false, std::string("threw: ") + e.what());
    }
  };

  GridPtr g = make_grid({2.0, 16, 2.0, 32});

  guard("grid-roundtrip", [&] {
    Field f = random_field(g, 1, Rep::Physical);
    double dev = max_rel_dev(f, to_rep(to_rep(f, Rep::Spectral), Rep::Physical));
    c.check("grid-roundtrip", dev <= 1e-12, "defect=" + fmt_g17(dev));
  });

  guard("parseval", [&] {
    double dev = parseval_defect(random_field(g, 2, Rep::Physical));
    c.check("parseval", dev <= 1e-12, "defect=" + fmt_g17(dev));
  });

  guard("resonance-identity", [&] {
    Rng rng(3);
    double worst = 0, margin = 1e300;
    for (int i = 0; i < 10000; ++i) {
      double xi1 = double(long(rng.below(4097)) - 2048) * 0.25;
      double xi2 = double(long(rng.below(4097)) - 2048) * 0.25;
      double t1 = double(long(rng.below(1 << 24)) - (1 << 23)) * 0.125;
      double t2 = double(long(rng.below(1 << 24)) - (1 << 23)) * 0.125;
      worst = std::max(worst, resonance_defect(t1, xi1, t2, xi2));
      margin = std::min(margin, resonance_margin(t1, xi1, t2, xi2));
    }
    c.check("resonance-identity", worst == 0.0 && margin >= 0.0,
            "defect=" + fmt_g17(worst) + " min-margin=" + fmt_g17(margin));
  });

  guard("dyadic-partition", [&] {
    Field f = random_field(g, 4, Rep::Spectral);
    const DyadicCache& dc = g->dyadic();
    double defect = partition_defect(f, dc.jmax, dc.dmax);
    c.check("dyadic-partition", defect == 0.0, "defect=" + fmt_g17(defect));
  });

  guard("convolution-delta", [&] {
    Field f(g, Rep::Spectral), h(g, Rep::Spectral);
    cplx a(0.6, -0.4), b(0.25, 0.5);
    f.at(3, 2) = a;
    h.at(-5, 1) = b;
    cplx got = convolve(f, h).at(-2, 3);
    cplx want = a * b * (g->dtau() * g->dxi());
    c.check("convolution-delta", got == want, "value=" + fmt_g17(std::abs(got)));
  });

  guard("convolution-paths", [&] {
    Field f = random_field(g, 5, Rep::Spectral);
    Field h = random_field(g, 6, Rep::Spectral);
    double dev = max_rel_dev(convolve(f, h, ConvPath::Direct), convolve(f, h, ConvPath::Fft));
    c.check("convolution-paths", dev <= 1e-12, "dev=" + fmt_g17(dev));
  });

  guard("weight-pair-corner", [&] {
    double ratio = weight(-2.0) / (weight(-1.0) * weight(-1.0));
    c.check("weight-pair-corner", ratio == 1024.0, "ratio=" + fmt_g17(ratio));
  });

  guard("z-split-order", [&] {
    GridPtr gz = make_grid({M_PI, 16, M_PI, 64});
    Field f(gz, Rep::Spectral);
    Rng rng(7);
    for (cplx& v : f.values()) v = rng.uniform(0, 1);
    double paste = z_norm(f, ZMethod::PasteHeuristic).value;
    double oracle = z_norm(f, ZMethod::ConvexOracle).value;
    bool ok = oracle <= paste * (1 + 1e-12) && paste <= 2 * oracle &&
              paste <= besov_norm(f) * (1 + 1e-12) && paste <= y_norm(f) * (1 + 1e-12);
    c.check("z-split-order", ok,
            "paste=" + fmt_g17(paste) + " oracle=" + fmt_g17(oracle));
  });

  guard("propagator-unitary", [&] {
    Profile f(g);
    Rng rng(8);
    for (cplx& v : f.v) v = cplx(rng.uniform(-1, 1), rng.uniform(-1, 1));
    double before = hs_norm(f, -1);
    double after = hs_norm(propagate(f, 0.7), -1);
    double dev = std::abs(after / before - 1);
    c.check("propagator-unitary", dev <= 1e-12, "dev=" + fmt_g17(dev));
  });

  guard("cutoff-trapezoid", [&] {
    // the kernel's sign jump caps trapezoid accuracy at O(ds); see the window tests
    auto smooth = [](double s) { return cplx(std::exp(-4 * s * s)); };
    double defect = duhamel_identity_defect(smooth, 0.7);
    c.check("cutoff-trapezoid", defect <= 5e-4, "defect=" + fmt_g17(defect));
  });

  guard("iterate-homogeneity", [&] {
    GridPtr gp = make_grid({4.0, 32, 8.0, 64});
    Profile f(gp);
    for (int k = -gp->nx() / 2; k < gp->nx() / 2; ++k)
      f.at(k) = std::exp(-gp->xi(k) * gp->xi(k)) * cplx(1.0, 0.3);
    IterationProblem p = default_problem();
    HomogeneityResult hr = homogeneity_defect(p, f, 2.0, 2);
    c.check("iterate-homogeneity", !hr.absolute && hr.defect <= 1e-10,
            "defect=" + fmt_g17(hr.defect));
  });

  guard("picard-contraction", [&] {
    GridPtr gp = make_grid({4.0, 32, 16.0, 256});
    Profile f(gp);
    for (int k = -gp->nx() / 2; k < gp->nx() / 2; ++k)
      f.at(k) = std::exp(-gp->xi(k) * gp->xi(k) / 2);
    double scale = 1e-3 / hs_norm(f, -1);
    for (cplx& z : f.v) z *= scale;
    IterationProblem p = default_problem();
    ContractionResult res = contraction_solve(p, f, ContractionConfig{});
    bool geometric = !res.diverged && res.diff_norms.size() >= 2;
    for (std::size_t i = 0; i + 1 < res.diff_norms.size(); ++i)
      geometric = geometric && res.diff_norms[i + 1] < 0.5 * res.diff_norms[i];
    c.check("picard-contraction", geometric && res.residual < 1e-8,
            "residual=" + fmt_g17(res.residual));
  });

  guard("estimate-smoke", [&] {
    double r = trial_ratio(EstimateId::BilHalt, make_grid(default_fuzz_grids()[0]),
                           EstimateParams{}, 0, 0);
    c.check("estimate-smoke", std::isfinite(r) && r > 0, "ratio=" + fmt_g17(r));
  });

  return c.failures;
}

}  // namespace dlab
