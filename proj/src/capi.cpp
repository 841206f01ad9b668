// C ABI over the core library: handle wrappers, error capture, CSV runners.
#include "dlab.h"

#include <cstdlib>
#include <cstring>
#include <string>

#include "dlab/dlf1.hpp"
#include "dlab/norms.hpp"
#include "dlab/report.hpp"
#include "dlab/selftest.hpp"

struct dlab_grid {
  dlab::GridPtr g;
};

struct dlab_field {
  dlab::Field f;
};

namespace {

thread_local std::string g_error;
thread_local int g_status = DLAB_OK;

void clear_error() {
  g_error.clear();
  g_status = DLAB_OK;
}

int capture(const std::exception& e) {
  g_error = e.what();
  if (dynamic_cast<const dlab::ConfigError*>(&e) || dynamic_cast<const dlab::UsageError*>(&e))
    g_status = DLAB_USAGE;
  else if (dynamic_cast<const dlab::ResolutionError*>(&e))
    g_status = DLAB_RESOLUTION;
  else if (dynamic_cast<const dlab::DivergenceError*>(&e))
    g_status = DLAB_DIVERGENCE;
  else if (dynamic_cast<const dlab::IoError*>(&e))
    g_status = DLAB_IO;
  else
    g_status = DLAB_INTERNAL;
  return g_status;
}

template <class Fn>
int wrap_status(Fn&& fn) {
  try {
    fn();
    clear_error();
    return DLAB_OK;
  } catch (const std::exception& e) {
    return capture(e);
  }
}

char* dup_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (out) std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

template <class Fn>
char* wrap_csv(Fn&& fn) {
  try {
    std::string csv = fn();
    clear_error();
    return dup_string(csv);
  } catch (const std::exception& e) {
    capture(e);
    return nullptr;
  }
}

}  // namespace

extern "C" {

const char* dlab_version(void) { return "1.0.0"; }

const char* dlab_last_error(void) { return g_error.c_str(); }

int dlab_last_status(void) { return g_status; }

dlab_grid* dlab_grid_create(double L, int Nx, double Tw, int Nt) {
  try {
    dlab_grid* h = new dlab_grid{dlab::make_grid({L, Nx, Tw, Nt})};
    clear_error();
    return h;
  } catch (const std::exception& e) {
    capture(e);
    return nullptr;
  }
}

void dlab_grid_free(dlab_grid* g) { delete g; }

int dlab_grid_dims(const dlab_grid* g, double* L, int* Nx, double* Tw, int* Nt) {
  return wrap_status([&] {
    if (!g) throw dlab::UsageError("dlab_grid_dims: null grid");
    const dlab::GridSpec& s = g->g->spec();
    if (L) *L = s.L;
    if (Nx) *Nx = s.Nx;
    if (Tw) *Tw = s.Tw;
    if (Nt) *Nt = s.Nt;
  });
}

dlab_field* dlab_field_load(const char* path) {
  try {
    if (!path) throw dlab::UsageError("dlab_field_load: null path");
    dlab_field* h = new dlab_field{dlab::read_dlf1(path)};
    clear_error();
    return h;
  } catch (const std::exception& e) {
    capture(e);
    return nullptr;
  }
}

int dlab_field_save(const dlab_field* f, const char* path) {
  return wrap_status([&] {
    if (!f || !path) throw dlab::UsageError("dlab_field_save: null argument");
    dlab::write_dlf1(path, f->f);
  });
}

void dlab_field_free(dlab_field* f) { delete f; }

int dlab_field_rep(const dlab_field* f) { return f ? int(f->f.rep()) : -1; }

dlab_field* dlab_demo_field(const dlab_grid* g, unsigned long long seed) {
  try {
    if (!g) throw dlab::UsageError("dlab_demo_field: null grid");
    dlab::Field f(g->g, dlab::Rep::Spectral);
    for (std::size_t i = 0; i < f.values().size(); ++i) {
      std::uint64_t h = dlab::hash_combine(seed, i);
      f.values()[i] = dlab::cplx(2 * dlab::u01(h) - 1, 2 * dlab::u01(dlab::splitmix64(h)) - 1);
    }
    dlab_field* out = new dlab_field{std::move(f)};
    clear_error();
    return out;
  } catch (const std::exception& e) {
    capture(e);
    return nullptr;
  }
}

int dlab_field_norm(const dlab_field* f, const char* name, double s, double b, double* out) {
  return wrap_status([&] {
    if (!f || !name || !out) throw dlab::UsageError("dlab_field_norm: null argument");
    const std::string which = name;
    const dlab::Field& F = f->f;
    if (which == "l2") {
      *out = dlab::l2_norm(F);
    } else if (which == "hs") {
      dlab::Field u = dlab::to_rep(F, dlab::Rep::Mode);
      *out = dlab::cth_norm(u, s, -u.grid()->spec().Tw, u.grid()->spec().Tw);
    } else {
      dlab::Field G = dlab::to_rep(F, dlab::Rep::Spectral);
      if (which == "xsb") *out = dlab::xsb_norm(G, s, b);
      else if (which == "besov") *out = dlab::besov_norm(G);
      else if (which == "y") *out = dlab::y_norm(G);
      else if (which == "z") *out = dlab::z_norm(G, dlab::ZMethod::PasteHeuristic).value;
      else if (which == "z-oracle") *out = dlab::z_norm(G, dlab::ZMethod::ConvexOracle).value;
      else if (which == "w") *out = dlab::w_norm(G, dlab::ZMethod::PasteHeuristic).value;
      else if (which == "w-oracle") *out = dlab::w_norm(G, dlab::ZMethod::ConvexOracle).value;
      else
        throw dlab::ConfigError("dlab_field_norm: unknown norm '" + which +
                                "' (expected l2, hs, xsb, besov, y, z, z-oracle, w, w-oracle)");
    }
  });
}

char* dlab_norms_csv(const char* path, const char* norm, double s, double b, const char* method) {
  return wrap_csv([&] {
    if (!path || !norm || !method) throw dlab::UsageError("dlab_norms_csv: null argument");
    return dlab::norms_csv(path, norm, s, b, method);
  });
}

char* dlab_picard_csv(const char* data, double amplitude, int K, double tol, int N) {
  return wrap_csv([&] {
    if (!data) throw dlab::UsageError("dlab_picard_csv: null data kind");
    return dlab::picard_csv(data, amplitude, K, tol, N);
  });
}

char* dlab_cascade_csv(double s, double sprime, double r, const int* N_list, int n,
                       const char* normalize) {
  return wrap_csv([&] {
    if (!N_list || n < 1) throw dlab::UsageError("dlab_cascade_csv: empty N list");
    if (!normalize) throw dlab::UsageError("dlab_cascade_csv: null normalize");
    return dlab::cascade_csv(s, sprime, r, std::vector<int>(N_list, N_list + n), normalize);
  });
}

char* dlab_fuzz_csv(const char* estimate, int trials, unsigned long long seed, int j1, int j2,
                    int j, int d, int d2, double D, int offset, int wrong_exponent,
                    const char* grids) {
  return wrap_csv([&] {
    if (!estimate || !grids) throw dlab::UsageError("dlab_fuzz_csv: null argument");
    dlab::FuzzCsvConfig cfg;
    cfg.estimate = estimate;
    cfg.trials = trials;
    cfg.seed = seed;
    cfg.j1 = j1;
    cfg.j2 = j2;
    cfg.j = j;
    cfg.d = d;
    cfg.d2 = d2;
    cfg.D = D;
    cfg.offset = offset;
    cfg.wrongExponent = wrong_exponent != 0;
    cfg.grids = grids;
    return dlab::fuzz_csv(cfg);
  });
}

void dlab_free_string(char* s) { std::free(s); }

int dlab_selftest(dlab_line_cb cb, void* user) {
  try {
    int failures = dlab::run_selftest([&](const std::string& line) {
      if (cb) cb(line.c_str(), user);
    });
    clear_error();
    return failures;
  } catch (const std::exception& e) {
    return -capture(e);
  }
}

}  // extern "C"
