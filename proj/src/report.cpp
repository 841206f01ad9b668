// CSV builders for the command-line runs; all numbers via %.17g for determinism.
#include "dlab/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "dlab/cascade.hpp"
#include "dlab/dlf1.hpp"
#include "dlab/fuzz.hpp"
#include "dlab/norms.hpp"
#include "dlab/picard.hpp"

namespace dlab {

std::string fmt_g17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string fmt_int(long long v) {
  char buf[24];
  std::snprintf(buf, sizeof buf, "%lld", v);
  return buf;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    out += c;
    if (c == '"') out += '"';
  }
  out += '"';
  return out;
}

std::string csv_row(const std::vector<std::string>& fields) {
  std::string out;
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (i) out += ',';
    out += csv_field(fields[i]);
  }
  out += '\n';
  return out;
}

std::string config_comment(std::vector<std::pair<std::string, std::string>> kv) {
  std::sort(kv.begin(), kv.end());
  std::string out = "# config:";
  for (const auto& [k, v] : kv) out += " " + k + "=" + v;
  out += '\n';
  return out;
}

namespace {

std::string fmt_u64(std::uint64_t v) {
  char buf[24];
  std::snprintf(buf, sizeof buf, "%llu", (unsigned long long)v);
  return buf;
}

std::string join_ints(const std::vector<int>& v) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += ',';
    out += fmt_int(v[i]);
  }
  return out;
}

std::string grid_tag(const GridSpec& g) {
  return "L=" + fmt_g17(g.L) + ";Nx=" + fmt_int(g.Nx) + ";Tw=" + fmt_g17(g.Tw) +
         ";Nt=" + fmt_int(g.Nt);
}

std::vector<GridSpec> parse_grids(const std::string& text) {
  if (text == "default") return default_fuzz_grids();
  std::vector<GridSpec> out;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t end = text.find(';', pos);
    std::string quad = text.substr(pos, end == std::string::npos ? end : end - pos);
    double vals[4];
    int field = 0;
    std::size_t q = 0;
    while (field < 4 && q <= quad.size()) {
      std::size_t comma = quad.find(',', q);
      std::string tok = quad.substr(q, comma == std::string::npos ? comma : comma - q);
      try {
        std::size_t used = 0;
        vals[field] = std::stod(tok, &used);
        if (used != tok.size()) throw std::invalid_argument(tok);
      } catch (const std::exception&) {
        throw ConfigError("fuzz: bad grid list entry '" + quad + "' (want L,Nx,Tw,Nt)");
      }
      ++field;
      if (comma == std::string::npos) break;
      q = comma + 1;
    }
    if (field != 4) throw ConfigError("fuzz: bad grid list entry '" + quad + "' (want L,Nx,Tw,Nt)");
    out.push_back({vals[0], int(vals[1]), vals[2], int(vals[3])});
    if (end == std::string::npos) break;
    pos = end + 1;
  }
  if (out.empty()) throw ConfigError("fuzz: empty grid list");
  return out;
}

ZMethod parse_method(const std::string& m) {
  if (m == "paste") return ZMethod::PasteHeuristic;
  if (m == "oracle") return ZMethod::ConvexOracle;
  throw ConfigError("unknown method: " + m + " (expected paste or oracle)");
}

}  // namespace

std::string norms_csv(const std::string& path, const std::string& norm, double s, double b,
                      const std::string& method) {
  ZMethod zm = parse_method(method);
  Field F = read_dlf1(path);
  double value = 0;
  std::string produced = "direct";
  if (norm == "hs") {
    Field u = to_rep(F, Rep::Mode);
    value = cth_norm(u, s, -u.grid()->spec().Tw, u.grid()->spec().Tw);
  } else {
    Field G = to_rep(F, Rep::Spectral);
    if (norm == "xsb") value = xsb_norm(G, s, b);
    else if (norm == "besov") value = besov_norm(G);
    else if (norm == "y") value = y_norm(G);
    else if (norm == "z") {
      NormReport r = z_norm(G, zm);
      value = r.value;
      produced = r.method;
    } else if (norm == "w") {
      NormReport r = w_norm(G, zm);
      value = r.value;
      produced = r.method;
    } else {
      throw ConfigError("unknown norm: " + norm + " (expected hs, xsb, besov, y, z, w)");
    }
  }
  std::string out = csv_row({"norm", "value", "method"});
  out += csv_row({norm, fmt_g17(value), produced});
  out += config_comment({{"b", fmt_g17(b)},
                         {"file", path},
                         {"method", method},
                         {"norm", norm},
                         {"s", fmt_g17(s)},
                         {"subcommand", "norms"}});
  return out;
}

std::string picard_csv(const std::string& data, double amplitude, int K, double tol, int N) {
  if (!(amplitude > 0)) throw ConfigError("picard: amplitude must be positive");
  if (K < 1 || K > 16) throw ConfigError("picard: K must be in [1, 16]");
  if (!(tol > 0)) throw ConfigError("picard: tol must be positive");

  GridPtr g;
  Profile f;
  double budget = 1e-8;
  if (data == "gaussian") {
    g = make_grid({16.0, 256, 16.0, 2048});
    f = Profile(g);
    for (int k = -g->nx() / 2; k < g->nx() / 2; ++k)
      f.at(k) = std::exp(-g->xi(k) * g->xi(k) / 2);
  } else if (data == "fN") {
    if (N <= 100) throw ConfigError("picard: fN data needs N > 100");
    int half = int(std::ceil((2.0 * N + 40.0) / (M_PI / 8.0)));
    int nx = 4;
    while (nx / 2 < half) nx *= 2;
    if (nx > (1 << 15)) throw ConfigError("picard: N too large for the driver grid");
    g = make_grid({8.0, nx, 16.0, 2048});
    f = make_fN(g, 1.0, N, Normalize::Ball);
    budget = 1.0;  // band products regenerate ever higher bands; truncation accepted
  } else {
    throw ConfigError("unknown data kind: " + data + " (expected gaussian or fN)");
  }
  double scale = amplitude / hs_norm(f, -1);
  for (cplx& z : f.v) z *= scale;

  IterationProblem p = default_problem(budget);
  ContractionConfig cfg;
  cfg.Kmax = K;
  cfg.tol = tol;
  ContractionResult res = contraction_solve(p, f, cfg);
  if (res.diverged) throw DivergenceError("picard: successive differences grew for 3 steps");

  std::string out = csv_row({"n", "iterate_norm", "diff_norm", "gap"});
  for (int n = 1; n <= K; ++n) {
    double diff = std::size_t(n) <= res.diff_norms.size() ? res.diff_norms[std::size_t(n) - 1]
                                                          : std::nan("");
    out += csv_row({fmt_int(n), fmt_g17(res.partial_sum_norms[std::size_t(n) - 1]), fmt_g17(diff),
                    fmt_g17(res.partial_sum_gaps[std::size_t(n) - 1])});
  }
  std::vector<std::pair<std::string, std::string>> kv = {{"K", fmt_int(K)},
                                                         {"amplitude", fmt_g17(amplitude)},
                                                         {"data", data},
                                                         {"subcommand", "picard"},
                                                         {"tol", fmt_g17(tol)}};
  if (data == "fN") kv.push_back({"N", fmt_int(N)});
  out += config_comment(std::move(kv));
  return out;
}

std::string cascade_csv(double s, double sPrime, double r, const std::vector<int>& NList,
                        const std::string& normalize) {
  CascadeConfig cfg;
  cfg.s = s;
  cfg.sPrime = sPrime;
  cfg.r = r;
  cfg.NList = NList;
  if (normalize == "ball") cfg.normalize = Normalize::Ball;
  else if (normalize == "unit-hs") cfg.normalize = Normalize::UnitHs;
  else throw ConfigError("unknown normalize: " + normalize + " (expected ball or unit-hs)");

  CascadeReport rep = cascade_experiment(cfg);
  std::string out = csv_row(
      {"N", "hs_data_norm", "sup_t_a2_norm", "a2_at_witness_t", "phase_min", "beta_running"});
  for (std::size_t i = 0; i < rep.rows.size(); ++i) {
    const CascadeRow& row = rep.rows[i];
    out += csv_row({fmt_int(row.N), fmt_g17(row.hs_data_norm), fmt_g17(row.sup_t_a2_norm),
                    fmt_g17(row.a2_at_witness_t), fmt_g17(row.phase_min),
                    i == 0 ? std::string("nan") : fmt_g17(row.beta_running)});
  }
  out += config_comment({{"N-list", join_ints(NList)},
                         {"normalize", normalize},
                         {"r", fmt_g17(r)},
                         {"s", fmt_g17(s)},
                         {"sprime", fmt_g17(sPrime)},
                         {"subcommand", "cascade"}});
  return out;
}

std::string fuzz_csv(const FuzzCsvConfig& cfg) {
  EstimateId id = parse_estimate(cfg.estimate);
  if (cfg.trials < 1 || cfg.trials > 10000) throw ConfigError("fuzz: trials must be in [1, 10000]");
  std::vector<GridSpec> specs = parse_grids(cfg.grids);
  std::vector<GridPtr> gs;
  for (const GridSpec& spec : specs) gs.push_back(make_grid(spec));

  EstimateParams base;
  base.j1 = cfg.j1;
  base.j2 = cfg.j2;
  base.j = cfg.j;
  base.d = cfg.d;
  base.d2 = cfg.d2;
  base.D = cfg.D;
  base.offset = cfg.offset;
  base.wrongExponent = cfg.wrongExponent;

  std::string out = csv_row({"estimate", "trial", "ratio", "seed", "grid"});
  std::string trend = "# max-ratio-trend:";
  for (std::size_t gi = 0; gi < gs.size(); ++gi) {
    EstimateParams p = base;
    if (p.D >= 0) p.D *= gs[gi]->xi_max() / gs[0]->xi_max();
    const int n = id == EstimateId::KPoint ? 1 : cfg.trials;
    std::vector<double> ratios(static_cast<std::size_t>(n));
    parallel_for_each(std::size_t(n), [&](std::size_t tr) {
      ratios[tr] = trial_ratio(id, gs[gi], p, cfg.seed, int(tr));
    });
    double best = 0;
    std::string tag = grid_tag(specs[gi]);
    for (int tr = 0; tr < n; ++tr) {
      best = std::max(best, ratios[std::size_t(tr)]);
      out += csv_row({cfg.estimate, fmt_int(tr), fmt_g17(ratios[std::size_t(tr)]),
                      fmt_u64(cfg.seed), tag});
    }
    trend += " " + fmt_g17(best);
  }
  out += trend + "\n";
  out += config_comment({{"D", fmt_g17(cfg.D)},
                         {"d", fmt_int(cfg.d)},
                         {"d2", fmt_int(cfg.d2)},
                         {"estimate", cfg.estimate},
                         {"grids", cfg.grids},
                         {"j", fmt_int(cfg.j)},
                         {"j1", fmt_int(cfg.j1)},
                         {"j2", fmt_int(cfg.j2)},
                         {"offset", fmt_int(cfg.offset)},
                         {"seed", fmt_u64(cfg.seed)},
                         {"subcommand", "fuzz"},
                         {"trials", fmt_int(cfg.trials)},
                         {"wrong-exponent", cfg.wrongExponent ? "1" : "0"}});
  return out;
}

}  // namespace dlab
