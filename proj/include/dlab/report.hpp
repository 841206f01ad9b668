// Deterministic CSV assembly: g17 numbers, RFC-4180 rows, canonical config echo.
#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace dlab {

std::string fmt_g17(double v);     // printf %.17g, locale-free
std::string fmt_int(long long v);

// RFC-4180 quoting: wraps fields containing commas, quotes, or line breaks
std::string csv_field(const std::string& s);
std::string csv_row(const std::vector<std::string>& fields);  // with newline

// "# config: k1=v1 k2=v2 ..." with keys sorted; values preformatted
std::string config_comment(std::vector<std::pair<std::string, std::string>> kv);

// Whole-run CSV documents: header, data rows, trailing config comment.
// Identical arguments produce byte-identical strings.

// header norm,value,method; norm in {hs, xsb, besov, y, z, w}, method in
// {paste, oracle}; hs is the sup over grid times of the spatial H^s norm
std::string norms_csv(const std::string& path, const std::string& norm, double s, double b,
                      const std::string& method);

// header n,iterate_norm,diff_norm,gap; data in {gaussian, fN}, one row per
// partial sum u_1..u_K; fN runs with unchecked spectral truncation past the
// grid edge (the band products regenerate ever higher bands)
std::string picard_csv(const std::string& data, double amplitude, int K, double tol, int N);

// header N,hs_data_norm,sup_t_a2_norm,a2_at_witness_t,phase_min,beta_running;
// beta_running is nan in the first row; normalize in {ball, unit-hs}
std::string cascade_csv(double s, double sPrime, double r, const std::vector<int>& NList,
                        const std::string& normalize);

struct FuzzCsvConfig {
  std::string estimate = "bil-halt";
  int trials = 20;
  std::uint64_t seed = 1;
  int j1 = -1, j2 = -1, j = -1, d = -1, d2 = -1;  // -1 = per-trial defaults
  double D = -1;  // separation on the coarsest grid, scaled with extent; -1 cycles
  int offset = 2;
  bool wrongExponent = false;
  std::string grids = "default";  // or "L,Nx,Tw,Nt;L,Nx,Tw,Nt;..."
};

// header estimate,trial,ratio,seed,grid; one row per trial per grid, plus a
// "# max-ratio-trend:" comment ahead of the config line
std::string fuzz_csv(const FuzzCsvConfig& cfg);

}  // namespace dlab
