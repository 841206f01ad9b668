// dlab: command-line driver for the numerical laboratory.
#include <cstdio>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "dlab.h"

namespace {

int exit_code_for(int status) {
  switch (status) {
    case DLAB_USAGE:
    case DLAB_IO:
      return 2;
    case DLAB_RESOLUTION:
      return 3;
    case DLAB_DIVERGENCE:
      return 4;
    default:
      return 1;
  }
}

// writes the document to outPath ("" = stdout); frees it; maps errors to exits
int finish(char* csv, const std::string& outPath) {
  if (!csv) {
    std::fprintf(stderr, "error: %s\n", dlab_last_error());
    return exit_code_for(dlab_last_status());
  }
  int rc = 0;
  if (outPath.empty()) {
    std::fputs(csv, stdout);
  } else {
    std::FILE* fp = std::fopen(outPath.c_str(), "wb");
    if (fp) {
      std::fputs(csv, fp);
      std::fclose(fp);
    } else {
      std::fprintf(stderr, "error: cannot open %s for writing\n", outPath.c_str());
      rc = 2;
    }
  }
  dlab_free_string(csv);
  return rc;
}

bool parse_int_list(const std::string& text, std::vector<int>& out) {
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t comma = text.find(',', pos);
    std::string tok = text.substr(pos, comma == std::string::npos ? comma : comma - pos);
    try {
      std::size_t used = 0;
      out.push_back(std::stoi(tok, &used));
      if (used != tok.size()) return false;
    } catch (const std::exception&) {
      return false;
    }
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  return !out.empty();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"dlab: desk-scale laboratory for a quadratic dispersive flow"};
  app.require_subcommand(1);
  app.set_version_flag("--version", dlab_version());

  auto* norms = app.add_subcommand("norms", "Function-space norms of a DLF1 field file");
  std::string nFile, nNorm = "hs", nMethod = "paste", nOut;
  double nS = 0, nB = 0;
  norms->add_option("--file", nFile, "DLF1 field file")->required();
  norms->add_option("--norm", nNorm, "hs, xsb, besov, y, z, w (default hs)");
  norms->add_option("--s", nS, "spatial regularity exponent (default 0)");
  norms->add_option("--b", nB, "parabolic shell exponent (default 0)");
  norms->add_option("--method", nMethod, "sum-space split: paste or oracle (default paste)");
  norms->add_option("--out", nOut, "write the CSV here instead of stdout");

  auto* picard = app.add_subcommand("picard", "Contraction iteration on small data");
  std::string pData = "gaussian", pOut;
  double pAmp = 1e-3, pTol = 1e-10;
  int pK = 8, pN = 128;
  picard->add_option("--data", pData, "gaussian or fN (default gaussian)");
  picard->add_option("--amplitude", pAmp, "data norm in H^{-1} (default 1e-3)");
  picard->add_option("--K", pK, "partial sums to report (default 8)");
  picard->add_option("--tol", pTol, "fixed-point tolerance (default 1e-10)");
  picard->add_option("--N", pN, "band frequency for fN data (default 128)");
  picard->add_option("--out", pOut, "write the CSV here instead of stdout");

  auto* cascade = app.add_subcommand("cascade", "Band-data cascade experiment");
  std::string cList = "128,256,512", cNormalize = "ball", cOut = "report.csv";
  double cS = -1.25, cSprime = -3, cR = 1;
  cascade->add_option("--s", cS, "data regularity (default -1.25)");
  cascade->add_option("--sprime", cSprime, "iterate norm regularity (default -3)");
  cascade->add_option("--r", cR, "data amplitude factor (default 1)");
  cascade->add_option("--N-list", cList, "comma-separated band frequencies (default 128,256,512)");
  cascade->add_option("--normalize", cNormalize, "ball or unit-hs (default ball)");
  cascade->add_option("--out", cOut, "output CSV path (default report.csv)");

  auto* fuzz = app.add_subcommand("fuzz", "Estimate ratio trials over refining grids");
  std::string fEstimate = "bil-halt", fGrids = "default", fOut;
  int fTrials = 20, fJ1 = -1, fJ2 = -1, fJ = -1, fD = -1, fD2 = -1, fOffset = 2;
  double fSep = -1;
  unsigned long long fSeed = 1;
  bool fWrong = false;
  fuzz->add_option("--estimate", fEstimate,
                   "bil-halt, bil-dual, measure-bound, k-point, high-low, high-high, "
                   "W-bilinear, yy-bilinear (default bil-halt)");
  fuzz->add_option("--trials", fTrials, "trials per grid (default 20)");
  fuzz->add_option("--seed", fSeed, "trial seed (default 1)");
  fuzz->add_option("--j1", fJ1, "first input annulus (-1 = per-trial default)");
  fuzz->add_option("--j2", fJ2, "second input annulus (-1 = per-trial default)");
  fuzz->add_option("--j", fJ, "output annulus (-1 = per-trial default)");
  fuzz->add_option("--d", fD, "shell depth (-1 = per-trial default)");
  fuzz->add_option("--d2", fD2, "second shell depth (-1 = per-trial default)");
  fuzz->add_option("--D", fSep, "frequency separation on the coarsest grid, scaled with extent");
  fuzz->add_option("--offset", fOffset, "sum-space split offset (default 2)");
  fuzz->add_flag("--wrong-exponent", fWrong, "negative control on bil-halt");
  fuzz->add_option("--grids", fGrids, "default, or L,Nx,Tw,Nt;L,Nx,Tw,Nt;...");
  fuzz->add_option("--out", fOut, "write the CSV here instead of stdout");

  auto* selftest = app.add_subcommand("selftest", "Quick invariant suite on small grids");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    if (rc == 0) return 0;  // --help / --version
    std::fputs(app.help().c_str(), stderr);
    return 2;
  }

  if (norms->parsed())
    return finish(dlab_norms_csv(nFile.c_str(), nNorm.c_str(), nS, nB, nMethod.c_str()), nOut);

  if (picard->parsed())
    return finish(dlab_picard_csv(pData.c_str(), pAmp, pK, pTol, pN), pOut);

  if (cascade->parsed()) {
    std::vector<int> Ns;
    if (!parse_int_list(cList, Ns)) {
      std::fprintf(stderr, "error: bad --N-list '%s' (want comma-separated integers)\n",
                   cList.c_str());
      return 2;
    }
    return finish(dlab_cascade_csv(cS, cSprime, cR, Ns.data(), int(Ns.size()), cNormalize.c_str()),
                  cOut);
  }

  if (fuzz->parsed())
    return finish(dlab_fuzz_csv(fEstimate.c_str(), fTrials, fSeed, fJ1, fJ2, fJ, fD, fD2, fSep,
                                fOffset, fWrong ? 1 : 0, fGrids.c_str()),
                  fOut);

  if (selftest->parsed()) {
    int failures = dlab_selftest([](const char* line, void*) { std::puts(line); }, nullptr);
    if (failures < 0) {
      std::fprintf(stderr, "error: %s\n", dlab_last_error());
      return exit_code_for(-failures);
    }
    std::printf("selftest: %d failure%s\n", failures, failures == 1 ? "" : "s");
    return failures == 0 ? 0 : 1;
  }

  return 2;
}
