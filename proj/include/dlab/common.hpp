// Shared basics: error taxonomy, <x> bracket, deterministic RNG, parallel_for.
#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

namespace dlab {

using cplx = std::complex<double>;

// Error taxonomy mirrors the CLI exit codes: config/usage -> 2, resolution -> 3,
// divergence -> 4.  IO failures get their own class so the C API can report 5.
struct DlabError : std::runtime_error {
  explicit DlabError(const std::string& msg) : std::runtime_error(msg) {}
};
struct ConfigError : DlabError {
  using DlabError::DlabError;
};
struct UsageError : DlabError {
  using DlabError::DlabError;
};
struct ResolutionError : DlabError {
  using DlabError::DlabError;
};
struct DivergenceError : DlabError {
  using DlabError::DlabError;
};
struct IoError : DlabError {
  using DlabError::DlabError;
};

// <x> = (1+x^2)^(1/2); hypot avoids overflow and keeps <x> >= 1 exactly.
inline double bracket(double x) { return std::hypot(1.0, x); }

inline double sgn(double x) { return x > 0 ? 1.0 : (x < 0 ? -1.0 : 0.0); }

// splitmix64: seeds and per-point hashing (stable across platforms).
inline std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ull);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

inline std::uint64_t hash_combine(std::uint64_t a, std::uint64_t b) {
  std::uint64_t s = a + 0x9e3779b97f4a7c15ull * (b + 1);
  return splitmix64(s);
}

// uniform in [0,1) from the top 53 bits; avoids distribution objects whose
// streams differ between standard libraries.
inline double u01(std::uint64_t bits) { return double(bits >> 11) * 0x1.0p-53; }

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {
    // decorrelate nearby seeds
    for (int i = 0; i < 2; ++i) splitmix64(state_);
  }
  std::uint64_t next() { return splitmix64(state_); }
  double uniform() { return u01(next()); }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  // integer in [0, n)
  std::uint64_t below(std::uint64_t n) { return next() % n; }

 private:
  std::uint64_t state_;
};

std::size_t worker_count();

// Splits [0,n) into contiguous blocks over the worker threads.  Work must be
// independent per index; reductions should write to per-index slots and be
// combined afterwards in index order so results do not depend on thread count.
void parallel_for(std::size_t n, const std::function<void(std::size_t, std::size_t)>& block_fn);

inline void parallel_for_each(std::size_t n, const std::function<void(std::size_t)>& fn) {
  parallel_for(n, [&](std::size_t lo, std::size_t hi) {
    for (std::size_t i = lo; i < hi; ++i) fn(i);
  });
}

}  // namespace dlab
