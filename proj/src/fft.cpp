#include "dlab/fft.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cstdlib>
#include <map>
#include <mutex>
#include <utility>

namespace dlab {

namespace {

std::mutex g_planner_mutex;
std::map<std::pair<int, int>, fftw_plan> g_plans;

fftw_plan plan_for(int n, int sign) {
  std::lock_guard<std::mutex> lock(g_planner_mutex);
  auto key = std::make_pair(n, sign);
  auto it = g_plans.find(key);
  if (it != g_plans.end()) return it->second;
  // Planning buffer only; execution uses fftw_execute_dft on caller arrays.
  // FFTW_UNALIGNED lets the plan run on any std::vector storage.
  fftw_complex* buf = fftw_alloc_complex(size_t(n));
  fftw_plan p = fftw_plan_dft_1d(n, buf, buf, sign, FFTW_ESTIMATE | FFTW_UNALIGNED);
  fftw_free(buf);
  g_plans.emplace(key, p);
  return p;
}

}  // namespace

void fft_raw(cplx* data, int n, int sign) {
  fftw_plan p = plan_for(n, sign);
  auto* d = reinterpret_cast<fftw_complex*>(data);
  fftw_execute_dft(p, d, d);  // thread-safe; planning above is serialized
}

void fft_centered(cplx* data, int n, int sign, double weight) {
  // ifftshift: move signed index p (stored at p + n/2) to raw index p mod n.
  const int h = n / 2;
  for (int i = 0; i < h; ++i) std::swap(data[i], data[i + h]);
  fft_raw(data, n, sign > 0 ? FFTW_BACKWARD : FFTW_FORWARD);
  for (int i = 0; i < h; ++i) std::swap(data[i], data[i + h]);
  if (weight != 1.0)
    for (int i = 0; i < n; ++i) data[i] *= weight;
}

std::size_t worker_count() {
  static const std::size_t n = [] {
    if (const char* env = std::getenv("DLAB_THREADS")) {
      long v = std::strtol(env, nullptr, 10);
      if (v >= 1) return std::size_t(v);
    }
    unsigned hc = std::thread::hardware_concurrency();
    return std::size_t(hc ? hc : 1);
  }();
  return n;
}

void parallel_for(std::size_t n, const std::function<void(std::size_t, std::size_t)>& block_fn) {
  const std::size_t workers = std::min(worker_count(), n ? n : 1);
  if (workers <= 1 || n < 2) {
    if (n) block_fn(0, n);
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(workers);
  const std::size_t chunk = (n + workers - 1) / workers;
  for (std::size_t w = 0; w < workers; ++w) {
    std::size_t lo = w * chunk, hi = std::min(n, lo + chunk);
    if (lo >= hi) break;
    pool.emplace_back([&, lo, hi] { block_fn(lo, hi); });
  }
  for (auto& th : pool) th.join();
}

}  // namespace dlab
