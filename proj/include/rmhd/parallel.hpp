#ifndef RMHD_PARALLEL_HPP_
#define RMHD_PARALLEL_HPP_

#include <thread>
#include <vector>

namespace rmhd {

/// Static block partition of [0, n) over `workers` threads. Results are
/// bitwise independent of the worker count as long as writes are disjoint.
template <class Fn>
void parallel_for(int n, int workers, Fn &&fn) {
  if (workers <= 1 || n < 2 * workers) {
    fn(0, n);
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(workers);
  const int chunk = (n + workers - 1) / workers;
  for (int w = 0; w < workers; ++w) {
    const int lo = w * chunk;
    const int hi = std::min(n, lo + chunk);
    if (lo >= hi) break;
    pool.emplace_back([&fn, lo, hi] { fn(lo, hi); });
  }
  for (auto &t : pool) t.join();
}

}  // namespace rmhd

#endif  // RMHD_PARALLEL_HPP_
