// SPDX-License-Identifier: MIT
#pragma once

#include <algorithm>
#include <thread>
#include <vector>

namespace starwalk {

template <class F>
void for_each_path(std::uint64_t n_paths, std::uint64_t seed,
                   std::uint64_t stream, int n_threads, F&& f) {
  const int nt = std::max(
      1, std::min<int>(resolve_threads(n_threads),
                       static_cast<int>(std::min<std::uint64_t>(
                           n_paths, 1u << 10))));
  if (nt == 1 || n_paths < 2) {
    for (std::uint64_t id = 0; id < n_paths; ++id) {
      Rng rng = Rng::for_path(seed, stream, id);
      f(id, rng);
    }
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(nt);
  const std::uint64_t block = (n_paths + nt - 1) / nt;
  for (int w = 0; w < nt; ++w) {
    const std::uint64_t lo = block * static_cast<std::uint64_t>(w);
    const std::uint64_t hi = std::min(n_paths, lo + block);
    if (lo >= hi) break;
    pool.emplace_back([lo, hi, seed, stream, &f]() {
      for (std::uint64_t id = lo; id < hi; ++id) {
        Rng rng = Rng::for_path(seed, stream, id);
        f(id, rng);
      }
    });
  }
  for (auto& t : pool) t.join();
}

}  // namespace starwalk
