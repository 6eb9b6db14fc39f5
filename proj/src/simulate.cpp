// SPDX-License-Identifier: MIT
#include "starwalk/simulate.hpp"

#include <cstdlib>
#include <string>
#include <thread>

namespace starwalk {

namespace {

struct RecordingObserver {
  Trajectory* out;
  void start(const ProcessParams&, GraphPoint) {}
  bool step(double t, int edge, double x, double L, bool alive) {
    out->steps.push_back({t, edge, x, L, alive});
    return true;
  }
  void finish(const WalkResult& r) { out->result = r; }
};

}  // namespace

Trajectory simulate_path(const ProcessParams& p, GraphPoint start,
                         const SimConfig& cfg, Rng& rng,
                         std::uint64_t path_id) {
  Trajectory traj;
  traj.path_id = path_id;
  RecordingObserver obs{&traj};
  walk_path(p, start, cfg, rng, obs);
  return traj;
}

int resolve_threads(int requested) {
  if (requested > 0) return requested;
  if (const char* env = std::getenv("STARWALK_THREADS")) {
    const int n = std::atoi(env);
    if (n > 0) return n;
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw > 0 ? static_cast<int>(hw) : 1;
}

std::vector<Trajectory> simulate_ensemble(const ProcessParams& p,
                                          GraphPoint start,
                                          const SimConfig& cfg,
                                          std::uint64_t n_paths,
                                          std::uint64_t seed,
                                          std::uint64_t stream,
                                          int n_threads) {
  validate(p);
  std::vector<Trajectory> out(n_paths);
  for_each_path(n_paths, seed, stream, n_threads,
                [&](std::uint64_t id, Rng& rng) {
                  out[id] = simulate_path(p, start, cfg, rng, id);
                });
  return out;
}

}  // namespace starwalk
