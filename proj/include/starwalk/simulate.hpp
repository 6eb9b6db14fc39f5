// SPDX-License-Identifier: MIT
#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <vector>

#include "starwalk/boundary.hpp"
#include "starwalk/graph.hpp"
#include "starwalk/rng.hpp"
#include "starwalk/samplers.hpp"

namespace starwalk {

/// Local-time estimators available to the walker.
///  - Occupation (default): epsilon-band occupation, dL = dt/(2 eps) while
///    |Y| <= eps with eps = eps0 sqrt(dt).  Consistent; O(sqrt(dt)) bias in
///    means, smeared in law.
///  - Downcrossing: eps per excursion of |Y| from the vertex that reaches
///    the band |Y| >= eps, paid when the band is first reached.  Band
///    visits arrive as a rate-1/eps Poisson process in the local-time
///    scale, so the payout is an unbiased estimate of the local time at
///    every band width.  Cross-check estimator; larger variance than
///    Occupation at the same step size.
///  - BridgeExact: per-step draw of the exact Brownian-bridge local time at
///    0 given the signed endpoints; exact in law step by step, used where a
///    distributional test needs it.
enum class LocalTimeEstimator { Occupation, Downcrossing, BridgeExact };

struct SimConfig {
  double dt = 1e-4;
  double horizon = 1.0;
  /// Local-time band in units of sqrt(dt): Occupation weights time spent in
  /// |Y| <= eps0 sqrt(dt); Downcrossing pays per excursion reaching it.  The
  /// crossing count resolves excursions reliably only for eps0 >= 3 (smaller
  /// bands fit several excursions into one step and undercount).
  double eps0 = 1.0;
  LocalTimeEstimator estimator = LocalTimeEstimator::Occupation;
  /// If > 0: stop the walk when the distance to the vertex first reaches
  /// this level, with exact per-step bridge detection of in-step crossings.
  double exit_radius = 0.0;
};

struct TrajectoryStep {
  double time = 0.0;  ///< output clock (includes the sticky time change)
  int edge = 0;       ///< 1-based; 0 = at the vertex
  double x = 0.0;
  double local_time = 0.0;
  bool alive = true;
};

/// End-of-walk summary handed to the observer.
struct WalkResult {
  bool killed = false;
  double kill_time = std::numeric_limits<double>::quiet_NaN();
  bool exited = false;  ///< stopped by an exit_radius crossing
  double exit_time = std::numeric_limits<double>::quiet_NaN();
  int exit_edge = 0;
  double final_local_time = 0.0;
};

struct Trajectory {
  std::uint64_t path_id = 0;
  std::vector<TrajectoryStep> steps;
  WalkResult result;
};

namespace detail {

inline int pick_edge(Rng& rng, const std::vector<double>& cdf) {
  const double u = rng.uniform();
  for (std::size_t i = 0; i + 1 < cdf.size(); ++i)
    if (u < cdf[i]) return static_cast<int>(i) + 1;
  return static_cast<int>(cdf.size());
}

/// Driver for the b != 0 regimes (Walsh / Elastic / Sticky / General):
/// a signed Gaussian walk Y whose magnitude is the distance to the vertex;
/// a fresh Categorical(w) edge label at every sign change (= vertex visit);
/// local time at 0 via the configured estimator; for gamma > 0 the output
/// clock is s + gamma L (the sticky vertex consumes gamma dL of extra
/// time); for beta > 0 the path is killed when L first exceeds an
/// independent Exp(beta) threshold (ties stay alive), the kill placed at
/// the sub-step time interpolated through the local-time increment.
template <class Obs>
void walk_reflecting(const ProcessParams& p, GraphPoint start,
                     const SimConfig& cfg, Rng& rng, Obs& obs) {
  const double dt = cfg.dt;
  const double sdt = std::sqrt(dt);
  const double eps = cfg.eps0 * sdt;
  const double dl_occ = dt / (2.0 * eps);
  const double rex = cfg.exit_radius;
  const bool sticky = p.gamma > 0.0;
  const bool killing = p.beta > 0.0;

  std::vector<double> cdf(p.w.size());
  double acc = 0.0;
  for (std::size_t i = 0; i < p.w.size(); ++i) cdf[i] = (acc += p.w[i]);

  double y = start.x;
  int edge = start.is_vertex() ? pick_edge(rng, cdf) : start.edge;
  double s = 0.0, L = 0.0, t_out = 0.0;
  const double S = killing ? rng.exponential(p.beta)
                           : std::numeric_limits<double>::infinity();
  // Downcrossing state: the current excursion's band visit has been paid
  // (or predates the first vertex visit, which accrues no local time).
  bool paid = true;
  WalkResult res;

  obs.start(p, start);
  if (!obs.step(0.0, start.is_vertex() ? 0 : edge, start.x, 0.0, true)) {
    obs.finish(res);
    return;
  }

  while (t_out < cfg.horizon) {
    const double ynew = y + sdt * rng.normal();
    const bool crossed = (y > 0.0) != (ynew > 0.0) || ynew == 0.0;
    if (crossed) edge = pick_edge(rng, cdf);

    if (rex > 0.0) {
      bool out = std::abs(ynew) >= rex;
      if (!out) {
        // Exact bridge crossing of either barrier +-rex; the joint
        // double-crossing within one step has probability ~exp(-8 rex^2/dt)
        // and is ignored.
        const double up =
            std::exp(-2.0 * (rex - y) * (rex - ynew) / dt);
        const double dn =
            std::exp(-2.0 * (rex + y) * (rex + ynew) / dt);
        out = rng.uniform() < up + dn;
      }
      if (out) {
        // Mid-step placement of the crossing: O(dt) error.  No local time
        // is added for the exit step (a 0-visit after crossing the barrier
        // inside one step has probability ~exp(-2 rex^2/dt)).
        const double s_exit = s + 0.5 * dt;
        res.exited = true;
        res.exit_time = sticky ? s_exit + p.gamma * L : s_exit;
        res.exit_edge = edge;
        res.final_local_time = L;
        obs.step(res.exit_time, edge, rex, L, true);
        obs.finish(res);
        return;
      }
    }

    double dl = 0.0;
    switch (cfg.estimator) {
      case LocalTimeEstimator::Occupation:
        if (std::abs(ynew) <= eps) dl = dl_occ;
        break;
      case LocalTimeEstimator::Downcrossing: {
        // Pay eps when an excursion from the vertex first reaches the band
        // |Y| >= eps; a vertex visit re-enables payment.  Paying on the
        // return to the vertex instead would undercount by about one band
        // width per path (the in-flight excursion is never paid).  Vertex
        // visits inside a step are detected by the endpoint sign flip or
        // the exact bridge-touch probability, band visits by the endpoint
        // check or the exact bridge-maximum probability
        // exp(-2 (eps-|y|)(eps-|ynew|)/dt); endpoint checks alone miss an
        // O(1) fraction of either event.
        if (paid &&
            (crossed ||
             rng.uniform() < bridge_crossing_probability(y, ynew, dt)))
          paid = false;
        if (!paid) {
          bool reached = std::abs(ynew) >= eps;
          if (!reached && !crossed) {
            const double gap_y = eps - std::abs(y);
            const double gap_n = eps - std::abs(ynew);
            if (gap_y > 0.0)
              reached = rng.uniform() < std::exp(-2.0 * gap_y * gap_n / dt);
          }
          if (reached) {
            dl = eps;
            paid = true;
          }
        }
        break;
      }
      case LocalTimeEstimator::BridgeExact:
        dl = sample_bridge_localtime(rng, y, ynew, dt);
        break;
    }

    s += dt;
    const double l_prev = L;
    L += dl;

    if (killing && L > S) {
      const double theta = dl > 0.0 ? (S - l_prev) / dl : 0.0;
      const double s_kill = s - dt + theta * dt;
      res.killed = true;
      res.kill_time = sticky ? s_kill + p.gamma * S : s_kill;
      res.final_local_time = S;
      obs.step(res.kill_time, 0, 0.0, S, false);
      obs.finish(res);
      return;
    }

    y = ynew;
    t_out = sticky ? s + p.gamma * L : s;
    if (!obs.step(t_out, edge, std::abs(y), L, true)) break;
  }
  res.final_local_time = L;
  obs.finish(res);
}

/// Driver for the AbsorbedKilled regime (b = 0): Brownian motion on the
/// starting edge, absorbed on its first vertex visit (detected by endpoint
/// sign or the exact bridge-crossing probability, the hit time refined by
/// rejection from the unconditioned hitting law), then held at the vertex
/// for an independent Exp(beta) time and killed (beta = 0: held forever).
/// No local time accrues.
template <class Obs>
void walk_absorbed(const ProcessParams& p, GraphPoint start,
                   const SimConfig& cfg, Rng& rng, Obs& obs) {
  const double dt = cfg.dt;
  const double sdt = std::sqrt(dt);
  WalkResult res;
  obs.start(p, start);

  auto absorbed_at = [&](double s_hit) {
    obs.step(s_hit, 0, 0.0, 0.0, true);
    if (p.beta > 0.0) {
      const double t_kill = s_hit + rng.exponential(p.beta);
      if (t_kill <= cfg.horizon) {
        res.killed = true;
        res.kill_time = t_kill;
        obs.step(t_kill, 0, 0.0, 0.0, false);
        obs.finish(res);
        return;
      }
    }
    obs.step(cfg.horizon, 0, 0.0, 0.0, true);
    obs.finish(res);
  };

  if (start.is_vertex()) {
    if (obs.step(0.0, 0, 0.0, 0.0, true)) absorbed_at(0.0);
    else obs.finish(res);
    return;
  }

  const int edge = start.edge;
  double y = start.x, s = 0.0;
  if (!obs.step(0.0, edge, y, 0.0, true)) {
    obs.finish(res);
    return;
  }
  while (s < cfg.horizon) {
    const double ynew = y + sdt * rng.normal();
    bool hit = ynew <= 0.0;
    if (!hit && rng.uniform() < std::exp(-2.0 * y * ynew / dt)) hit = true;
    if (hit) {
      // Refine the hit time inside the step: rejection from H = y^2/Z^2
      // conditioned to <= dt (ignores the right endpoint: O(dt) bias).
      double h = dt * rng.uniform();
      for (int tries = 0; tries < 64; ++tries) {
        const double z = rng.normal();
        if (z == 0.0) continue;
        const double cand = y * y / (z * z);
        if (cand <= dt) {
          h = cand;
          break;
        }
      }
      const double s_hit = s + h;
      if (s_hit >= cfg.horizon) {
        obs.step(cfg.horizon, edge, std::abs(ynew), 0.0, true);
        break;
      }
      absorbed_at(s_hit);
      return;
    }
    y = ynew;
    s += dt;
    if (!obs.step(s, edge, y, 0.0, true)) break;
  }
  obs.finish(res);
}

}  // namespace detail

/// Run one path, feeding every step to the observer.  Observer concept:
///   void start(const ProcessParams&, GraphPoint start);
///   bool step(double t_out, int edge, double x, double L, bool alive);
///     // return false to stop the walk early
///   void finish(const WalkResult&);
template <class Obs>
void walk_path(const ProcessParams& p, GraphPoint start, const SimConfig& cfg,
               Rng& rng, Obs& obs) {
  validate(p);
  check_point(StarGraph(p.n_edges), start);
  if (!(cfg.dt > 0.0) || !(cfg.horizon > 0.0) || !(cfg.eps0 > 0.0))
    throw std::invalid_argument("SimConfig: dt, horizon, eps0 must be > 0");
  if (p.regime == Regime::AbsorbedKilled)
    detail::walk_absorbed(p, start, cfg, rng, obs);
  else
    detail::walk_reflecting(p, start, cfg, rng, obs);
}

/// Record a full trajectory for one path.
Trajectory simulate_path(const ProcessParams& p, GraphPoint start,
                         const SimConfig& cfg, Rng& rng,
                         std::uint64_t path_id = 0);

/// Thread-count resolution: `requested` if > 0, else the STARWALK_THREADS
/// environment variable, else hardware concurrency (at least 1).
int resolve_threads(int requested);

/// Call f(path_id, rng) once for every path id in [0, n_paths), partitioned
/// in contiguous blocks over `n_threads` threads (resolved as above).  The
/// per-path Rng depends only on (seed, stream, path_id), and each path id is
/// processed exactly once, so any output written to a per-path slot is
/// bit-identical regardless of the thread count.
template <class F>
void for_each_path(std::uint64_t n_paths, std::uint64_t seed,
                   std::uint64_t stream, int n_threads, F&& f);

/// Record a whole ensemble (memory scales with n_paths * steps; intended
/// for CSV export at modest sizes, not for the statistical suites).
std::vector<Trajectory> simulate_ensemble(const ProcessParams& p,
                                          GraphPoint start,
                                          const SimConfig& cfg,
                                          std::uint64_t n_paths,
                                          std::uint64_t seed,
                                          std::uint64_t stream = 0,
                                          int n_threads = 0);

}  // namespace starwalk

#include "starwalk/simulate_impl.hpp"
