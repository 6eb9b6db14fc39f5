// SPDX-License-Identifier: MIT
#pragma once

#include "starwalk/boundary.hpp"
#include "starwalk/graph.hpp"
#include "starwalk/rng.hpp"

namespace starwalk {

/// Exact draw of the first time Brownian motion started at distance d > 0
/// reaches the origin: H = d^2 / Z^2 with Z standard normal (Z = 0 redrawn).
/// E[exp(-lambda H)] = exp(-sqrt(2 lambda) d); the median is d^2/z_{0.75}^2.
double sample_first_hitting(Rng& rng, double d);

struct PositionLocalTime {
  double x = 0.0;
  double local_time = 0.0;
};

/// Exact joint draw of (|B_t|, L_t) for reflected Brownian motion started
/// at the origin: the sum u = |B_t| + L_t has the Maxwell density
/// 2 u^2 / sqrt(2 pi t^3) exp(-u^2/(2t)) (|chi_3| scaled by sqrt(t)), and
/// given u the position is uniform on (0, u).  E[L_t] = sqrt(2t/pi).
PositionLocalTime sample_reflected_localtime(Rng& rng, double t);

/// Exact draw of the time the (gamma-sticky) clock needs to accumulate
/// local time r at the vertex: K_r = r^2/Z^2 + gamma r (the inverse local
/// time at level r -- a stable-1/2 draw plus the deterministic sticky
/// drift).  r = 0 returns 0.  E[exp(-lambda K_r)]
/// = exp(-(sqrt(2 lambda) + gamma lambda) r).
double sample_inverse_localtime(Rng& rng, double r, double gamma);

/// Probability that a Brownian bridge over a step of length h with signed
/// endpoint values a, b (same sign, both non-zero) touches 0 in between:
/// exp(-2 a b / h).
double bridge_crossing_probability(double a, double b, double h);

/// Exact draw of the local time at 0 accumulated by a Brownian bridge of
/// length h between signed endpoints a and b:
///   L = max(0, sqrt((a-b)^2 - 2 h ln U) - |a| - |b|),
/// from the tail law P(L > l) = exp(-((|a|+|b|+l)^2 - (a-b)^2)/(2h)).
/// Carries the correct atom at 0 (no touch) for same-sign endpoints and is
/// almost surely positive when the endpoints straddle 0.
double sample_bridge_localtime(Rng& rng, double a, double b, double h);

struct MarginalSample {
  int edge = 0;  ///< 1-based; 0 only for the probability-zero vertex draw
  double x = 0.0;
};

/// Exact draw from the Walsh transition kernel p_t(start, .) -- no grid, no
/// discretization.  From the vertex: x = sqrt(t)|Z| and an independent
/// Categorical(w) edge (edge and magnitude are independent there).  From an
/// interior point (k, x0): the signed endpoint y ~ N(x0, t) decides --
/// y <= 0 means the vertex was visited (magnitude -y, fresh edge); y > 0
/// re-draws the edge only with the exact bridge-crossing probability
/// exp(-2 x0 y / t), else stays on edge k with magnitude y.
MarginalSample exact_marginal_walsh(Rng& rng, const ProcessParams& p,
                                    GraphPoint start, double t);

}  // namespace starwalk
