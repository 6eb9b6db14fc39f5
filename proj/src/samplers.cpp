// SPDX-License-Identifier: MIT
#include "starwalk/samplers.hpp"

#include <cmath>
#include <stdexcept>

namespace starwalk {

double sample_first_hitting(Rng& rng, double d) {
  if (!(d > 0.0))
    throw std::invalid_argument("sample_first_hitting: d must be > 0");
  double z = rng.normal();
  while (z == 0.0) z = rng.normal();
  return d * d / (z * z);
}

PositionLocalTime sample_reflected_localtime(Rng& rng, double t) {
  if (!(t > 0.0))
    throw std::invalid_argument("sample_reflected_localtime: t must be > 0");
  const double z1 = rng.normal(), z2 = rng.normal(), z3 = rng.normal();
  const double u = std::sqrt(t * (z1 * z1 + z2 * z2 + z3 * z3));
  const double x = u * rng.uniform();
  return PositionLocalTime{x, u - x};
}

double sample_inverse_localtime(Rng& rng, double r, double gamma) {
  if (!(r >= 0.0))
    throw std::invalid_argument("sample_inverse_localtime: r must be >= 0");
  if (!(gamma >= 0.0))
    throw std::invalid_argument("sample_inverse_localtime: gamma must be >= 0");
  if (r == 0.0) return 0.0;
  double z = rng.normal();
  while (z == 0.0) z = rng.normal();
  return r * r / (z * z) + gamma * r;
}

double bridge_crossing_probability(double a, double b, double h) {
  if (!(h > 0.0))
    throw std::invalid_argument("bridge_crossing_probability: h must be > 0");
  if (a * b <= 0.0) return 1.0;  // endpoints straddle or touch 0
  return std::exp(-2.0 * a * b / h);
}

double sample_bridge_localtime(Rng& rng, double a, double b, double h) {
  if (!(h > 0.0))
    throw std::invalid_argument("sample_bridge_localtime: h must be > 0");
  const double diff = a - b;
  const double arg = diff * diff - 2.0 * h * std::log(rng.uniform_pos());
  const double l = std::sqrt(arg) - std::abs(a) - std::abs(b);
  return l > 0.0 ? l : 0.0;
}

MarginalSample exact_marginal_walsh(Rng& rng, const ProcessParams& p,
                                    GraphPoint start, double t) {
  validate(p);
  if (p.regime != Regime::Walsh)
    throw std::invalid_argument("exact_marginal_walsh: requires Walsh regime");
  check_point(StarGraph(p.n_edges), start);
  if (!(t > 0.0))
    throw std::invalid_argument("exact_marginal_walsh: t must be > 0");

  MarginalSample out;
  const double sq = std::sqrt(t);
  if (start.is_vertex()) {
    out.x = std::abs(sq * rng.normal());
    out.edge = rng.categorical(p.w) + 1;
    return out;
  }
  const double y = start.x + sq * rng.normal();
  if (y <= 0.0) {
    out.x = -y;
    out.edge = rng.categorical(p.w) + 1;
    return out;
  }
  out.x = y;
  if (rng.uniform() < std::exp(-2.0 * start.x * y / t))
    out.edge = rng.categorical(p.w) + 1;  // vertex visited: fresh label
  else
    out.edge = start.edge;
  return out;
}

}  // namespace starwalk
