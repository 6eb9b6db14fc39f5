// SPDX-License-Identifier: MIT
#include "starwalk/kernels.hpp"

#include <cmath>
#include <stdexcept>

#include "starwalk/special.hpp"

namespace starwalk {

namespace {

void check_edge(const KernelMeasure& km, int edge) {
  if (edge < 1 || edge > km.n_edges())
    throw std::invalid_argument("KernelMeasure: edge index out of range");
}

/// Vertex atom of the AbsorbedKilled transition kernel: probability of
/// having been absorbed by time t and not yet killed,
/// integral_0^t exp(-beta (t-s)) hitting_density(s, x) ds.
/// For beta = 0 this is the plain hitting probability erfc(x / sqrt(2t)).
double absorbed_atom(double t, double x, double beta,
                     const QuadratureConfig& cfg) {
  if (x == 0.0) return std::exp(-beta * t);
  if (beta == 0.0) return std::erfc(x / std::sqrt(2.0 * t));
  auto f = [&](double s) {
    if (s <= 0.0 || s > t) return 0.0;
    return std::exp(-beta * (t - s)) * hitting_density(s, x);
  };
  return integrate(f, 0.0, t, cfg).value;
}

}  // namespace

double KernelMeasure::density(int m, double y) const {
  check_edge(*this, m);
  if (!(y >= 0.0)) throw std::invalid_argument("KernelMeasure: y must be >= 0");
  const double x = source_.x;
  const int k = source_.edge;
  double v = 0.0;
  if (kind_ == Kind::Transition) {
    const double t = arg_;
    if (k == m) v += gauss(t, x - y) - gauss(t, x + y);
    if (!dirichlet_ && params_.regime != Regime::AbsorbedKilled)
      v += 2.0 * params_.w[m - 1] *
           g_family(t, x + y, params_.beta, params_.gamma, quad_);
  } else {
    const double q = std::sqrt(2.0 * arg_);
    if (k == m)
      v += (std::exp(-q * std::abs(x - y)) - std::exp(-q * (x + y))) / q;
    if (!dirichlet_ && params_.regime != Regime::AbsorbedKilled) {
      const double rho =
          1.0 / (params_.beta + q + params_.gamma * arg_);
      v += 2.0 * params_.w[m - 1] * rho * std::exp(-q * (x + y));
    }
  }
  return v;
}

double KernelMeasure::edge_mass(int edge) const {
  check_edge(*this, edge);
  auto f = [this, edge](double y) { return density(edge, y); };
  // Resolvent densities have a kink at y = x on the source edge (the
  // e^{-q|x-y|} term); Gauss--Kronrod error estimates are unreliable across
  // it, so integrate the two smooth pieces separately.
  const double kink = edge == source_.edge ? source_.x : 0.0;
  if (kink > 0.0)
    return integrate(f, 0.0, kink, quad_).value +
           integrate_halfline(f, kink, quad_).value;
  return integrate_halfline(f, 0.0, quad_).value;
}

double KernelMeasure::mass() const {
  double total = atom_;
  for (int m = 1; m <= n_edges(); ++m) total += edge_mass(m);
  return total;
}

double KernelMeasure::ball_mass(double eps) const {
  if (!(eps >= 0.0))
    throw std::invalid_argument("KernelMeasure: eps must be >= 0");
  double total = atom_;
  for (int m = 1; m <= n_edges(); ++m) {
    auto f = [this, m](double y) { return density(m, y); };
    // Split at the source-edge kink when it falls inside the ball (see
    // edge_mass).
    const double kink = m == source_.edge ? source_.x : 0.0;
    if (kink > 0.0 && kink < eps)
      total += integrate(f, 0.0, kink, quad_).value +
               integrate(f, kink, eps, quad_).value;
    else
      total += integrate(f, 0.0, eps, quad_).value;
  }
  return total;
}

KernelMeasure transition(const ProcessParams& p, GraphPoint source, double t,
                         const QuadratureConfig& cfg) {
  validate(p);
  check_point(StarGraph(p.n_edges), source);
  if (!(t > 0.0)) throw std::invalid_argument("transition: t must be > 0");
  KernelMeasure km;
  km.kind_ = KernelMeasure::Kind::Transition;
  km.params_ = p;
  km.source_ = source;
  km.arg_ = t;
  km.quad_ = cfg;
  if (p.regime == Regime::AbsorbedKilled)
    km.atom_ = absorbed_atom(t, source.x, p.beta, cfg);
  else if (p.gamma > 0.0)
    km.atom_ = p.gamma * g_family(t, source.x, p.beta, p.gamma, cfg);
  return km;
}

KernelMeasure resolvent(const ProcessParams& p, GraphPoint source,
                        double lambda, const QuadratureConfig& cfg) {
  validate(p);
  check_point(StarGraph(p.n_edges), source);
  if (!(lambda > 0.0))
    throw std::invalid_argument("resolvent: lambda must be > 0");
  KernelMeasure km;
  km.kind_ = KernelMeasure::Kind::Resolvent;
  km.params_ = p;
  km.source_ = source;
  km.arg_ = lambda;
  km.quad_ = cfg;
  const double q = std::sqrt(2.0 * lambda);
  if (p.regime == Regime::AbsorbedKilled)
    km.atom_ = std::exp(-q * source.x) / (p.beta + lambda);
  else if (p.gamma > 0.0)
    km.atom_ = p.gamma * std::exp(-q * source.x) /
               (p.beta + q + p.gamma * lambda);
  return km;
}

namespace {
/// Placeholder parameters for the Dirichlet kernels: the boundary terms are
/// switched off by the dirichlet flag, so only n_edges matters.
ProcessParams dirichlet_params(int n_edges) {
  ProcessParams p;
  p.regime = Regime::Walsh;
  p.n_edges = n_edges;
  p.w.assign(n_edges, 1.0 / n_edges);
  return p;
}
}  // namespace

KernelMeasure dirichlet_transition(int n_edges, GraphPoint source, double t,
                                   const QuadratureConfig& cfg) {
  if (!(t > 0.0))
    throw std::invalid_argument("dirichlet_transition: t must be > 0");
  KernelMeasure km;
  km.kind_ = KernelMeasure::Kind::Transition;
  km.params_ = dirichlet_params(n_edges);
  check_point(StarGraph(n_edges), source);
  km.source_ = source;
  km.arg_ = t;
  km.quad_ = cfg;
  km.dirichlet_ = true;
  return km;
}

KernelMeasure dirichlet_resolvent(int n_edges, GraphPoint source,
                                  double lambda, const QuadratureConfig& cfg) {
  if (!(lambda > 0.0))
    throw std::invalid_argument("dirichlet_resolvent: lambda must be > 0");
  KernelMeasure km;
  km.kind_ = KernelMeasure::Kind::Resolvent;
  km.params_ = dirichlet_params(n_edges);
  check_point(StarGraph(n_edges), source);
  km.source_ = source;
  km.arg_ = lambda;
  km.quad_ = cfg;
  km.dirichlet_ = true;
  return km;
}

}  // namespace starwalk
