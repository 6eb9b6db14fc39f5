// SPDX-License-Identifier: MIT
#pragma once

#include "starwalk/boundary.hpp"
#include "starwalk/graph.hpp"
#include "starwalk/quadrature.hpp"

namespace starwalk {

/// A (sub-)probability measure on the star graph: an absolutely continuous
/// density on every edge plus a possible point mass at the vertex.  This is
/// the common value type of transition kernels p_t(source, .) and resolvent
/// kernels r_lambda(source, .).
///
/// Densities are with respect to Lebesgue measure on each edge.  They are
/// non-negative; total mass is 1 for conservative regimes (Walsh, Sticky)
/// and < 1 where killing occurs (Elastic, General, AbsorbedKilled with
/// beta > 0) or after Laplace transformation (resolvents: mass <= 1/lambda).
class KernelMeasure {
 public:
  enum class Kind { Transition, Resolvent };

  /// Density at the point (edge, y), edge 1-based, y >= 0.
  double density(int edge, double y) const;

  /// Point mass at the vertex (0 for Walsh/Elastic and Dirichlet kernels).
  double atom() const { return atom_; }

  /// Mass carried by one edge, by half-line quadrature of the density.
  double edge_mass(int edge) const;

  /// Total mass: atom plus all edge masses.
  double mass() const;

  /// Mass of the closed ball of radius eps around the vertex:
  /// atom + sum over edges of the density integral over (0, eps].
  double ball_mass(double eps) const;

  int n_edges() const { return params_.n_edges; }
  Kind kind() const { return kind_; }
  const ProcessParams& params() const { return params_; }
  GraphPoint source() const { return source_; }
  /// Time t for transitions, lambda for resolvents.
  double argument() const { return arg_; }
  bool dirichlet() const { return dirichlet_; }

 private:
  friend KernelMeasure transition(const ProcessParams&, GraphPoint, double,
                                  const QuadratureConfig&);
  friend KernelMeasure resolvent(const ProcessParams&, GraphPoint, double,
                                 const QuadratureConfig&);
  friend KernelMeasure dirichlet_transition(int, GraphPoint, double,
                                            const QuadratureConfig&);
  friend KernelMeasure dirichlet_resolvent(int, GraphPoint, double,
                                           const QuadratureConfig&);

  Kind kind_ = Kind::Transition;
  ProcessParams params_;
  GraphPoint source_;
  double arg_ = 1.0;
  bool dirichlet_ = false;
  double atom_ = 0.0;
  QuadratureConfig quad_;
};

/// Transition kernel p_t(source, .) of the process, t > 0.
///
/// Structure (x = distance from source to the vertex, k = source edge):
///   density(m, y) = [k==m] (g(t, x-y) - g(t, x+y))
///                   + 2 w_m g_{beta,gamma}(t, x+y)          (b != 0 regimes)
///   atom          = gamma * g_{beta,gamma}(t, x)
/// and for the AbsorbedKilled regime
///   density(m, y) = [k==m] (g(t, x-y) - g(t, x+y))
///   atom          = integral_0^t exp(-beta (t-s)) hitting_density(s, x) ds
///                   (= exp(-beta t) from the vertex).
KernelMeasure transition(const ProcessParams& p, GraphPoint source, double t,
                         const QuadratureConfig& cfg = {});

/// Resolvent kernel r_lambda(source, .), lambda > 0.  With q = sqrt(2 lambda)
/// and rho = 1/(beta + q + gamma lambda):
///   density(m, y) = [k==m] (e^{-q|x-y|} - e^{-q(x+y)}) / q
///                   + 2 w_m rho e^{-q(x+y)}                 (b != 0 regimes)
///   atom          = gamma rho e^{-q x}
/// and for AbsorbedKilled the boundary term is dropped while
///   atom          = e^{-q x} / (beta + lambda).
KernelMeasure resolvent(const ProcessParams& p, GraphPoint source,
                        double lambda, const QuadratureConfig& cfg = {});

/// Transition kernel of Brownian motion killed on reaching the vertex
/// (the image/reflection difference term alone, no boundary contribution).
KernelMeasure dirichlet_transition(int n_edges, GraphPoint source, double t,
                                   const QuadratureConfig& cfg = {});

/// Resolvent of the killed motion.
KernelMeasure dirichlet_resolvent(int n_edges, GraphPoint source,
                                  double lambda,
                                  const QuadratureConfig& cfg = {});

}  // namespace starwalk
