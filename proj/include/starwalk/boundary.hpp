// SPDX-License-Identifier: MIT
#pragma once

#include <string>
#include <vector>

#include "starwalk/graph.hpp"

namespace starwalk {

/// Vertex boundary condition for Brownian motion on a star graph, in the
/// normalized Feller form
///
///     a f(v) + (c/2) f''(v) = sum_k b_k f'(v_k),
///
/// with a, c, b_k >= 0, a + c + sum_k b_k = 1, and a != 1.  f'(v_k) is the
/// inward derivative along edge k.  Every Brownian motion on the star graph
/// whose generator acts as (1/2) f'' away from the vertex corresponds to
/// exactly one such triple.
struct BoundaryCondition {
  double a = 0.0;              ///< killing weight
  std::vector<double> b;       ///< reflection weights, one per edge
  double c = 0.0;              ///< stickiness weight
};

/// Qualitative classes of vertex behaviour, determined by which of the
/// reduced parameters vanish.
enum class Regime {
  Walsh,           ///< beta = 0, gamma = 0: instantaneous reflection
  Elastic,         ///< beta > 0, gamma = 0: killing at an exponential
                   ///  local-time threshold
  Sticky,          ///< beta = 0, gamma > 0: positive time spent at the vertex
  General,         ///< beta > 0, gamma > 0: sticky and elastic combined
  AbsorbedKilled,  ///< b = 0: absorbed on arrival, killed after an
                   ///  exponential holding time
};

const char* regime_name(Regime r);

/// Reduced (process-level) parameters of the vertex behaviour.
///
/// For b != 0, with r = a + c:
///     w_k = b_k / (1 - r)   (edge-selection weights, a probability vector)
///     beta = a / (1 - r)    (killing rate per unit local time)
///     gamma = c / (1 - r)   (stickiness: extra time per unit local time)
///
/// For b = 0 (AbsorbedKilled) only beta = a/c is meaningful; `w` is empty
/// and `gamma` is 0 by convention.
struct ProcessParams {
  Regime regime = Regime::Walsh;
  int n_edges = 1;
  std::vector<double> w;
  double beta = 0.0;
  double gamma = 0.0;
};

/// Validate a boundary condition against a graph: sizes, non-negativity,
/// normalization a + c + sum(b) = 1 (tolerance `simplex_tol`), a != 1.
/// Throws std::invalid_argument naming the violated constraint.
void validate(const StarGraph& g, const BoundaryCondition& bc,
              double simplex_tol = 1e-12);

/// Map a boundary condition to its process parameters and regime.
ProcessParams classify_boundary(const StarGraph& g,
                                const BoundaryCondition& bc,
                                double simplex_tol = 1e-12);

/// Inverse map.  For b != 0 regimes:
///     1 - r = 1/(1 + beta + gamma),  a = beta/(1+beta+gamma),
///     c = gamma/(1+beta+gamma),      b_k = w_k/(1+beta+gamma).
/// For AbsorbedKilled: a = beta/(1+beta), c = 1/(1+beta), b = 0.
/// classify_boundary(boundary_from_process(p)) == p up to roundoff.
BoundaryCondition boundary_from_process(const ProcessParams& p);

/// Validate process parameters directly (weights simplex, sign constraints,
/// regime consistency).  Throws std::invalid_argument.
void validate(const ProcessParams& p, double simplex_tol = 1e-12);

/// Convenience factories (validated on construction).
ProcessParams make_walsh(std::vector<double> w);
ProcessParams make_elastic(std::vector<double> w, double beta);
ProcessParams make_sticky(std::vector<double> w, double gamma);
ProcessParams make_general(std::vector<double> w, double beta, double gamma);
ProcessParams make_absorbed(int n_edges, double beta);

}  // namespace starwalk
