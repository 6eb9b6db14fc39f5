// SPDX-License-Identifier: MIT
#pragma once

#include <stdexcept>
#include <string>

namespace starwalk {

/// A star graph: n semi-infinite edges (rays) glued at a single vertex.
/// Edges are indexed 1..n; each point of edge k is a coordinate x > 0.
/// The vertex itself is the common origin of all edges.
struct StarGraph {
  int n_edges = 1;

  explicit StarGraph(int n) : n_edges(n) {
    if (n < 1)
      throw std::invalid_argument("StarGraph: n_edges must be >= 1, got " +
                                  std::to_string(n));
  }
};

/// A point of the star graph.  `edge == 0` is the vertex (x is then 0);
/// otherwise `edge` is a 1-based ray index and `x > 0` the distance from
/// the vertex along that ray.
struct GraphPoint {
  int edge = 0;
  double x = 0.0;

  static GraphPoint vertex() { return GraphPoint{0, 0.0}; }

  static GraphPoint on_edge(int k, double x) {
    if (k < 1)
      throw std::invalid_argument("GraphPoint: edge index must be >= 1");
    if (!(x > 0.0))
      throw std::invalid_argument(
          "GraphPoint: interior point needs x > 0 (use vertex() for x = 0)");
    return GraphPoint{k, x};
  }

  bool is_vertex() const { return edge == 0; }
};

inline void check_point(const StarGraph& g, const GraphPoint& p) {
  if (p.edge < 0 || p.edge > g.n_edges)
    throw std::invalid_argument("GraphPoint: edge index " +
                                std::to_string(p.edge) +
                                " outside 1.." + std::to_string(g.n_edges));
  if (p.edge == 0 && p.x != 0.0)
    throw std::invalid_argument("GraphPoint: vertex must have x = 0");
  if (p.edge > 0 && !(p.x > 0.0))
    throw std::invalid_argument("GraphPoint: interior point needs x > 0");
}

/// Distance from a point to the vertex.
inline double distance_to_vertex(const GraphPoint& p) { return p.x; }

/// Geodesic distance: |x - y| on a common edge, x + y across edges
/// (every path between different rays passes through the vertex).
inline double distance(const StarGraph& g, const GraphPoint& p,
                       const GraphPoint& q) {
  check_point(g, p);
  check_point(g, q);
  if (p.edge == q.edge) return p.x > q.x ? p.x - q.x : q.x - p.x;
  return p.x + q.x;  // one of them may be the vertex (x = 0)
}

/// Distance of the path forced through the vertex, d(p,v) + d(v,q).
/// Coincides with `distance` across edges; on a common edge it is the
/// longer, reflected route.
inline double distance_via_vertex(const StarGraph& g, const GraphPoint& p,
                                  const GraphPoint& q) {
  check_point(g, p);
  check_point(g, q);
  return p.x + q.x;
}

}  // namespace starwalk
