// SPDX-License-Identifier: MIT
#include "starwalk/boundary.hpp"

#include <cmath>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace starwalk {

const char* regime_name(Regime r) {
  switch (r) {
    case Regime::Walsh: return "Walsh";
    case Regime::Elastic: return "Elastic";
    case Regime::Sticky: return "Sticky";
    case Regime::General: return "General";
    case Regime::AbsorbedKilled: return "AbsorbedKilled";
  }
  return "?";
}

namespace {
[[noreturn]] void fail(const std::string& what) {
  throw std::invalid_argument("invalid boundary condition: " + what);
}
}  // namespace

void validate(const StarGraph& g, const BoundaryCondition& bc,
              double simplex_tol) {
  if (static_cast<int>(bc.b.size()) != g.n_edges) {
    std::ostringstream os;
    os << "b has " << bc.b.size() << " entries for a graph with "
       << g.n_edges << " edges";
    fail(os.str());
  }
  if (!(bc.a >= 0.0) || !std::isfinite(bc.a)) fail("constraint a >= 0 violated");
  if (!(bc.c >= 0.0) || !std::isfinite(bc.c)) fail("constraint c >= 0 violated");
  for (std::size_t k = 0; k < bc.b.size(); ++k)
    if (!(bc.b[k] >= 0.0) || !std::isfinite(bc.b[k])) {
      std::ostringstream os;
      os << "constraint b_" << (k + 1) << " >= 0 violated";
      fail(os.str());
    }
  const double sum =
      bc.a + bc.c + std::accumulate(bc.b.begin(), bc.b.end(), 0.0);
  if (std::abs(sum - 1.0) > simplex_tol) {
    std::ostringstream os;
    os << "constraint a + c + sum(b) = 1 violated (sum = " << sum << ")";
    fail(os.str());
  }
  // a == 1 would mean b = 0 and c = 0: the process is killed the instant it
  // reaches the vertex and no Feller process with our generator realizes it.
  if (bc.a >= 1.0 - simplex_tol) fail("constraint a != 1 violated (a = 1)");
}

ProcessParams classify_boundary(const StarGraph& g, const BoundaryCondition& bc,
                                double simplex_tol) {
  validate(g, bc, simplex_tol);
  ProcessParams p;
  p.n_edges = g.n_edges;

  const double bsum = std::accumulate(bc.b.begin(), bc.b.end(), 0.0);
  if (bsum == 0.0) {
    // validate() guarantees a < 1, hence c = 1 - a > 0 here.
    p.regime = Regime::AbsorbedKilled;
    p.beta = bc.a / bc.c;
    p.gamma = 0.0;
    p.w.clear();
    return p;
  }

  const double r = bc.a + bc.c;   // so 1 - r = bsum > 0
  const double scale = 1.0 - r;
  p.w.resize(bc.b.size());
  for (std::size_t k = 0; k < bc.b.size(); ++k) p.w[k] = bc.b[k] / scale;
  p.beta = bc.a / scale;
  p.gamma = bc.c / scale;

  if (p.beta == 0.0 && p.gamma == 0.0) p.regime = Regime::Walsh;
  else if (p.beta > 0.0 && p.gamma == 0.0) p.regime = Regime::Elastic;
  else if (p.beta == 0.0 && p.gamma > 0.0) p.regime = Regime::Sticky;
  else p.regime = Regime::General;
  return p;
}

void validate(const ProcessParams& p, double simplex_tol) {
  if (p.n_edges < 1) fail("n_edges must be >= 1");
  if (!(p.beta >= 0.0) || !std::isfinite(p.beta))
    fail("constraint beta >= 0 violated");
  if (!(p.gamma >= 0.0) || !std::isfinite(p.gamma))
    fail("constraint gamma >= 0 violated");

  if (p.regime == Regime::AbsorbedKilled) {
    if (!p.w.empty()) fail("AbsorbedKilled carries no edge weights");
    if (p.gamma != 0.0) fail("AbsorbedKilled has gamma = 0 by convention");
    return;
  }
  if (static_cast<int>(p.w.size()) != p.n_edges)
    fail("w must have one entry per edge");
  double sum = 0.0;
  for (std::size_t k = 0; k < p.w.size(); ++k) {
    if (!(p.w[k] >= 0.0) || !std::isfinite(p.w[k])) {
      std::ostringstream os;
      os << "constraint w_" << (k + 1) << " >= 0 violated";
      fail(os.str());
    }
    sum += p.w[k];
  }
  if (std::abs(sum - 1.0) > simplex_tol)
    fail("constraint sum(w) = 1 violated");

  const bool b0 = p.beta == 0.0, g0 = p.gamma == 0.0;
  const bool ok = (p.regime == Regime::Walsh && b0 && g0) ||
                  (p.regime == Regime::Elastic && !b0 && g0) ||
                  (p.regime == Regime::Sticky && b0 && !g0) ||
                  (p.regime == Regime::General && !b0 && !g0);
  if (!ok) fail("regime tag inconsistent with (beta, gamma)");
}

namespace {
ProcessParams checked(ProcessParams p) {
  validate(p);
  return p;
}
}  // namespace

ProcessParams make_walsh(std::vector<double> w) {
  const int n = static_cast<int>(w.size());
  return checked({Regime::Walsh, n, std::move(w), 0.0, 0.0});
}

ProcessParams make_elastic(std::vector<double> w, double beta) {
  const int n = static_cast<int>(w.size());
  return checked({Regime::Elastic, n, std::move(w), beta, 0.0});
}

ProcessParams make_sticky(std::vector<double> w, double gamma) {
  const int n = static_cast<int>(w.size());
  return checked({Regime::Sticky, n, std::move(w), 0.0, gamma});
}

ProcessParams make_general(std::vector<double> w, double beta, double gamma) {
  const int n = static_cast<int>(w.size());
  return checked({Regime::General, n, std::move(w), beta, gamma});
}

ProcessParams make_absorbed(int n_edges, double beta) {
  return checked({Regime::AbsorbedKilled, n_edges, {}, beta, 0.0});
}

BoundaryCondition boundary_from_process(const ProcessParams& p) {
  validate(p);
  BoundaryCondition bc;
  if (p.regime == Regime::AbsorbedKilled) {
    bc.a = p.beta / (1.0 + p.beta);
    bc.c = 1.0 / (1.0 + p.beta);
    bc.b.assign(p.n_edges, 0.0);
    return bc;
  }
  const double denom = 1.0 + p.beta + p.gamma;
  bc.a = p.beta / denom;
  bc.c = p.gamma / denom;
  bc.b.resize(p.w.size());
  for (std::size_t k = 0; k < p.w.size(); ++k) bc.b[k] = p.w[k] / denom;
  return bc;
}

}  // namespace starwalk
