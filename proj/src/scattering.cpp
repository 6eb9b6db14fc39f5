// SPDX-License-Identifier: MIT
#include "starwalk/scattering.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace starwalk {

double phi_factor(double beta, double gamma, double lambda) {
  if (!(lambda > 0.0))
    throw std::invalid_argument("phi_factor: lambda must be > 0");
  if (!(beta >= 0.0) || !(gamma >= 0.0))
    throw std::invalid_argument("phi_factor: beta, gamma must be >= 0");
  const double q = std::sqrt(2.0 * lambda);
  return q / (beta + q + gamma * lambda);
}

Mat process_smatrix(const ProcessParams& p, double lambda) {
  validate(p);
  if (!(lambda > 0.0))
    throw std::invalid_argument("process_smatrix: lambda must be > 0");
  const int n = p.n_edges;
  if (p.regime == Regime::AbsorbedKilled) return Mat::identity(n).scaled(-1.0);
  const double phi = phi_factor(p.beta, p.gamma, lambda);
  Mat s(n, n);
  for (int k = 0; k < n; ++k)
    for (int m = 0; m < n; ++m)
      s(k, m) = 2.0 * phi * p.w[m] - (k == m ? 1.0 : 0.0);
  return s;
}

Mat onshell(const BoundaryMatrices& ab, double E, double cond_threshold) {
  if (E == 0.0)
    throw std::invalid_argument("onshell: E must be non-zero");
  if (ab.A.rows() != ab.A.cols() || ab.B.rows() != ab.B.cols() ||
      ab.A.rows() != ab.B.rows())
    throw std::invalid_argument("onshell: A and B must be square, same size");
  const double kappa = std::sqrt(std::abs(E));
  const Mat lhs = ab.A + ab.B.scaled(kappa);
  const Mat rhs = ab.A - ab.B.scaled(kappa);
  const SolveResult sol = solve(lhs, rhs);
  if (sol.singular)
    throw std::runtime_error("onshell: A + kappa B is singular at this energy");
  if (sol.cond > cond_threshold) {
    std::ostringstream os;
    os << "onshell: A + kappa B is ill-conditioned (cond ~ " << sol.cond
       << "), too close to a spectral pole";
    throw std::runtime_error(os.str());
  }
  return sol.x.scaled(-1.0);
}

BoundaryMatrices boundary_matrices(const ProcessParams& p, double lambda0) {
  validate(p);
  if (!(lambda0 > 0.0))
    throw std::invalid_argument("boundary_matrices: lambda0 must be > 0");
  const int n = p.n_edges;
  BoundaryMatrices ab;
  ab.lambda0 = lambda0;

  switch (p.regime) {
    case Regime::Walsh:
    case Regime::Elastic: {
      // First row: the flux/killing balance; rows 2..n: continuity
      // f_1 - f_i = 0.  Row scaling of (A,B) leaves the on-shell matrix
      // invariant, so any non-zero multiple works equally well.
      Mat a(n, n), b(n, n);
      if (p.regime == Regime::Elastic) a(0, n - 1) = p.beta;
      for (int m = 0; m < n; ++m) b(0, m) = p.w[m];
      for (int i = 1; i < n; ++i) {
        a(i, 0) = 1.0;
        a(i, i) = -1.0;
      }
      ab.A = a;
      ab.B = b;
      return ab;
    }
    case Regime::Sticky:
    case Regime::General: {
      // Energy-dependent condition: build the pencil from the scattering
      // matrix at lambda0 so that A + kappa0 B = I exactly.
      const Mat s0 = process_smatrix(p, lambda0);
      const Mat id = Mat::identity(n);
      const double q0 = std::sqrt(2.0 * lambda0);
      ab.A = (id - s0).scaled(0.5);
      ab.B = (id + s0).scaled(0.5 / q0);
      return ab;
    }
    case Regime::AbsorbedKilled: {
      ab.A = Mat::identity(n);
      ab.B = Mat(n, n);
      return ab;
    }
  }
  throw std::logic_error("boundary_matrices: unreachable");
}

double StickySpectral::psi(double x) const {
  if (!(x >= 0.0)) throw std::invalid_argument("psi: x must be >= 0");
  return amplitude * std::exp(-decay_rate * x);
}

StickySpectral sticky_spectral(const ProcessParams& p) {
  validate(p);
  if (p.regime != Regime::Sticky)
    throw std::invalid_argument(
        "sticky_spectral: requires the Sticky regime (beta = 0, gamma > 0)");
  StickySpectral sp;
  sp.gamma = p.gamma;
  sp.n_edges = p.n_edges;
  sp.energy = -4.0 / (p.gamma * p.gamma);
  sp.decay_rate = 2.0 / p.gamma;
  sp.amplitude = 2.0 / std::sqrt(p.n_edges * p.gamma);
  return sp;
}

double reflection_phase(const ProcessParams& p, double k) {
  validate(p);
  if (p.regime != Regime::Sticky)
    throw std::invalid_argument("reflection_phase: requires the Sticky regime");
  if (!(k > 0.0)) throw std::invalid_argument("reflection_phase: k must be > 0");
  const double gk = p.gamma * k;
  const double den = 4.0 + gk * gk;
  const double re = (4.0 - gk * gk) / den;
  const double im = -4.0 * gk / den;
  // im < 0 for all k > 0, so atan2 is already continuous here, in (-pi, 0).
  return std::atan2(im, re);
}

double time_delay_eigenvalue(const ProcessParams& p, double k) {
  validate(p);
  if (p.regime != Regime::Sticky)
    throw std::invalid_argument(
        "time_delay_eigenvalue: requires the Sticky regime");
  if (!(k > 0.0))
    throw std::invalid_argument("time_delay_eigenvalue: k must be > 0");
  const double gk = p.gamma * k;
  return -2.0 * p.gamma / (k * (4.0 + gk * gk));
}

}  // namespace starwalk
