// SPDX-License-Identifier: MIT
#pragma once

#include "starwalk/boundary.hpp"
#include "starwalk/linalg.hpp"

namespace starwalk {

/// Spectral-weight factor shared by every vertex regime:
///   phi(lambda) = sqrt(2 lambda) / (beta + sqrt(2 lambda) + gamma lambda).
/// Walsh (beta = gamma = 0) gives 1; the elastic and sticky factors are the
/// one-parameter specializations.
double phi_factor(double beta, double gamma, double lambda);

/// Scattering matrix of the process at spectral parameter lambda > 0:
///   S_km(lambda) = 2 phi(lambda) w_m - delta_km.
/// Rank-one perturbation of -I; for Walsh it is lambda-independent and an
/// involution with det = (-1)^(n+1).  The AbsorbedKilled regime reflects
/// nothing back: S = -I (Dirichlet) at every lambda.
Mat process_smatrix(const ProcessParams& p, double lambda);

/// A boundary-condition pencil (A, B): the vertex condition in the form
/// A f + B f' = 0 (values and inward derivatives at the vertex), with
/// rank [A B] = n.  `lambda0` records the spectral point the pair was
/// constructed at (meaningful for Sticky/General, whose conditions are
/// energy-dependent in this parametrization).
struct BoundaryMatrices {
  Mat A, B;
  double lambda0 = 0.0;
};

/// On-shell scattering matrix of a pencil at energy E != 0:
///   S_AB(E) = -(A + kappa B)^{-1} (A - kappa B),  kappa = sqrt(|E|).
/// Negative E means evaluation on the resolvent axis E = -2 lambda.
/// Throws std::invalid_argument for E == 0 and std::runtime_error if
/// A + kappa B is singular or its condition estimate exceeds
/// `cond_threshold` (spectral pole).
Mat onshell(const BoundaryMatrices& ab, double E,
            double cond_threshold = 1e12);

/// Pencil realizing a regime's scattering matrix.
///
/// Walsh:    A = [0; continuity rows f_1 - f_i], B = [w; 0] -- valid at
///           every energy.
/// Elastic:  A = [beta e_n; continuity rows],    B = [w; 0] -- every energy.
/// Sticky /
/// General:  one-point construction from S0 = S(lambda0):
///           A = (I - S0)/2, B = (I + S0)/(2 sqrt(2 lambda0)),
///           so that A + kappa0 B = I and the on-shell matrix at
///           E = -2 lambda0 is exactly S0.
/// AbsorbedKilled: A = I, B = 0 (Dirichlet; S = -I at every energy).
BoundaryMatrices boundary_matrices(const ProcessParams& p, double lambda0);

/// Spectral data of the sticky vertex (regime Sticky, gamma > 0).
/// The scattering matrix, continued in k (E = k^2), has a simple pole at
/// k = 2i/gamma: a single bound state
///   psi(x) = amplitude * exp(-decay_rate x)  on every edge,
///   decay_rate = 2/gamma,  energy = -4/gamma^2,
/// normalized so that sum over edges of the squared L2 norm is 1, i.e.
/// amplitude = 2/sqrt(n gamma).
struct StickySpectral {
  double energy = 0.0;
  double decay_rate = 0.0;
  double amplitude = 0.0;
  int n_edges = 0;
  double gamma = 0.0;

  double psi(double x) const;  ///< per-edge wavefunction value
};

StickySpectral sticky_spectral(const ProcessParams& p);

/// Phase of the non-trivial eigenvalue of the sticky on-shell scattering
/// matrix at energy E = k^2 > 0 (the symmetric channel; all other channels
/// scatter with constant eigenvalue -1).  Returned in (-pi, 0), continuous
/// in k on (0, inf):
///   s1(k) = (gamma k + 2i)/(2i - gamma k),   delta(k) = arg s1(k).
double reflection_phase(const ProcessParams& p, double k);

/// Wigner time delay of the symmetric channel, d(delta)/dE = delta'(k)/(2k):
///   T(k) = -2 gamma / (k (4 + gamma^2 k^2)).
/// Tends to 0- as k -> inf and to -inf as k -> 0+.
double time_delay_eigenvalue(const ProcessParams& p, double k);

}  // namespace starwalk
