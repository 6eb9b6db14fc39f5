// SPDX-License-Identifier: MIT
#pragma once

#include "starwalk/quadrature.hpp"

namespace starwalk {

/// Scaled complementary error function exp(z^2) erfc(z), accurate for all
/// z >= 0 (the naive product underflows/overflows past z ~ 27).  Below
/// z = 25 the direct product is exact enough; above, an 8-term asymptotic
/// expansion in 1/(2z^2) is used (its truncation error is < 1e-18 there).
double erfcx(double z);

/// Heat kernel on the line at the origin scale used throughout:
/// g(t,x) = (2 pi t)^{-1/2} exp(-x^2 / (2t)),  t > 0.
double gauss(double t, double x);

/// Density of the first time standard Brownian motion started at distance
/// d > 0 reaches the origin:  d / sqrt(2 pi t^3) * exp(-d^2/(2t)).
/// Its Laplace transform in t is exp(-sqrt(2 lambda) d).
double hitting_density(double t, double d);

/// e_lambda(d) = exp(-sqrt(2 lambda) d): Laplace transform of the hitting
/// time from distance d; the universal decay profile of all resolvent
/// boundary terms.  lambda > 0, d >= 0.
double e_lambda(double lambda, double d);

/// Elastic half-line kernel ingredient:
///   g_{beta,0}(t,x) = g(t,x) - (beta/2) erfcx(x/sqrt(2t) + beta sqrt(t/2))
///                     * exp(-x^2/(2t)).
/// Equals the convolution of the hitting density with exp(-beta(z-x)) over
/// z > x; Laplace transform exp(-sqrt(2 lambda) x) / (beta + sqrt(2 lambda)).
/// beta = 0 reduces to gauss.  Always >= 0.
double g_beta0(double t, double x, double beta);

/// Sticky half-line kernel ingredient:
///   g_{0,gamma}(t,x) = (1/gamma) erfcx(x/sqrt(2t) + sqrt(2t)/gamma)
///                      * exp(-x^2/(2t)),  gamma > 0.
/// Laplace transform exp(-sqrt(2 lambda) x) / (sqrt(2 lambda) + gamma lambda).
/// Tends to gauss(t,x) as gamma -> 0.
double g_0gamma(double t, double x, double gamma);

/// Combined kernel ingredient with Laplace transform
///   exp(-sqrt(2 lambda) x) / (beta + sqrt(2 lambda) + gamma lambda),
/// computed by adaptive quadrature of a Gaussian-substituted integral
/// (stable for all gamma > 0, including gamma -> 0 where it tends to
/// g_beta0, and beta -> 0 where it tends to g_0gamma).
double g_betagamma(double t, double x, double beta, double gamma,
                   const QuadratureConfig& cfg = {});

/// Dispatcher over the whole two-parameter family: routes to the closed
/// forms whenever beta or gamma vanishes and to g_betagamma otherwise.
double g_family(double t, double x, double beta, double gamma,
                const QuadratureConfig& cfg = {});

}  // namespace starwalk
