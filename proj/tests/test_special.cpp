// SPDX-License-Identifier: MIT
//
// Unit tests for the special-function layer: the scaled complementary error
// function, the half-line hitting density, and the two-parameter kernel
// family g_{beta,gamma}.  Reference values were frozen from 40-digit
// arbitrary-precision evaluations of the defining integrals/closed forms;
// Laplace-transform identities are re-checked here by direct quadrature,
// which is an independent route through completely different code.

#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "starwalk/quadrature.hpp"
#include "starwalk/special.hpp"

using namespace starwalk;

namespace {
constexpr double kSqrt2 = 1.4142135623730951;
}

TEST_SUITE("special") {

TEST_CASE("quadrature: finite intervals") {
  auto sq = [](double x) { return x * x; };
  QuadResult r = integrate(sq, 0.0, 1.0);
  CHECK(r.converged);
  CHECK(r.value == doctest::Approx(1.0 / 3.0).epsilon(1e-14));

  QuadResult s = integrate([](double x) { return std::sin(x); }, 0.0,
                           3.141592653589793);
  CHECK(s.value == doctest::Approx(2.0).epsilon(1e-13));

  // Needle: forces adaptive bisection.
  QuadResult n = integrate(
      [](double x) { return std::exp(-1e4 * (x - 0.3) * (x - 0.3)); }, 0.0,
      1.0, {1e-12, 4000});
  CHECK(n.converged);
  CHECK(n.value ==
        doctest::Approx(std::sqrt(3.141592653589793 / 1e4)).epsilon(1e-10));
}

TEST_CASE("quadrature: half-line tails") {
  QuadResult r =
      integrate_halfline([](double x) { return std::exp(-x); }, 0.0);
  CHECK(r.converged);
  CHECK(r.value == doctest::Approx(1.0).epsilon(1e-12));

  QuadResult g = integrate_halfline([](double x) { return gauss(1.0, x); },
                                    0.0, {1e-12, 4000});
  CHECK(g.value == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("erfcx: frozen values across the asymptotic switch") {
  CHECK(erfcx(0.0) == doctest::Approx(1.0).epsilon(1e-15));
  // Direct-product branch.
  CHECK(erfcx(1.0) == doctest::Approx(0.42758357615580700).epsilon(1e-14));
  CHECK(erfcx(24.9) ==
        doctest::Approx(0.022639987776049505).epsilon(1e-13));
  // Asymptotic branch (naive product would underflow past z ~ 27).
  CHECK(erfcx(25.0) ==
        doctest::Approx(0.022549572432641359).epsilon(1e-13));
  CHECK(erfcx(26.0) ==
        doctest::Approx(0.021683584850562907).epsilon(1e-13));
  CHECK(erfcx(30.0) ==
        doctest::Approx(0.018795888861416751).epsilon(1e-13));
  CHECK(erfcx(100.0) ==
        doctest::Approx(0.0056416137829894329).epsilon(1e-13));
  CHECK(erfcx(1000.0) ==
        doctest::Approx(0.00056418930145338765).epsilon(1e-13));
  // Consistency with std::erfc where the product is representable.
  for (double z : {0.3, 1.7, 4.0, 9.5}) {
    CHECK(erfcx(z) * std::exp(-z * z) ==
          doctest::Approx(std::erfc(z)).epsilon(1e-13));
  }
}

TEST_CASE("gauss and hitting density: frozen values") {
  CHECK(gauss(1.0, 0.0) ==
        doctest::Approx(0.39894228040143268).epsilon(1e-14));
  CHECK(gauss(2.0, 1.0) ==
        doctest::Approx(0.21969564473386122).epsilon(1e-14));
  CHECK(hitting_density(1.0, 1.0) ==
        doctest::Approx(0.24197072451914335).epsilon(1e-14));
  CHECK(e_lambda(1.0, 1.0) ==
        doctest::Approx(0.24311673443421421).epsilon(1e-14));  // exp(-sqrt 2)
  CHECK(e_lambda(1.0, 0.0) == 1.0);
  CHECK_THROWS_AS(gauss(0.0, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(hitting_density(-1.0, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(e_lambda(0.0, 1.0), std::invalid_argument);
}

TEST_CASE("hitting density integrates to the hitting-time transform") {
  // integral_0^inf exp(-lambda t) * hitting_density(t, d) dt
  //   = exp(-sqrt(2 lambda) d)  (checked by quadrature, lambda = 1, d = 1/2).
  QuadResult r = integrate_halfline(
      [](double t) {
        return t == 0.0 ? 0.0 : std::exp(-t) * hitting_density(t, 0.5);
      },
      0.0, {1e-12, 4000});
  CHECK(r.value == doctest::Approx(0.49306869139523979).epsilon(1e-9));
  CHECK(r.value == doctest::Approx(e_lambda(1.0, 0.5)).epsilon(1e-9));
}

TEST_CASE("g_beta0: frozen values, reduction, positivity") {
  CHECK(g_beta0(1.0, 0.0, 1.0) ==
        doctest::Approx(0.13736398853630931).epsilon(1e-13));
  CHECK(g_beta0(1.0, 0.7, 2.3) ==
        doctest::Approx(0.093502040040312300).epsilon(1e-13));
  // Deep tail: the erfcx factoring keeps this finite and accurate.
  CHECK(g_beta0(2.0, 50.0, 10.0) ==
        doctest::Approx(7.4179970380205300e-273).epsilon(1e-9));
  CHECK(g_beta0(1.0, 0.4, 0.0) ==
        doctest::Approx(gauss(1.0, 0.4)).epsilon(1e-15));
  for (double x : {0.0, 0.5, 3.0, 20.0})
    CHECK(g_beta0(0.7, x, 5.0) >= 0.0);
  CHECK_THROWS_AS(g_beta0(0.0, 1.0, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(g_beta0(1.0, -1.0, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(g_beta0(1.0, 1.0, -1.0), std::invalid_argument);
}

TEST_CASE("g_beta0: Laplace transform identity by quadrature") {
  // LT = exp(-q x) / (beta + q), q = sqrt(2 lambda); lambda=1, beta=1, x=0.5.
  QuadResult r = integrate_halfline(
      [](double t) {
        return t == 0.0 ? 0.0 : std::exp(-t) * g_beta0(t, 0.5, 1.0);
      },
      0.0, {1e-12, 4000});
  CHECK(r.value == doctest::Approx(0.20423573915746251).epsilon(1e-9));
}

TEST_CASE("g_0gamma: frozen values and limits") {
  CHECK(g_0gamma(1.0, 0.0, 1.0) ==
        doctest::Approx(0.33620400244634121).epsilon(1e-13));
  CHECK(g_0gamma(1.0, 0.5, 0.8) ==
        doctest::Approx(0.26808920761152026).epsilon(1e-13));
  CHECK(g_0gamma(0.25, 2.0, 3.0) ==
        doctest::Approx(1.9633336778001216e-05).epsilon(1e-12));
  // gamma -> 0 approaches the free heat kernel.
  CHECK(g_0gamma(1.0, 0.5, 1e-8) ==
        doctest::Approx(gauss(1.0, 0.5)).epsilon(1e-7));
  CHECK_THROWS_AS(g_0gamma(1.0, 0.5, 0.0), std::invalid_argument);
}

TEST_CASE("g_0gamma: Laplace transform identity by quadrature") {
  // LT = exp(-q x) / (q + gamma lambda); lambda=1, gamma=0.5, x=0.5.
  const double q = kSqrt2;
  const double closed = std::exp(-q * 0.5) / (q + 0.5);
  QuadResult r = integrate_halfline(
      [](double t) {
        return t == 0.0 ? 0.0 : std::exp(-t) * g_0gamma(t, 0.5, 0.5);
      },
      0.0, {1e-12, 4000});
  CHECK(r.value == doctest::Approx(closed).epsilon(1e-9));
}

TEST_CASE("g_betagamma: frozen values") {
  CHECK(g_betagamma(1.0, 0.5, 1.0, 1.0) ==
        doctest::Approx(0.16840849612132858).epsilon(1e-11));
  CHECK(g_betagamma(1.0, 0.0, 1.0, 1.0) ==
        doctest::Approx(0.18526830835293802).epsilon(1e-11));
  CHECK(g_betagamma(2.0, 1.2, 0.4, 0.6) ==
        doctest::Approx(0.12500945512622271).epsilon(1e-11));
  CHECK(g_betagamma(0.5, 0.1, 2.0, 0.3) ==
        doctest::Approx(0.19224182053717267).epsilon(1e-11));
}

TEST_CASE("g_betagamma: degenerate-parameter limits") {
  CHECK(g_betagamma(1.0, 0.5, 1e-8, 0.8) ==
        doctest::Approx(g_0gamma(1.0, 0.5, 0.8)).epsilon(1e-7));
  CHECK(g_betagamma(1.0, 0.5, 1.7, 1e-8) ==
        doctest::Approx(g_beta0(1.0, 0.5, 1.7)).epsilon(1e-7));
}

TEST_CASE("g_betagamma: Laplace transform identity by quadrature") {
  // LT = exp(-q x) / (beta + q + gamma lambda); lambda=1, beta=gamma=1,
  // x = 0.5: exp(-sqrt2/2) / (2 + sqrt2).
  QuadResult r = integrate_halfline(
      [](double t) {
        return t == 0.0 ? 0.0 : std::exp(-t) * g_betagamma(t, 0.5, 1.0, 1.0);
      },
      0.0, {1e-10, 4000});
  CHECK(r.value == doctest::Approx(0.14441647611888864).epsilon(1e-8));
}

TEST_CASE("g_family dispatches to the right specialization") {
  CHECK(g_family(1.3, 0.4, 0.0, 0.0) ==
        doctest::Approx(gauss(1.3, 0.4)).epsilon(1e-15));
  CHECK(g_family(1.3, 0.4, 0.9, 0.0) ==
        doctest::Approx(g_beta0(1.3, 0.4, 0.9)).epsilon(1e-15));
  CHECK(g_family(1.3, 0.4, 0.0, 0.9) ==
        doctest::Approx(g_0gamma(1.3, 0.4, 0.9)).epsilon(1e-15));
  CHECK(g_family(1.3, 0.4, 0.9, 0.9) ==
        doctest::Approx(g_betagamma(1.3, 0.4, 0.9, 0.9)).epsilon(1e-13));
}

}  // TEST_SUITE("special")
