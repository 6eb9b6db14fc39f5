// SPDX-License-Identifier: MIT
//
// Unit tests for the scattering-matrix layer: closed-form S-matrices per
// regime, their algebraic identities, the (A, B) boundary pencils and the
// on-shell map, and the sticky vertex's spectral data (bound state,
// reflection phase, time delay).

#include <doctest.h>

#include <cmath>
#include <complex>
#include <stdexcept>

#include "starwalk/boundary.hpp"
#include "starwalk/linalg.hpp"
#include "starwalk/scattering.hpp"

using namespace starwalk;

namespace {
// Sup-norm distance between S and the closed-form entries 2 phi w_m - d_km.
double dist_to_closed(const Mat& s, const std::vector<double>& w,
                      double phi) {
  double d = 0.0;
  for (int i = 0; i < s.rows(); ++i)
    for (int j = 0; j < s.cols(); ++j) {
      const double expect = 2.0 * phi * w[j] - (i == j ? 1.0 : 0.0);
      d = std::max(d, std::abs(s(i, j) - expect));
    }
  return d;
}
}  // namespace

TEST_SUITE("scattering") {

TEST_CASE("phi factor specializations") {
  CHECK(phi_factor(0.0, 0.0, 1.7) == 1.0);
  // Elastic: q/(beta+q) at lambda=2, beta=1: 2/3.
  CHECK(phi_factor(1.0, 0.0, 2.0) == doctest::Approx(2.0 / 3.0).epsilon(1e-15));
  // Sticky: q/(q+gamma lambda) at lambda=2, gamma=0.5: 2/3.
  CHECK(phi_factor(0.0, 0.5, 2.0) == doctest::Approx(2.0 / 3.0).epsilon(1e-15));
  // General at lambda=0.5: q=1, phi=1/(0.4+1+0.3).
  CHECK(phi_factor(0.4, 0.6, 0.5) ==
        doctest::Approx(1.0 / 1.7).epsilon(1e-15));
  CHECK_THROWS_AS(phi_factor(0.0, 0.0, 0.0), std::invalid_argument);
}

TEST_CASE("walsh scattering matrix: closed form, involution, determinant") {
  SUBCASE("single edge reflects perfectly") {
    const Mat s = process_smatrix(make_walsh({1.0}), 1.0);
    CHECK(s(0, 0) == doctest::Approx(1.0).epsilon(1e-15));
  }
  SUBCASE("two equal edges form a perfect transmitter") {
    const Mat s = process_smatrix(make_walsh({0.5, 0.5}), 2.0);
    CHECK(s(0, 0) == doctest::Approx(0.0).epsilon(1e-15));
    CHECK(s(0, 1) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(s(1, 0) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(s(1, 1) == doctest::Approx(0.0).epsilon(1e-15));
  }
  SUBCASE("degenerate weights w = (1,0,0)") {
    const Mat s = process_smatrix(make_walsh({1.0, 0.0, 0.0}), 1.0);
    const double expect[3][3] = {{1, 0, 0}, {2, -1, 0}, {2, 0, -1}};
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j)
        CHECK(s(i, j) == doctest::Approx(expect[i][j]).epsilon(1e-15));
  }
  SUBCASE("involution, determinant, lambda independence") {
    const ProcessParams p = make_walsh({0.5, 0.3, 0.2});
    const Mat s = process_smatrix(p, 0.7);
    CHECK((s * s).max_abs_diff(Mat::identity(3)) < 1e-14);
    CHECK(det(s) == doctest::Approx(1.0).epsilon(1e-13));  // (-1)^(n+1), n=3
    const Mat s2 = process_smatrix(p, 31.0);
    CHECK(s.max_abs_diff(s2) < 1e-15);

    const Mat s4 = process_smatrix(make_walsh({0.25, 0.25, 0.25, 0.25}), 1.0);
    CHECK(det(s4) == doctest::Approx(-1.0).epsilon(1e-13));  // n = 4
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j)
        CHECK(s4(i, j) ==
              doctest::Approx(0.5 - (i == j ? 1.0 : 0.0)).epsilon(1e-15));
  }
}

TEST_CASE("scattering matrices match the rank-one closed form per regime") {
  const double lambda = 1.3, q = std::sqrt(2.0 * lambda);
  const std::vector<double> w = {0.6, 0.4};
  CHECK(dist_to_closed(process_smatrix(make_walsh(w), lambda), w, 1.0) <
        1e-15);
  CHECK(dist_to_closed(process_smatrix(make_elastic(w, 0.8), lambda), w,
                       q / (0.8 + q)) < 1e-15);
  CHECK(dist_to_closed(process_smatrix(make_sticky(w, 0.7), lambda), w,
                       q / (q + 0.7 * lambda)) < 1e-15);
  CHECK(dist_to_closed(process_smatrix(make_general(w, 0.4, 0.6), lambda), w,
                       q / (0.4 + q + 0.6 * lambda)) < 1e-15);
}

TEST_CASE("absorbed-killed scatters nothing: S = -I at every lambda") {
  const ProcessParams p = make_absorbed(3, 0.9);
  for (double lambda : {0.2, 1.0, 14.0}) {
    const Mat s = process_smatrix(p, lambda);
    CHECK(s.max_abs_diff(Mat::identity(3).scaled(-1.0)) < 1e-15);
  }
}

TEST_CASE("weighted symmetry: diag(w) S is symmetric") {
  const std::vector<double> w = {0.5, 0.3, 0.2};
  for (double lambda : {0.5, 1.0, 2.5}) {
    const Mat s = process_smatrix(make_general(w, 0.4, 0.6), lambda);
    Mat dws(3, 3);
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) dws(i, j) = w[i] * s(i, j);
    CHECK(dws.max_abs_diff(dws.transposed()) < 1e-15);
  }
}

TEST_CASE("sticky family commutes across spectral parameters") {
  const ProcessParams p = make_sticky({0.4, 0.35, 0.25}, 0.7);
  const Mat s1 = process_smatrix(p, 0.6);
  const Mat s2 = process_smatrix(p, 2.9);
  CHECK((s1 * s2).max_abs_diff(s2 * s1) < 1e-14);
}

TEST_CASE("one-point pencil reproduces the scattering matrix on-shell") {
  // For every regime: build (A, B) at lambda0, evaluate on-shell at
  // E = -2 lambda0, compare to the closed form.
  const std::vector<ProcessParams> zoo = {
      make_walsh({0.5, 0.3, 0.2}),
      make_elastic({0.6, 0.4}, 0.8),
      make_sticky({0.5, 0.5}, 0.7),
      make_general({0.6, 0.4}, 0.4, 0.6),
      make_absorbed(2, 1.0),
  };
  for (const auto& p : zoo) {
    CAPTURE(regime_name(p.regime));
    for (double lambda0 : {0.3, 1.0, 2.5}) {
      const BoundaryMatrices ab = boundary_matrices(p, lambda0);
      const Mat s = onshell(ab, -2.0 * lambda0);
      CHECK(s.max_abs_diff(process_smatrix(p, lambda0)) < 1e-10);
    }
  }
}

TEST_CASE("walsh and elastic pencils are energy-independent") {
  // The explicit pencils encode the condition itself, not a one-point
  // snapshot, so the on-shell matrix matches the process matrix at every
  // spectral point, not just the construction point.
  const ProcessParams pw = make_walsh({0.5, 0.3, 0.2});
  const BoundaryMatrices abw = boundary_matrices(pw, 1.0);
  for (double lambda : {0.2, 3.0, 11.0})
    CHECK(onshell(abw, -2.0 * lambda).max_abs_diff(process_smatrix(pw, lambda)) <
          1e-10);
  // Positive energy: Walsh S is the same matrix (lambda-independent family).
  CHECK(onshell(abw, 3.0).max_abs_diff(process_smatrix(pw, 1.0)) < 1e-10);

  const ProcessParams pe = make_elastic({0.6, 0.4}, 0.8);
  const BoundaryMatrices abe = boundary_matrices(pe, 1.0);
  for (double lambda : {0.2, 3.0, 11.0}) {
    // On the resolvent axis kappa = sqrt(2 lambda):
    CHECK(onshell(abe, -2.0 * lambda).max_abs_diff(process_smatrix(pe, lambda)) <
          1e-10);
  }
}

TEST_CASE("pencils are insensitive to left multiplication") {
  // (CA, CB) encodes the same boundary condition for invertible C.
  const ProcessParams p = make_elastic({0.6, 0.4}, 0.8);
  BoundaryMatrices ab = boundary_matrices(p, 1.0);
  Mat c(2, 2);
  c(0, 0) = 1.2; c(0, 1) = 0.3; c(1, 0) = -0.4; c(1, 1) = 2.0;
  BoundaryMatrices scaled{c * ab.A, c * ab.B, ab.lambda0};
  for (double e : {-2.0, -0.6, 1.7})
    CHECK(onshell(ab, e).max_abs_diff(onshell(scaled, e)) < 1e-12);
}

TEST_CASE("on-shell map rejects E = 0 and near-singular pencils") {
  const BoundaryMatrices ab = boundary_matrices(make_walsh({0.5, 0.5}), 1.0);
  CHECK_THROWS_AS(onshell(ab, 0.0), std::invalid_argument);

  // Artificial pencil with A + kappa B nearly singular: condition estimate
  // ~1e15 exceeds the default threshold.
  Mat a = Mat::identity(2);
  a(1, 1) = 1e-15;
  BoundaryMatrices bad{a, Mat(2, 2, 0.0), 1.0};
  CHECK_THROWS_AS(onshell(bad, -2.0), std::runtime_error);
  // Relaxing the threshold lets it through (it is merely ill-conditioned).
  CHECK_NOTHROW(onshell(bad, -2.0, 1e40));
}

TEST_CASE("sticky bound state: energy, decay, normalization") {
  const ProcessParams p = make_sticky({0.4, 0.35, 0.25}, 0.7);
  const StickySpectral sp = sticky_spectral(p);
  CHECK(sp.energy == doctest::Approx(-4.0 / 0.49).epsilon(1e-14));
  CHECK(sp.decay_rate == doctest::Approx(2.0 / 0.7).epsilon(1e-14));
  CHECK(sp.amplitude == doctest::Approx(2.0 / std::sqrt(3.0 * 0.7)).epsilon(1e-14));
  CHECK(sp.n_edges == 3);
  CHECK(sp.psi(0.0) == doctest::Approx(sp.amplitude).epsilon(1e-15));
  CHECK(sp.psi(0.7) ==
        doctest::Approx(sp.amplitude * std::exp(-2.0)).epsilon(1e-14));

  // gamma = 2: energy exactly -1.
  const StickySpectral s2 = sticky_spectral(make_sticky({0.5, 0.5}, 2.0));
  CHECK(s2.energy == doctest::Approx(-1.0).epsilon(1e-15));

  // L2 normalization: n * integral psi^2 = n * amplitude^2/(2 decay) = 1.
  const double l2 = 3.0 * sp.amplitude * sp.amplitude / (2.0 * sp.decay_rate);
  CHECK(l2 == doctest::Approx(1.0).epsilon(1e-14));

  CHECK_THROWS_AS(sticky_spectral(make_walsh({0.5, 0.5})),
                  std::invalid_argument);
  CHECK_THROWS_AS(sticky_spectral(make_general({0.5, 0.5}, 0.3, 0.7)),
                  std::invalid_argument);
}

TEST_CASE("reflection phase: closed form, range, monotonicity") {
  const double gamma = 0.7;
  const ProcessParams p = make_sticky({0.5, 0.5}, gamma);
  double prev = 0.0;
  for (double k : {0.05, 0.3, 1.0, 2.0, 5.0, 20.0, 200.0}) {
    const double d = reflection_phase(p, k);
    CHECK(d < 0.0);
    CHECK(d > -3.141592653589793);
    CHECK(d < prev);  // strictly decreasing in k
    prev = d;
    // Reconstruct the eigenvalue and compare with the rational closed form.
    const std::complex<double> s1(std::cos(d), std::sin(d));
    const double den = 4.0 + gamma * gamma * k * k;
    CHECK(s1.real() ==
          doctest::Approx((4.0 - gamma * gamma * k * k) / den).epsilon(1e-12));
    CHECK(s1.imag() ==
          doctest::Approx(-4.0 * gamma * k / den).epsilon(1e-12));
  }
  // Limits: k -> 0 gives no phase shift, k -> inf a hard-wall -pi.
  CHECK(reflection_phase(p, 1e-9) == doctest::Approx(0.0).epsilon(1e-6));
  CHECK(reflection_phase(p, 1e9) ==
        doctest::Approx(-3.141592653589793).epsilon(1e-6));
  CHECK_THROWS_AS(reflection_phase(p, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(reflection_phase(make_walsh({0.5, 0.5}), 1.0),
                  std::invalid_argument);
}

TEST_CASE("time delay: closed form and finite-difference consistency") {
  const double gamma = 0.7;
  const ProcessParams p = make_sticky({0.5, 0.5}, gamma);
  for (double k : {0.3, 1.0, 2.0, 10.0}) {
    const double t = time_delay_eigenvalue(p, k);
    CHECK(t == doctest::Approx(-2.0 * gamma /
                               (k * (4.0 + gamma * gamma * k * k)))
                   .epsilon(1e-14));
    // T = delta'(k)/(2k) via central difference of the phase.
    const double h = 1e-5 * k;
    const double fd = (reflection_phase(p, k + h) -
                       reflection_phase(p, k - h)) /
                      (2.0 * h * 2.0 * k);
    CHECK(t == doctest::Approx(fd).epsilon(1e-7));
  }
  CHECK(time_delay_eigenvalue(p, 1e6) < 0.0);
  CHECK(time_delay_eigenvalue(p, 1e6) > -1e-12);
  CHECK(time_delay_eigenvalue(p, 1e-6) < -1e5);
  CHECK_THROWS_AS(time_delay_eigenvalue(make_elastic({1.0}, 0.5), 1.0),
                  std::invalid_argument);
}

TEST_CASE("linear algebra utilities behave") {
  Mat a(2, 2);
  a(0, 0) = 2.0; a(0, 1) = 1.0; a(1, 0) = 1.0; a(1, 1) = 3.0;
  CHECK(det(a) == doctest::Approx(5.0).epsilon(1e-14));
  const Mat inv = inverse(a);
  CHECK((a * inv).max_abs_diff(Mat::identity(2)) < 1e-14);
  const SolveResult sr = solve(a, Mat::identity(2));
  CHECK_FALSE(sr.singular);
  CHECK(sr.x.max_abs_diff(inv) < 1e-14);
  CHECK(sr.cond >= 1.0);
  Mat sing(2, 2, 1.0);
  CHECK(solve(sing, Mat::identity(2)).singular);
  CHECK_THROWS_AS(inverse(sing), std::runtime_error);
  CHECK(a.inf_norm() == doctest::Approx(4.0).epsilon(1e-15));
}

}  // TEST_SUITE("scattering")
