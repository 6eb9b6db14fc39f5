// SPDX-License-Identifier: MIT
#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "starwalk/boundary.hpp"
#include "starwalk/kernels.hpp"

namespace starwalk {

/// Outcome of one verification check.  `statistic` is the measured
/// discrepancy (test statistic, max error, ...), `bound` what it had to stay
/// below; `details` is free-form human-readable context that also lands in
/// the JSON report.
struct TestReport {
  std::string name;
  bool pass = false;
  double statistic = 0.0;
  double bound = 0.0;
  std::uint64_t n_samples = 0;
  std::string details;
};

struct SuiteOptions {
  std::uint64_t seed = 42;
  int n_threads = 0;  ///< 0: resolve via STARWALK_THREADS / hardware
};

/// Numeric time-integration of the vertex kernels selected by the boundary
/// parameters (first-hitting density, and whichever of g_{beta,0},
/// g_{0,gamma}, g_{beta,gamma} the process uses) against e^{-lambda t},
/// compared with their closed-form Laplace transforms on the (lambda, x)
/// grid; worst relative error must stay below rel_tol.
TestReport laplace_consistency(const ProcessParams& p,
                               const std::vector<double>& lambdas,
                               const std::vector<double>& xs,
                               double rel_tol = 1e-6);

/// Chapman--Kolmogorov: compose p_s p_t by quadrature (edge densities and
/// vertex atoms) and compare with p_{s+t} at the given targets, sup-norm
/// tolerance `tol`.  `dirichlet` checks the killed kernel instead.
TestReport chapman_kolmogorov(const ProcessParams& p, GraphPoint source,
                              double s, double t,
                              const std::vector<GraphPoint>& targets,
                              double tol = 1e-6, bool dirichlet = false);

/// Apply the resolvent to a test function by quadrature, then verify by
/// one-sided finite differences (with Richardson extrapolation) that
/// u = R_lambda f satisfies the vertex boundary condition
///   a u(v) + (c/2) u''(v) - sum_k b_k u'(v_k) = 0
/// within max(abs_floor, an FD-error bound), plus edge-continuity of u at
/// the vertex.  Also cross-checks u''(v) against 2(lambda u(v) - f(v)).
TestReport generator_domain_check(const ProcessParams& p, double lambda,
                                  double abs_floor = 1e-5);

/// Total-mass behaviour of transition kernels: = 1 (tol) for conservative
/// regimes; in (0,1) and non-increasing over the listed times otherwise.
TestReport mass_check(const ProcessParams& p, GraphPoint source,
                      const std::vector<double>& times, double tol = 1e-8);

/// The full acceptance suite (all primary criteria, in order).
std::vector<TestReport> run_primary_suite(const SuiteOptions& opts = {});

bool all_pass(const std::vector<TestReport>& reports);

/// JSON array of report objects {name, pass, statistic, bound, n_samples,
/// details}.
std::string reports_to_json(const std::vector<TestReport>& reports);

}  // namespace starwalk
