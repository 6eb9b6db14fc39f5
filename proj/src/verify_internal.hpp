// SPDX-License-Identifier: MIT
#pragma once

// Internal glue between the analytic and Monte Carlo halves of the
// verification suite.  Not installed; include only from src/.

#include <cstdint>
#include <sstream>
#include <string>
#include <vector>

#include "starwalk/verify.hpp"

namespace starwalk::verify_detail {

/// Accumulates named subchecks for one acceptance criterion.  Every
/// subcheck contributes the ratio measured/allowed; the criterion passes
/// when every ratio is < 1, and reports the worst ratio as its statistic
/// (bound 1).  Raw numbers go to the details string.
class Collector {
 public:
  explicit Collector(std::string name) : name_(std::move(name)) {}

  void add(const std::string& check, double measured, double allowed);
  /// Hard boolean subcheck (ratio 0 when ok, 2 when violated).
  void require(const std::string& check, bool ok);
  /// Context that should land in the details string but checks nothing.
  void note(const std::string& text);

  void bump_samples(std::uint64_t n) { n_samples_ += n; }
  TestReport report() const;

 private:
  std::string name_;
  double worst_ = 0.0;
  bool pass_ = true;
  std::uint64_t n_samples_ = 0;
  std::ostringstream details_;
  bool first_ = true;

  void sep();
};

/// Two-grid (Richardson) allowance for a Monte Carlo estimate with an
/// O(sqrt(dt)) discretization bias: repeat the estimate at dt and 4 dt,
/// attribute the difference (inflated by its own noise) to a C sqrt(dt)
/// term, and allow 3 SE_fine + C_hat sqrt(dt_fine).
struct TwoGrid {
  double est = 0.0;        ///< fine-grid estimate
  double se = 0.0;         ///< fine-grid standard error
  double est_coarse = 0.0;
  double se_coarse = 0.0;
  double c_hat = 0.0;
  double allowance = 0.0;
};

TwoGrid two_grid_allowance(double est_fine, double se_fine, double est_coarse,
                           double se_coarse, double dt_fine, double dt_coarse);

/// One line of raw-vs-target bookkeeping for a Monte Carlo subcheck.
std::string mc_line(double est, double target, double allowance);

// --- the acceptance criteria, in suite order ---
TestReport criterion_classification();
TestReport criterion_scattering_algebra();
TestReport criterion_laplace();
TestReport criterion_mass();
TestReport criterion_chapman_kolmogorov();
TestReport criterion_boundary_residual();
TestReport criterion_exact_samplers(const SuiteOptions& opts);
TestReport criterion_simulated_marginals(const SuiteOptions& opts);
TestReport criterion_exit_lifetime(const SuiteOptions& opts);
TestReport criterion_localtime_potentials(const SuiteOptions& opts);
TestReport criterion_spectral();

}  // namespace starwalk::verify_detail
