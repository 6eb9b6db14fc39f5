// SPDX-License-Identifier: MIT
#pragma once

#include <cstddef>
#include <functional>
#include <string>
#include <vector>

namespace starwalk {

double normal_cdf(double z);
/// Inverse standard normal CDF (rational initial guess + Newton polish;
/// absolute error ~1e-14 well inside (0,1)).
double normal_quantile(double p);

/// Regularized lower incomplete gamma P(a,x) (series / continued fraction).
double gamma_p(double a, double x);
/// Upper tail Q(a,x) = 1 - P(a,x).
double gamma_q(double a, double x);

/// Upper-alpha quantile of the chi-square distribution with `dof` degrees
/// of freedom: the x with Q(dof/2, x/2) = alpha, found by bisection.
double chi2_critical(double dof, double alpha);

/// Asymptotic Kolmogorov--Smirnov critical value
/// c(alpha)/sqrt(n), c(alpha) = sqrt(-ln(alpha/2)/2).  Adequate for the
/// sample sizes used here (n >= 1e4).
double ks_critical(std::size_t n, double alpha);

struct KsResult {
  double statistic = 0.0;
  double critical = 0.0;
  std::size_t n = 0;
  bool pass = false;
};

/// One-sample KS test of `sample` against the continuous CDF `cdf`.
KsResult ks_test(std::vector<double> sample,
                 const std::function<double(double)>& cdf, double alpha);

/// Two-sample KS test; critical value c(alpha) * sqrt((n+m)/(n m)).
/// KsResult::n reports the effective size n m / (n+m) rounded down.
KsResult ks_test_two_sample(std::vector<double> a, std::vector<double> b,
                            double alpha);

struct Chi2Result {
  double statistic = 0.0;
  double critical = 0.0;
  double dof = 0.0;
  bool pass = false;
  std::string note;  ///< pooling / skipped-class remarks
};

/// Pearson chi-square goodness-of-fit of observed counts against expected
/// counts (same total).  Classes with expected count below `min_expected`
/// are pooled together (noted); classes with expected == 0 and observed == 0
/// are skipped with a note.  dof = (#classes after pooling) - 1.
Chi2Result chi2_goodness(const std::vector<double>& observed,
                         const std::vector<double>& expected, double alpha,
                         double min_expected = 5.0);

double mean(const std::vector<double>& v);
/// Standard error of the mean (sample standard deviation / sqrt(n)).
double std_error(const std::vector<double>& v);

}  // namespace starwalk
