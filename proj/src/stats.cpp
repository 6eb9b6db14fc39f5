// SPDX-License-Identifier: MIT
#include "starwalk/stats.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace starwalk {

double normal_cdf(double z) { return 0.5 * std::erfc(-z * M_SQRT1_2); }

double normal_quantile(double p) {
  if (!(p > 0.0 && p < 1.0))
    throw std::invalid_argument("normal_quantile: p must be in (0,1)");
  // Rational approximation (Acklam) ...
  static const double a[] = {-3.969683028665376e+01, 2.209460984245205e+02,
                             -2.759285104469687e+02, 1.383577518672690e+02,
                             -3.066479806614716e+01, 2.506628277459239e+00};
  static const double b[] = {-5.447609879822406e+01, 1.615858368580409e+02,
                             -1.556989798598866e+02, 6.680131188771972e+01,
                             -1.328068155288572e+01};
  static const double c[] = {-7.784894002430293e-03, -3.223964580411365e-01,
                             -2.400758277161838e+00, -2.549732539343734e+00,
                             4.374664141464968e+00,  2.938163982698783e+00};
  static const double d[] = {7.784695709041462e-03, 3.224671290700398e-01,
                             2.445134137142996e+00, 3.754408661907416e+00};
  const double plow = 0.02425;
  double x;
  if (p < plow) {
    const double q = std::sqrt(-2.0 * std::log(p));
    x = (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
        ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
  } else if (p <= 1.0 - plow) {
    const double q = p - 0.5, r = q * q;
    x = (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) *
        q /
        (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0);
  } else {
    const double q = std::sqrt(-2.0 * std::log(1.0 - p));
    x = -(((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
        ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
  }
  // ... polished by two Newton steps on Phi(x) - p.
  for (int it = 0; it < 2; ++it) {
    const double e = normal_cdf(x) - p;
    const double pdf = std::exp(-0.5 * x * x) * 0.3989422804014327;
    if (pdf > 0.0) x -= e / pdf;
  }
  return x;
}

namespace {

/// Lower incomplete gamma by power series (for x < a + 1).
double gamma_p_series(double a, double x) {
  double ap = a, sum = 1.0 / a, del = sum;
  for (int n = 0; n < 500; ++n) {
    ap += 1.0;
    del *= x / ap;
    sum += del;
    if (std::abs(del) < std::abs(sum) * 1e-16) break;
  }
  return sum * std::exp(-x + a * std::log(x) - std::lgamma(a));
}

/// Upper incomplete gamma by Lentz continued fraction (for x >= a + 1).
double gamma_q_cf(double a, double x) {
  const double tiny = 1e-300;
  double b = x + 1.0 - a, c = 1.0 / tiny, d = 1.0 / b, h = d;
  for (int i = 1; i <= 500; ++i) {
    const double an = -i * (i - a);
    b += 2.0;
    d = an * d + b;
    if (std::abs(d) < tiny) d = tiny;
    c = b + an / c;
    if (std::abs(c) < tiny) c = tiny;
    d = 1.0 / d;
    const double del = d * c;
    h *= del;
    if (std::abs(del - 1.0) < 1e-16) break;
  }
  return std::exp(-x + a * std::log(x) - std::lgamma(a)) * h;
}

}  // namespace

double gamma_p(double a, double x) {
  if (!(a > 0.0) || !(x >= 0.0))
    throw std::invalid_argument("gamma_p: need a > 0, x >= 0");
  if (x == 0.0) return 0.0;
  return x < a + 1.0 ? gamma_p_series(a, x) : 1.0 - gamma_q_cf(a, x);
}

double gamma_q(double a, double x) {
  if (!(a > 0.0) || !(x >= 0.0))
    throw std::invalid_argument("gamma_q: need a > 0, x >= 0");
  if (x == 0.0) return 1.0;
  return x < a + 1.0 ? 1.0 - gamma_p_series(a, x) : gamma_q_cf(a, x);
}

double chi2_critical(double dof, double alpha) {
  if (!(dof > 0.0) || !(alpha > 0.0 && alpha < 1.0))
    throw std::invalid_argument("chi2_critical: bad dof or alpha");
  double lo = 0.0, hi = dof + 100.0 * std::sqrt(dof) + 100.0;
  while (gamma_q(dof / 2.0, hi / 2.0) > alpha) hi *= 2.0;  // safety
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (gamma_q(dof / 2.0, mid / 2.0) > alpha) lo = mid;
    else hi = mid;
  }
  return 0.5 * (lo + hi);
}

double ks_critical(std::size_t n, double alpha) {
  if (n == 0 || !(alpha > 0.0 && alpha < 1.0))
    throw std::invalid_argument("ks_critical: bad n or alpha");
  return std::sqrt(-0.5 * std::log(alpha / 2.0)) /
         std::sqrt(static_cast<double>(n));
}

KsResult ks_test(std::vector<double> sample,
                 const std::function<double(double)>& cdf, double alpha) {
  if (sample.empty()) throw std::invalid_argument("ks_test: empty sample");
  std::sort(sample.begin(), sample.end());
  const std::size_t n = sample.size();
  double d = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double f = cdf(sample[i]);
    const double lo = f - static_cast<double>(i) / n;
    const double hi = static_cast<double>(i + 1) / n - f;
    d = std::max(d, std::max(lo, hi));
  }
  KsResult r;
  r.statistic = d;
  r.critical = ks_critical(n, alpha);
  r.n = n;
  r.pass = d < r.critical;
  return r;
}

KsResult ks_test_two_sample(std::vector<double> a, std::vector<double> b,
                            double alpha) {
  if (a.empty() || b.empty())
    throw std::invalid_argument("ks_test_two_sample: empty sample");
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  const double na = static_cast<double>(a.size());
  const double nb = static_cast<double>(b.size());
  double d = 0.0;
  std::size_t i = 0, j = 0;
  while (i < a.size() && j < b.size()) {
    const double x = std::min(a[i], b[j]);
    while (i < a.size() && a[i] <= x) ++i;
    while (j < b.size() && b[j] <= x) ++j;
    d = std::max(d, std::abs(static_cast<double>(i) / na -
                             static_cast<double>(j) / nb));
  }
  KsResult r;
  r.statistic = d;
  r.critical = std::sqrt(-0.5 * std::log(alpha / 2.0)) *
               std::sqrt((na + nb) / (na * nb));
  r.n = static_cast<std::size_t>(na * nb / (na + nb));
  r.pass = d < r.critical;
  return r;
}

Chi2Result chi2_goodness(const std::vector<double>& observed,
                         const std::vector<double>& expected, double alpha,
                         double min_expected) {
  if (observed.size() != expected.size() || observed.empty())
    throw std::invalid_argument("chi2_goodness: size mismatch");
  Chi2Result r;
  std::ostringstream note;
  double pooled_obs = 0.0, pooled_exp = 0.0;
  int classes = 0, skipped = 0, pooled = 0;
  double stat = 0.0;
  for (std::size_t i = 0; i < observed.size(); ++i) {
    if (expected[i] == 0.0 && observed[i] == 0.0) {
      ++skipped;
      continue;
    }
    if (expected[i] < min_expected) {
      pooled_obs += observed[i];
      pooled_exp += expected[i];
      ++pooled;
      continue;
    }
    const double diff = observed[i] - expected[i];
    stat += diff * diff / expected[i];
    ++classes;
  }
  if (pooled > 0) {
    if (pooled_exp > 0.0) {
      const double diff = pooled_obs - pooled_exp;
      stat += diff * diff / pooled_exp;
      ++classes;
      note << pooled << " low-expectation classes pooled; ";
    } else if (pooled_obs > 0.0) {
      note << "observations in zero-expectation classes; ";
      stat = std::numeric_limits<double>::infinity();
      ++classes;
    }
  }
  if (skipped > 0) note << skipped << " empty classes skipped; ";
  if (classes < 2) {
    r.note = note.str() + "fewer than 2 usable classes";
    r.pass = classes == 1 && stat == 0.0;
    r.statistic = stat;
    return r;
  }
  r.dof = classes - 1;
  r.statistic = stat;
  r.critical = chi2_critical(r.dof, alpha);
  r.pass = stat < r.critical;
  r.note = note.str();
  return r;
}

double mean(const std::vector<double>& v) {
  if (v.empty()) throw std::invalid_argument("mean: empty");
  double s = 0.0;
  for (double x : v) s += x;
  return s / static_cast<double>(v.size());
}

double std_error(const std::vector<double>& v) {
  if (v.size() < 2) throw std::invalid_argument("std_error: need n >= 2");
  const double m = mean(v);
  double s2 = 0.0;
  for (double x : v) s2 += (x - m) * (x - m);
  s2 /= static_cast<double>(v.size() - 1);
  return std::sqrt(s2 / static_cast<double>(v.size()));
}

}  // namespace starwalk
