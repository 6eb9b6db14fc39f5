// SPDX-License-Identifier: MIT
#include "starwalk/linalg.hpp"

#include <cmath>
#include <stdexcept>

namespace starwalk {

Mat Mat::identity(int n) {
  Mat m(n, n);
  for (int i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

Mat Mat::operator*(const Mat& o) const {
  if (c_ != o.r_) throw std::invalid_argument("Mat::*: shape mismatch");
  Mat out(r_, o.c_);
  for (int i = 0; i < r_; ++i)
    for (int k = 0; k < c_; ++k) {
      const double a = (*this)(i, k);
      if (a == 0.0) continue;
      for (int j = 0; j < o.c_; ++j) out(i, j) += a * o(k, j);
    }
  return out;
}

Mat Mat::operator+(const Mat& o) const {
  if (r_ != o.r_ || c_ != o.c_) throw std::invalid_argument("Mat::+: shape mismatch");
  Mat out = *this;
  for (std::size_t i = 0; i < d_.size(); ++i) out.d_[i] += o.d_[i];
  return out;
}

Mat Mat::operator-(const Mat& o) const {
  if (r_ != o.r_ || c_ != o.c_) throw std::invalid_argument("Mat::-: shape mismatch");
  Mat out = *this;
  for (std::size_t i = 0; i < d_.size(); ++i) out.d_[i] -= o.d_[i];
  return out;
}

Mat Mat::scaled(double s) const {
  Mat out = *this;
  for (auto& v : out.d_) v *= s;
  return out;
}

Mat Mat::transposed() const {
  Mat out(c_, r_);
  for (int i = 0; i < r_; ++i)
    for (int j = 0; j < c_; ++j) out(j, i) = (*this)(i, j);
  return out;
}

double Mat::inf_norm() const {
  double best = 0.0;
  for (int i = 0; i < r_; ++i) {
    double s = 0.0;
    for (int j = 0; j < c_; ++j) s += std::abs((*this)(i, j));
    if (s > best) best = s;
  }
  return best;
}

double Mat::max_abs_diff(const Mat& o) const {
  if (r_ != o.r_ || c_ != o.c_)
    throw std::invalid_argument("Mat::max_abs_diff: shape mismatch");
  double best = 0.0;
  for (std::size_t i = 0; i < d_.size(); ++i)
    best = std::max(best, std::abs(d_[i] - o.d_[i]));
  return best;
}

namespace {

/// In-place LU with partial pivoting; returns false on exact singularity.
/// `piv` records row swaps, `sign` the permutation parity.
bool lu_factor(Mat& a, std::vector<int>& piv, double& sign) {
  const int n = a.rows();
  piv.resize(n);
  sign = 1.0;
  for (int k = 0; k < n; ++k) {
    int p = k;
    double best = std::abs(a(k, k));
    for (int i = k + 1; i < n; ++i)
      if (std::abs(a(i, k)) > best) { best = std::abs(a(i, k)); p = i; }
    piv[k] = p;
    if (best == 0.0) return false;
    if (p != k) {
      for (int j = 0; j < n; ++j) std::swap(a(k, j), a(p, j));
      sign = -sign;
    }
    const double inv = 1.0 / a(k, k);
    for (int i = k + 1; i < n; ++i) {
      const double m = a(i, k) * inv;
      a(i, k) = m;
      for (int j = k + 1; j < n; ++j) a(i, j) -= m * a(k, j);
    }
  }
  return true;
}

void lu_solve_inplace(const Mat& lu, const std::vector<int>& piv, Mat& b) {
  const int n = lu.rows();
  for (int k = 0; k < n; ++k)
    if (piv[k] != k)
      for (int j = 0; j < b.cols(); ++j) std::swap(b(k, j), b(piv[k], j));
  for (int k = 0; k < n; ++k)          // forward (unit lower)
    for (int i = k + 1; i < n; ++i)
      for (int j = 0; j < b.cols(); ++j) b(i, j) -= lu(i, k) * b(k, j);
  for (int k = n - 1; k >= 0; --k) {   // backward
    for (int j = 0; j < b.cols(); ++j) b(k, j) /= lu(k, k);
    for (int i = 0; i < k; ++i)
      for (int j = 0; j < b.cols(); ++j) b(i, j) -= lu(i, k) * b(k, j);
  }
}

}  // namespace

SolveResult solve(const Mat& a, const Mat& b) {
  if (a.rows() != a.cols() || a.rows() != b.rows())
    throw std::invalid_argument("solve: shape mismatch");
  SolveResult out;
  Mat lu = a;
  std::vector<int> piv;
  double sign = 1.0;
  if (!lu_factor(lu, piv, sign)) {
    out.singular = true;
    return out;
  }
  out.det = sign;
  for (int k = 0; k < a.rows(); ++k) out.det *= lu(k, k);
  out.x = b;
  lu_solve_inplace(lu, piv, out.x);
  Mat inv = Mat::identity(a.rows());
  lu_solve_inplace(lu, piv, inv);
  out.cond = a.inf_norm() * inv.inf_norm();
  return out;
}

double det(const Mat& a) {
  Mat lu = a;
  std::vector<int> piv;
  double sign = 1.0;
  if (!lu_factor(lu, piv, sign)) return 0.0;
  double d = sign;
  for (int k = 0; k < a.rows(); ++k) d *= lu(k, k);
  return d;
}

Mat inverse(const Mat& a) {
  SolveResult r = solve(a, Mat::identity(a.rows()));
  if (r.singular) throw std::runtime_error("inverse: singular matrix");
  return r.x;
}

}  // namespace starwalk
