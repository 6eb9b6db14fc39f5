// SPDX-License-Identifier: MIT
#pragma once

#include <cstddef>
#include <vector>

namespace starwalk {

/// Dense row-major n x n matrix.  Sized for star graphs (n = number of
/// edges, tens at most), so plain LU with partial pivoting covers every
/// need here without an external linear-algebra dependency.
class Mat {
 public:
  Mat() = default;
  Mat(int rows, int cols, double fill = 0.0)
      : r_(rows), c_(cols), d_(static_cast<std::size_t>(rows) * cols, fill) {}

  static Mat identity(int n);

  int rows() const { return r_; }
  int cols() const { return c_; }
  double& operator()(int i, int j) { return d_[static_cast<std::size_t>(i) * c_ + j]; }
  double operator()(int i, int j) const { return d_[static_cast<std::size_t>(i) * c_ + j]; }

  Mat operator*(const Mat& o) const;
  Mat operator+(const Mat& o) const;
  Mat operator-(const Mat& o) const;
  Mat scaled(double s) const;
  Mat transposed() const;

  double inf_norm() const;                    ///< max absolute row sum
  double max_abs_diff(const Mat& o) const;    ///< entrywise sup distance

 private:
  int r_ = 0, c_ = 0;
  std::vector<double> d_;
};

/// Solution of A X = B by LU with partial pivoting, plus the determinant of
/// A and the condition-number estimate ||A||_inf * ||A^{-1}||_inf (computed
/// from the explicit inverse; matrices here are tiny).
struct SolveResult {
  Mat x;
  double det = 0.0;
  double cond = 0.0;
  bool singular = false;
};

SolveResult solve(const Mat& a, const Mat& b);
double det(const Mat& a);
Mat inverse(const Mat& a);  ///< throws std::runtime_error if singular

}  // namespace starwalk
