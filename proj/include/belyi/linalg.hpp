#pragma once

#include <cstddef>
#include <vector>

#include "belyi/bigfloat.hpp"

namespace belyi {

// Dense row-major matrix of BigComplex.
class ComplexMatrix {
 public:
  ComplexMatrix() = default;
  ComplexMatrix(std::size_t rows, std::size_t cols, Bits prec);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  BigComplex& operator()(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
  const BigComplex& operator()(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }
  BigReal max_abs() const;

 private:
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<BigComplex> a_;
};

struct LinearSolution {
  std::vector<BigComplex> x;
  double condition = 0;  // ratio of largest to smallest pivot magnitude
};

// Gaussian elimination with partial pivoting.  A pivot below
// 10^-(digits-5) * max|A| throws SingularSystem.
LinearSolution gauss_solve(ComplexMatrix A, std::vector<BigComplex> b, long digits);

// Roots of a polynomial with complex coefficients (low-to-high), by
// Aberth iteration followed by Newton polishing at the coefficients'
// precision.
std::vector<BigComplex> polynomial_roots(const std::vector<BigComplex>& coeffs);

}  // namespace belyi
