#pragma once

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <stdexcept>
#include <vector>

namespace antidrazin {

using Complex = std::complex<double>;

class DimensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class NumericError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Dense complex matrix, row-major. Treated as an immutable value: every
/// operation returns a fresh matrix, so sharing across threads is safe.
class ComplexMatrix {
 public:
  ComplexMatrix() = default;
  ComplexMatrix(std::size_t rows, std::size_t cols);  // zero-filled
  ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<Complex> entries);
  ComplexMatrix(std::initializer_list<std::initializer_list<Complex>> init);

  static ComplexMatrix identity(std::size_t n);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool empty() const { return rows_ == 0 || cols_ == 0; }
  bool square() const { return rows_ == cols_; }

  Complex& operator()(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
  const Complex& operator()(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }

  const std::vector<Complex>& entries() const { return a_; }

  ComplexMatrix adjoint() const;
  double frobenius_norm() const;
  double max_abs() const;
  bool is_exactly_zero() const;

  ComplexMatrix block(std::size_t i0, std::size_t j0, std::size_t nrows, std::size_t ncols) const;
  void set_block(std::size_t i0, std::size_t j0, const ComplexMatrix& b);

  ComplexMatrix& operator+=(const ComplexMatrix& rhs);
  ComplexMatrix& operator-=(const ComplexMatrix& rhs);

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Complex> a_;
};

ComplexMatrix operator+(ComplexMatrix lhs, const ComplexMatrix& rhs);
ComplexMatrix operator-(ComplexMatrix lhs, const ComplexMatrix& rhs);
ComplexMatrix operator-(const ComplexMatrix& m);
ComplexMatrix operator*(const ComplexMatrix& lhs, const ComplexMatrix& rhs);
ComplexMatrix operator*(Complex s, const ComplexMatrix& m);
ComplexMatrix operator*(const ComplexMatrix& m, Complex s);

/// Shape-checked product; operator* forwards here.
ComplexMatrix matmul(const ComplexMatrix& a, const ComplexMatrix& b);

/// A^k for square A, k >= 0, with A^0 = I.
ComplexMatrix matpow(const ComplexMatrix& a, std::size_t k);

/// Assembles [[b11, b12],[b21, b22]] from conformable blocks.
ComplexMatrix block2x2(const ComplexMatrix& b11, const ComplexMatrix& b12,
                       const ComplexMatrix& b21, const ComplexMatrix& b22);

/// Every numeric threshold used by the library, in one place.
/// rank_rel_tol is relative to the largest singular value, so rank decisions
/// do not flip when the input is rescaled.
struct ToleranceConfig {
  double rank_rel_tol = 1e-10;  // singular values below rank_rel_tol * sigma_max count as zero
  double zero_abs_tol = 1e-10;  // hypothesis defects, against a product-of-norms scale
  double residual_tol = 1e-8;   // defining-equation residuals

  void validate() const;  // throws std::invalid_argument unless all lie in (0, 1)
};

}  // namespace antidrazin
