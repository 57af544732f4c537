#include "antidrazin/matrix.hpp"

#include <cmath>
#include <utility>

namespace antidrazin {

namespace {

void require_finite(const std::vector<Complex>& entries) {
  for (const Complex& z : entries) {
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
      throw NumericError("matrix entry is not finite");
    }
  }
}

void require_same_shape(const ComplexMatrix& a, const ComplexMatrix& b, const char* op) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw DimensionError(std::string(op) + ": shape mismatch (" + std::to_string(a.rows()) +
                         "x" + std::to_string(a.cols()) + " vs " + std::to_string(b.rows()) +
                         "x" + std::to_string(b.cols()) + ")");
  }
}

}  // namespace

ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), a_(rows * cols, Complex(0.0, 0.0)) {}

ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<Complex> entries)
    : rows_(rows), cols_(cols), a_(std::move(entries)) {
  if (a_.size() != rows_ * cols_) {
    throw DimensionError("entry count does not match rows*cols");
  }
  require_finite(a_);
}

ComplexMatrix::ComplexMatrix(std::initializer_list<std::initializer_list<Complex>> init) {
  rows_ = init.size();
  cols_ = rows_ == 0 ? 0 : init.begin()->size();
  a_.reserve(rows_ * cols_);
  for (const auto& row : init) {
    if (row.size() != cols_) throw DimensionError("ragged initializer rows");
    a_.insert(a_.end(), row.begin(), row.end());
  }
  require_finite(a_);
}

ComplexMatrix ComplexMatrix::identity(std::size_t n) {
  ComplexMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = Complex(1.0, 0.0);
  return m;
}

ComplexMatrix ComplexMatrix::adjoint() const {
  ComplexMatrix r(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) r(j, i) = std::conj((*this)(i, j));
  return r;
}

double ComplexMatrix::frobenius_norm() const {
  double s = 0.0;
  for (const Complex& z : a_) s += std::norm(z);
  return std::sqrt(s);
}

double ComplexMatrix::max_abs() const {
  double m = 0.0;
  for (const Complex& z : a_) m = std::max(m, std::abs(z));
  return m;
}

bool ComplexMatrix::is_exactly_zero() const {
  for (const Complex& z : a_)
    if (z != Complex(0.0, 0.0)) return false;
  return true;
}

ComplexMatrix ComplexMatrix::block(std::size_t i0, std::size_t j0, std::size_t nrows,
                                   std::size_t ncols) const {
  if (i0 + nrows > rows_ || j0 + ncols > cols_) throw DimensionError("block out of range");
  ComplexMatrix r(nrows, ncols);
  for (std::size_t i = 0; i < nrows; ++i)
    for (std::size_t j = 0; j < ncols; ++j) r(i, j) = (*this)(i0 + i, j0 + j);
  return r;
}

void ComplexMatrix::set_block(std::size_t i0, std::size_t j0, const ComplexMatrix& b) {
  if (i0 + b.rows() > rows_ || j0 + b.cols() > cols_) throw DimensionError("block out of range");
  for (std::size_t i = 0; i < b.rows(); ++i)
    for (std::size_t j = 0; j < b.cols(); ++j) (*this)(i0 + i, j0 + j) = b(i, j);
}

ComplexMatrix& ComplexMatrix::operator+=(const ComplexMatrix& rhs) {
  require_same_shape(*this, rhs, "add");
  for (std::size_t k = 0; k < a_.size(); ++k) a_[k] += rhs.a_[k];
  return *this;
}

ComplexMatrix& ComplexMatrix::operator-=(const ComplexMatrix& rhs) {
  require_same_shape(*this, rhs, "subtract");
  for (std::size_t k = 0; k < a_.size(); ++k) a_[k] -= rhs.a_[k];
  return *this;
}

ComplexMatrix operator+(ComplexMatrix lhs, const ComplexMatrix& rhs) { return lhs += rhs; }
ComplexMatrix operator-(ComplexMatrix lhs, const ComplexMatrix& rhs) { return lhs -= rhs; }

ComplexMatrix operator-(const ComplexMatrix& m) {
  ComplexMatrix r(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) r(i, j) = -m(i, j);
  return r;
}

ComplexMatrix matmul(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.cols() != b.rows()) {
    throw DimensionError("matmul: inner dimensions disagree (" + std::to_string(a.cols()) +
                         " vs " + std::to_string(b.rows()) + ")");
  }
  ComplexMatrix r(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const Complex aik = a(i, k);
      if (aik == Complex(0.0, 0.0)) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) r(i, j) += aik * b(k, j);
    }
  }
  return r;
}

ComplexMatrix operator*(const ComplexMatrix& lhs, const ComplexMatrix& rhs) {
  return matmul(lhs, rhs);
}

ComplexMatrix operator*(Complex s, const ComplexMatrix& m) {
  ComplexMatrix r(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) r(i, j) = s * m(i, j);
  return r;
}

ComplexMatrix operator*(const ComplexMatrix& m, Complex s) { return s * m; }

ComplexMatrix matpow(const ComplexMatrix& a, std::size_t k) {
  if (!a.square()) throw DimensionError("matpow: matrix must be square");
  ComplexMatrix result = ComplexMatrix::identity(a.rows());
  ComplexMatrix base = a;
  while (k > 0) {
    if (k & 1u) result = result * base;
    k >>= 1u;
    if (k > 0) base = base * base;
  }
  return result;
}

ComplexMatrix block2x2(const ComplexMatrix& b11, const ComplexMatrix& b12,
                       const ComplexMatrix& b21, const ComplexMatrix& b22) {
  if (b11.rows() != b12.rows() || b21.rows() != b22.rows() || b11.cols() != b21.cols() ||
      b12.cols() != b22.cols()) {
    throw DimensionError("block2x2: blocks are not conformable");
  }
  ComplexMatrix r(b11.rows() + b21.rows(), b11.cols() + b12.cols());
  r.set_block(0, 0, b11);
  r.set_block(0, b11.cols(), b12);
  r.set_block(b11.rows(), 0, b21);
  r.set_block(b11.rows(), b11.cols(), b22);
  return r;
}

void ToleranceConfig::validate() const {
  auto check = [](double v, const char* name) {
    if (!(v > 0.0) || !(v < 1.0)) {
      throw std::invalid_argument(std::string(name) + " must lie strictly between 0 and 1");
    }
  };
  check(rank_rel_tol, "rank_rel_tol");
  check(zero_abs_tol, "zero_abs_tol");
  check(residual_tol, "residual_tol");
}

}  // namespace antidrazin
