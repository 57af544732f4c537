#pragma once

#include <cstddef>

#include "antidrazin/matrix.hpp"

namespace antidrazin {

/// Residuals of the three defining equations for a candidate inverse B of A,
/// Frobenius norms relative to 1 + ||A||_F:
///   inner:      ||B A B - B||
///   commute:    ||A B - B A||
///   nilpotency: ||(A - A^2 B)^n||, n = dimension
struct GDrazinResiduals {
  double inner = 0.0;
  double commute = 0.0;
  double nilpotency = 0.0;
  bool pass = false;

  double max_residual() const;
};

class VerificationError : public std::runtime_error {
 public:
  VerificationError(const std::string& what, GDrazinResiduals res);
  GDrazinResiduals residuals;
};

struct DrazinResult {
  ComplexMatrix inverse;    // A^D
  std::size_t index = 0;    // smallest k with rank(A^k) == rank(A^{k+1})
  ComplexMatrix projector;  // I - A * A^D
  GDrazinResiduals residuals;
};

/// Index by rank stabilisation of I, A, A^2, ...; throws NumericError if the
/// rank sequence fails to stabilise within the dimension (cannot happen in
/// exact arithmetic).
std::size_t drazin_index(const ComplexMatrix& a, const ToleranceConfig& cfg);

/// Brute-force Drazin inverse A^D = A^k (A^{2k+1})^+ A^k with k = index.
/// Built from powers and the pseudoinverse only, so it is independent of all
/// block representations and serves as their ground truth. The result is
/// verified before being returned.
DrazinResult drazin_oracle(const ComplexMatrix& a, const ToleranceConfig& cfg);

GDrazinResiduals verify_gdrazin(const ComplexMatrix& a, const ComplexMatrix& b,
                                const ToleranceConfig& cfg);

/// I - A * Ad.
ComplexMatrix spectral_projector(const ComplexMatrix& a, const ComplexMatrix& ad);

/// Cline transfer: from (AB)^d to (BA)^d = B ((AB)^d)^2 A.
ComplexMatrix cline_transfer(const ComplexMatrix& a, const ComplexMatrix& b,
                             const ComplexMatrix& abd);

}  // namespace antidrazin
