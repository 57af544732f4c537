#pragma once

#include <vector>

#include "antidrazin/matrix.hpp"

namespace antidrazin {

/// Thin SVD, A = U * diag(singular_values) * V^H, values descending.
struct SvdResult {
  ComplexMatrix u;
  std::vector<double> singular_values;
  ComplexMatrix v;
};

SvdResult svd(const ComplexMatrix& a);

/// Count of singular values above rank_rel_tol * sigma_max (0 when sigma_max == 0).
std::size_t numeric_rank(const ComplexMatrix& a, const ToleranceConfig& cfg);

/// Largest singular value.
double spectral_norm(const ComplexMatrix& a);

/// Moore-Penrose pseudoinverse with the same rank cut as numeric_rank.
ComplexMatrix pseudoinverse(const ComplexMatrix& a, const ToleranceConfig& cfg);

}  // namespace antidrazin
