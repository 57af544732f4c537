#include "antidrazin/drazin.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "antidrazin/decomp.hpp"

namespace antidrazin {

namespace {

void require_square(const ComplexMatrix& a, const char* op) {
  if (!a.square() || a.empty()) {
    throw DimensionError(std::string(op) + ": expected a nonempty square matrix, got " +
                         std::to_string(a.rows()) + "x" + std::to_string(a.cols()));
  }
}

}  // namespace

double GDrazinResiduals::max_residual() const {
  return std::max(inner, std::max(commute, nilpotency));
}

VerificationError::VerificationError(const std::string& what, GDrazinResiduals res)
    : std::runtime_error(what + " (inner=" + std::to_string(res.inner) +
                         ", commute=" + std::to_string(res.commute) +
                         ", nilpotency=" + std::to_string(res.nilpotency) + ")"),
      residuals(res) {}

namespace {

// Rank of A^k with a collapse floor: once a power has decayed to pure
// roundoff, its own sigma_max carries no scale information and the relative
// threshold would count noise as full rank.
std::size_t power_rank(const ComplexMatrix& apow, std::size_t k, double alpha,
                       const ToleranceConfig& cfg) {
  const double floor = cfg.rank_rel_tol * std::pow(std::max(alpha, 1.0), static_cast<double>(k));
  if (spectral_norm(apow) <= floor) return 0;
  return numeric_rank(apow, cfg);
}

}  // namespace

std::size_t drazin_index(const ComplexMatrix& a, const ToleranceConfig& cfg) {
  require_square(a, "drazin_index");
  const std::size_t n = a.rows();
  const double alpha = spectral_norm(a);
  ComplexMatrix power = ComplexMatrix::identity(n);
  std::size_t rank_prev = n;  // rank(A^0)
  for (std::size_t k = 0; k <= n; ++k) {
    power = power * a;  // A^{k+1}
    const std::size_t rank_next = power_rank(power, k + 1, alpha, cfg);
    if (rank_next == rank_prev) return k;
    if (rank_next > rank_prev) {
      throw NumericError("drazin_index: rank sequence increased; tolerances are inconsistent");
    }
    rank_prev = rank_next;
  }
  throw NumericError("drazin_index: rank sequence did not stabilise within the dimension");
}

GDrazinResiduals verify_gdrazin(const ComplexMatrix& a, const ComplexMatrix& b,
                                const ToleranceConfig& cfg) {
  require_square(a, "verify_gdrazin");
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw DimensionError("verify_gdrazin: candidate inverse has the wrong shape");
  }
  cfg.validate();
  const double denom = 1.0 + a.frobenius_norm();
  const ComplexMatrix ab = a * b;
  GDrazinResiduals r;
  r.inner = (b * ab - b).frobenius_norm() / denom;
  r.commute = (ab - b * a).frobenius_norm() / denom;
  r.nilpotency = matpow(a - a * ab, a.rows()).frobenius_norm() / denom;
  r.pass = r.inner <= cfg.residual_tol && r.commute <= cfg.residual_tol &&
           r.nilpotency <= cfg.residual_tol;
  return r;
}

DrazinResult drazin_oracle(const ComplexMatrix& a, const ToleranceConfig& cfg) {
  require_square(a, "drazin_oracle");
  const std::size_t k = drazin_index(a, cfg);
  const ComplexMatrix ak = matpow(a, k);
  const ComplexMatrix inverse = ak * pseudoinverse(matpow(a, 2 * k + 1), cfg) * ak;
  DrazinResult result;
  result.residuals = verify_gdrazin(a, inverse, cfg);
  if (!result.residuals.pass) {
    throw VerificationError("drazin_oracle: defining equations not met", result.residuals);
  }
  result.inverse = inverse;
  result.index = k;
  result.projector = spectral_projector(a, inverse);
  return result;
}

ComplexMatrix spectral_projector(const ComplexMatrix& a, const ComplexMatrix& ad) {
  if (a.rows() != ad.cols() || a.cols() != ad.rows()) {
    throw DimensionError("spectral_projector: shapes do not match");
  }
  return ComplexMatrix::identity(a.rows()) - a * ad;
}

ComplexMatrix cline_transfer(const ComplexMatrix& a, const ComplexMatrix& b,
                             const ComplexMatrix& abd) {
  if (a.cols() != b.rows() || b.cols() != a.rows()) {
    throw DimensionError("cline_transfer: A and B are not mutually conformable");
  }
  if (abd.rows() != a.rows() || abd.cols() != a.rows()) {
    throw DimensionError("cline_transfer: (AB)^d has the wrong shape");
  }
  return b * abd * abd * a;
}

}  // namespace antidrazin
