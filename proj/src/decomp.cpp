#include "antidrazin/decomp.hpp"

#include <Eigen/Dense>
#include <Eigen/SVD>
#include <cmath>

namespace antidrazin {

namespace {

using EigenCMat =
    Eigen::Matrix<std::complex<double>, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

EigenCMat to_eigen(const ComplexMatrix& a) {
  return Eigen::Map<const EigenCMat>(a.entries().data(), static_cast<Eigen::Index>(a.rows()),
                                     static_cast<Eigen::Index>(a.cols()));
}

ComplexMatrix from_eigen(const EigenCMat& m) {
  ComplexMatrix r(static_cast<std::size_t>(m.rows()), static_cast<std::size_t>(m.cols()));
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j)
      r(static_cast<std::size_t>(i), static_cast<std::size_t>(j)) = m(i, j);
  return r;
}

Eigen::JacobiSVD<EigenCMat> jacobi_svd(const ComplexMatrix& a) {
  if (a.empty()) throw DimensionError("svd: matrix is empty");
  Eigen::JacobiSVD<EigenCMat> dec(to_eigen(a), Eigen::ComputeThinU | Eigen::ComputeThinV);
  for (Eigen::Index k = 0; k < dec.singularValues().size(); ++k) {
    if (!std::isfinite(dec.singularValues()(k))) {
      throw NumericError("svd: decomposition produced a non-finite singular value");
    }
  }
  return dec;
}

std::size_t rank_from_values(const Eigen::VectorXd& sv, const ToleranceConfig& cfg) {
  if (sv.size() == 0) return 0;
  const double smax = sv(0);
  if (smax == 0.0) return 0;
  const double cut = cfg.rank_rel_tol * smax;
  std::size_t r = 0;
  for (Eigen::Index k = 0; k < sv.size(); ++k)
    if (sv(k) > cut) ++r;
  return r;
}

}  // namespace

SvdResult svd(const ComplexMatrix& a) {
  auto dec = jacobi_svd(a);
  SvdResult out;
  out.u = from_eigen(dec.matrixU());
  out.v = from_eigen(dec.matrixV());
  out.singular_values.assign(dec.singularValues().data(),
                             dec.singularValues().data() + dec.singularValues().size());
  return out;
}

std::size_t numeric_rank(const ComplexMatrix& a, const ToleranceConfig& cfg) {
  cfg.validate();
  return rank_from_values(jacobi_svd(a).singularValues(), cfg);
}

double spectral_norm(const ComplexMatrix& a) {
  const auto sv = jacobi_svd(a).singularValues();
  return sv.size() == 0 ? 0.0 : sv(0);
}

ComplexMatrix pseudoinverse(const ComplexMatrix& a, const ToleranceConfig& cfg) {
  cfg.validate();
  auto dec = jacobi_svd(a);
  const auto& sv = dec.singularValues();
  const std::size_t rank = rank_from_values(sv, cfg);
  EigenCMat vmat = dec.matrixV();
  EigenCMat umat = dec.matrixU();
  EigenCMat pinv = EigenCMat::Zero(vmat.rows(), umat.rows());
  for (std::size_t k = 0; k < rank; ++k) {
    const Eigen::Index ek = static_cast<Eigen::Index>(k);
    pinv += (1.0 / sv(ek)) * vmat.col(ek) * umat.col(ek).adjoint();
  }
  return from_eigen(pinv);
}

}  // namespace antidrazin
