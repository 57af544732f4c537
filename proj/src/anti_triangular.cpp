#include "antidrazin/anti_triangular.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <utility>

#include "antidrazin/decomp.hpp"

namespace antidrazin {

namespace {

long extra_terms(const FormulaOptions& opt) {
  return opt.extra_series_terms > 0 ? static_cast<long>(opt.extra_series_terms) : 0;
}

// pows[k] = A^k, k = 0..kmax.
std::vector<ComplexMatrix> powers_up_to(const ComplexMatrix& a, std::size_t kmax) {
  std::vector<ComplexMatrix> pows;
  pows.reserve(kmax + 1);
  pows.push_back(ComplexMatrix::identity(a.rows()));
  for (std::size_t k = 1; k <= kmax; ++k) pows.push_back(pows.back() * a);
  return pows;
}

// Sum of term(i) for i = lo..hi; empty when hi < lo. The bounds are the exact
// nilpotency cutoffs: summing past them would only accumulate roundoff that
// high inverse powers then amplify.
template <typename Term>
ComplexMatrix series_sum(std::size_t n, long lo, long hi, Term&& term) {
  ComplexMatrix acc(n, n);
  for (long i = lo; i <= hi; ++i) acc += term(static_cast<std::size_t>(i));
  return acc;
}

void verify_result(const char* what, const ComplexMatrix& m, const ComplexMatrix& candidate,
                   const ToleranceConfig& cfg) {
  const GDrazinResiduals res = verify_gdrazin(m, candidate, cfg);
  if (!res.pass) {
    throw VerificationError(std::string(what) + ": result fails the defining equations", res);
  }
}

double condition_scale(const ComplexMatrix& e, const ComplexMatrix& f) {
  const double nf = 1.0 + f.frobenius_norm();
  return (1.0 + e.frobenius_norm()) * nf * nf;
}

}  // namespace

AntiTriangularInput::AntiTriangularInput(ComplexMatrix e_in, ComplexMatrix f_in,
                                         ToleranceConfig cfg_in)
    : e(std::move(e_in)), f(std::move(f_in)), cfg(cfg_in) {
  if (!e.square() || e.empty()) throw DimensionError("AntiTriangularInput: E must be nonempty square");
  if (f.rows() != e.rows() || f.cols() != e.cols()) {
    throw DimensionError("AntiTriangularInput: F must have the same dimension as E");
  }
  cfg.validate();
}

ConditionError::ConditionError(const std::string& what, std::vector<ConditionReport> reps)
    : std::runtime_error([&] {
        std::string msg = what;
        for (const auto& r : reps) {
          msg += "; " + r.condition_name + " defect " + std::to_string(r.defect_norm) +
                 (r.holds ? " (holds)" : " (violated)");
        }
        return msg;
      }()),
      reports(std::move(reps)) {}

ComplexMatrix BlockQuadruple::assemble() const { return block2x2(b11, b12, b21, b22); }

ComplexMatrix assemble_anti_triangular(const ComplexMatrix& e, const ComplexMatrix& f) {
  const std::size_t n = e.rows();
  return block2x2(e, ComplexMatrix::identity(n), f, ComplexMatrix(n, n));
}

ComplexMatrix assemble_flipped(const ComplexMatrix& e, const ComplexMatrix& f) {
  const std::size_t n = e.rows();
  return block2x2(e, f, ComplexMatrix::identity(n), ComplexMatrix(n, n));
}

ComplexMatrix assemble_second_order(const ComplexMatrix& e, const ComplexMatrix& f) {
  const std::size_t n = e.rows();
  return block2x2(e, -f, -ComplexMatrix::identity(n), ComplexMatrix(n, n));
}

std::array<ConditionReport, 2> check_t23(const AntiTriangularInput& in) {
  const double tol = in.cfg.zero_abs_tol * condition_scale(in.e, in.f);
  const ComplexMatrix ef = in.e * in.f;
  const double d1 = (ef * in.f).frobenius_norm();
  const double d2 = (ef * in.e).frobenius_norm();
  return {ConditionReport{"EF^2", d1, d1 <= tol}, ConditionReport{"EFE", d2, d2 <= tol}};
}

std::array<ConditionReport, 2> check_t26(const AntiTriangularInput& in) {
  const double tol = in.cfg.zero_abs_tol * condition_scale(in.e, in.f);
  const ComplexMatrix fpi = drazin_oracle(in.f, in.cfg).projector;
  const ComplexMatrix fpi_ef = fpi * in.e * in.f;
  const double d1 = (fpi_ef * in.f).frobenius_norm();
  const double d2 = (fpi_ef * in.e).frobenius_norm();
  return {ConditionReport{"Fpi*EF^2", d1, d1 <= tol}, ConditionReport{"Fpi*EFE", d2, d2 <= tol}};
}

ComplexMatrix triangular_drazin(const ComplexMatrix& a, const ComplexMatrix& b,
                                const ComplexMatrix& c, const ToleranceConfig& cfg,
                                const FormulaOptions& opt) {
  if (!a.square() || a.empty() || !b.square() || b.empty()) {
    throw DimensionError("triangular_drazin: A and B must be nonempty square");
  }
  if (c.rows() != b.rows() || c.cols() != a.cols()) {
    throw DimensionError("triangular_drazin: C must be rows(B) x cols(A)");
  }
  const DrazinResult ra = drazin_oracle(a, cfg);
  const DrazinResult rb = drazin_oracle(b, cfg);
  const long x = extra_terms(opt);
  const long hi_a = static_cast<long>(ra.index) - 1 + x;  // A^i A^pi = 0 for i >= index(A)
  const long hi_b = static_cast<long>(rb.index) - 1 + x;  // B^pi B^i = 0 for i >= index(B)
  const std::size_t cap = std::max(ra.index, rb.index) + static_cast<std::size_t>(x);
  const auto ap = powers_up_to(a, cap);
  const auto adp = powers_up_to(ra.inverse, cap + 2);
  const auto bp = powers_up_to(b, cap);
  const auto bdp = powers_up_to(rb.inverse, cap + 2);

  // X = (B^d)^2 (sum (B^d)^i C A^i) A^pi + B^pi (sum B^i C (A^d)^i) (A^d)^2 - B^d C A^d,
  // with the projectors folded into each summand so the cutoff applies term by term.
  ComplexMatrix xacc(b.rows(), a.cols());
  for (long i = 0; i <= hi_a; ++i) {
    const auto k = static_cast<std::size_t>(i);
    xacc += bdp[k + 2] * c * (ap[k] * ra.projector);
  }
  for (long i = 0; i <= hi_b; ++i) {
    const auto k = static_cast<std::size_t>(i);
    xacc += (rb.projector * bp[k]) * c * adp[k + 2];
  }
  xacc -= rb.inverse * c * ra.inverse;

  const ComplexMatrix result =
      block2x2(ra.inverse, ComplexMatrix(a.rows(), b.cols()), xacc, rb.inverse);
  if (opt.verify) {
    const ComplexMatrix m = block2x2(a, ComplexMatrix(a.rows(), b.cols()), c, b);
    verify_result("triangular_drazin", m, result, cfg);
  }
  return result;
}

ComplexMatrix additive_drazin(const ComplexMatrix& p, const ComplexMatrix& q,
                              const ToleranceConfig& cfg, const FormulaOptions& opt) {
  if (!p.square() || p.empty() || p.rows() != q.rows() || p.cols() != q.cols()) {
    throw DimensionError("additive_drazin: P and Q must be nonempty square of equal size");
  }
  const double np = 1.0 + p.frobenius_norm();
  const double nq = 1.0 + q.frobenius_norm();
  const double d1 = (p * q * q).frobenius_norm();
  const double d2 = (p * q * p).frobenius_norm();
  ConditionReport r1{"PQ^2", d1, d1 <= cfg.zero_abs_tol * np * nq * nq};
  ConditionReport r2{"PQP", d2, d2 <= cfg.zero_abs_tol * np * np * nq};
  if (!r1.holds || !r2.holds) {
    throw ConditionError("additive_drazin: hypotheses PQ^2 = 0, PQP = 0 do not hold", {r1, r2});
  }

  const std::size_t n = p.rows();
  const DrazinResult rp = drazin_oracle(p, cfg);
  const DrazinResult rq = drazin_oracle(q, cfg);
  const long x = extra_terms(opt);
  const long hi_p = static_cast<long>(rp.index) - 1 + x;  // P^i P^pi = 0 for i >= index(P)
  const long hi_q = static_cast<long>(rq.index) - 1 + x;  // Q^pi Q^i = 0 for i >= index(Q)
  const std::size_t cap = std::max(rp.index, rq.index) + static_cast<std::size_t>(x);
  const auto pp = powers_up_to(p, cap + 1);
  const auto pdp = powers_up_to(rp.inverse, cap + 2);
  const auto qp = powers_up_to(q, cap);
  const auto qdp = powers_up_to(rq.inverse, cap + 3);

  ComplexMatrix acc(n, n);
  for (long i = 0; i <= hi_q; ++i) {
    const auto k = static_cast<std::size_t>(i);
    acc += (rq.projector * qp[k]) * pdp[k + 1];
    acc += (rq.projector * qp[k]) * pdp[k + 2] * q;
  }
  for (long i = 0; i <= hi_p; ++i) {
    const auto k = static_cast<std::size_t>(i);
    acc += qdp[k + 1] * (pp[k] * rp.projector);
  }
  for (long i = 0; i <= hi_p - 1; ++i) {
    const auto k = static_cast<std::size_t>(i);
    acc += qdp[k + 3] * (pp[k + 1] * rp.projector) * q;
  }
  acc -= rq.inverse * rp.inverse * q;
  acc -= qdp[2] * (p * rp.inverse) * q;

  if (opt.verify) verify_result("additive_drazin", p + q, acc, cfg);
  return acc;
}

BlockQuadruple anti_triangular_drazin_t23(const AntiTriangularInput& in,
                                          const FormulaOptions& opt) {
  const auto reports = check_t23(in);
  if (!reports[0].holds || !reports[1].holds) {
    throw ConditionError("anti_triangular_drazin_t23: hypotheses EF^2 = 0, EFE = 0 do not hold",
                         {reports.begin(), reports.end()});
  }
  const ComplexMatrix& e = in.e;
  const ComplexMatrix& f = in.f;
  const std::size_t n = in.n();
  const DrazinResult re = drazin_oracle(e, in.cfg);
  const DrazinResult rf = drazin_oracle(f, in.cfg);
  const ComplexMatrix& ed = re.inverse;
  const ComplexMatrix& epi = re.projector;
  const ComplexMatrix& fd = rf.inverse;
  const ComplexMatrix& fpi = rf.projector;

  const long s = static_cast<long>(re.index);
  const long t = static_cast<long>(rf.index);
  const long x = extra_terms(opt);
  // F^{i+shift} F^pi vanishes once i + shift reaches index(F).
  const auto fcut = [&](long shift) { return t - 1 - shift + x; };
  // E^{a*i+b} E^pi vanishes once a*i + b reaches index(E).
  const auto ecut = [&](long a, long b) {
    const long num = s - 1 - b;
    return (num < 0 ? -1 : num / a) + x;
  };

  const auto cap = static_cast<std::size_t>(std::max(s, t) + 3 + x);
  const auto ep = powers_up_to(e, 2 * cap + 3);
  const auto edp = powers_up_to(ed, 2 * cap + 5);
  const auto fp = powers_up_to(f, cap + 1);
  const auto fdp = powers_up_to(fd, cap + 3);
  const ComplexMatrix ffd = f * fd;
  const ComplexMatrix ffpi = f * fpi;

  ComplexMatrix gamma = ed + edp[3] * f - fd * ed * f - fdp[2] * ep[2] * ed * f - ffd * ed +
                        fd * e * epi + fdp[2] * e * f - ffd * edp[3] * f +
                        fdp[3] * ep[3] * epi * f;
  gamma += series_sum(n, 1, fcut(0), [&](std::size_t i) { return fp[i] * fpi * ep[2 * i + 1]; });
  gamma +=
      series_sum(n, 1, ecut(2, 1), [&](std::size_t i) { return fdp[i + 1] * ep[2 * i + 1] * epi; });
  gamma +=
      series_sum(n, 1, fcut(0), [&](std::size_t i) { return fp[i] * fpi * ep[2 * i] * ed * f; });
  gamma += series_sum(n, 1, ecut(2, 3),
                      [&](std::size_t i) { return fdp[i + 3] * ep[2 * i + 3] * epi * f; });

  ComplexMatrix delta = edp[2] + edp[4] * f - fd * edp[2] * f - fdp[2] * e * ed * f -
                        ffd * edp[2] + fd * epi - ffd * edp[4] * f + fdp[3] * ep[2] * epi * f;
  delta +=
      series_sum(n, 1, fcut(0), [&](std::size_t i) { return fp[i] * fpi * ep[2 * i + 1] * ed; });
  delta +=
      series_sum(n, 1, ecut(2, 0), [&](std::size_t i) { return fdp[i + 1] * ep[2 * i] * epi; });
  delta += series_sum(n, 1, fcut(0),
                      [&](std::size_t i) { return fp[i] * fpi * ep[2 * i - 1] * ed * f; });
  delta += series_sum(n, 1, ecut(2, 2),
                      [&](std::size_t i) { return fdp[i + 3] * ep[2 * i + 2] * epi * f; });

  ComplexMatrix lambda = ffpi * edp[2] + ffd * epi + ffpi * edp[4] * f +
                         fdp[2] * ep[2] * epi * f - ffd * edp[2] * f - fd * e * ed * f;
  lambda +=
      series_sum(n, 1, fcut(1), [&](std::size_t i) { return fp[i + 1] * fpi * edp[2 * i + 2]; });
  lambda += series_sum(n, 1, ecut(2, 0), [&](std::size_t i) { return fdp[i] * ep[2 * i] * epi; });
  lambda += series_sum(n, 1, fcut(1),
                       [&](std::size_t i) { return fp[i + 1] * fpi * edp[2 * i + 4] * f; });
  lambda += series_sum(n, 1, ecut(2, 2),
                       [&](std::size_t i) { return fdp[i + 2] * ep[2 * i + 2] * epi * f; });

  ComplexMatrix xi = -(ffd * edp[3] * f) - fd * ed * f + ffpi * edp[3] - ffd * ed +
                     ffpi * edp[5] * f - fdp[2] * ep[2] * ed * f + fdp[2] * e * f;
  xi += series_sum(n, 1, fcut(1), [&](std::size_t i) { return fp[i + 1] * fpi * edp[2 * i + 3]; });
  xi += series_sum(n, 1, ecut(2, -1), [&](std::size_t i) { return fdp[i] * ep[2 * i - 1] * epi; });
  xi += series_sum(n, 1, fcut(1),
                   [&](std::size_t i) { return fp[i + 1] * fpi * edp[2 * i + 5] * f; });
  xi += series_sum(n, 1, ecut(2, 1),
                   [&](std::size_t i) { return fdp[i + 2] * ep[2 * i + 1] * epi * f; });

  BlockQuadruple out{std::move(gamma), std::move(delta), std::move(lambda), std::move(xi), "t23"};
  if (opt.verify) {
    verify_result("anti_triangular_drazin_t23", assemble_anti_triangular(e, f), out.assemble(),
                  in.cfg);
  }
  return out;
}

T26Result anti_triangular_drazin_t26(const AntiTriangularInput& in, const FormulaOptions& opt) {
  const auto reports = check_t26(in);
  if (!reports[0].holds || !reports[1].holds) {
    throw ConditionError(
        "anti_triangular_drazin_t26: hypotheses Fpi*EF^2 = 0, Fpi*EFE = 0 do not hold",
        {reports.begin(), reports.end()});
  }
  const ComplexMatrix& e = in.e;
  const ComplexMatrix& f = in.f;
  const std::size_t n = in.n();
  const DrazinResult re = drazin_oracle(e, in.cfg);
  const DrazinResult rf = drazin_oracle(f, in.cfg);
  const ComplexMatrix& ed = re.inverse;
  const ComplexMatrix& fd = rf.inverse;
  const ComplexMatrix& fpi = rf.projector;

  // Every series here carries F^i F^pi or F^{i+1} F^pi, so only the index of F
  // bounds the truncation.
  const long t = static_cast<long>(rf.index);
  const long x = extra_terms(opt);
  const long hi0 = t - 1 + x;  // series in F^i F^pi
  const long hi1 = t - 2 + x;  // series in F^{i+1} F^pi
  const auto cap = static_cast<std::size_t>(t + 3 + x);
  const auto ep = powers_up_to(e, 2 * cap + 1);
  const auto edp = powers_up_to(ed, 2 * cap + 5);
  const auto fp = powers_up_to(f, cap + 1);
  const ComplexMatrix ffd = f * fd;
  const ComplexMatrix ffpi = f * fpi;

  // q1..q8 are the bracketed factors of the four block products, in order of
  // first appearance; several recur across blocks.
  ComplexMatrix q1 = fpi * ed + fpi * edp[3] * ffpi + ffpi * edp[3] + ffpi * edp[5] * ffpi;
  q1 += series_sum(n, 1, hi1, [&](std::size_t i) { return fp[i + 1] * fpi * edp[2 * i + 3]; });
  q1 += series_sum(n, 1, hi1,
                   [&](std::size_t i) { return fp[i + 1] * fpi * edp[2 * i + 5] * ffpi; });

  ComplexMatrix q2 = fpi * e * ed + fpi * edp[2] * ffpi + ffpi * edp[2] + ffpi * edp[4] * ffpi;
  q2 += series_sum(n, 1, hi1, [&](std::size_t i) { return fp[i + 1] * fpi * edp[2 * i + 2]; });
  q2 += series_sum(n, 1, hi1,
                   [&](std::size_t i) { return fp[i + 1] * fpi * edp[2 * i + 4] * ffpi; });

  ComplexMatrix q3 = fpi * e * ed + fpi * edp[2] * ffpi + ffpi * edp[2] + ffpi * edp[4] * ffpi -
                     fpi * ed * fpi * e - fpi * edp[3] * ffpi * e - ffpi * edp[3] * fpi * e -
                     ffpi * edp[5] * ffpi * e;
  q3 += series_sum(n, 1, hi1, [&](std::size_t i) { return fp[i + 1] * fpi * edp[2 * i + 2]; });
  q3 += series_sum(n, 1, hi1,
                   [&](std::size_t i) { return fp[i + 1] * fpi * edp[2 * i + 4] * ffpi; });
  q3 -= series_sum(n, 1, hi1,
                   [&](std::size_t i) { return fp[i + 1] * fpi * edp[2 * i + 3] * fpi * e; });
  q3 -= series_sum(n, 1, hi1,
                   [&](std::size_t i) { return fp[i + 1] * fpi * edp[2 * i + 5] * ffpi * e; });

  ComplexMatrix q4 = fpi * ed + fpi * edp[3] * ffpi;
  q4 += series_sum(n, 1, hi0, [&](std::size_t i) { return fp[i] * fpi * ep[2 * i + 1]; });
  q4 += series_sum(n, 1, hi0, [&](std::size_t i) { return fp[i] * fpi * ep[2 * i] * ed * ffpi; });

  ComplexMatrix q5 =
      fpi * ed * fpi + fpi * edp[3] * ffpi + ffpi * edp[3] * fpi + ffpi * edp[5] * ffpi;
  q5 += series_sum(n, 1, hi1,
                   [&](std::size_t i) { return fp[i + 1] * fpi * edp[2 * i + 3] * fpi; });
  q5 += series_sum(n, 1, hi1,
                   [&](std::size_t i) { return fp[i + 1] * fpi * edp[2 * i + 5] * ffpi; });

  ComplexMatrix q6 = fpi * edp[2] * fpi + fpi * edp[4] * ffpi;
  q6 += series_sum(n, 1, hi0,
                   [&](std::size_t i) { return fp[i] * fpi * ep[2 * i + 1] * fpi * ed * fpi; });
  q6 += series_sum(n, 1, hi0,
                   [&](std::size_t i) { return fp[i] * fpi * ep[2 * i - 1] * fpi * ed * ffpi; });

  ComplexMatrix q7 = ffpi * edp[2] + ffpi * edp[4] * ffpi;
  q7 += series_sum(n, 1, hi1,
                   [&](std::size_t i) { return fp[i + 1] * fpi * ep[2 * i + 1] * fpi * ed; });
  q7 += series_sum(n, 1, hi1,
                   [&](std::size_t i) { return fp[i + 1] * fpi * ep[2 * i - 1] * fpi * ed * ffpi; });

  ComplexMatrix q8 =
      ffpi * ed + ffpi * edp[3] * ffpi - ffpi * edp[2] * fpi * e - ffpi * edp[4] * ffpi * e;
  q8 += series_sum(n, 1, hi1, [&](std::size_t i) { return fp[i + 1] * fpi * ep[2 * i + 1]; });
  q8 += series_sum(n, 1, hi1,
                   [&](std::size_t i) { return fp[i + 1] * fpi * ep[2 * i] * ed * ffpi; });
  q8 -= series_sum(n, 1, hi1, [&](std::size_t i) {
    return fp[i + 1] * fpi * ep[2 * i + 1] * fpi * ed * fpi * e;
  });
  q8 -= series_sum(n, 1, hi1, [&](std::size_t i) {
    return fp[i + 1] * fpi * ep[2 * i - 1] * fpi * ed * ffpi * e;
  });

  ComplexMatrix theta = q1 * q2 + q3 * q4;
  ComplexMatrix psi = q5 * q5 + q3 * q6;
  ComplexMatrix phi = q7 * q2 + q8 * q4;
  ComplexMatrix omega = q7 * q5 + q8 * q6;

  const ComplexMatrix idn = ComplexMatrix::identity(n);
  const ComplexMatrix zero(n, n);
  const ComplexMatrix dmat = block2x2(zero, fd, ffd, -(e * fd));
  const ComplexMatrix gmat = block2x2(fpi * e + ffd * e * fpi, fpi, ffpi, zero);
  const ComplexMatrix hmat = block2x2(idn - e * theta, -(e * psi), -(f * theta), idn - f * psi);

  // Correction series sum_i D^{i+1} G^i H; H acts as the spectral projector of
  // G, so terms vanish once i reaches index(G) <= 2n.
  const long hi_corr = static_cast<long>(drazin_index(gmat, in.cfg)) - 1 + x;
  ComplexMatrix inverse = block2x2(theta, psi, phi, omega);
  ComplexMatrix dpow = dmat;
  ComplexMatrix gpow = ComplexMatrix::identity(2 * n);
  for (long i = 0; i <= hi_corr; ++i) {
    inverse += dpow * gpow * hmat;
    if (i < hi_corr) {
      dpow = dpow * dmat;
      gpow = gpow * gmat;
    }
  }

  if (opt.verify) {
    verify_result("anti_triangular_drazin_t26", assemble_anti_triangular(e, f), inverse, in.cfg);
  }
  return T26Result{
      BlockQuadruple{std::move(theta), std::move(psi), std::move(phi), std::move(omega), "t26"},
      std::move(inverse)};
}

ComplexMatrix anti_triangular_flipped(const AntiTriangularInput& in, const FormulaOptions& opt) {
  FormulaOptions inner_opt = opt;
  inner_opt.verify = false;  // the composed result is verified below
  const T26Result base = anti_triangular_drazin_t26(in, inner_opt);
  const std::size_t n = in.n();
  const ComplexMatrix idn = ComplexMatrix::identity(n);
  const ComplexMatrix zero(n, n);
  const ComplexMatrix left = block2x2(in.e, idn, idn, zero);
  const ComplexMatrix right = block2x2(zero, idn, idn, -in.e);
  ComplexMatrix result = left * base.inverse * right;
  if (opt.verify) {
    verify_result("anti_triangular_flipped", assemble_flipped(in.e, in.f), result, in.cfg);
  }
  return result;
}

ComplexMatrix second_order_transform(const AntiTriangularInput& in, const FormulaOptions& opt) {
  FormulaOptions inner_opt = opt;
  inner_opt.verify = false;
  ComplexMatrix md;
  const auto c23 = check_t23(in);
  if (c23[0].holds && c23[1].holds) {
    md = anti_triangular_drazin_t23(in, inner_opt).assemble();
  } else {
    const auto c26 = check_t26(in);
    if (c26[0].holds && c26[1].holds) {
      md = anti_triangular_drazin_t26(in, inner_opt).inverse;
    } else {
      md = drazin_oracle(assemble_anti_triangular(in.e, in.f), in.cfg).inverse;
    }
  }
  const std::size_t n = in.n();
  const ComplexMatrix idn = ComplexMatrix::identity(n);
  const ComplexMatrix zero(n, n);
  const ComplexMatrix left = block2x2(in.e, idn, -idn, zero);
  const ComplexMatrix right = block2x2(idn, zero, zero, -in.f);
  ComplexMatrix result = left * md * md * right;
  if (opt.verify) {
    verify_result("second_order_transform", assemble_second_order(in.e, in.f), result, in.cfg);
  }
  return result;
}

namespace {

Complex gaussian_entry(std::mt19937_64& rng) {
  std::normal_distribution<double> nd(0.0, 1.0);
  const double re = nd(rng);
  const double im = nd(rng);
  return Complex(re, im) * std::sqrt(0.5);
}

ComplexMatrix random_gaussian(std::size_t rows, std::size_t cols, std::mt19937_64& rng) {
  ComplexMatrix m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) m(i, j) = gaussian_entry(rng);
  return m;
}

ComplexMatrix scaled_gaussian(std::size_t rows, std::size_t cols, std::mt19937_64& rng) {
  ComplexMatrix m = random_gaussian(rows, cols, rng);
  const double norm = m.frobenius_norm();
  if (norm > 0.0) m = Complex(0.5 / norm, 0.0) * m;
  return m;
}

// Modified Gram-Schmidt with one re-orthogonalisation pass.
ComplexMatrix random_unitary(std::size_t n, std::mt19937_64& rng) {
  ComplexMatrix g = random_gaussian(n, n, rng);
  ComplexMatrix q(n, n);
  for (std::size_t j = 0; j < n; ++j) {
    std::vector<Complex> v(n);
    for (std::size_t i = 0; i < n; ++i) v[i] = g(i, j);
    for (int pass = 0; pass < 2; ++pass) {
      for (std::size_t k = 0; k < j; ++k) {
        Complex proj(0.0, 0.0);
        for (std::size_t i = 0; i < n; ++i) proj += std::conj(q(i, k)) * v[i];
        for (std::size_t i = 0; i < n; ++i) v[i] -= proj * q(i, k);
      }
    }
    double norm = 0.0;
    for (const Complex& z : v) norm += std::norm(z);
    norm = std::sqrt(norm);
    if (norm < 1e-8) {
      // Degenerate draw; retry this column with fresh entries.
      for (std::size_t i = 0; i < n; ++i) g(i, j) = gaussian_entry(rng);
      --j;
      continue;
    }
    for (std::size_t i = 0; i < n; ++i) q(i, j) = v[i] / norm;
  }
  return q;
}

// V T V^H with T upper triangular: nonzero eigenvalue moduli stay inside
// [0.75, 1.4] and the off-diagonal part is small, so Drazin-inverse powers of
// the result remain bounded. zero_eigs leading diagonal entries are exact
// zeros.
ComplexMatrix random_eig_controlled(std::size_t n, std::mt19937_64& rng,
                                    std::size_t zero_eigs = 0) {
  std::uniform_real_distribution<double> modulus(0.75, 1.4);
  std::uniform_real_distribution<double> angle(0.0, 6.283185307179586);
  ComplexMatrix t(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    if (i >= zero_eigs) t(i, i) = std::polar(modulus(rng), angle(rng));
  }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) t(i, j) = 0.25 * gaussian_entry(rng);
  const ComplexMatrix v = random_unitary(n, rng);
  return v * t * v.adjoint();
}

ComplexMatrix random_strict_upper(std::size_t n, std::mt19937_64& rng) {
  ComplexMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) m(i, j) = gaussian_entry(rng);
  const double norm = m.frobenius_norm();
  if (norm > 0.0) m = Complex(1.0 / norm, 0.0) * m;
  return m;
}

std::mt19937_64 seeded_rng(std::size_t n, std::uint64_t seed, std::uint64_t family_tag) {
  std::mt19937_64 rng(seed * 0x9e3779b97f4a7c15ULL + family_tag * 0x2545f4914f6cdd1dULL +
                      static_cast<std::uint64_t>(n));
  rng.discard(8);
  return rng;
}

// Generated instances feed tolerance-bounded comparisons, so reject draws
// whose Drazin inverses (or high powers of them) are large: those amplify
// roundoff in the projector factors beyond the test budgets.
bool well_conditioned_instance(const AntiTriangularInput& in) {
  try {
    const DrazinResult re = drazin_oracle(in.e, in.cfg);
    const DrazinResult rf = drazin_oracle(in.f, in.cfg);
    if (matpow(re.inverse, 13).frobenius_norm() > 100.0) return false;
    if (matpow(rf.inverse, 13).frobenius_norm() > 100.0) return false;
    const DrazinResult rm = drazin_oracle(assemble_anti_triangular(in.e, in.f), in.cfg);
    if (rm.inverse.frobenius_norm() > 50.0) return false;
  } catch (const std::exception&) {
    return false;
  }
  return true;
}

constexpr int kMaxGeneratorAttempts = 500;

}  // namespace

AntiTriangularInput generate_t23_instance(std::size_t n, std::uint64_t seed, T23Family family) {
  if (n == 0) throw std::invalid_argument("generate_t23_instance: n must be positive");
  if (family == T23Family::kNilpotentBlockPair && n % 2 != 0) {
    throw std::invalid_argument("generate_t23_instance: kNilpotentBlockPair needs even n");
  }
  std::mt19937_64 rng = seeded_rng(n, seed, static_cast<std::uint64_t>(family) + 1);
  for (int attempt = 0; attempt < kMaxGeneratorAttempts; ++attempt) {
    AntiTriangularInput in = [&]() -> AntiTriangularInput {
      switch (family) {
        case T23Family::kProjectedKernel: {
          // E keeps its last m columns zero and F its first k rows zero, which
          // realises E = E0 (I - F F^+) with exact zero products: range(F) is
          // exactly the span of the last m coordinates, so EF = 0 in floating
          // point, not just up to roundoff.
          if (n == 1) {
            return AntiTriangularInput(random_eig_controlled(1, rng), ComplexMatrix(1, 1));
          }
          std::uniform_int_distribution<std::size_t> split(1, n - 1);
          const std::size_t k = split(rng);
          const std::size_t m = n - k;
          const std::size_t zeros = (k >= 2 && rng() % 4 == 0) ? 1 : 0;
          ComplexMatrix e(n, n);
          e.set_block(0, 0, random_eig_controlled(k, rng, zeros));
          e.set_block(k, 0, scaled_gaussian(m, k, rng));
          ComplexMatrix f(n, n);
          f.set_block(k, 0, scaled_gaussian(m, k, rng));
          f.set_block(k, k, random_eig_controlled(m, rng));
          return AntiTriangularInput(std::move(e), std::move(f));
        }
        case T23Family::kNilpotentBlockPair: {
          // E = [[A, B],[0, 0]], F = [[0, C],[0, 0]]: F^2 = 0 and EF = [[0, AC],[0, 0]],
          // so EF^2 = EFE = 0 exactly while AC != 0 keeps EF nonzero.
          const std::size_t h = n / 2;
          const std::size_t zeros = (h >= 2 && rng() % 4 == 0) ? 1 : 0;
          ComplexMatrix e(n, n);
          e.set_block(0, 0, random_eig_controlled(h, rng, zeros));
          e.set_block(0, h, scaled_gaussian(h, h, rng));
          ComplexMatrix f(n, n);
          f.set_block(0, h, random_eig_controlled(h, rng));
          return AntiTriangularInput(std::move(e), std::move(f));
        }
      }
      throw std::logic_error("generate_t23_instance: unknown family");
    }();
    if (well_conditioned_instance(in)) return in;
  }
  throw NumericError("generate_t23_instance: no well-conditioned draw found");
}

AntiTriangularInput generate_t26_instance(std::size_t n, std::uint64_t seed, T26Family family) {
  if (n < 2) throw std::invalid_argument("generate_t26_instance: n must be at least 2");
  std::mt19937_64 rng = seeded_rng(n, seed, static_cast<std::uint64_t>(family) + 17);
  for (int attempt = 0; attempt < kMaxGeneratorAttempts; ++attempt) {
    AntiTriangularInput in = [&]() -> AntiTriangularInput {
      switch (family) {
        case T26Family::kInvertibleF: {
          ComplexMatrix f = random_eig_controlled(n, rng);
          ComplexMatrix e = random_eig_controlled(n, rng, (rng() % 4 == 0) ? 1 : 0);
          return AntiTriangularInput(std::move(e), std::move(f));
        }
        case T26Family::kRangeAligned: {
          // F = S diag(K, N) S^H with K invertible and N nilpotent; E vanishes
          // on the nilpotent co-range, so Fpi E = 0 and both hypotheses follow.
          std::uniform_int_distribution<std::size_t> split(1, n - 1);
          const std::size_t r = split(rng);
          const std::size_t m = n - r;
          ComplexMatrix fb(n, n);
          fb.set_block(0, 0, random_eig_controlled(r, rng));
          if (m >= 2) fb.set_block(r, r, random_strict_upper(m, rng));
          ComplexMatrix eb(n, n);
          eb.set_block(0, 0, random_eig_controlled(r, rng));
          eb.set_block(0, r, scaled_gaussian(r, m, rng));
          const ComplexMatrix s = random_unitary(n, rng);
          return AntiTriangularInput(s * eb * s.adjoint(), s * fb * s.adjoint());
        }
        case T26Family::kEmbeddedT23: {
          // As above, but E keeps a nonzero block E22 over the nilpotent part
          // of F, with (E22, N) chosen so that E22 N^2 = 0 and E22 N E22 = 0.
          // Then Fpi E != 0 while the projected hypotheses still hold.
          std::uniform_int_distribution<std::size_t> split(1, n - 1);
          const std::size_t r = split(rng);
          const std::size_t m = n - r;
          ComplexMatrix nmat(m, m);
          ComplexMatrix e22;
          if (m >= 2 && m % 2 == 0) {
            const std::size_t h = m / 2;
            e22 = ComplexMatrix(m, m);
            e22.set_block(0, 0, random_eig_controlled(h, rng));
            e22.set_block(0, h, scaled_gaussian(h, h, rng));
            nmat.set_block(0, h, random_eig_controlled(h, rng));
          } else {
            e22 = random_eig_controlled(m, rng);  // N = 0: hypotheses are exact
          }
          ComplexMatrix fb(n, n);
          fb.set_block(0, 0, random_eig_controlled(r, rng));
          fb.set_block(r, r, nmat);
          ComplexMatrix eb(n, n);
          eb.set_block(0, 0, random_eig_controlled(r, rng));
          eb.set_block(0, r, scaled_gaussian(r, m, rng));
          eb.set_block(r, r, e22);
          const ComplexMatrix s = random_unitary(n, rng);
          return AntiTriangularInput(s * eb * s.adjoint(), s * fb * s.adjoint());
        }
      }
      throw std::logic_error("generate_t26_instance: unknown family");
    }();
    if (well_conditioned_instance(in)) return in;
  }
  throw NumericError("generate_t26_instance: no well-conditioned draw found");
}

AntiTriangularInput example_pair_2x2() {
  return AntiTriangularInput(ComplexMatrix{{1.0, 0.0}, {0.0, 0.0}},
                             ComplexMatrix{{0.0, 1.0}, {0.0, 0.0}});
}

}  // namespace antidrazin
