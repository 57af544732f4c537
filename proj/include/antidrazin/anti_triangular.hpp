#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "antidrazin/drazin.hpp"

namespace antidrazin {

#ifdef NDEBUG
inline constexpr bool kVerifyByDefault = false;
#else
inline constexpr bool kVerifyByDefault = true;
#endif

/// The pair (E, F) defining M = [[E, I],[F, 0]], plus the tolerances used for
/// hypothesis checks and verification. E and F must be square, nonempty and of
/// equal dimension.
struct AntiTriangularInput {
  AntiTriangularInput(ComplexMatrix e_in, ComplexMatrix f_in, ToleranceConfig cfg_in = {});

  ComplexMatrix e;
  ComplexMatrix f;
  ToleranceConfig cfg;

  std::size_t n() const { return e.rows(); }
};

struct ConditionReport {
  std::string condition_name;
  double defect_norm = 0.0;
  bool holds = false;
};

class ConditionError : public std::runtime_error {
 public:
  ConditionError(const std::string& what, std::vector<ConditionReport> reps);
  std::vector<ConditionReport> reports;
};

/// Four n-by-n blocks of a 2n-by-2n result, tagged with the representation
/// that produced them.
struct BlockQuadruple {
  ComplexMatrix b11, b12, b21, b22;
  std::string label;

  ComplexMatrix assemble() const;
};

struct FormulaOptions {
  /// Extra terms appended past the nilpotency-driven truncation bound of every
  /// series. The defaults already cover all nonzero terms, so any positive
  /// value should leave results unchanged up to roundoff.
  int extra_series_terms = 0;
  /// Self-check each result against the defining equations and throw
  /// VerificationError on failure.
  bool verify = kVerifyByDefault;
};

ComplexMatrix assemble_anti_triangular(const ComplexMatrix& e, const ComplexMatrix& f);  // [[E,I],[F,0]]
ComplexMatrix assemble_flipped(const ComplexMatrix& e, const ComplexMatrix& f);         // [[E,F],[I,0]]
ComplexMatrix assemble_second_order(const ComplexMatrix& e, const ComplexMatrix& f);    // [[E,-F],[-I,0]]

/// Hypotheses EF^2 = 0 and EFE = 0. A condition holds when its defect is at
/// most zero_abs_tol * (1 + ||E||)(1 + ||F||)^2.
std::array<ConditionReport, 2> check_t23(const AntiTriangularInput& in);

/// Projected hypotheses Fpi*E*F^2 = 0 and Fpi*E*F*E = 0, Fpi = I - F F^d.
std::array<ConditionReport, 2> check_t26(const AntiTriangularInput& in);

/// g-Drazin inverse of the block-triangular [[A, 0],[C, B]].
ComplexMatrix triangular_drazin(const ComplexMatrix& a, const ComplexMatrix& b,
                                const ComplexMatrix& c, const ToleranceConfig& cfg,
                                const FormulaOptions& opt = {});

/// g-Drazin inverse of P + Q under P Q^2 = 0 and P Q P = 0 (checked).
ComplexMatrix additive_drazin(const ComplexMatrix& p, const ComplexMatrix& q,
                              const ToleranceConfig& cfg, const FormulaOptions& opt = {});

/// Closed-form blocks of [[E,I],[F,0]]^d under EF^2 = 0, EFE = 0.
BlockQuadruple anti_triangular_drazin_t23(const AntiTriangularInput& in,
                                          const FormulaOptions& opt = {});

struct T26Result {
  BlockQuadruple blocks;  // Theta, Psi, Phi, Omega
  ComplexMatrix inverse;  // assembled blocks plus the correction series
};

/// Closed form of [[E,I],[F,0]]^d under the projected hypotheses
/// Fpi*E*F^2 = 0, Fpi*E*F*E = 0.
T26Result anti_triangular_drazin_t26(const AntiTriangularInput& in,
                                     const FormulaOptions& opt = {});

/// g-Drazin inverse of [[E,F],[I,0]], by similarity from the t26 form.
ComplexMatrix anti_triangular_flipped(const AntiTriangularInput& in,
                                      const FormulaOptions& opt = {});

/// g-Drazin inverse of [[E,-F],[-I,0]] via the Cline-transfer identity
/// [[E,-F],[-I,0]]^D = [[E,I],[-I,0]] (M^D)^2 [[I,0],[0,-F]]. Uses the t23
/// form when its hypotheses hold, else t26, else the brute-force oracle.
ComplexMatrix second_order_transform(const AntiTriangularInput& in,
                                     const FormulaOptions& opt = {});

enum class T23Family {
  kProjectedKernel,     // E = E0 (I - F F^+), so E F = 0 up to roundoff
  kNilpotentBlockPair,  // E = [[A,B],[0,0]], F = [[0,C],[0,0]] with A C != 0, so E F != 0
};

enum class T26Family {
  kInvertibleF,   // F invertible, E arbitrary
  kRangeAligned,  // Fpi E = 0 by construction
  kEmbeddedT23,   // Fpi E != 0; a t23 pair sits inside the nilpotent part of F
};

/// Deterministic random instances satisfying the t23 hypotheses.
/// kNilpotentBlockPair requires n even.
AntiTriangularInput generate_t23_instance(std::size_t n, std::uint64_t seed,
                                          T23Family family = T23Family::kNilpotentBlockPair);

/// Deterministic random instances satisfying the t26 hypotheses; n >= 2.
AntiTriangularInput generate_t26_instance(std::size_t n, std::uint64_t seed,
                                          T26Family family = T26Family::kEmbeddedT23);

/// The 2x2 fixture E = [[1,0],[0,0]], F = [[0,1],[0,0]]: the smallest pair
/// with EF^2 = 0 and EFE = 0 but EF != 0. M^D is known exactly: first row all
/// ones, every other entry zero.
AntiTriangularInput example_pair_2x2();

}  // namespace antidrazin
