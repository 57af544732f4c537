#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "antidrazin/anti_triangular.hpp"
#include "antidrazin/decomp.hpp"
#include "antidrazin/drazin.hpp"
#include "test_support.hpp"

using namespace antidrazin;
using namespace testsup;

namespace {

const ToleranceConfig kCfg;
const FormulaOptions kPlain{0, false};

ComplexMatrix oracle_inverse(const ComplexMatrix& m) { return drazin_oracle(m, kCfg).inverse; }

}  // namespace

TEST_CASE("check_t23 verdicts") {
  SUBCASE("fixture pair holds with EF nonzero") {
    const AntiTriangularInput in = example_pair_2x2();
    const auto reports = check_t23(in);
    CHECK(reports[0].holds);
    CHECK(reports[1].holds);
    CHECK(reports[0].defect_norm == 0.0);
    CHECK((in.e * in.f).frobenius_norm() > 0.5);
  }
  SUBCASE("F = 0 holds trivially") {
    std::mt19937_64 rng(21);
    const AntiTriangularInput in(random_eig_controlled(3, rng), ComplexMatrix(3, 3));
    const auto reports = check_t23(in);
    CHECK(reports[0].holds);
    CHECK(reports[1].holds);
  }
  SUBCASE("E = F = I fails with defect equal to the norm of I") {
    const AntiTriangularInput in(ComplexMatrix::identity(2), ComplexMatrix::identity(2));
    const auto reports = check_t23(in);
    CHECK_FALSE(reports[0].holds);
    CHECK_FALSE(reports[1].holds);
    CHECK(reports[0].defect_norm == doctest::Approx(std::sqrt(2.0)));
    CHECK(reports[1].defect_norm == doctest::Approx(std::sqrt(2.0)));
  }
}

TEST_CASE("check_t26 verdicts") {
  std::mt19937_64 rng(22);
  SUBCASE("invertible F passes for any E") {
    const AntiTriangularInput in(random_gaussian(3, 3, rng), random_eig_controlled(3, rng));
    const auto reports = check_t26(in);
    CHECK(reports[0].holds);
    CHECK(reports[1].holds);
  }
  SUBCASE("any t23 pair passes: the projector multiplies a zero product") {
    const auto in = generate_t23_instance(4, 5, T23Family::kNilpotentBlockPair);
    const auto reports = check_t26(in);
    CHECK(reports[0].holds);
    CHECK(reports[1].holds);
  }
  SUBCASE("E = F = I passes because F^pi = 0") {
    const AntiTriangularInput in(ComplexMatrix::identity(2), ComplexMatrix::identity(2));
    const auto reports = check_t26(in);
    CHECK(reports[0].holds);
    CHECK(reports[1].holds);
  }
}

TEST_CASE("triangular_drazin scalar idempotent case") {
  // [[1, 0],[1, 0]] squares to itself, so it is its own Drazin inverse.
  const ComplexMatrix one{{1.0}};
  const ComplexMatrix zero{{0.0}};
  const ComplexMatrix x = triangular_drazin(one, zero, one, kCfg, kPlain);
  CHECK(rel_diff(x, ComplexMatrix{{1.0, 0.0}, {1.0, 0.0}}) <= 1e-14);
}

TEST_CASE("triangular_drazin with C = 0 is block diagonal") {
  std::mt19937_64 rng(23);
  const ComplexMatrix a = random_eig_controlled(2, rng, 1);
  const ComplexMatrix b = random_eig_controlled(3, rng);
  const ComplexMatrix x = triangular_drazin(a, b, ComplexMatrix(3, 2), kCfg, kPlain);
  const ComplexMatrix expected = block2x2(oracle_inverse(a), ComplexMatrix(2, 3),
                                          ComplexMatrix(3, 2), oracle_inverse(b));
  CHECK(rel_diff(x, expected) <= 1e-12);
}

TEST_CASE("triangular_drazin matches the oracle on random triples") {
  std::mt19937_64 rng(24);
  for (int trial = 0; trial < 15; ++trial) {
    const std::size_t pa = 1 + trial % 3, pb = 1 + (trial / 3) % 3;
    const ComplexMatrix a = random_eig_controlled(pa, rng, (pa >= 2 && trial % 5 == 0) ? 1 : 0);
    const ComplexMatrix b = random_eig_controlled(pb, rng, (pb >= 2 && trial % 4 == 0) ? 1 : 0);
    const ComplexMatrix c = unit_normalized(random_gaussian(pb, pa, rng));
    const ComplexMatrix x = triangular_drazin(a, b, c, kCfg, kPlain);
    const ComplexMatrix m = block2x2(a, ComplexMatrix(pa, pb), c, b);
    CHECK(rel_diff(x, oracle_inverse(m)) <= 1e-10);
    CHECK(verify_gdrazin(m, x, kCfg).pass);
  }
  CHECK_THROWS_AS(
      triangular_drazin(ComplexMatrix::identity(2), ComplexMatrix::identity(2),
                        ComplexMatrix(3, 3), kCfg, kPlain),
      DimensionError);
}

TEST_CASE("additive_drazin degenerate summands") {
  std::mt19937_64 rng(25);
  const ComplexMatrix q = random_eig_controlled(3, rng, 1);
  CHECK(rel_diff(additive_drazin(ComplexMatrix(3, 3), q, kCfg, kPlain), oracle_inverse(q)) <=
        1e-12);
  const ComplexMatrix p = random_eig_controlled(3, rng);
  CHECK(rel_diff(additive_drazin(p, ComplexMatrix(3, 3), kCfg, kPlain), oracle_inverse(p)) <=
        1e-12);
}

TEST_CASE("additive_drazin matches the oracle when P Q = 0") {
  std::mt19937_64 rng(26);
  for (int trial = 0; trial < 15; ++trial) {
    // P nonzero only in its first k columns, Q zero in its first k rows:
    // P Q = 0 exactly and both factors stay spectrally controlled.
    const std::size_t n = 3;
    const std::size_t k = 1 + trial % 2;
    ComplexMatrix p(n, n), q(n, n);
    p.set_block(0, 0, random_eig_controlled(k, rng));
    p.set_block(k, 0, unit_normalized(random_gaussian(n - k, k, rng)));
    q.set_block(k, k, random_eig_controlled(n - k, rng));
    q.set_block(k, 0, unit_normalized(random_gaussian(n - k, k, rng)));
    REQUIRE((p * q).is_exactly_zero());
    const ComplexMatrix sum = additive_drazin(p, q, kCfg, kPlain);
    CHECK(rel_diff(sum, oracle_inverse(p + q)) <= 1e-10);
    CHECK(verify_gdrazin(p + q, sum, kCfg).pass);
  }
}

TEST_CASE("additive_drazin rejects violated hypotheses with defect reports") {
  const ComplexMatrix eye = ComplexMatrix::identity(2);
  try {
    additive_drazin(eye, eye, kCfg, kPlain);
    FAIL("expected ConditionError");
  } catch (const ConditionError& e) {
    REQUIRE(e.reports.size() == 2);
    CHECK(e.reports[0].defect_norm > 1.0);
    CHECK_FALSE(e.reports[0].holds);
  }
}

TEST_CASE("t23 closed form on the fixture pair") {
  const AntiTriangularInput in = example_pair_2x2();
  const BlockQuadruple q = anti_triangular_drazin_t23(in, kPlain);
  const ComplexMatrix expected_diag{{1.0, 1.0}, {0.0, 0.0}};
  CHECK((q.b11 - expected_diag).max_abs() <= 1e-12);
  CHECK((q.b12 - expected_diag).max_abs() <= 1e-12);
  CHECK(q.b21.max_abs() <= 1e-12);
  CHECK(q.b22.max_abs() <= 1e-12);

  ComplexMatrix expected(4, 4);
  for (std::size_t j = 0; j < 4; ++j) expected(0, j) = 1.0;
  CHECK((q.assemble() - expected).max_abs() <= 1e-12);
  CHECK(q.label == "t23");
}

TEST_CASE("t23 with E = 0 and F nilpotent gives the zero inverse") {
  std::mt19937_64 rng(27);
  const std::size_t n = 3;
  const AntiTriangularInput in(ComplexMatrix(n, n), random_strict_upper(n, rng));
  const ComplexMatrix md = anti_triangular_drazin_t23(in, kPlain).assemble();
  CHECK(md.frobenius_norm() <= 1e-12);
}

TEST_CASE("t23 matches the oracle on an 8x8 block-pair instance") {
  const auto in = generate_t23_instance(4, 99, T23Family::kNilpotentBlockPair);
  const ComplexMatrix m = assemble_anti_triangular(in.e, in.f);
  REQUIRE(m.rows() == 8);
  const ComplexMatrix md = anti_triangular_drazin_t23(in, kPlain).assemble();
  CHECK(rel_diff(md, oracle_inverse(m)) <= 1e-8);
}

TEST_CASE("t23 refuses violated hypotheses") {
  const AntiTriangularInput in(ComplexMatrix::identity(2), ComplexMatrix::identity(2));
  CHECK_THROWS_AS(anti_triangular_drazin_t23(in, kPlain), ConditionError);
}

TEST_CASE("t26 with E = 0 and F = I inverts M exactly") {
  const std::size_t n = 2;
  const AntiTriangularInput in(ComplexMatrix(n, n), ComplexMatrix::identity(n));
  const T26Result r = anti_triangular_drazin_t26(in, kPlain);
  // M = [[0, I],[I, 0]] is an involution, so M^d = M.
  CHECK(rel_diff(r.inverse, assemble_anti_triangular(in.e, in.f)) <= 1e-12);
  CHECK(r.blocks.b11.frobenius_norm() <= 1e-12);  // F^pi = 0 kills all blocks
  CHECK(r.blocks.b22.frobenius_norm() <= 1e-12);
}

TEST_CASE("t26 agrees with t23 on nilpotent-F instances") {
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const auto in = generate_t23_instance(4, seed, T23Family::kNilpotentBlockPair);
    const ComplexMatrix via23 = anti_triangular_drazin_t23(in, kPlain).assemble();
    const ComplexMatrix via26 = anti_triangular_drazin_t26(in, kPlain).inverse;
    CHECK(rel_diff(via26, via23) <= kCfg.residual_tol);
  }
}

TEST_CASE("t26 on a 2x2 pair with F = diag(invertible, 0)") {
  // F^pi = diag(0, 1), so the projected hypotheses hold for any upper
  // triangular E.
  const ComplexMatrix f{{Complex(1.3, 0.2), 0.0}, {0.0, 0.0}};
  const ComplexMatrix e{{Complex(0.9, -0.4), Complex(0.3, 0.1)}, {0.0, Complex(-1.1, 0.6)}};
  const AntiTriangularInput in(e, f);
  const auto reports = check_t26(in);
  REQUIRE(reports[0].holds);
  REQUIRE(reports[1].holds);
  const T26Result r = anti_triangular_drazin_t26(in, kPlain);
  const ComplexMatrix m = assemble_anti_triangular(e, f);
  CHECK(rel_diff(r.inverse, oracle_inverse(m)) <= 1e-9);
  CHECK(verify_gdrazin(m, r.inverse, kCfg).pass);
}

TEST_CASE("t26 refuses violated hypotheses") {
  // F nilpotent of full chain: F^pi = I, and E = I makes F^pi E F^2 != 0.
  ComplexMatrix f(3, 3);
  f(0, 1) = 1.0;
  f(1, 2) = 1.0;
  const AntiTriangularInput in(ComplexMatrix::identity(3), f);
  CHECK_THROWS_AS(anti_triangular_drazin_t26(in, kPlain), ConditionError);
}

TEST_CASE("flipped variant basics") {
  SUBCASE("E = 0, F = I: the flipped matrix is an involution") {
    const AntiTriangularInput in(ComplexMatrix(2, 2), ComplexMatrix::identity(2));
    const ComplexMatrix fd = anti_triangular_flipped(in, kPlain);
    CHECK(rel_diff(fd, assemble_flipped(in.e, in.f)) <= 1e-12);
  }
  SUBCASE("fixture pair matches the oracle") {
    const AntiTriangularInput in = example_pair_2x2();
    const ComplexMatrix fd = anti_triangular_flipped(in, kPlain);
    CHECK(rel_diff(fd, oracle_inverse(assemble_flipped(in.e, in.f))) <= 1e-8);
  }
  SUBCASE("conjugation identity against the unflipped inverse") {
    const auto in = generate_t26_instance(3, 4, T26Family::kEmbeddedT23);
    const ComplexMatrix fd = anti_triangular_flipped(in, kPlain);
    const ComplexMatrix md = anti_triangular_drazin_t26(in, kPlain).inverse;
    const std::size_t n = in.n();
    const ComplexMatrix idn = ComplexMatrix::identity(n);
    const ComplexMatrix z(n, n);
    const ComplexMatrix s = block2x2(z, idn, idn, -in.e);
    const ComplexMatrix sinv = block2x2(in.e, idn, idn, z);
    CHECK(rel_diff(s * fd * sinv, md) <= kCfg.residual_tol);
  }
}

TEST_CASE("second_order_transform basics") {
  SUBCASE("E = F = 0 gives the zero inverse") {
    const AntiTriangularInput in(ComplexMatrix(2, 2), ComplexMatrix(2, 2));
    CHECK(second_order_transform(in, kPlain).frobenius_norm() <= 1e-12);
  }
  SUBCASE("fixture pair matches the oracle") {
    const AntiTriangularInput in = example_pair_2x2();
    const ComplexMatrix nd = second_order_transform(in, kPlain);
    CHECK(rel_diff(nd, oracle_inverse(assemble_second_order(in.e, in.f))) <= 1e-8);
  }
  SUBCASE("F invertible, E = 0: matches the exact inverse") {
    std::mt19937_64 rng(28);
    const ComplexMatrix f = random_eig_controlled(2, rng);
    const AntiTriangularInput in(ComplexMatrix(2, 2), f);
    const ComplexMatrix nd = second_order_transform(in, kPlain);
    // [[0, -F],[-I, 0]]^{-1} = [[0, -I],[-F^{-1}, 0]]
    const ComplexMatrix finv = oracle_inverse(f);
    const ComplexMatrix expected =
        block2x2(ComplexMatrix(2, 2), -ComplexMatrix::identity(2), -finv, ComplexMatrix(2, 2));
    CHECK(rel_diff(nd, expected) <= 1e-10);
  }
  SUBCASE("falls back to the oracle when neither hypothesis set holds") {
    ComplexMatrix f(3, 3);
    f(0, 1) = 1.0;
    f(1, 2) = 1.0;
    const AntiTriangularInput in(ComplexMatrix::identity(3), f);
    const auto c23 = check_t23(in);
    const auto c26 = check_t26(in);
    REQUIRE_FALSE(c23[0].holds);
    REQUIRE_FALSE(c26[0].holds);
    const ComplexMatrix nd = second_order_transform(in, kPlain);
    CHECK(verify_gdrazin(assemble_second_order(in.e, in.f), nd, kCfg).pass);
  }
}

TEST_CASE("generators are deterministic and honor their guarantees") {
  SUBCASE("determinism") {
    const auto a = generate_t23_instance(4, 42, T23Family::kNilpotentBlockPair);
    const auto b = generate_t23_instance(4, 42, T23Family::kNilpotentBlockPair);
    CHECK((a.e - b.e).is_exactly_zero());
    CHECK((a.f - b.f).is_exactly_zero());
    const auto c = generate_t26_instance(3, 42, T26Family::kEmbeddedT23);
    const auto d = generate_t26_instance(3, 42, T26Family::kEmbeddedT23);
    CHECK((c.e - d.e).is_exactly_zero());
  }
  SUBCASE("block-pair family: conditions exact, EF nonzero") {
    for (std::uint64_t seed = 0; seed < 8; ++seed) {
      const auto in = generate_t23_instance(4, seed, T23Family::kNilpotentBlockPair);
      CHECK((in.e * in.f * in.f).is_exactly_zero());
      CHECK((in.e * in.f * in.e).is_exactly_zero());
      CHECK((in.e * in.f).frobenius_norm() > 0.1);
    }
  }
  SUBCASE("projected-kernel family: EF = 0 exactly") {
    for (std::uint64_t seed = 0; seed < 8; ++seed) {
      const auto in = generate_t23_instance(3, seed, T23Family::kProjectedKernel);
      CHECK((in.e * in.f).is_exactly_zero());
      const auto reports = check_t23(in);
      CHECK(reports[0].holds);
      CHECK(reports[1].holds);
    }
  }
  SUBCASE("t26 families: hypotheses hold; embedded keeps Fpi E nonzero") {
    for (std::uint64_t seed = 0; seed < 6; ++seed) {
      const auto inv = generate_t26_instance(3, seed, T26Family::kInvertibleF);
      const auto ra = generate_t26_instance(3, seed, T26Family::kRangeAligned);
      const auto em = generate_t26_instance(3, seed, T26Family::kEmbeddedT23);
      for (const auto* in : {&inv, &ra, &em}) {
        const auto reports = check_t26(*in);
        CHECK(reports[0].holds);
        CHECK(reports[1].holds);
      }
      const ComplexMatrix fpi_inv = drazin_oracle(inv.f, kCfg).projector;
      CHECK(fpi_inv.frobenius_norm() <= 1e-10);  // F invertible
      const ComplexMatrix fpi_ra = drazin_oracle(ra.f, kCfg).projector;
      CHECK((fpi_ra * ra.e).frobenius_norm() <= 1e-10);
      const ComplexMatrix fpi_em = drazin_oracle(em.f, kCfg).projector;
      CHECK((fpi_em * em.e).frobenius_norm() > 0.1);
    }
  }
  SUBCASE("input validation") {
    CHECK_THROWS_AS(generate_t23_instance(0, 1), std::invalid_argument);
    CHECK_THROWS_AS(generate_t23_instance(3, 1, T23Family::kNilpotentBlockPair),
                    std::invalid_argument);
    CHECK_THROWS_AS(generate_t26_instance(1, 1), std::invalid_argument);
  }
}

TEST_CASE("fixture pair reproduces the canonical entries") {
  const AntiTriangularInput in = example_pair_2x2();
  CHECK(in.e(0, 0) == Complex(1.0, 0.0));
  CHECK(in.e(1, 1) == Complex(0.0, 0.0));
  CHECK(in.f(0, 1) == Complex(1.0, 0.0));
  CHECK((in.f * in.f).is_exactly_zero());
}

TEST_CASE("series extension beyond the nilpotency bound changes nothing") {
  const FormulaOptions extended{3, false};
  const AntiTriangularInput fix = example_pair_2x2();
  CHECK((anti_triangular_drazin_t23(fix, extended).assemble() -
         anti_triangular_drazin_t23(fix, kPlain).assemble())
            .frobenius_norm() <= 1e-13);

  const auto in = generate_t26_instance(3, 11, T26Family::kEmbeddedT23);
  const ComplexMatrix base = anti_triangular_drazin_t26(in, kPlain).inverse;
  const ComplexMatrix ext = anti_triangular_drazin_t26(in, extended).inverse;
  CHECK((ext - base).frobenius_norm() <= 1e-13 * (1.0 + base.frobenius_norm()));
}

TEST_CASE("degenerate inputs are rejected") {
  CHECK_THROWS_AS(AntiTriangularInput(ComplexMatrix(), ComplexMatrix()), DimensionError);
  CHECK_THROWS_AS(AntiTriangularInput(ComplexMatrix(2, 2), ComplexMatrix(3, 3)), DimensionError);
  // n = 1 scalar blocks are supported.
  const AntiTriangularInput scalar(ComplexMatrix{{2.0}}, ComplexMatrix{{0.0}});
  const ComplexMatrix md = anti_triangular_drazin_t23(scalar, kPlain).assemble();
  CHECK(verify_gdrazin(assemble_anti_triangular(scalar.e, scalar.f), md, kCfg).pass);
}
