#include "doctest.h"

#include <random>
#include <vector>

#include "dyncubic/errors.hpp"
#include "dyncubic/modspace.hpp"
#include "dyncubic/numberfield.hpp"

using namespace dyncubic;
using algebra::FieldElem;
using algebra::FieldPtr;
using algebra::Rational;
using modspace::CycleSpec;
using modspace::MarkedMap;
using modspace::RecoveredMap;

namespace {

FieldElem fe(long n, long d = 1) {
  Rational r(n, d);
  r.canonicalize();
  return FieldElem(r);
}

std::vector<FieldElem> fes(std::initializer_list<long> xs) {
  std::vector<FieldElem> out;
  for (long x : xs) out.push_back(FieldElem(x));
  return out;
}

// Deterministic small rational from raw engine output; distributions are
// implementation-defined, the raw stream is not.
Rational draw_rat(std::mt19937_64& eng) {
  long num = static_cast<long>(eng() % 41) - 20;
  long den = static_cast<long>(eng() % 9) + 1;
  Rational r(num, den);
  r.canonicalize();
  return r;
}

}  // namespace

TEST_CASE("coefficient recovery from marked cycles") {
  // One 2-cycle (0, 1) on a cubic with vanishing quadratic part.
  CycleSpec spec{3, {2}, fes({0, 1}), fes({0, 1})};
  RecoveredMap rec = modspace::recover_coeffs(spec);
  CHECK(rec.coeffs == fes({1, -2, 0, 1}));
  CHECK(rec.exact_periods);
  CHECK(modspace::eval_map(rec.coeffs, FieldElem(0)) == FieldElem(1));
  CHECK(modspace::eval_map(rec.coeffs, FieldElem(1)) == FieldElem(0));

  // A fixed point at 0 only pins the constant term.
  RecoveredMap fixed = modspace::recover_coeffs({2, {1}, fes({0}), fes({5, 1})});
  CHECK(fixed.coeffs == fes({0, 5, 1}));

  // Full system with no tail: 3-cycle (0, 1, 2) on a quadratic.
  RecoveredMap full = modspace::recover_coeffs({2, {3}, fes({0, 1, 2}), {}});
  CHECK(full.coeffs == std::vector<FieldElem>{fe(1), fe(5, 2), fe(-3, 2)});
  CHECK(full.exact_periods);
  CHECK(modspace::eval_map(full.coeffs, FieldElem(2)) == FieldElem(0));

  // A 2-cycle and a fixed point sharing one cubic.
  RecoveredMap mixed = modspace::recover_coeffs({3, {2, 1}, fes({1, 2, 3}), fes({1})});
  CHECK(mixed.coeffs == std::vector<FieldElem>{fe(0), fe(11, 2), fe(-9, 2), fe(1)});
  CHECK(modspace::eval_map(mixed.coeffs, FieldElem(3)) == FieldElem(3));
  CHECK(mixed.exact_periods);

  CHECK_THROWS_AS(modspace::recover_coeffs({3, {2}, fes({0, 0}), fes({0, 1})}),
                  SingularMatrixError);
  CHECK_THROWS_AS(modspace::recover_coeffs({3, {2}, fes({0, 1}), fes({1, 0})}), DegreeError);
  // Three fixed points of a quadratic force f = z, so the fit loses degree.
  CHECK_THROWS_AS(modspace::recover_coeffs({2, {1, 1, 1}, fes({0, 1, 2}), {}}), DegreeError);
  CHECK_THROWS_AS(modspace::recover_coeffs({1, {1}, fes({0}), fes({1})}), ArgumentError);
  CHECK_THROWS_AS(modspace::recover_coeffs({3, {2}, fes({0, 1, 2}), fes({0, 1})}),
                  ArgumentError);
  CHECK_THROWS_AS(modspace::recover_coeffs({3, {2}, fes({0, 1}), fes({1})}), ArgumentError);
  CHECK_THROWS_AS(modspace::recover_coeffs({3, {0}, {}, fes({0, 0, 0, 1})}), ArgumentError);
}

TEST_CASE("coefficient recovery satisfies the cycle equations by substitution") {
  std::mt19937_64 eng(20240817);
  for (int trial = 0; trial < 40; ++trial) {
    unsigned d = 3 + static_cast<unsigned>(eng() % 4);  // 3..6
    std::vector<unsigned> lengths{2, 1};
    std::vector<FieldElem> pts;
    while (pts.size() < 3) {
      FieldElem z{draw_rat(eng)};
      bool seen = false;
      for (const FieldElem& p : pts) seen = seen || p == z;
      if (!seen) pts.push_back(z);
    }
    std::vector<FieldElem> tail;
    for (std::size_t j = 3; j + 1 <= d; ++j) tail.push_back(FieldElem(draw_rat(eng)));
    FieldElem lead{draw_rat(eng)};
    if (lead.is_zero()) lead = FieldElem(1);
    tail.push_back(lead);

    RecoveredMap rec = modspace::recover_coeffs({d, lengths, pts, tail});
    CHECK(modspace::eval_map(rec.coeffs, pts[0]) == pts[1]);
    CHECK(modspace::eval_map(rec.coeffs, pts[1]) == pts[0]);
    CHECK(modspace::eval_map(rec.coeffs, pts[2]) == pts[2]);
    CHECK(rec.exact_periods);
  }

  // Number-field data: a 2-cycle through a twelfth root of unity.
  FieldPtr f12 = algebra::make_field({1, 0, -1, 0, 1}, "z");
  FieldElem zeta = FieldElem::generator(f12);
  RecoveredMap rec = modspace::recover_coeffs(
      {3, {2}, {zeta, -zeta}, {FieldElem::in_field(f12, 0), zeta}});
  CHECK(modspace::eval_map(rec.coeffs, zeta) == -zeta);
  CHECK(modspace::eval_map(rec.coeffs, -zeta) == zeta);
}

TEST_CASE("affine conjugation of coefficient vectors") {
  std::vector<FieldElem> f = fes({1, -2, 0, 1});
  CHECK(modspace::conjugate_coeffs(f, FieldElem(1), FieldElem(0)) == f);
  CHECK_THROWS_AS(modspace::conjugate_coeffs(f, FieldElem(0), FieldElem(1)), ArgumentError);

  std::mt19937_64 eng(991);
  for (int trial = 0; trial < 25; ++trial) {
    std::vector<FieldElem> coeffs;
    for (int i = 0; i < 4; ++i) coeffs.push_back(FieldElem(draw_rat(eng)));
    if (coeffs.back().is_zero()) coeffs.back() = FieldElem(2);
    FieldElem alpha{draw_rat(eng)};
    if (alpha.is_zero()) alpha = FieldElem(3);
    FieldElem beta{draw_rat(eng)};
    std::vector<FieldElem> g = modspace::conjugate_coeffs(coeffs, alpha, beta);
    for (long s = -3; s <= 3; ++s) {
      FieldElem z{Rational(s)};
      CHECK(modspace::eval_map(g, alpha * z + beta) ==
            alpha * modspace::eval_map(coeffs, z) + beta);
    }
  }
}

TEST_CASE("normal forms for marked and unmarked maps") {
  // Two marked points move to 0 and 1 by a single affine change.
  MarkedMap cubic{3, fes({1, -2, 0, 1}), {fe(2), fe(5)}};
  MarkedMap norm = modspace::normalize_marked(cubic);
  CHECK(norm.marked.size() == 2);
  CHECK(norm.marked[0] == FieldElem(0));
  CHECK(norm.marked[1] == FieldElem(1));
  CHECK(norm.coeffs == modspace::conjugate_coeffs(cubic.coeffs, fe(1, 3), fe(-2, 3)));
  MarkedMap again = modspace::normalize_marked(norm);
  CHECK(again.coeffs == norm.coeffs);
  CHECK(again.marked == norm.marked);
  CHECK_THROWS_AS(modspace::normalize_marked(MarkedMap{3, cubic.coeffs, {fe(2), fe(2)}}),
                  NormalizationError);

  // One marked point: translate to 0, scale the quadratic coefficient to 1.
  MarkedMap one{2, fes({0, 0, 1}), {fe(1)}};
  MarkedMap onen = modspace::normalize_marked(one);
  CHECK(onen.marked == std::vector<FieldElem>{FieldElem(0)});
  CHECK(onen.coeffs == fes({0, 2, 1}));
  CHECK(modspace::normalize_marked(onen).coeffs == onen.coeffs);
  CHECK_THROWS_AS(modspace::normalize_marked(MarkedMap{3, fes({0, 0, 0, 1}), {fe(0)}}),
                  NormalizationError);

  // No marked points: barycenter to 0, its image to 1.
  MarkedMap bare{3, fes({0, 0, 3, 1}), {}};
  MarkedMap baren = modspace::normalize_marked(bare);
  CHECK(baren.coeffs == fes({1, -3, 0, 9}));
  CHECK(baren.coeffs == modspace::conjugate_coeffs(bare.coeffs, fe(1, 3), fe(1, 3)));
  CHECK(modspace::normalize_marked(baren).coeffs == baren.coeffs);
  CHECK_THROWS_AS(modspace::normalize_marked(MarkedMap{3, fes({0, 1, 0, 1}), {}}),
                  NormalizationError);

  CHECK_THROWS_AS(modspace::normalize_marked(MarkedMap{3, fes({1, 1, 1, 0}), {}}), DegreeError);
  CHECK_THROWS_AS(modspace::normalize_marked(MarkedMap{3, fes({1, 1}), {}}), ArgumentError);
}

TEST_CASE("field-of-moduli invariants") {
  // Cubic z^3 + a z + b: the invariants are (a, b^2), blind to the sign of b.
  std::vector<FieldElem> plus = fes({2, 7, 0, 1});
  std::vector<FieldElem> minus = fes({-2, 7, 0, 1});
  std::vector<FieldElem> inv = modspace::moduli_invariants(plus);
  CHECK(inv == std::vector<FieldElem>{fe(7), fe(4)});
  CHECK(modspace::moduli_invariants(minus) == inv);
  CHECK(modspace::moduli_invariants(fes({0, 7, 0, 1})) ==
        std::vector<FieldElem>{fe(7), fe(0)});
  CHECK(modspace::moduli_invariants(fes({2, 8, 0, 1})) != inv);
  CHECK(modspace::moduli_invariants(fes({3, 7, 0, 1})) != inv);

  // The sign flip is the conjugation action itself.
  CHECK(modspace::conjugate_coeffs(plus, fe(-1), fe(0)) == minus);

  // Degree 5 over a field with i: conjugation by the fourth root of unity.
  FieldPtr f12 = algebra::make_field({1, 0, -1, 0, 1}, "z");
  FieldElem i = FieldElem::gen_pow(f12, 3);
  std::vector<FieldElem> quintic = {FieldElem::in_field(f12, 3), FieldElem(5), i,
                                    i * i + FieldElem(2), FieldElem(0), FieldElem(1)};
  std::vector<FieldElem> rotated = modspace::conjugate_coeffs(quintic, i, FieldElem(0));
  CHECK(rotated != quintic);
  CHECK(rotated.back().is_one());
  CHECK(modspace::moduli_invariants(rotated) == modspace::moduli_invariants(quintic));

  CHECK_THROWS_AS(modspace::moduli_invariants(fes({1, 1, 0, 2})), ArgumentError);
  CHECK_THROWS_AS(modspace::moduli_invariants(fes({1, 1, 2, 1})), ArgumentError);
  CHECK_THROWS_AS(modspace::moduli_invariants(fes({1, 1, 1})), ArgumentError);
}

TEST_CASE("normalization and recovery round-trip on random marked cubics") {
  std::mt19937_64 eng(424242);
  int done = 0;
  while (done < 200) {
    FieldElem z1{draw_rat(eng)};
    FieldElem z2{draw_rat(eng)};
    if (z1 == z2) continue;
    FieldElem a2{draw_rat(eng)};
    FieldElem a3{draw_rat(eng)};
    if (a3.is_zero()) continue;
    RecoveredMap f = modspace::recover_coeffs({3, {2}, {z1, z2}, {a2, a3}});
    REQUIRE(modspace::eval_map(f.coeffs, z1) == z2);
    REQUIRE(modspace::eval_map(f.coeffs, z2) == z1);

    FieldElem alpha{draw_rat(eng)};
    if (alpha.is_zero()) continue;
    FieldElem beta{draw_rat(eng)};
    std::vector<FieldElem> g = modspace::conjugate_coeffs(f.coeffs, alpha, beta);
    std::vector<FieldElem> gm{alpha * z1 + beta, alpha * z2 + beta};

    // Conjugate data lands on the same canonical representative.
    MarkedMap nf = modspace::normalize_marked(MarkedMap{3, f.coeffs, {z1, z2}});
    MarkedMap ng = modspace::normalize_marked(MarkedMap{3, g, gm});
    REQUIRE(nf.coeffs == ng.coeffs);
    REQUIRE(nf.marked == ng.marked);

    // The canonical representative is recovered exactly from its own cycle data.
    RecoveredMap back = modspace::recover_coeffs(
        {3, {2}, nf.marked, {nf.coeffs[2], nf.coeffs[3]}});
    REQUIRE(back.coeffs == nf.coeffs);

    MarkedMap re = modspace::normalize_marked(nf);
    REQUIRE(re.coeffs == nf.coeffs);
    REQUIRE(re.marked == nf.marked);
    ++done;
  }
  CHECK(done == 200);
}
