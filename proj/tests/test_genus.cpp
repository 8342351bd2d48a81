#include "doctest.h"

#include <numeric>
#include <utility>
#include <vector>

#include "dyncubic/errors.hpp"
#include "dyncubic/genus.hpp"
#include "dyncubic/multipoly.hpp"
#include "dyncubic/ratfunc.hpp"

using namespace dyncubic;
using algebra::Integer;
using algebra::MultiPoly;
using algebra::RationalFunction;
using genus::GenusRow;

namespace {

Integer two_n_three_n(unsigned n) {
  Integer p;
  mpz_ui_pow_ui(p.get_mpz_t(), 3, n);
  return 2 * Integer(n) * p;
}

}  // namespace

TEST_CASE("the multiplicative kernel of the counting function") {
  CHECK(genus::theta(1) == 1);
  CHECK(genus::theta(2) == 0);
  CHECK(genus::theta(3) == -3);
  CHECK(genus::theta(4) == 0);
  CHECK(genus::theta(5) == -5);
  CHECK(genus::theta(9) == 0);
  CHECK(genus::theta(15) == 15);
  CHECK(genus::theta(27) == 0);
  CHECK(genus::theta(35) == 35);
  CHECK(genus::theta(105) == -105);
  CHECK_THROWS_AS(genus::theta(0), ArgumentError);

  // Multiplicative on coprime arguments, and supported exactly on the odd
  // squarefree integers, where it is mu(m) * m.
  for (unsigned long a = 1; a <= 50; ++a)
    for (unsigned long b = 1; b <= 50; ++b) {
      unsigned long g = std::gcd(a, b);
      if (g == 1) CHECK(genus::theta(a * b) == genus::theta(a) * genus::theta(b));
      if (g > 1 && g % 2 == 1) CHECK(genus::theta(a * b) == 0);
    }

  CHECK(genus::beta(1) == 1);
  CHECK(genus::beta(2) == 0);
  CHECK(genus::beta(7) == 7);
  CHECK(genus::beta(12) == 0);
  CHECK_THROWS_AS(genus::beta(0), ArgumentError);

  // theta is the Dirichlet inverse of beta.
  for (unsigned long m = 1; m <= 50; ++m) {
    Integer conv = 0;
    for (unsigned long d = 1; d <= m; ++d)
      if (m % d == 0) conv += genus::beta(m / d) * genus::theta(d);
    CHECK(conv == (m == 1 ? 1 : 0));
  }
}

TEST_CASE("the crossing count and its divisor-sum identities") {
  CHECK(genus::omega(1) == 6);
  CHECK(genus::omega(2) == 36);
  CHECK(genus::omega(3) == 144);
  CHECK(genus::omega(4) == 648);
  CHECK(genus::omega(5) == 2400);
  CHECK(genus::omega(6) == 8640);
  // The first n with a repeated odd prime factor: only the squarefree part of
  // the quotient contributes.
  CHECK(genus::omega(9) == 353808);
  CHECK_THROWS_AS(genus::omega(0), ArgumentError);

  for (unsigned n = 1; n <= 12; ++n) {
    Integer conv = 0;
    for (unsigned d = 1; d <= n; ++d)
      if (n % d == 0) conv += genus::beta(n / d) * genus::omega(d);
    CHECK(conv == two_n_three_n(n));

    Integer n3n;
    mpz_ui_pow_ui(n3n.get_mpz_t(), 3, n);
    CHECK(genus::omega(n) >= Integer(n) * n3n);
  }
}

TEST_CASE("solution counts of the sign-flip system") {
  CHECK(genus::bezout_counts(1) == std::pair<Integer, Integer>(12, 6));
  CHECK(genus::bezout_counts(2) == std::pair<Integer, Integer>(72, 36));
  CHECK(genus::bezout_counts(3) == std::pair<Integer, Integer>(324, 162));
  CHECK_THROWS_AS(genus::bezout_counts(0), ArgumentError);

  // omega(n) exhausts the count exactly when no shorter orbit embeds, that is,
  // when n has no proper divisor with odd quotient.
  for (unsigned n = 1; n <= 12; ++n) {
    Integer cap = genus::bezout_counts(n).second;
    CHECK(genus::omega(n) <= cap);
    bool embeds = false;
    for (unsigned d = 1; d < n; ++d)
      if (n % d == 0 && (n / d) % 2 == 1) embeds = true;
    CHECK((genus::omega(n) == cap) == !embeds);
  }
}

TEST_CASE("the period-1 crossing count by direct elimination") {
  // f(z) = z^3 + az with f(z) = -z splits into z = 0 and a = -1 - z^2.  On the
  // second branch the multiplier equation collapses to a quartic in z, on the
  // first to a quadratic in a; together they carry all 6 solutions.
  std::vector<std::string> U{"a", "z", "l"};
  MultiPoly mult = algebra::parse_poly("(3*z^2 + a)^2 - l", U);
  RationalFunction branch = algebra::eval_poly(
      mult, {{"a", RationalFunction(algebra::parse_poly("-1 - z^2", U))},
             {"z", RationalFunction(algebra::parse_poly("z", U))},
             {"l", RationalFunction(algebra::parse_poly("l", U))}});
  CHECK(branch == RationalFunction(algebra::parse_poly("(2*z^2 - 1)^2 - l", U)));
  CHECK(branch.num().degree("z") == 4);

  RationalFunction at_zero = algebra::eval_poly(
      mult, {{"a", RationalFunction(algebra::parse_poly("a", U))},
             {"z", RationalFunction(0)},
             {"l", RationalFunction(algebra::parse_poly("l", U))}});
  CHECK(at_zero == RationalFunction(algebra::parse_poly("a^2 - l", U)));
  CHECK(at_zero.num().degree("a") == 2);

  CHECK(genus::omega(1) == 4 + 2);
}

TEST_CASE("the table of genus lower bounds") {
  std::vector<GenusRow> rows = genus::genus_table(8);
  REQUIRE(rows.size() == 8);

  struct Expected {
    unsigned N;
    long x1;
    bool has_quotients;
    long x0, p1;
    bool exact;
  };
  std::vector<Expected> expected{
      {1, 0, false, 0, 0, true},  {2, 1, false, 0, 0, true},
      {3, 5, false, 0, 0, false}, {4, 11, true, 4, 6, false},
      {5, 2, false, 0, 0, false}, {6, 61, true, 11, 31, false},
      {7, 3, false, 0, 0, false}, {8, 309, true, 40, 155, false},
  };
  for (std::size_t i = 0; i < expected.size(); ++i) {
    const Expected& e = expected[i];
    const GenusRow& r = rows[i];
    CHECK(r.N == e.N);
    CHECK(r.x1 == e.x1);
    CHECK(r.exact == e.exact);
    CHECK(r.x0.has_value() == e.has_quotients);
    CHECK(r.p1.has_value() == e.has_quotients);
    if (e.has_quotients) {
      CHECK(*r.x0 == e.x0);
      CHECK(*r.p1 == e.p1);
    }
    GenusRow single = genus::genus_bounds(e.N);
    CHECK(single.x1 == r.x1);
    CHECK(single.x0 == r.x0);
    CHECK(single.p1 == r.p1);
  }

  CHECK_THROWS_AS(genus::genus_bounds(0), ArgumentError);
  CHECK_THROWS_AS(genus::genus_table(0), ArgumentError);

  // Odd periods fall back to the linear ramification bound.
  CHECK(genus::genus_bounds(9).x1 == 4);
  CHECK(genus::genus_bounds(11).x1 == 5);

  // For large even periods the crossing-count bound dominates everything.
  GenusRow ten = genus::genus_bounds(10);
  CHECK(ten.x1 == (genus::omega(5) - 40 + 2) / 2);
  CHECK(*ten.x0 == (genus::omega(5) / 10 - 2 + 1) / 2);
  CHECK(*ten.p1 == (genus::omega(5) / 2 - 20 + 2) / 2);
}
