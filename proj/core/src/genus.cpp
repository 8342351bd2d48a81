#include "dyncubic/genus.hpp"

#include <gmpxx.h>

#include "dyncubic/errors.hpp"

namespace dyncubic::genus {

namespace {

// Integer ceiling of a/b for b > 0.
Integer ceil_div(const Integer& a, const Integer& b) {
  Integer q;
  mpz_cdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

Integer pow3(unsigned n) {
  Integer r;
  mpz_ui_pow_ui(r.get_mpz_t(), 3, n);
  return r;
}

Integer max0(const Integer& a) { return a < 0 ? Integer(0) : a; }

}  // namespace

Integer theta(unsigned long m) {
  if (m == 0) throw ArgumentError("theta is defined on positive integers");
  if (m % 2 == 0) return 0;
  Integer out = 1;
  unsigned long rem = m;
  for (unsigned long p = 3; p * p <= rem; p += 2) {
    if (rem % p != 0) continue;
    rem /= p;
    if (rem % p == 0) return 0;
    out *= -Integer(p);
  }
  if (rem > 1) out *= -Integer(rem);
  return out;
}

Integer beta(unsigned long m) {
  if (m == 0) throw ArgumentError("beta is defined on positive integers");
  return m % 2 == 0 ? Integer(0) : Integer(m);
}

Integer omega(unsigned n) {
  if (n == 0) throw ArgumentError("omega is defined on positive integers");
  Integer sum = 0;
  for (unsigned d = 1; d <= n; ++d) {
    if (n % d != 0) continue;
    sum += theta(n / d) * 2 * d * pow3(d);
  }
  return sum;
}

std::pair<Integer, Integer> bezout_counts(unsigned n) {
  if (n == 0) throw ArgumentError("bezout_counts is defined on positive integers");
  Integer half = 2 * Integer(n) * pow3(n);
  return {2 * half, half};
}

GenusRow genus_bounds(unsigned N) {
  if (N == 0) throw ArgumentError("period must be positive");
  GenusRow row;
  row.N = N;
  if (N <= 2) {
    row.x1 = N - 1;
    row.exact = true;
    return row;
  }
  row.x1 = max0(ceil_div(Integer(N) - 2, 2));
  if (N == 3 && row.x1 < 5) row.x1 = 5;
  if (N % 2 == 0) {
    Integer w = omega(N / 2);
    Integer even_x1 = ceil_div(w - 4 * Integer(N) + 2, 2);
    if (even_x1 > row.x1) row.x1 = even_x1;
    row.x0 = max0(ceil_div(w - 2 * Integer(N), 2 * Integer(N)));
    row.p1 = max0(ceil_div(w - 4 * Integer(N) + 4, 4));
  }
  return row;
}

std::vector<GenusRow> genus_table(unsigned max_N) {
  if (max_N == 0) throw ArgumentError("table size must be positive");
  std::vector<GenusRow> rows;
  rows.reserve(max_N);
  for (unsigned N = 1; N <= max_N; ++N) rows.push_back(genus_bounds(N));
  return rows;
}

}  // namespace dyncubic::genus
