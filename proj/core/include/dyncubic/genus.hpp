#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "dyncubic/rational.hpp"

namespace dyncubic::genus {

using algebra::Integer;

// The Dirichlet inverse of beta: multiplicative, with theta(p) = -p at every
// odd prime and zero on even or non-squarefree arguments.
Integer theta(unsigned long m);

// beta(m) = m for odd m and 0 for even m.
Integer beta(unsigned long m);

// Number of solutions (a, 0, z_1, ..., z_2n) on the period-2n curve whose n-th
// iterate negates the starting point: the divisor sum
//   omega(n) = sum_{d | n} theta(n/d) * 2d * 3^d,
// equivalently the unique function with sum_{d | n} beta(n/d) omega(d) = 2n 3^n.
Integer omega(unsigned n);

// Solution counts for the sign-flip system with multiplier lambda:
// (4n 3^n, 2n 3^n), the projective Bezout count and the count remaining after
// splitting off the double cover in the square root of lambda.
std::pair<Integer, Integer> bezout_counts(unsigned n);

// One row of genus lower bounds: x1 for the curve with a marked point of
// period N, x0 for its quotient by cycle rotation, p1 for the further quotient
// by the sign symmetry (a, b, z) -> (a, -b, -z).  The quotient bounds are
// derived from ramification over b = 0 and exist only for even N >= 4.
struct GenusRow {
  unsigned N = 0;
  Integer x1;
  std::optional<Integer> x0;
  std::optional<Integer> p1;
  // True when x1 is the actual genus (N = 1 rational, N = 2 elliptic) rather
  // than a lower bound.
  bool exact = false;
};

// Lower bounds assembled from three sources: the linear ramification bound
// 2g - 2 >= N - 4 valid for every N, the specialization constant 5 at N = 3,
// and for even N = 2n the chain
//   2 g(x0) - 2 >= omega(n)/N - 4,
//   2 g(x1) - 2 >= N (2 g(x0) - 2),
//   2 g(p1) - 2 >= omega(n)/2 - 2N,
// with every half-integer rounded up.  Throws ArgumentError when N = 0.
GenusRow genus_bounds(unsigned N);

// Rows for N = 1, ..., max_N.  Throws ArgumentError when max_N = 0.
std::vector<GenusRow> genus_table(unsigned max_N);

}  // namespace dyncubic::genus
