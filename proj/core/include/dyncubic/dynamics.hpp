#pragma once

#include <optional>

#include "dyncubic/ratfunc.hpp"

namespace dyncubic::dynamics {

using algebra::FieldElem;
using algebra::FieldPtr;
using algebra::MultiPoly;
using algebra::RationalFunction;

// The cubic family f(z) = z^3 + a z + b with coefficients in a rational function
// field over Q or a number field.
struct CubicMap {
  RationalFunction a, b;

  RationalFunction apply(const RationalFunction& z) const;
  RationalFunction derivative_at(const RationalFunction& z) const;  // 3 z^2 + a
};

// f^N(z) as a polynomial in the generic coefficients: variables (a, b, z).
MultiPoly iterate_poly(unsigned N, const FieldPtr& field = nullptr);

// Dynatomic polynomial Phi_N(a, b, z), the factor of f^N(z) - z whose roots have
// formal period exactly N: computed as the Moebius product
// prod_{d | N} (f^d(z) - z)^(mu(N/d)) using exact division only.
MultiPoly dynatomic(unsigned N, const FieldPtr& field = nullptr);

// d(f^N)/dz expanded in (a, b, z); equals prod_{i<N} f'(f^i(z)) by the chain rule.
MultiPoly multiplier_poly(unsigned N, const FieldPtr& field = nullptr);

// Ordered cycle (z_1, ..., z_N). A valid witness satisfies f(z_i) = z_{i+1 mod N}
// with pairwise distinct points.
struct CycleWitness {
  std::vector<RationalFunction> points;

  void validate(const CubicMap& f) const;  // WitnessError on failure
};

// Product of f'(z_i) along the cycle; validates the witness first.
RationalFunction cycle_multiplier(const CubicMap& f, const CycleWitness& w);

// (a(w), b(w), z1(w)): a cubic with a marked period-N point whose cycle multiplier
// is w^m, i.e. an m-th-root multiplier section in the uniformizer w.
struct SectionTriple {
  RationalFunction a, b, z1;
  unsigned m = 1;
  unsigned N = 1;
};

struct SectionReport {
  bool phi_zero = false;
  bool multiplier_ok = false;
  bool ok() const { return phi_zero && multiplier_ok; }
};

// Checks, as exact identities in the uniformizer, that Phi_N(a, b, z1) = 0 and
// that the cycle multiplier equals w^m.
SectionReport verify_section(const SectionTriple& t, const std::string& uniformizer = "w");

// Marks a system whose first cycle_vars.size() equations have the cyclic shape
// P(..., z_i) - z_{i+1} (last one P(..., z_n) - mu z_1), so the distinguished
// square submatrix d(equations)/d(cycle_vars) has a closed-form determinant.
struct CyclicShape {
  std::vector<std::string> cycle_vars;
  RationalFunction mu;
};

struct JacobianReport {
  std::size_t rank = 0;
  bool rank_full = false;
  // Determinant of the distinguished cyclic submatrix, when requested.
  std::optional<RationalFunction> determinant_witness;
};

// Evaluates the Jacobian of the system at a point of the variety (WitnessError if
// the point fails any equation) and reports whether the rank equals the number of
// equations. Variables outside `unknowns` are parameters; every variable needs a
// value in `point` (values may be symbolic rational functions).
JacobianReport jacobian_check(const std::vector<MultiPoly>& system,
                              const std::vector<std::string>& unknowns,
                              const std::map<std::string, RationalFunction>& point,
                              const std::optional<CyclicShape>& cyclic = std::nullopt);

// The projective model of X_1'(N) used for the irreducibility witness, in the
// chart v = 1: equations z_i^3 - 3u^2 z_i + 2 - z_{i+1} s^2 (cyclic) and
// 3^N prod(z_i^2 - u^2) - l s^(2N), in variables (u, s, z_1, ..., z_N, l).
std::vector<MultiPoly> irreducibility_witness_system(unsigned N);
// The point [u, v, s, z_1, ..., z_N] = [1, 1, 0, 1, -2, ..., -2] in that chart,
// with the multiplier parameter left symbolic.
std::map<std::string, RationalFunction> irreducibility_witness_point(unsigned N);

}  // namespace dyncubic::dynamics
