#pragma once

#include <vector>

#include "dyncubic/numberfield.hpp"

namespace dyncubic::modspace {

using algebra::FieldElem;

// A degree-d polynomial map together with its marked points, as coefficient
// data: coeffs holds a_0..a_d with a_d != 0.
struct MarkedMap {
  unsigned d = 0;
  std::vector<FieldElem> coeffs;
  std::vector<FieldElem> marked;
};

// Data determining a coefficient-recovery problem: the points z_1..z_M are
// grouped into consecutive marked cycles of the given lengths, and the top
// coefficients a_M..a_d are supplied directly.
struct CycleSpec {
  unsigned d = 0;
  std::vector<unsigned> cycle_lengths;
  std::vector<FieldElem> points;
  std::vector<FieldElem> tail;  // a_M..a_d
};

struct RecoveredMap {
  std::vector<FieldElem> coeffs;  // a_0..a_d
  // False when some marked cycle closes after fewer iterations than its
  // nominal length; the recovery itself is exact either way.
  bool exact_periods = true;
};

// Value of the coefficient vector a_0..a_d at z.
FieldElem eval_map(const std::vector<FieldElem>& coeffs, const FieldElem& z);

// Coefficients of phi . f . phi^{-1} for the affine map phi(z) = alpha z + beta
// with alpha != 0 (ArgumentError otherwise).
std::vector<FieldElem> conjugate_coeffs(const std::vector<FieldElem>& coeffs,
                                        const FieldElem& alpha, const FieldElem& beta);

// Solves the bordered Vandermonde system f(z_i) = z_{sigma(i)}, sigma rotating
// each marked cycle, for the unknown coefficients a_0..a_{M-1} by fraction-free
// elimination.  Throws SingularMatrixError on repeated points, DegreeError when
// the leading coefficient vanishes, ArgumentError on inconsistent dimensions.
RecoveredMap recover_coeffs(const CycleSpec& spec);

// Canonical representative of the affine-conjugation orbit.  With two or more
// marked points the first two are moved to 0 and 1; with one marked point it is
// moved to 0 and the quadratic coefficient scaled to 1; with none the map is
// brought to the form a_d z^d + a_{d-2} z^{d-2} + ... + a_1 z + 1 by moving the
// barycenter to 0 and the value there to 1.  Idempotent.  Throws
// NormalizationError on the excluded locus of the applicable recipe and
// DegreeError when the leading coefficient vanishes.
MarkedMap normalize_marked(const MarkedMap& m);

// Field-of-moduli invariants (a_1, a_0 a_2, a_0^2 a_3, ..., a_0^{d-3} a_{d-2},
// a_0^{d-1}) of a monic map z^d + a_{d-2} z^{d-2} + ... + a_1 z + a_0 with no
// z^{d-1} term; constant under conjugation by z -> zeta z with zeta^{d-1} = 1.
// Requires d >= 3, monic input, vanishing z^{d-1} coefficient (ArgumentError).
std::vector<FieldElem> moduli_invariants(const std::vector<FieldElem>& coeffs);

}  // namespace dyncubic::modspace
