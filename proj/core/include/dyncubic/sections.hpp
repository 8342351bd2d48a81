#pragma once

#include <array>
#include <string>
#include <utility>

#include "dyncubic/curves.hpp"
#include "dyncubic/dynamics.hpp"

namespace dyncubic::sections {

using algebra::FieldElem;
using algebra::FieldPtr;
using algebra::MultiPoly;
using algebra::RationalFunction;
using dynamics::SectionTriple;

// Q(zeta_24), minimal polynomial X^8 - X^4 + 1, generator "c": the universal
// constant field for section triples. It contains zeta_12 = c^2 and
// sqrt(-2) = c^3 + c^5 - c.
FieldPtr zeta24_field();
FieldElem zeta24(unsigned long k);  // c^k reduced into the power basis
FieldElem sqrt_minus_two();

// Coefficient embedding into Q(zeta_24): rationals are promoted, elements of
// Q(zeta_12) (minimal polynomial X^4 - X^2 + 1) go through z -> c^2, and
// elements already there pass unchanged. FieldError for any other field.
FieldElem to_zeta24(const FieldElem& x);
RationalFunction to_zeta24(const RationalFunction& f);

// The period-1 family with marked fixed point -3s and multiplier w:
//   a = -27 s^2 + w,  b = -54 s^3 - 3 s + 3 w s,  z1 = -3 s,
// for any rational function s of the uniformizer.
SectionTriple n1_section(const RationalFunction& s, const std::string& uniformizer = "w");

// Integer coordinates on the rank-3 free part (P, R1, R2) plus the torsion bits
// (T1, T2) of the group of points rational over C(t) with t^12 = lambda.
struct MWElement {
  long p = 0, r1 = 0, r2 = 0;
  int t1 = 0, t2 = 0;

  MWElement() = default;
  MWElement(long p_, long r1_, long r2_, long t1_, long t2_);  // bits reduced mod 2

  MWElement operator+(const MWElement& o) const;
  MWElement operator-() const;
  bool operator==(const MWElement& o) const;
  std::string to_string() const;
};

// The two catalog models after the twelfth-power base change: the split form
// v^2 = u(u^2 + 2u + 1 - t^12) and the short form
// y^2 = x^3 - 27(1 + 3t^12)x - 54(1 - 9t^12), linked by x = 9u + 6, y = 27v.
enum class MWModel { split, short_form };

const curves::WeierstrassCurve& mw_curve(MWModel model);
// P, R1, R2, T1, T2 in that order, coordinates over Q(zeta_12) with generator "z".
const std::array<curves::CurvePoint, 5>& mw_generators(MWModel model);
// m1 P + m2 R1 + m3 R2 + e1 T1 + e2 T2 by the group law.
curves::CurvePoint mw_point(const MWElement& e, MWModel model = MWModel::split);

// Polynomial in (a, b, l) cutting out the plane curve swept by the coefficient
// pairs of cubics carrying a 2-cycle of multiplier l.
const MultiPoly& x0_plane_model();

// The cubic coefficients attached to a point (u, v) on the split model:
//   a = (4u^2 - 4u + 1 - lambda) / (6u),
//   b = sqrt(-2) (8u^2 + 16u + lambda - 1) v / (54 u^2).
// `lambda` names the multiplier as a function of the coordinate variables ("l"
// on the generic curve, t^12 after base change). Inputs are embedded into
// Q(zeta_24) first. PoleError at infinity and at (0, 0).
std::pair<RationalFunction, RationalFunction> point_to_ab(const curves::CurvePoint& q,
                                                          const RationalFunction& lambda);

// The period-2 triple attached to a point (d, e) on the 2-isogenous model
// e^2 = d(d^2 - 4d + 4 lambda) with lambda = w^m: the isogeny
// (u, v) = (e^2/(4d^2), e(d^2 - 4 lambda)/(8d^2)) feeds the coefficient
// formulas, and the marked cycle point is
//   z1 = -sqrt(-2) (d^2 - 6d + 8 lambda) / (6 e).
// PoleError at infinity and wherever e = 0.
SectionTriple e1_point_to_triple(const curves::CurvePoint& q, unsigned m,
                                 const std::string& uniformizer = "w");

// Largest divisor d of t.m such that a, b and z1 are all functions of w^d,
// read off the exponent support of the reduced numerators and denominators.
// The triple is primitive exactly when this returns 1.
long detect_root_order(const SectionTriple& t, const std::string& uniformizer = "w");

}  // namespace dyncubic::sections
