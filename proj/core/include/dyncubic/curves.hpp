#pragma once

#include <string>
#include <vector>

#include "dyncubic/ratfunc.hpp"

namespace dyncubic::curves {

using algebra::RationalFunction;

// An elliptic curve
//
//   y^2 + a1*x*y + a3*y = x^3 + a2*x^2 + a4*x + a6
//
// whose coefficients are exact rational functions in the base parameters
// (typically the multiplier coordinate l, or a root t of l = t^n). The model
// must be nonsingular: a vanishing discriminant is rejected at construction.
class WeierstrassCurve {
 public:
  WeierstrassCurve(RationalFunction a1, RationalFunction a2, RationalFunction a3,
                   RationalFunction a4, RationalFunction a6);

  const RationalFunction& a1() const { return a1_; }
  const RationalFunction& a2() const { return a2_; }
  const RationalFunction& a3() const { return a3_; }
  const RationalFunction& a4() const { return a4_; }
  const RationalFunction& a6() const { return a6_; }

  RationalFunction b2() const;
  RationalFunction b4() const;
  RationalFunction b6() const;
  RationalFunction b8() const;
  RationalFunction c4() const;
  RationalFunction c6() const;
  const RationalFunction& discriminant() const { return disc_; }

  // True when a1 = a3 = 0, so the equation reads y^2 = x^3 + a2*x^2 + a4*x + a6.
  bool split_form() const;

  // x^3 + a2*x^2 + a4*x + a6 evaluated at the given x.
  RationalFunction rhs_at(const RationalFunction& x) const;

  std::string to_string() const;

 private:
  RationalFunction a1_, a2_, a3_, a4_, a6_;
  RationalFunction disc_;
};

// A point on a Weierstrass curve: affine exact coordinates, or the origin O of
// the group law (the point at infinity).
class CurvePoint {
 public:
  static CurvePoint infinity();
  CurvePoint(RationalFunction x, RationalFunction y);

  bool is_infinity() const { return infinity_; }
  const RationalFunction& x() const;  // ArgumentError on O
  const RationalFunction& y() const;

  bool operator==(const CurvePoint& o) const;
  bool operator!=(const CurvePoint& o) const { return !(*this == o); }

  std::string to_string() const;

 private:
  CurvePoint() : infinity_(true) {}
  bool infinity_;
  RationalFunction x_, y_;
};

bool on_curve(const WeierstrassCurve& e, const CurvePoint& p);

CurvePoint negate_point(const WeierstrassCurve& e, const CurvePoint& p);

// Chord-tangent addition. Both points must lie on the curve (WitnessError).
CurvePoint group_law(const WeierstrassCurve& e, const CurvePoint& p, const CurvePoint& q);

CurvePoint scalar_mul(const WeierstrassCurve& e, long m, const CurvePoint& p);

// The rational map in one variable sending x(Q) to x(mQ), built from division
// polynomials. Requires a model with a1 = a3 = 0 and m >= 1; the map variable
// must not already appear in the curve coefficients.
RationalFunction x_mult_map(const WeierstrassCurve& e, long m, const std::string& var = "x");

// Result of the substitution x = alpha^2*u + r, y = alpha^3*v: the model in
// (x, y) together with the induced bijection on points.
struct ModelChange {
  WeierstrassCurve curve;
  RationalFunction alpha, r;

  CurvePoint transport(const CurvePoint& p) const;    // (u, v) -> (x, y)
  CurvePoint untransport(const CurvePoint& p) const;  // (x, y) -> (u, v)
};

ModelChange change_model(const WeierstrassCurve& e, const RationalFunction& alpha,
                         const RationalFunction& r);

// A map between curves given by rational functions of the source coordinates,
// always written in the variables "x" and "y".
struct Isogeny {
  WeierstrassCurve source, target;
  RationalFunction x_map, y_map;
  std::vector<CurvePoint> kernel;
};

struct IsogenyReport {
  bool curve_identity = false;
  bool kernel_to_origin = false;
  bool ok() const { return curve_identity && kernel_to_origin; }
};

// Splits a function of the coordinates into ev + od*y, eliminating y^2 and all
// higher powers through the curve relation. The denominator must be free of the
// y-variable. Variable names are configurable so models written in other
// letters (u/v, d/e) can be reduced too.
std::pair<RationalFunction, RationalFunction> reduce_on_curve(const WeierstrassCurve& e,
                                                              const RationalFunction& g,
                                                              const std::string& xvar = "x",
                                                              const std::string& yvar = "y");

// Checks symbolically, modulo the source curve relation, that the isogeny maps
// the source into the target, and that every listed kernel point is sent to O.
// A nonzero residue in the curve identity raises VerificationError.
IsogenyReport verify_isogeny(const Isogeny& phi);

// The x-coordinate map with all powers of y eliminated through the source
// relation. ArgumentError when the map is not a function of x alone.
RationalFunction isogeny_x_only(const Isogeny& phi);

// The degree-2 isogeny with kernel {O, (0,0)} on a curve y^2 = x(x^2 + a2*x + a4),
// with image in the classical quotient model.
Isogeny two_isogeny(const WeierstrassCurve& e);

// Catalog models over the multiplier line, coefficients in the variable "l".
WeierstrassCurve e0_curve();        // v^2 = u(u^2 + 2u + 1 - l)
WeierstrassCurve e1_curve();        // e^2 = d(d^2 - 4d + 4l)
WeierstrassCurve e0_short_curve();  // y^2 = x^3 - 27(1+3l)x - 54(1-9l)

// The isogeny E1 -> E0 killing (0,0), in the coordinates of the two catalog
// models, and its dual.
Isogeny e1_to_e0_isogeny();
Isogeny e0_to_e1_dual();

// Substitutes a value for one coefficient parameter in every a-invariant.
WeierstrassCurve substitute_param(const WeierstrassCurve& e, const std::string& name,
                                  const RationalFunction& value);

// Substitutes l = t^n, pulling the curve back to the degree-n cover of the
// multiplier line.
WeierstrassCurve base_extend(const WeierstrassCurve& e, unsigned n,
                             const std::string& tvar = "t");

// x-coordinates in Q(t) of points of exact order ell on e after l = t^n.
// Candidates are read off from linear factors of the order-ell division
// polynomial modulo several primes, lifted, and kept only when they verify
// exactly; ell must be 2, 3 or 4 and the curve coefficients rational.
std::vector<RationalFunction> torsion_probe(const WeierstrassCurve& e, unsigned ell,
                                            unsigned n);

}  // namespace dyncubic::curves
