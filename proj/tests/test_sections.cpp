#include "doctest.h"

#include <string>
#include <utility>
#include <vector>

#include "dyncubic/curves.hpp"
#include "dyncubic/dynamics.hpp"
#include "dyncubic/errors.hpp"
#include "dyncubic/sections.hpp"

using namespace dyncubic;
using algebra::FieldElem;
using algebra::FieldPtr;
using algebra::MultiPoly;
using algebra::Rational;
using algebra::RationalFunction;
using curves::CurvePoint;
using sections::MWElement;
using sections::MWModel;
using sections::SectionTriple;

namespace {

RationalFunction rfw(const std::string& text, const FieldPtr& field = nullptr) {
  return RationalFunction(algebra::parse_poly(text, {"w"}, field));
}

RationalFunction rft(const std::string& text, const FieldPtr& field = nullptr) {
  return RationalFunction(algebra::parse_poly(text, {"t"}, field));
}

bool reduces_to_zero(const curves::WeierstrassCurve& e, const RationalFunction& g,
                     const std::string& xvar, const std::string& yvar) {
  auto [ev, od] = curves::reduce_on_curve(e, RationalFunction(g.num()), xvar, yvar);
  return ev.is_zero() && od.is_zero();
}

}  // namespace

TEST_CASE("the constant field holds the needed radicals") {
  FieldElem sigma = sections::sqrt_minus_two();
  CHECK(sigma * sigma == FieldElem(Rational(-2)));
  CHECK(sections::zeta24(12) == FieldElem(Rational(-1)));
  CHECK(sections::zeta24(24).is_one());
  FieldElem i = sections::zeta24(6);
  CHECK(i * i == FieldElem(Rational(-1)));

  FieldPtr z12 = algebra::make_field({1, 0, -1, 0, 1}, "z");
  FieldElem z = FieldElem::generator(z12);
  CHECK(sections::to_zeta24(z) == sections::zeta24(2));
  // The embedding is a ring map: check it on a composite element.
  FieldElem mixed = z.pow(3) - FieldElem(Rational(5)) * z + FieldElem(Rational(2, 7));
  FieldElem image = sections::zeta24(6) - FieldElem(Rational(5)) * sections::zeta24(2) +
                    FieldElem(Rational(2, 7));
  CHECK(sections::to_zeta24(mixed) == image);
  CHECK(sections::to_zeta24(FieldElem(Rational(3, 4))) ==
        FieldElem::in_field(sections::zeta24_field(), Rational(3, 4)));

  FieldPtr other = algebra::make_field({2, 0, 1}, "q");
  CHECK_THROWS_AS(sections::to_zeta24(FieldElem::generator(other)), FieldError);
}

TEST_CASE("the period-1 family") {
  SectionTriple t0 = sections::n1_section(RationalFunction(0));
  CHECK(t0.a == rfw("w"));
  CHECK(t0.b.is_zero());
  CHECK(t0.z1.is_zero());
  CHECK(dynamics::verify_section(t0, "w").ok());

  SectionTriple t1 = sections::n1_section(RationalFunction(1));
  CHECK(t1.a == rfw("w - 27"));
  CHECK(t1.b == rfw("3*w - 57"));
  CHECK(t1.z1 == RationalFunction(-3));
  CHECK(dynamics::verify_section(t1, "w").ok());
  CHECK(sections::detect_root_order(t1) == 1);

  // Symbolic parameter: the whole family verifies at once, and f(z) - z splits
  // off the marked fixed point as a linear factor.
  std::vector<std::string> U{"z", "s", "w"};
  RationalFunction s(algebra::parse_poly("s", U));
  RationalFunction z(algebra::parse_poly("z", U));
  RationalFunction w(algebra::parse_poly("w", U));
  SectionTriple ts = sections::n1_section(s);
  CHECK(dynamics::verify_section(ts, "w").ok());
  RationalFunction lhs = z.pow(3) + ts.a * z + ts.b - z;
  RationalFunction rhs =
      (z + RationalFunction(3) * s) *
      (z * z - RationalFunction(3) * z * s - RationalFunction(18) * s * s -
       RationalFunction(1) + w);
  CHECK(lhs == rhs);
}

TEST_CASE("generators and combinations of the twelfth-power group") {
  for (MWModel model : {MWModel::split, MWModel::short_form}) {
    const curves::WeierstrassCurve& e = sections::mw_curve(model);
    for (const CurvePoint& g : sections::mw_generators(model)) CHECK(curves::on_curve(e, g));
  }

  FieldPtr f = algebra::make_field({1, 0, -1, 0, 1}, "z");
  CHECK(sections::mw_point(MWElement()).is_infinity());
  CHECK(sections::mw_point(MWElement(1, 0, 0, 0, 0)) == sections::mw_generators(MWModel::split)[0]);
  CHECK(sections::mw_point(MWElement(0, 0, 0, 1, 0)) == CurvePoint(rft("0", f), rft("0", f)));
  CHECK(sections::mw_point(MWElement(2, 0, 0, 0, 0)) == CurvePoint(rft("-1", f), rft("t^6", f)));
  CHECK(sections::mw_point(MWElement(2, 0, 0, 0, 0), MWModel::short_form) ==
        CurvePoint(rft("-3", f), rft("27*t^6", f)));
  CHECK(sections::mw_point(MWElement(0, 0, 0, 1, 1)) == CurvePoint(rft("-1 - t^6", f), rft("0", f)));

  // Torsion bits live mod 2 and the representation respects the group law.
  CHECK(MWElement(0, 0, 0, 1, 0) + MWElement(0, 0, 0, 1, 1) == MWElement(0, 0, 0, 0, 1));
  CHECK(-MWElement(1, -2, 0, 1, 0) == MWElement(-1, 2, 0, 1, 0));

  const curves::WeierstrassCurve& e12 = sections::mw_curve(MWModel::split);
  MWElement e1(1, 1, 0, 1, 0), e2(0, -1, 1, 0, 1);
  CHECK(sections::mw_point(e1 + e2) ==
        curves::group_law(e12, sections::mw_point(e1), sections::mw_point(e2)));
  MWElement e3(-1, 0, 1, 0, 0), e4(2, 0, -1, 1, 1);
  CHECK(sections::mw_point(e3 + e4) ==
        curves::group_law(e12, sections::mw_point(e3), sections::mw_point(e4)));

  // Desk-scale sweep: every small combination lands on the curve.
  for (long p = -1; p <= 1; ++p)
    for (long r1 = -1; r1 <= 1; ++r1)
      for (long r2 = -1; r2 <= 1; ++r2)
        for (int t1 = 0; t1 <= 1; ++t1) {
          CurvePoint q = sections::mw_point(MWElement(p, r1, r2, t1, (p + r1 + 100) % 2));
          CHECK((q.is_infinity() || curves::on_curve(e12, q)));
        }
}

TEST_CASE("coefficients of combinations satisfy the plane model") {
  const MultiPoly& r = sections::x0_plane_model();
  CHECK(r.term_count() == 20);
  CHECK(r.degree("a") == 6);
  CHECK(r.degree("b") == 4);
  CHECK(r.degree("l") == 3);

  RationalFunction lam = rft("t^12");
  std::vector<MWElement> picks{MWElement(1, 0, 0, 0, 0), MWElement(0, 1, 0, 0, 0),
                               MWElement(0, 0, 1, 0, 0), MWElement(0, 0, 0, 0, 1),
                               MWElement(2, 0, 0, 0, 0), MWElement(1, 1, 0, 0, 0),
                               MWElement(1, 0, -1, 1, 0)};
  for (const MWElement& e : picks) {
    CurvePoint q = sections::mw_point(e);
    auto [a, b] = sections::point_to_ab(q, lam);
    RationalFunction value =
        algebra::eval_poly(r, {{"a", a}, {"b", b}, {"l", lam}});
    CHECK(value.is_zero());
  }

  // The two excluded points do not give cubics.
  CHECK_THROWS_AS(sections::point_to_ab(CurvePoint::infinity(), lam), PoleError);
  CHECK_THROWS_AS(sections::point_to_ab(sections::mw_point(MWElement(0, 0, 0, 1, 0)), lam),
                  PoleError);
}

TEST_CASE("the coefficient map lands on the plane model symbolically") {
  std::vector<std::string> U{"l", "u", "v"};
  RationalFunction u(algebra::parse_poly("u", U));
  RationalFunction v(algebra::parse_poly("v", U));
  RationalFunction l(algebra::parse_poly("l", U));
  auto [a, b] = sections::point_to_ab(CurvePoint(u, v), l);
  RationalFunction value = algebra::eval_poly(sections::x0_plane_model(),
                                              {{"a", a}, {"b", b}, {"l", l}});
  CHECK(reduces_to_zero(curves::e0_curve(), value, "u", "v"));
}

TEST_CASE("the resultant of the period-2 system is the plane model squared") {
  MultiPoly phi2 = dynamics::dynatomic(2);
  MultiPoly mult = dynamics::multiplier_poly(2);
  MultiPoly lam = MultiPoly::variable("l", {"a", "b", "z", "l"});
  MultiPoly res = algebra::resultant(phi2.aligned({"a", "b", "z", "l"}, nullptr),
                                     mult.aligned({"a", "b", "z", "l"}, nullptr) - lam, "z");
  MultiPoly r2 = sections::x0_plane_model() * sections::x0_plane_model();
  MultiPoly ratio = res.exact_div(r2.aligned(res.vars(), nullptr));
  CHECK(ratio.is_constant());
  CHECK_FALSE(ratio.constant_value().is_zero());
  CHECK(ratio.constant_value().is_rational());
}

namespace {

// Value ev + od*e in the coordinate ring of e^2 = g(d): keeping the arithmetic
// in this basis avoids trivariate blowup while reducing modulo the relation.
struct CurveValue {
  RationalFunction ev, od;
};

std::pair<RationalFunction, RationalFunction> split_even_odd(const MultiPoly& p,
                                                             const RationalFunction& g) {
  std::vector<MultiPoly> cs = p.coeffs_in("e");
  RationalFunction ev(0), od(0);
  for (std::size_t k = 0; k < cs.size(); ++k) {
    RationalFunction term = RationalFunction(cs[k]) * g.pow(static_cast<long>(k / 2));
    if (k % 2 == 0)
      ev = ev + term;
    else
      od = od + term;
  }
  return {ev, od};
}

CurveValue on_quadric(const RationalFunction& f, const RationalFunction& g) {
  auto [nev, nod] = split_even_odd(f.num(), g);
  auto [dev, dod] = split_even_odd(f.den(), g);
  RationalFunction den = dev * dev - dod * dod * g;
  return CurveValue{(nev * dev - nod * dod * g) / den, (nod * dev - nev * dod) / den};
}

CurveValue qmul(const CurveValue& p, const CurveValue& q, const RationalFunction& g) {
  return CurveValue{p.ev * q.ev + p.od * q.od * g, p.ev * q.od + p.od * q.ev};
}

CurveValue qpow(const CurveValue& p, unsigned k, const RationalFunction& g) {
  CurveValue acc{RationalFunction(1), RationalFunction(0)};
  for (unsigned i = 0; i < k; ++i) acc = qmul(acc, p, g);
  return acc;
}

// Evaluates a polynomial in (a, b, z) at curve values, reduced along e^2 = g.
CurveValue qeval(const MultiPoly& p, const CurveValue& a, const CurveValue& b,
                 const CurveValue& z, const RationalFunction& g) {
  CurveValue acc{RationalFunction(0), RationalFunction(0)};
  for (const MultiPoly::Term& t : p.terms()) {
    CurveValue term{RationalFunction(MultiPoly::constant(t.coeff)), RationalFunction(0)};
    term = qmul(term, qpow(a, t.exp[0], g), g);
    term = qmul(term, qpow(b, t.exp[1], g), g);
    term = qmul(term, qpow(z, t.exp[2], g), g);
    acc.ev = acc.ev + term.ev;
    acc.od = acc.od + term.od;
  }
  return acc;
}

}  // namespace

TEST_CASE("period-2 triples from points of the isogenous curve") {
  // Symbolic point: the triple verifies modulo the curve relation.
  std::vector<std::string> U{"w", "d", "e"};
  RationalFunction d(algebra::parse_poly("d", U));
  RationalFunction e(algebra::parse_poly("e", U));
  SectionTriple t = sections::e1_point_to_triple(CurvePoint(d, e), 1);
  CHECK(t.N == 2);

  // e^2 = d(d^2 - 4d + 4w) on the isogenous model with lambda = w.
  RationalFunction g =
      d * (d * d - RationalFunction(4) * d + RationalFunction(4) * rfw("w"));
  CurveValue a = on_quadric(t.a, g);
  CurveValue b = on_quadric(t.b, g);
  CurveValue z = on_quadric(t.z1, g);

  MultiPoly phi2 = dynamics::dynatomic(2);
  REQUIRE(phi2.vars() == std::vector<std::string>{"a", "b", "z"});
  CurveValue phi_val = qeval(phi2, a, b, z, g);
  CHECK(phi_val.ev.is_zero());
  CHECK(phi_val.od.is_zero());

  CurveValue mult_val = qeval(dynamics::multiplier_poly(2), a, b, z, g);
  CHECK(mult_val.ev == rfw("w"));
  CHECK(mult_val.od.is_zero());

  CHECK_THROWS_AS(sections::e1_point_to_triple(CurvePoint::infinity(), 1), PoleError);
  CHECK_THROWS_AS(sections::e1_point_to_triple(CurvePoint(rfw("4*w"), rfw("0")), 1), PoleError);
  CHECK_THROWS_AS(sections::e1_point_to_triple(CurvePoint(d, e), 0), ArgumentError);
}

TEST_CASE("the square-root example of period 2") {
  FieldPtr f24 = sections::zeta24_field();
  FieldElem sigma = sections::sqrt_minus_two();
  FieldElem i = sections::zeta24(6);

  // f(z) = z^3 + (w^2-9)/6 z + sqrt(-2)(w^2-9)w/54 with marked period-2 point
  // -sqrt(-2)(w + 3i)/6 and multiplier w^2.
  SectionTriple intro;
  intro.a = rfw("(1/6)*w^2 - 3/2", f24);
  intro.b = RationalFunction(
      algebra::parse_poly("w^3 - 9*w", {"w"}, f24).scaled(sigma / FieldElem(54)));
  intro.z1 = RationalFunction(
      (algebra::parse_poly("w", {"w"}, f24) +
       MultiPoly::constant(FieldElem(3) * i, {"w"}))
          .scaled(-sigma / FieldElem(6)));
  intro.m = 2;
  intro.N = 2;
  CHECK(dynamics::verify_section(intro, "w").ok());
  CHECK(sections::detect_root_order(intro) == 1);

  // It arises from an explicit point on the isogenous curve with lambda = w^2.
  CurvePoint q(RationalFunction(
                   algebra::parse_poly("w", {"w"}, f24).scaled(FieldElem(-2) * i)),
               rfw("4*w", f24));
  SectionTriple from_e1 = sections::e1_point_to_triple(q, 2);
  CHECK(from_e1.a == intro.a);
  CHECK(from_e1.b == intro.b);
  CHECK(from_e1.z1 == intro.z1);
  CHECK(dynamics::verify_section(from_e1, "w").ok());

  // Precomposing with another square root doubles the detected factor.
  SectionTriple doubled;
  doubled.a = intro.a.substitute("w", rfw("w^2", f24));
  doubled.b = intro.b.substitute("w", rfw("w^2", f24));
  doubled.z1 = intro.z1.substitute("w", rfw("w^2", f24));
  doubled.m = 4;
  doubled.N = 2;
  CHECK(sections::detect_root_order(doubled) == 2);
}
