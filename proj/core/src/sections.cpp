#include "dyncubic/sections.hpp"

#include <numeric>
#include <sstream>

#include "dyncubic/errors.hpp"

namespace dyncubic::sections {

using algebra::Rational;
using curves::CurvePoint;
using curves::ModelChange;
using curves::WeierstrassCurve;

namespace {

RationalFunction rf_const(long n) { return RationalFunction(n); }

RationalFunction rf_var(const std::string& name) {
  return RationalFunction(MultiPoly::variable(name));
}

FieldPtr zeta12_field() {
  static const FieldPtr f = algebra::make_field({1, 0, -1, 0, 1}, "z");
  return f;
}

const std::vector<Rational>& zeta12_min_poly() {
  static const std::vector<Rational> m{1, 0, -1, 0, 1};
  return m;
}

// Numerator and denominator coefficients pushed through an elementwise map.
template <typename F>
MultiPoly map_coeffs(const MultiPoly& p, const FieldPtr& field, F&& f) {
  std::vector<MultiPoly::Term> terms = p.terms();
  for (auto& t : terms) t.coeff = f(t.coeff);
  return MultiPoly::from_terms(p.vars(), std::move(terms), field);
}

}  // namespace

FieldPtr zeta24_field() {
  static const FieldPtr f = algebra::make_field({1, 0, 0, 0, -1, 0, 0, 0, 1}, "c");
  return f;
}

FieldElem zeta24(unsigned long k) { return FieldElem::gen_pow(zeta24_field(), k); }

FieldElem sqrt_minus_two() { return zeta24(3) + zeta24(5) - zeta24(1); }

FieldElem to_zeta24(const FieldElem& x) {
  const FieldPtr& big = zeta24_field();
  if (!x.field()) return FieldElem::in_field(big, x.to_rational());
  if (algebra::same_field(x.field(), big)) return x;
  if (x.field()->min_poly() != zeta12_min_poly())
    throw FieldError("no embedding of " + x.field()->gen_name() + "-field into Q(zeta_24)");
  FieldElem image = zeta24(2);
  FieldElem acc = FieldElem::in_field(big, 0);
  const std::vector<Rational>& co = x.coords();
  for (std::size_t i = co.size(); i-- > 0;)
    acc = acc * image + FieldElem::in_field(big, co[i]);
  return acc;
}

RationalFunction to_zeta24(const RationalFunction& f) {
  const FieldPtr& big = zeta24_field();
  auto lift = [](const FieldElem& c) { return to_zeta24(c); };
  return RationalFunction(map_coeffs(f.num(), big, lift), map_coeffs(f.den(), big, lift));
}

SectionTriple n1_section(const RationalFunction& s, const std::string& uniformizer) {
  RationalFunction w = rf_var(uniformizer);
  SectionTriple t;
  t.a = rf_const(-27) * s * s + w;
  t.b = rf_const(-54) * s * s * s - rf_const(3) * s + rf_const(3) * w * s;
  t.z1 = rf_const(-3) * s;
  t.m = 1;
  t.N = 1;
  return t;
}

MWElement::MWElement(long p_, long r1_, long r2_, long t1_, long t2_)
    : p(p_),
      r1(r1_),
      r2(r2_),
      t1(static_cast<int>(((t1_ % 2) + 2) % 2)),
      t2(static_cast<int>(((t2_ % 2) + 2) % 2)) {}

MWElement MWElement::operator+(const MWElement& o) const {
  return MWElement(p + o.p, r1 + o.r1, r2 + o.r2, t1 + o.t1, t2 + o.t2);
}

MWElement MWElement::operator-() const { return MWElement(-p, -r1, -r2, t1, t2); }

bool MWElement::operator==(const MWElement& o) const {
  return p == o.p && r1 == o.r1 && r2 == o.r2 && t1 == o.t1 && t2 == o.t2;
}

std::string MWElement::to_string() const {
  std::ostringstream out;
  out << "(" << p << ", " << r1 << ", " << r2 << "; " << t1 << ", " << t2 << ")";
  return out.str();
}

namespace {

struct MWCatalog {
  WeierstrassCurve split_curve;
  WeierstrassCurve short_curve;
  std::array<CurvePoint, 5> split_gens;
  std::array<CurvePoint, 5> short_gens;
};

const MWCatalog& mw_catalog() {
  static const MWCatalog cat = [] {
    const FieldPtr f = zeta12_field();
    auto pt = [&](const std::string& x, const std::string& y) {
      return CurvePoint(RationalFunction(algebra::parse_poly(x, {"t"}, f)),
                        RationalFunction(algebra::parse_poly(y, {"t"}, f)));
    };
    WeierstrassCurve split = curves::base_extend(curves::e0_curve(), 12);
    ModelChange to_short = curves::change_model(split, RationalFunction(3), RationalFunction(6));
    std::array<CurvePoint, 5> gens{
        pt("-1 + (z^9 - 1)*t^3 + z^9*t^6", "(1 - z^9)*(t^3 + z^9)*(t^3 + 1)*t^3"),
        pt("t^4 - 1", "z^9*t^4*(t^4 - 1)"),
        pt("z^4*t^4 - 1", "z*t^4*(z^4*t^4 - 1)"),
        pt("0", "0"),
        pt("-1 + t^6", "0"),
    };
    std::array<CurvePoint, 5> short_gens{
        to_short.transport(gens[0]), to_short.transport(gens[1]),
        to_short.transport(gens[2]), to_short.transport(gens[3]),
        to_short.transport(gens[4]),
    };
    return MWCatalog{std::move(split), std::move(to_short.curve), std::move(gens),
                     std::move(short_gens)};
  }();
  return cat;
}

}  // namespace

const WeierstrassCurve& mw_curve(MWModel model) {
  return model == MWModel::split ? mw_catalog().split_curve : mw_catalog().short_curve;
}

const std::array<CurvePoint, 5>& mw_generators(MWModel model) {
  return model == MWModel::split ? mw_catalog().split_gens : mw_catalog().short_gens;
}

CurvePoint mw_point(const MWElement& e, MWModel model) {
  const WeierstrassCurve& curve = mw_curve(model);
  const std::array<CurvePoint, 5>& g = mw_generators(model);
  long coeffs[5] = {e.p, e.r1, e.r2, e.t1, e.t2};
  CurvePoint acc = CurvePoint::infinity();
  for (int i = 0; i < 5; ++i) {
    if (coeffs[i] == 0) continue;
    acc = curves::group_law(curve, acc, curves::scalar_mul(curve, coeffs[i], g[i]));
  }
  return acc;
}

const MultiPoly& x0_plane_model() {
  static const MultiPoly r = algebra::parse_poly(
      "729 + 972*a - 432*a^3 - 108*a^4 + 48*a^5 + 16*a^6 + 1458*b^2 + 1215*b^2*a"
      " + 324*b^2*a^2 + 216*b^2*a^3 + 729*b^4 - 243*l - 216*l*a + 48*l*a^3 + 12*l*a^4"
      " - 162*l*b^2 + 81*a*l*b^2 + 27*l^2 + 12*a*l^2 - l^3",
      {"a", "b", "l"});
  return r;
}

std::pair<RationalFunction, RationalFunction> point_to_ab(const CurvePoint& q,
                                                          const RationalFunction& lambda) {
  if (q.is_infinity())
    throw PoleError("the coefficient formulas have a pole at infinity");
  RationalFunction u = to_zeta24(q.x());
  RationalFunction v = to_zeta24(q.y());
  RationalFunction lam = to_zeta24(lambda);
  if (u.is_zero()) throw PoleError("the coefficient formulas have a pole at (0, 0)");
  RationalFunction sigma(sqrt_minus_two());
  RationalFunction a =
      (rf_const(4) * u * u - rf_const(4) * u + rf_const(1) - lam) / (rf_const(6) * u);
  RationalFunction b = sigma * (rf_const(8) * u * u + rf_const(16) * u + lam - rf_const(1)) *
                       v / (rf_const(54) * u * u);
  return {a, b};
}

SectionTriple e1_point_to_triple(const CurvePoint& q, unsigned m,
                                 const std::string& uniformizer) {
  if (m == 0) throw ArgumentError("the root order m must be positive");
  if (q.is_infinity()) throw PoleError("the section formulas have a pole at infinity");
  RationalFunction d = to_zeta24(q.x());
  RationalFunction e = to_zeta24(q.y());
  if (e.is_zero()) throw PoleError("the section formulas have a pole where e = 0");
  RationalFunction lam = rf_var(uniformizer).pow(static_cast<long>(m));
  RationalFunction u = e * e / (rf_const(4) * d * d);
  RationalFunction v = e * (d * d - rf_const(4) * lam) / (rf_const(8) * d * d);
  auto [a, b] = point_to_ab(CurvePoint(u, v), lam);
  RationalFunction sigma(sqrt_minus_two());
  SectionTriple t;
  t.a = a;
  t.b = b;
  t.z1 = -sigma * (d * d - rf_const(6) * d + rf_const(8) * lam) / (rf_const(6) * e);
  t.m = m;
  t.N = 2;
  return t;
}

namespace {

long support_gcd(const MultiPoly& p, const std::string& var, long acc) {
  const std::vector<std::string>& vars = p.vars();
  std::size_t idx = vars.size();
  for (std::size_t i = 0; i < vars.size(); ++i)
    if (vars[i] == var) idx = i;
  if (idx == vars.size()) return acc;  // the variable does not occur at all
  for (const MultiPoly::Term& t : p.terms())
    acc = std::gcd(acc, static_cast<long>(t.exp[idx]));
  return acc;
}

}  // namespace

long detect_root_order(const SectionTriple& t, const std::string& uniformizer) {
  long g = 0;
  for (const RationalFunction* f : {&t.a, &t.b, &t.z1}) {
    g = support_gcd(f->num(), uniformizer, g);
    g = support_gcd(f->den(), uniformizer, g);
  }
  return std::gcd(g, static_cast<long>(t.m));
}

}  // namespace dyncubic::sections
