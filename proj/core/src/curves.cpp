#include "dyncubic/curves.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <random>

#include "dyncubic/bifactor.hpp"
#include "dyncubic/errors.hpp"
#include "dyncubic/gf.hpp"

namespace dyncubic::curves {

using algebra::FieldElem;
using algebra::Integer;
using algebra::MultiPoly;
using algebra::Rational;

namespace {

// All variables materialized inside this module share one declaration order, so
// that values built here always merge with each other and with parsed input.
RationalFunction rf_var(const std::string& name) {
  static const std::vector<std::string> kOrder = {"x", "y", "l", "t"};
  for (const std::string& v : kOrder)
    if (v == name) return RationalFunction(MultiPoly::variable(name, kOrder));
  return RationalFunction(MultiPoly::variable(name));
}

RationalFunction rf_const(long n) { return RationalFunction(n); }

}  // namespace

WeierstrassCurve::WeierstrassCurve(RationalFunction a1, RationalFunction a2,
                                   RationalFunction a3, RationalFunction a4,
                                   RationalFunction a6)
    : a1_(std::move(a1)),
      a2_(std::move(a2)),
      a3_(std::move(a3)),
      a4_(std::move(a4)),
      a6_(std::move(a6)) {
  RationalFunction B2 = b2(), B4 = b4(), B6 = b6(), B8 = b8();
  disc_ = -B2 * B2 * B8 - rf_const(8) * B4.pow(3) - rf_const(27) * B6 * B6 +
          rf_const(9) * B2 * B4 * B6;
  if (disc_.is_zero()) throw ArgumentError("singular Weierstrass model");
}

RationalFunction WeierstrassCurve::b2() const { return a1_ * a1_ + rf_const(4) * a2_; }
RationalFunction WeierstrassCurve::b4() const { return rf_const(2) * a4_ + a1_ * a3_; }
RationalFunction WeierstrassCurve::b6() const { return a3_ * a3_ + rf_const(4) * a6_; }
RationalFunction WeierstrassCurve::b8() const {
  return a1_ * a1_ * a6_ + rf_const(4) * a2_ * a6_ - a1_ * a3_ * a4_ + a2_ * a3_ * a3_ -
         a4_ * a4_;
}
RationalFunction WeierstrassCurve::c4() const {
  RationalFunction B2 = b2();
  return B2 * B2 - rf_const(24) * b4();
}
RationalFunction WeierstrassCurve::c6() const {
  RationalFunction B2 = b2();
  return -B2.pow(3) + rf_const(36) * B2 * b4() - rf_const(216) * b6();
}

bool WeierstrassCurve::split_form() const { return a1_.is_zero() && a3_.is_zero(); }

RationalFunction WeierstrassCurve::rhs_at(const RationalFunction& x) const {
  return x.pow(3) + a2_ * x * x + a4_ * x + a6_;
}

std::string WeierstrassCurve::to_string() const {
  return "[" + a1_.to_string() + ", " + a2_.to_string() + ", " + a3_.to_string() + ", " +
         a4_.to_string() + ", " + a6_.to_string() + "]";
}

CurvePoint CurvePoint::infinity() { return CurvePoint(); }

CurvePoint::CurvePoint(RationalFunction x, RationalFunction y)
    : infinity_(false), x_(std::move(x)), y_(std::move(y)) {}

const RationalFunction& CurvePoint::x() const {
  if (infinity_) throw ArgumentError("the point at infinity has no affine coordinates");
  return x_;
}

const RationalFunction& CurvePoint::y() const {
  if (infinity_) throw ArgumentError("the point at infinity has no affine coordinates");
  return y_;
}

bool CurvePoint::operator==(const CurvePoint& o) const {
  if (infinity_ || o.infinity_) return infinity_ == o.infinity_;
  return x_ == o.x_ && y_ == o.y_;
}

std::string CurvePoint::to_string() const {
  if (infinity_) return "O";
  return "(" + x_.to_string() + ", " + y_.to_string() + ")";
}

bool on_curve(const WeierstrassCurve& e, const CurvePoint& p) {
  if (p.is_infinity()) return true;
  RationalFunction lhs =
      p.y() * p.y() + e.a1() * p.x() * p.y() + e.a3() * p.y();
  return lhs == e.rhs_at(p.x());
}

CurvePoint negate_point(const WeierstrassCurve& e, const CurvePoint& p) {
  if (p.is_infinity()) return p;
  return CurvePoint(p.x(), -p.y() - e.a1() * p.x() - e.a3());
}

CurvePoint group_law(const WeierstrassCurve& e, const CurvePoint& p, const CurvePoint& q) {
  if (!on_curve(e, p)) throw WitnessError("left addend is not on the curve");
  if (!on_curve(e, q)) throw WitnessError("right addend is not on the curve");
  if (p.is_infinity()) return q;
  if (q.is_infinity()) return p;
  if (p.x() == q.x() && q.y() == -p.y() - e.a1() * p.x() - e.a3())
    return CurvePoint::infinity();

  RationalFunction lam;
  if (p == q) {
    RationalFunction d = rf_const(2) * p.y() + e.a1() * p.x() + e.a3();
    lam = (rf_const(3) * p.x() * p.x() + rf_const(2) * e.a2() * p.x() + e.a4() -
           e.a1() * p.y()) /
          d;
  } else {
    lam = (q.y() - p.y()) / (q.x() - p.x());
  }
  RationalFunction nu = p.y() - lam * p.x();
  RationalFunction x3 = lam * lam + e.a1() * lam - e.a2() - p.x() - q.x();
  RationalFunction y3 = -(lam + e.a1()) * x3 - nu - e.a3();
  return CurvePoint(x3, y3);
}

CurvePoint scalar_mul(const WeierstrassCurve& e, long m, const CurvePoint& p) {
  if (!on_curve(e, p)) throw WitnessError("point is not on the curve");
  if (m < 0) return scalar_mul(e, -m, negate_point(e, p));
  CurvePoint acc = CurvePoint::infinity();
  for (int bit = 62; bit >= 0; --bit) {
    if (!acc.is_infinity()) acc = group_law(e, acc, acc);
    if ((m >> bit) & 1) acc = group_law(e, acc, p);
  }
  return acc;
}

namespace {

// Division polynomials on y^2 = f(x) are tracked as ev(x) + od(x)*y, with every
// product reduced through y^2 = f.
struct YPair {
  RationalFunction ev, od;
};

YPair yp_mul(const YPair& a, const YPair& b, const RationalFunction& f) {
  return {a.ev * b.ev + a.od * b.od * f, a.ev * b.od + a.od * b.ev};
}

YPair yp_sub(const YPair& a, const YPair& b) { return {a.ev - b.ev, a.od - b.od}; }

YPair yp_div_2y(const YPair& a, const RationalFunction& f) {
  return {a.od / rf_const(2), a.ev / (rf_const(2) * f)};
}

}  // namespace

RationalFunction x_mult_map(const WeierstrassCurve& e, long m, const std::string& var) {
  if (m <= 0) throw ArgumentError("multiplication maps need m >= 1");
  if (!e.split_form())
    throw ArgumentError("multiplication maps need a model with a1 = a3 = 0");
  for (const RationalFunction* c : {&e.a2(), &e.a4(), &e.a6()})
    if (c->num().depends_on(var) || c->den().depends_on(var))
      throw ArgumentError("map variable collides with a curve coefficient");
  RationalFunction x = rf_var(var);
  if (m == 1) return x;

  RationalFunction f = e.rhs_at(x);
  RationalFunction B2 = e.b2(), B4 = e.b4(), B6 = e.b6(), B8 = e.b8();
  std::vector<YPair> psi(static_cast<std::size_t>(m) + 2);
  psi[0] = {rf_const(0), rf_const(0)};
  psi[1] = {rf_const(1), rf_const(0)};
  psi[2] = {rf_const(0), rf_const(2)};
  psi[3] = {rf_const(3) * x.pow(4) + B2 * x.pow(3) + rf_const(3) * B4 * x * x +
                rf_const(3) * B6 * x + B8,
            rf_const(0)};
  if (m >= 3)
    psi[4] = {rf_const(0),
              rf_const(2) * (rf_const(2) * x.pow(6) + B2 * x.pow(5) +
                             rf_const(5) * B4 * x.pow(4) + rf_const(10) * B6 * x.pow(3) +
                             rf_const(10) * B8 * x * x + (B2 * B8 - B4 * B6) * x +
                             (B4 * B8 - B6 * B6))};
  for (long n = 5; n <= m + 1; ++n) {
    std::size_t k = static_cast<std::size_t>(n / 2);
    if (n % 2 == 1) {
      YPair k3 = yp_mul(yp_mul(psi[k], psi[k], f), psi[k], f);
      YPair k13 = yp_mul(yp_mul(psi[k + 1], psi[k + 1], f), psi[k + 1], f);
      psi[n] = yp_sub(yp_mul(psi[k + 2], k3, f), yp_mul(psi[k - 1], k13, f));
    } else {
      YPair left = yp_mul(psi[k + 2], yp_mul(psi[k - 1], psi[k - 1], f), f);
      YPair right = yp_mul(psi[k - 2], yp_mul(psi[k + 1], psi[k + 1], f), f);
      psi[n] = yp_div_2y(yp_mul(psi[k], yp_sub(left, right), f), f);
    }
  }

  std::size_t mm = static_cast<std::size_t>(m);
  YPair num = yp_mul(psi[mm - 1], psi[mm + 1], f);
  YPair den = yp_mul(psi[mm], psi[mm], f);
  if (!num.od.is_zero() || !den.od.is_zero())
    throw InternalError("multiplication map failed to eliminate y");
  return x - num.ev / den.ev;
}

ModelChange change_model(const WeierstrassCurve& e, const RationalFunction& alpha,
                         const RationalFunction& r) {
  if (alpha.is_zero()) throw ArgumentError("model change needs alpha != 0");
  RationalFunction a2 = alpha * alpha, a3 = a2 * alpha, a4 = a2 * a2, a6 = a4 * a2;
  WeierstrassCurve out(
      e.a1() * alpha, e.a2() * a2 - rf_const(3) * r, e.a3() * a3 - e.a1() * alpha * r,
      e.a4() * a4 - rf_const(2) * e.a2() * a2 * r + rf_const(3) * r * r,
      e.a6() * a6 - e.a4() * a4 * r + e.a2() * a2 * r * r - r.pow(3));
  return ModelChange{out, alpha, r};
}

CurvePoint ModelChange::transport(const CurvePoint& p) const {
  if (p.is_infinity()) return p;
  return CurvePoint(alpha * alpha * p.x() + r, alpha.pow(3) * p.y());
}

CurvePoint ModelChange::untransport(const CurvePoint& p) const {
  if (p.is_infinity()) return p;
  return CurvePoint((p.x() - r) / (alpha * alpha), p.y() / alpha.pow(3));
}

std::pair<RationalFunction, RationalFunction> reduce_on_curve(const WeierstrassCurve& e,
                                                              const RationalFunction& g,
                                                              const std::string& xvar,
                                                              const std::string& yvar) {
  if (g.den().depends_on(yvar))
    throw ArgumentError("cannot reduce a function with " + yvar + " in the denominator");
  RationalFunction x = rf_var(xvar);
  RationalFunction A = e.a1() * x + e.a3();
  RationalFunction B = -e.rhs_at(x);
  std::vector<MultiPoly> raw = g.num().coeffs_in(yvar);
  std::vector<RationalFunction> c;
  c.reserve(raw.size());
  for (auto& p : raw) c.emplace_back(RationalFunction(p) / RationalFunction(g.den()));
  for (std::size_t i = c.size(); i-- > 2;) {
    c[i - 1] = c[i - 1] - c[i] * A;
    c[i - 2] = c[i - 2] - c[i] * B;
    c[i] = rf_const(0);
  }
  RationalFunction ev = c.empty() ? rf_const(0) : c[0];
  RationalFunction od = c.size() > 1 ? c[1] : rf_const(0);
  return {ev, od};
}

IsogenyReport verify_isogeny(const Isogeny& phi) {
  const WeierstrassCurve& t = phi.target;
  RationalFunction image = phi.y_map * phi.y_map + t.a1() * phi.x_map * phi.y_map +
                           t.a3() * phi.y_map - t.rhs_at(phi.x_map);
  auto [ev, od] = reduce_on_curve(phi.source, image);
  if (!ev.is_zero() || !od.is_zero()) {
    RationalFunction residue = ev.is_zero() ? od : ev;
    throw VerificationError("isogeny image misses the target curve, residue " +
                            residue.to_string());
  }

  IsogenyReport report;
  report.curve_identity = true;
  report.kernel_to_origin = true;
  for (const CurvePoint& k : phi.kernel) {
    if (k.is_infinity()) continue;
    if (!on_curve(phi.source, k)) throw WitnessError("kernel point is not on the source");
    bool pole = RationalFunction(phi.x_map.den())
                    .substitute("x", k.x())
                    .substitute("y", k.y())
                    .is_zero();
    if (!pole) report.kernel_to_origin = false;
  }
  return report;
}

RationalFunction isogeny_x_only(const Isogeny& phi) {
  auto [nev, nod] = reduce_on_curve(phi.source, RationalFunction(phi.x_map.num()));
  if (phi.x_map.den().depends_on("y") || !nod.is_zero())
    throw ArgumentError("x-coordinate map does not descend to a function of x");
  return nev / RationalFunction(phi.x_map.den());
}

Isogeny two_isogeny(const WeierstrassCurve& e) {
  if (!e.split_form() || !e.a6().is_zero())
    throw ArgumentError("two_isogeny needs a model y^2 = x(x^2 + a2*x + a4)");
  if (e.a4().is_zero()) throw ArgumentError("(0,0) is singular on this model");
  RationalFunction x = rf_var("x"), y = rf_var("y");
  RationalFunction a2 = e.a2(), a4 = e.a4();
  WeierstrassCurve image(rf_const(0), rf_const(-2) * a2, rf_const(0),
                         a2 * a2 - rf_const(4) * a4, rf_const(0));
  Isogeny phi{e, image, (x * x + a2 * x + a4) / x, y * (x * x - a4) / (x * x),
              {CurvePoint(rf_const(0), rf_const(0))}};
  return phi;
}

WeierstrassCurve e0_curve() {
  RationalFunction l = rf_var("l");
  return WeierstrassCurve(rf_const(0), rf_const(2), rf_const(0), rf_const(1) - l,
                          rf_const(0));
}

WeierstrassCurve e1_curve() {
  RationalFunction l = rf_var("l");
  return WeierstrassCurve(rf_const(0), rf_const(-4), rf_const(0), rf_const(4) * l,
                          rf_const(0));
}

WeierstrassCurve e0_short_curve() {
  RationalFunction l = rf_var("l");
  return WeierstrassCurve(rf_const(0), rf_const(0), rf_const(0),
                          rf_const(-27) - rf_const(81) * l,
                          rf_const(-54) + rf_const(486) * l);
}

Isogeny e1_to_e0_isogeny() {
  RationalFunction x = rf_var("x"), y = rf_var("y"), l = rf_var("l");
  return Isogeny{e1_curve(), e0_curve(), (y * y) / (rf_const(4) * x * x),
                 y * (x * x - rf_const(4) * l) / (rf_const(8) * x * x),
                 {CurvePoint(rf_const(0), rf_const(0))}};
}

Isogeny e0_to_e1_dual() {
  Isogeny phi = two_isogeny(e0_curve());
  phi.target = e1_curve();
  return phi;
}

WeierstrassCurve substitute_param(const WeierstrassCurve& e, const std::string& name,
                                  const RationalFunction& value) {
  return WeierstrassCurve(e.a1().substitute(name, value), e.a2().substitute(name, value),
                          e.a3().substitute(name, value), e.a4().substitute(name, value),
                          e.a6().substitute(name, value));
}

WeierstrassCurve base_extend(const WeierstrassCurve& e, unsigned n,
                             const std::string& tvar) {
  if (n == 0) throw ArgumentError("base extension degree must be positive");
  return substitute_param(e, "l", rf_var(tvar).pow(n));
}

namespace {

std::optional<Rational> rational_lift(gf::u64 a, gf::u64 p) {
  long bound = static_cast<long>(std::sqrt(static_cast<double>(p) / 2.0));
  long r0 = static_cast<long>(p), r1 = static_cast<long>(a % p);
  long s0 = 0, s1 = 1;
  while (r1 > bound) {
    long q = r0 / r1;
    long r2 = r0 - q * r1;
    long s2 = s0 - q * s1;
    r0 = r1;
    r1 = r2;
    s0 = s1;
    s1 = s2;
  }
  if (s1 == 0 || std::abs(s1) > bound) return std::nullopt;
  long num = s1 > 0 ? r1 : -r1;
  return Rational(Integer(num), Integer(std::abs(s1)));
}

std::optional<MultiPoly> lift_gfpoly(const gf::GFPoly& g, const std::string& tvar) {
  MultiPoly t = MultiPoly::variable(tvar);
  MultiPoly out = MultiPoly::zero({tvar});
  MultiPoly tp = MultiPoly::constant(FieldElem(1), {tvar});
  for (long i = 0; i <= g.deg(); ++i) {
    auto c = rational_lift(g.c[static_cast<std::size_t>(i)].prime_value(), g.ctx->p);
    if (!c) return std::nullopt;
    out = out + tp.scaled(FieldElem(*c));
    tp = tp * t;
  }
  return out;
}

std::optional<bifactor::BiPoly> reduce_to_bipoly(const MultiPoly& p,
                                                 const gf::GFCtxPtr& ctx,
                                                 const std::string& tvar) {
  std::vector<gf::GFPoly> rows;
  for (const MultiPoly& coeff : p.coeffs_in("x")) {
    MultiPoly c = coeff.aligned({tvar}, nullptr);
    std::vector<gf::GFElem> row;
    for (const MultiPoly& cc : c.coeffs_in(tvar)) {
      if (!cc.is_constant()) return std::nullopt;
      FieldElem v = cc.constant_value();
      if (!v.is_rational()) return std::nullopt;
      try {
        row.push_back(gf::GFElem::from_rational(ctx, v.to_rational()));
      } catch (const DivisionError&) {
        return std::nullopt;
      }
    }
    rows.push_back(gf::gp_from(ctx, std::move(row)));
  }
  return bifactor::bp_from(ctx, std::move(rows));
}

}  // namespace

std::vector<RationalFunction> torsion_probe(const WeierstrassCurve& e, unsigned ell,
                                            unsigned n) {
  if (n == 0) throw ArgumentError("constant-root exponent must be positive");
  WeierstrassCurve ext = base_extend(e, n);
  RationalFunction x = rf_var("x");
  RationalFunction B2 = ext.b2(), B4 = ext.b4(), B6 = ext.b6(), B8 = ext.b8();
  RationalFunction dpoly;
  switch (ell) {
    case 2:
      dpoly = rf_const(4) * x.pow(3) + B2 * x * x + rf_const(2) * B4 * x + B6;
      break;
    case 3:
      dpoly = rf_const(3) * x.pow(4) + B2 * x.pow(3) + rf_const(3) * B4 * x * x +
              rf_const(3) * B6 * x + B8;
      break;
    case 4:
      dpoly = rf_const(2) * x.pow(6) + B2 * x.pow(5) + rf_const(5) * B4 * x.pow(4) +
              rf_const(10) * B6 * x.pow(3) + rf_const(10) * B8 * x * x +
              (B2 * B8 - B4 * B6) * x + (B4 * B8 - B6 * B6);
      break;
    default:
      throw ArgumentError("torsion probe supports ell in {2, 3, 4}");
  }
  MultiPoly num = dpoly.num();
  long xdeg = num.degree("x");

  static const gf::u64 kPrimes[] = {1000003, 1000033, 1000037, 1000039, 1000081, 1000099};
  std::vector<RationalFunction> found;
  int usable = 0;
  for (gf::u64 p : kPrimes) {
    if (usable == 3) break;
    auto ctx = gf::make_prime_field(p);
    auto bp = reduce_to_bipoly(num, ctx, "t");
    if (!bp || bp->zdeg() != xdeg) continue;
    std::mt19937_64 rng(0x7015104ULL + p);
    bifactor::BiFactorization fac = bifactor::bp_factor(*bp, rng);
    if (!fac.conclusive) continue;
    ++usable;
    for (const auto& f : fac.factors) {
      if (f.poly.zdeg() != 1) continue;
      auto c0 = lift_gfpoly(f.poly.c[0], "t");
      auto c1 = lift_gfpoly(f.poly.c[1], "t");
      if (!c0 || !c1) continue;
      RationalFunction cand = RationalFunction(-*c0) / RationalFunction(*c1);
      bool known = false;
      for (const auto& r : found)
        if (r == cand) known = true;
      if (!known && dpoly.substitute("x", cand).is_zero()) found.push_back(cand);
    }
  }
  std::sort(found.begin(), found.end(),
            [](const RationalFunction& a, const RationalFunction& b) {
              return a.to_string() < b.to_string();
            });
  return found;
}

}  // namespace dyncubic::curves
