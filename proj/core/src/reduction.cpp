#include "dyncubic/reduction.hpp"

#include <algorithm>
#include <limits>

#include "dyncubic/errors.hpp"

namespace dyncubic::reduction {

using algebra::FieldElem;
using algebra::FieldPtr;
using algebra::MultiPoly;
using algebra::Rational;
using algebra::RationalFunction;
using curves::CurvePoint;
using curves::WeierstrassCurve;

namespace {

constexpr long kValInf = std::numeric_limits<long>::max() / 4;

long floor_div(long a, long b) {
  long q = a / b, r = a % b;
  return (r != 0 && (r < 0) != (b < 0)) ? q - 1 : q;
}

void check_univar(const MultiPoly& p, const std::string& var) {
  for (const auto& w : p.vars())
    if (w != var && p.depends_on(w))
      throw ArgumentError("polynomial depends on '" + w + "' besides the place variable '" +
                          var + "'");
}

// Dense coefficient list (index = exponent) in one variable; the polynomial must
// not depend on any other variable. Trailing zeros are stripped.
std::vector<FieldElem> dense_in(const MultiPoly& p, const std::string& var) {
  check_univar(p, var);
  std::vector<MultiPoly> cs = p.coeffs_in(var);
  std::vector<FieldElem> out;
  out.reserve(cs.size());
  for (const auto& c : cs) out.push_back(c.constant_value());
  while (!out.empty() && out.back().is_zero()) out.pop_back();
  return out;
}

long dense_deg(const std::vector<FieldElem>& f) {
  return static_cast<long>(f.size()) - 1;  // -1 for zero
}

// Exact quotient of f by the monic divisor pi, or no value if pi does not divide f.
bool dense_div_exact(const std::vector<FieldElem>& f, const std::vector<FieldElem>& pi,
                     std::vector<FieldElem>& quot) {
  std::vector<FieldElem> rem = f;
  long dp = dense_deg(pi);
  long dq = dense_deg(f) - dp;
  if (dq < 0) return false;
  quot.assign(static_cast<std::size_t>(dq) + 1, FieldElem(0));
  while (dense_deg(rem) >= dp) {
    FieldElem lead = rem.back();
    std::size_t shift = rem.size() - pi.size();
    quot[shift] = lead;
    for (std::size_t i = 0; i + 1 < pi.size(); ++i) rem[shift + i] -= lead * pi[i];
    rem.pop_back();
    while (!rem.empty() && rem.back().is_zero()) rem.pop_back();
  }
  return rem.empty();
}

// pi-adic valuation of a dense polynomial (kValInf for zero).
long dense_val(const std::vector<FieldElem>& f, const std::vector<FieldElem>& pi) {
  if (f.empty()) return kValInf;
  long v = 0;
  std::vector<FieldElem> cur = f, quot;
  while (dense_div_exact(cur, pi, quot)) {
    ++v;
    cur = quot;
    if (cur.empty()) throw InternalError("valuation of an exact zero quotient");
  }
  return v;
}

long place_val(const RationalFunction& g, const Place& v) {
  if (g.is_zero()) return kValInf;
  if (v.is_infinite()) {
    check_univar(g.num(), v.var());
    check_univar(g.den(), v.var());
    return g.den().degree(v.var()) - g.num().degree(v.var());
  }
  std::vector<FieldElem> pi = dense_in(v.polynomial(), v.var());
  return dense_val(dense_in(g.num(), v.var()), pi) - dense_val(dense_in(g.den(), v.var()), pi);
}

// Depressed short form y^2 = x^3 + A x + B carrying the same discriminant, with
// the shift applied to x so points can be transported.
struct ShortForm {
  RationalFunction A, B, disc;
  RationalFunction x_shift;  // depressed x = x + x_shift
  RationalFunction y_slope, y_shift;  // depressed y = y + y_slope*x + y_shift
};

ShortForm depress(const WeierstrassCurve& E) {
  ShortForm s;
  RationalFunction c4 = E.c4(), c6 = E.c6();
  s.A = c4 / RationalFunction(-48);
  s.B = c6 / RationalFunction(-864);
  s.disc = E.discriminant();
  s.x_shift = E.b2() / RationalFunction(12);
  s.y_slope = E.a1() / RationalFunction(2);
  s.y_shift = E.a3() / RationalFunction(2);
  return s;
}

long scale_exponent(long vA, long vB) {
  long k = kValInf;
  if (vA < kValInf) k = std::min(k, floor_div(vA, 4));
  if (vB < kValInf) k = std::min(k, floor_div(vB, 6));
  if (k == kValInf) throw InternalError("curve with A = B = 0");
  return k;
}

LocalData classify(const Place& v, long va, long vb, long vd) {
  LocalData ld;
  ld.place = v;
  auto set = [&](KodairaType k, long n, long m, long f, long e) {
    ld.kodaira = k;
    ld.n_t = n;
    ld.m_t = m;
    ld.f_t = f;
    ld.e_t = e;
  };
  if (vd == 0) set(KodairaType::I0, 0, 1, 0, 0);
  else if (va == 0) set(KodairaType::In, vd, vd, 1, vd);
  else if (va == 2 && vb == 3 && vd >= 7) set(KodairaType::InStar, vd - 6, vd - 1, 2, vd);
  else if (vd == 2) set(KodairaType::II, 0, 1, 2, 2);
  else if (vd == 3) set(KodairaType::III, 0, 2, 2, 3);
  else if (vd == 4) set(KodairaType::IV, 0, 3, 2, 4);
  else if (vd == 6) set(KodairaType::I0Star, 0, 5, 2, 6);
  else if (vd == 8) set(KodairaType::IVStar, 0, 7, 2, 8);
  else if (vd == 9) set(KodairaType::IIIStar, 0, 8, 2, 9);
  else if (vd == 10) set(KodairaType::IIStar, 0, 9, 2, 10);
  else
    throw InternalError("fiber classification fell through at " + v.to_string() +
                        " (v(A')=" + std::to_string(va) + ", v(B')=" + std::to_string(vb) +
                        ", v(D')=" + std::to_string(vd) + ")");
  return ld;
}

// ---------------------------------------------------------------------------
// Truncated power series over the coefficient field, for locating fiber
// components. All vectors have length exactly prec.

struct Series {
  std::vector<FieldElem> c;
};

Series s_const(const FieldElem& a, long prec) {
  Series s;
  s.c.assign(static_cast<std::size_t>(prec), FieldElem(0));
  s.c[0] = a;
  return s;
}

long s_val(const Series& s) {
  for (std::size_t i = 0; i < s.c.size(); ++i)
    if (!s.c[i].is_zero()) return static_cast<long>(i);
  return kValInf;
}

Series s_add(const Series& a, const Series& b) {
  Series r = a;
  for (std::size_t i = 0; i < r.c.size(); ++i) r.c[i] += b.c[i];
  return r;
}

Series s_mul(const Series& a, const Series& b) {
  Series r;
  r.c.assign(a.c.size(), FieldElem(0));
  for (std::size_t i = 0; i < a.c.size(); ++i) {
    if (a.c[i].is_zero()) continue;
    for (std::size_t j = 0; i + j < b.c.size(); ++j) r.c[i + j] += a.c[i] * b.c[j];
  }
  return r;
}

Series s_scale(const Series& a, const FieldElem& k) {
  Series r = a;
  for (auto& x : r.c) x *= k;
  return r;
}

// Multiplicative inverse of a unit series (constant term nonzero).
Series s_inv(const Series& a) {
  if (a.c[0].is_zero()) throw InternalError("inverting a non-unit series");
  Series r;
  r.c.assign(a.c.size(), FieldElem(0));
  FieldElem inv0 = a.c[0].inverse();
  r.c[0] = inv0;
  for (std::size_t k = 1; k < a.c.size(); ++k) {
    FieldElem acc(0);
    for (std::size_t j = 1; j <= k; ++j) acc += a.c[j] * r.c[k - j];
    r.c[k] = -acc * inv0;
  }
  return r;
}

// Laurent localization u^val * unit(u) of a rational function at a place, where u
// is the local parameter (t - c at a linear finite place, 1/t at infinity).
struct Local {
  long val = kValInf;  // kValInf encodes zero
  Series unit;         // unit.c[0] != 0 when val < kValInf
};

// Taylor shift in place: f(u) -> f(u + c).
void taylor_shift(std::vector<FieldElem>& f, const FieldElem& c) {
  if (f.empty() || c.is_zero()) return;
  for (std::size_t i = f.size() - 1; i-- > 0;)
    for (std::size_t j = i; j + 1 < f.size(); ++j) f[j] += c * f[j + 1];
}

Local localize_poly(std::vector<FieldElem> f, bool at_infinity, const FieldElem& center,
                    long prec) {
  Local r;
  if (f.empty()) return r;
  if (at_infinity)
    std::reverse(f.begin(), f.end());
  else
    taylor_shift(f, center);
  std::size_t a = 0;
  while (a < f.size() && f[a].is_zero()) ++a;
  r.val = static_cast<long>(a);
  r.unit.c.assign(static_cast<std::size_t>(prec), FieldElem(0));
  for (std::size_t i = 0; i < static_cast<std::size_t>(prec) && a + i < f.size(); ++i)
    r.unit.c[i] = f[a + i];
  return r;
}

// Localizes num/den; at infinity the valuation is deg(den) - deg(num) plus the
// reversed-coefficient unit parts.
Local localize(const RationalFunction& g, const Place& v, const FieldElem& center, long prec) {
  Local n = localize_poly(dense_in(g.num(), v.var()), v.is_infinite(), center, prec);
  if (n.val == kValInf) return n;
  Local d = localize_poly(dense_in(g.den(), v.var()), v.is_infinite(), center, prec);
  Local r;
  if (v.is_infinite()) {
    long dn = g.num().degree(v.var()), dd = g.den().degree(v.var());
    r.val = (dd - dn) + n.val - d.val;
    // A reversed polynomial has a nonzero constant term, so val offsets are zero;
    // they are kept in the formula for uniformity.
  } else {
    r.val = n.val - d.val;
  }
  r.unit = s_mul(n.unit, s_inv(d.unit));
  return r;
}

// Series form of a localization with the valuation folded in after rescaling by
// -shift; requires val - shift >= 0.
Series to_series(const Local& l, long shift, long prec) {
  Series s;
  s.c.assign(static_cast<std::size_t>(prec), FieldElem(0));
  if (l.val == kValInf) return s;
  long v = l.val - shift;
  if (v < 0) throw InternalError("negative valuation where an integral series was expected");
  for (long i = 0; v + i < prec; ++i) s.c[static_cast<std::size_t>(v + i)] = l.unit.c[static_cast<std::size_t>(i)];
  return s;
}

FieldElem place_center(const Place& v) {
  if (v.is_infinite() || v.degree() != 1) return FieldElem(0);
  std::vector<FieldElem> pi = dense_in(v.polynomial(), v.var());
  return -pi[0];
}

// Hensel lift of the simple root of x^3 + A x + B near r0 (a simple root of the
// reduced cubic), by Newton iteration on truncated series.
Series lift_simple_root(const Series& A, const Series& B, const FieldElem& r0, long prec) {
  Series r = s_const(r0, prec);
  long steps = 1;
  for (long reached = 1; reached < prec; reached *= 2) ++steps;
  for (long it = 0; it < steps + 1; ++it) {
    Series g = s_add(s_mul(s_mul(r, r), r), s_add(s_mul(A, r), B));
    Series gp = s_add(s_scale(s_mul(r, r), FieldElem(3)), A);
    Series corr = s_mul(g, s_inv(gp));
    for (std::size_t i = 0; i < r.c.size(); ++i) r.c[i] -= corr.c[i];
  }
  return r;
}

// Local component contribution of a point (depressed coordinates) at one place.
Rational local_contribution(const ShortForm& sf, const RationalFunction& xd,
                            const RationalFunction& yd, const LocalData& ld) {
  if (ld.is_good() || ld.kodaira == KodairaType::II || ld.kodaira == KodairaType::IIStar)
    return Rational(0);
  if (ld.kodaira == KodairaType::In && ld.n_t == 1) return Rational(0);
  const Place& v = ld.place;
  if (!v.is_infinite() && v.degree() != 1)
    throw ArgumentError("component location needs a linear place, got " + v.to_string());

  long prec = ld.n_t / 2 + 3;
  FieldElem center = place_center(v);
  Local lA = localize(sf.A, v, center, prec);
  Local lB = localize(sf.B, v, center, prec);
  long k = scale_exponent(lA.val == kValInf ? kValInf : lA.val,
                          lB.val == kValInf ? kValInf : lB.val);
  Local lx = localize(xd, v, center, prec);
  Local ly = localize(yd, v, center, prec);
  long vx = (lx.val == kValInf) ? kValInf : lx.val - 2 * k;
  long vy = (ly.val == kValInf) ? kValInf : ly.val - 3 * k;
  if (vx < 0) return Rational(0);  // the point meets the zero section here

  Series A = to_series(lA, 4 * k, prec);
  Series B = to_series(lB, 6 * k, prec);

  if (ld.kodaira == KodairaType::In) {
    long n = ld.n_t;
    FieldElem a0 = A.c[0], b0 = B.c[0];
    if (a0.is_zero()) throw InternalError("multiplicative fiber with a cuspidal reduction");
    FieldElem x0 = -FieldElem(3) * b0 / (FieldElem(2) * a0);  // node abscissa
    Series r = lift_simple_root(A, B, -FieldElem(2) * x0, prec);
    Series X = s_add(to_series(lx, 2 * k, prec), s_scale(r, FieldElem(Rational(1, 2))));
    long i = std::min({s_val(X), vy, n / 2});
    return Rational(i) * Rational(n - i) / Rational(n) * Rational(ld.place.degree());
  }

  // Additive types: the singular point of the depressed minimal model is x = 0.
  long vxs = std::min(s_val(to_series(lx, 2 * k, prec)), static_cast<long>(prec));
  if (vxs < 1 || vy < 1) return Rational(0);
  switch (ld.kodaira) {
    case KodairaType::III:
      return Rational(1, 2) * Rational(ld.place.degree());
    case KodairaType::IIIStar:
      return Rational(3, 2) * Rational(ld.place.degree());
    case KodairaType::IV:
      return Rational(2, 3) * Rational(ld.place.degree());
    case KodairaType::IVStar:
      return Rational(4, 3) * Rational(ld.place.degree());
    case KodairaType::I0Star:
      return Rational(1) * Rational(ld.place.degree());
    case KodairaType::InStar: {
      // Quadratic-twist node separates the far component pair from the near one.
      FieldElem at = A.c[2], bt = B.c[3];
      if (at.is_zero()) throw InternalError("I_n* fiber with a degenerate twist");
      FieldElem d = -FieldElem(3) * bt / (FieldElem(2) * at);
      Series xs = to_series(lx, 2 * k, prec);
      bool far = (vxs == 1 && xs.c[1] == d) || (vxs >= 2 && d.is_zero());
      Rational contr = far ? Rational(1) + Rational(ld.n_t) / 4 : Rational(1);
      return contr * Rational(ld.place.degree());
    }
    default:
      throw InternalError("unhandled fiber type in local contribution");
  }
}

// Intersection number of the section with the zero section: half the pole degree
// of the depressed x-coordinate at finite places plus the infinite-chart pole.
Rational zero_section_intersection(const ShortForm& sf, const RationalFunction& xd,
                                   const std::string& var) {
  long dden = xd.den().degree(var);
  if (dden % 2 != 0)
    throw InternalError("odd pole degree of a section in a minimal model");
  Rational po(dden / 2);
  Place inf = Place::at_infinity(var);
  long vA = place_val(sf.A, inf), vB = place_val(sf.B, inf);
  long k = scale_exponent(vA, vB);
  long vs = place_val(xd, inf) - 2 * k;
  if (vs < 0) {
    if (vs % 2 != 0) throw InternalError("odd pole order of a section at infinity");
    po += Rational(-vs / 2);
  }
  return po;
}

Rational self_height(const WeierstrassCurve& E, const CurvePoint& p, const HeightContext& ctx) {
  if (p.is_infinity()) return Rational(0);
  if (!curves::on_curve(E, p)) throw WitnessError("height of a point off the curve");
  std::string var;
  for (const auto& ld : ctx.local_data)
    if (ld.place.is_infinite()) var = ld.place.var();
  if (var.empty()) throw ArgumentError("height context lacks the infinite place");

  ShortForm sf = depress(E);
  RationalFunction xd = p.x() + sf.x_shift;
  RationalFunction yd = p.y() + sf.y_slope * p.x() + sf.y_shift;

  Rational h = Rational(2) * ctx.chi + Rational(2) * zero_section_intersection(sf, xd, var);
  for (const auto& ld : ctx.local_data) h -= local_contribution(sf, xd, yd, ld);
  return h;
}

}  // namespace

Place Place::finite(MultiPoly poly) {
  Place p;
  std::string var;
  for (const auto& w : poly.vars())
    if (poly.depends_on(w)) {
      if (!var.empty()) throw ArgumentError("place polynomial must be univariate");
      var = w;
    }
  if (var.empty()) throw ArgumentError("place polynomial must be nonconstant");
  std::vector<MultiPoly> cs = poly.coeffs_in(var);
  if (!cs.back().is_constant() || !cs.back().constant_value().is_one())
    throw ArgumentError("place polynomial must be monic");
  for (const auto& c : cs)
    if (!c.is_constant())
      throw ArgumentError("place polynomial must be univariate");
  p.var_ = var;
  p.degree_ = poly.degree(var);
  p.poly_ = std::move(poly);
  return p;
}

Place Place::at_infinity(std::string var) {
  if (var.empty()) throw ArgumentError("infinite place needs a variable name");
  Place p;
  p.infinite_ = true;
  p.var_ = std::move(var);
  return p;
}

const MultiPoly& Place::polynomial() const {
  if (infinite_) throw ArgumentError("the infinite place has no defining polynomial");
  return poly_;
}

bool Place::operator==(const Place& o) const {
  if (infinite_ != o.infinite_ || var_ != o.var_) return false;
  return infinite_ || poly_ == o.poly_;
}

std::string Place::to_string() const {
  if (infinite_) return var_ + " = infinity";
  return "(" + poly_.to_string() + ")";
}

std::string LocalData::type_symbol() const {
  switch (kodaira) {
    case KodairaType::I0: return "I0";
    case KodairaType::In: return "I" + std::to_string(n_t);
    case KodairaType::II: return "II";
    case KodairaType::III: return "III";
    case KodairaType::IV: return "IV";
    case KodairaType::I0Star: return "I0*";
    case KodairaType::InStar: return "I" + std::to_string(n_t) + "*";
    case KodairaType::IVStar: return "IV*";
    case KodairaType::IIIStar: return "III*";
    case KodairaType::IIStar: return "II*";
  }
  throw InternalError("unknown fiber type tag");
}

LocalData tate_local(const WeierstrassCurve& E, const Place& v) {
  ShortForm sf = depress(E);
  long vA = place_val(sf.A, v), vB = place_val(sf.B, v), vD = place_val(sf.disc, v);
  long k = scale_exponent(vA, vB);
  long va = (vA == kValInf) ? kValInf : vA - 4 * k;
  long vb = (vB == kValInf) ? kValInf : vB - 6 * k;
  long vd = vD - 12 * k;
  if (vd < 0 || std::min(va, vb) < 0)
    throw InternalError("minimalization produced negative valuations at " + v.to_string());
  return classify(v, va, vb, vd);
}

HeightContext height_context(const WeierstrassCurve& E, const std::vector<Place>& bad_places) {
  for (const auto& rf : {E.a1(), E.a2(), E.a3(), E.a4(), E.a6()})
    if (!rf.is_polynomial())
      throw ArgumentError("height context needs a model with polynomial coefficients");
  HeightContext ctx;
  bool have_inf = false;
  std::string var;
  for (std::size_t i = 0; i < bad_places.size(); ++i) {
    for (std::size_t j = 0; j < i; ++j)
      if (bad_places[i] == bad_places[j])
        throw ArgumentError("duplicate place " + bad_places[i].to_string());
    if (bad_places[i].is_infinite()) {
      have_inf = true;
      var = bad_places[i].var();
    }
  }
  if (!have_inf) throw ArgumentError("local data must include the place at infinity");

  long euler = 0, finite_disc = 0;
  for (const auto& v : bad_places) {
    LocalData ld = tate_local(E, v);
    if (!v.is_infinite()) {
      long vD = place_val(E.discriminant(), v);
      if (vD != ld.e_t)
        throw ArgumentError("model is not minimal at " + v.to_string());
      finite_disc += vD * v.degree();
    }
    euler += ld.e_t * v.degree();
    ctx.local_data.push_back(std::move(ld));
  }
  long disc_deg = E.discriminant().num().degree(var);
  if (finite_disc != disc_deg)
    throw ArgumentError("bad places account for discriminant degree " +
                        std::to_string(finite_disc) + " of " + std::to_string(disc_deg));
  if (euler % 12 != 0)
    throw ArgumentError("Euler numbers sum to " + std::to_string(euler) +
                        ", not a multiple of 12");
  ctx.chi = Rational(euler / 12);
  if (ctx.chi < 1) throw ArgumentError("arithmetic genus must be at least 1");
  return ctx;
}

Rational fastenberg_gamma(const std::vector<LocalData>& data) {
  bool have_inf = false;
  long n0 = 0, ninf = 0;
  Rational sum(0);
  for (const auto& ld : data) {
    if (ld.place.is_infinite()) {
      have_inf = true;
      ninf = ld.n_t;
      continue;
    }
    const MultiPoly& pi = ld.place.polynomial();
    bool at_origin = ld.place.degree() == 1 && pi.terms().size() == 1;
    if (at_origin) {
      n0 = ld.n_t;
      continue;
    }
    sum += (Rational(ld.f_t) - Rational(ld.e_t) / 6) * Rational(ld.place.degree());
  }
  if (!have_inf) throw ArgumentError("gamma needs the local data at infinity");
  return sum - Rational(n0 + ninf) / 6;
}

long fastenberg_bound(long n, const Rational& gamma, bool subtract_fixed_space) {
  if (n <= 0) throw ArgumentError("base-change degree must be positive");
  if (gamma >= 1) throw ArgumentError("the rank bound needs gamma < 1");
  long total = 0;
  for (long d = 1; d <= n; ++d) {
    if (n % d != 0) continue;
    long kappa = 1, phi = 1, m = d;
    for (long p = 2; p * p <= m; ++p) {
      if (m % p != 0) continue;
      long pk = 1;
      phi *= p - 1;
      while (m % p == 0) {
        m /= p;
        pk *= p;
      }
      phi *= pk / p;
      kappa = std::max(kappa, pk);
    }
    if (m > 1) {
      phi *= m - 1;
      kappa = std::max(kappa, m);
    }
    if (Rational(kappa) * (Rational(1) - gamma) < 2) total += phi;
  }
  if (subtract_fixed_space) total -= 1;
  return total;
}

long shioda_rank(long ns_rank, const std::vector<LocalData>& data, bool* saturated) {
  long r = ns_rank - 2;
  for (const auto& ld : data) r -= (ld.m_t - 1) * ld.place.degree();
  if (saturated) *saturated = r < 0;
  return std::max(r, 0L);
}

Rational height_pairing(const WeierstrassCurve& E, const CurvePoint& p, const CurvePoint& q,
                        const HeightContext& ctx) {
  if (p.is_infinity() || q.is_infinity()) return Rational(0);
  if (p == q) return self_height(E, p, ctx);
  CurvePoint s = curves::group_law(E, p, q);
  return (self_height(E, s, ctx) - self_height(E, p, ctx) - self_height(E, q, ctx)) /
         Rational(2);
}

}  // namespace dyncubic::reduction
