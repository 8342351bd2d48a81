#include "dyncubic/gf.hpp"

#include <algorithm>
#include <sstream>

#include "dyncubic/errors.hpp"

namespace dyncubic::gf {

using algebra::Integer;
using algebra::Rational;

u64 mulmod(u64 a, u64 b, u64 p) {
  return static_cast<u64>(static_cast<unsigned __int128>(a) * b % p);
}

u64 powmod(u64 a, u64 e, u64 p) {
  u64 r = 1 % p;
  a %= p;
  while (e) {
    if (e & 1) r = mulmod(r, a, p);
    a = mulmod(a, a, p);
    e >>= 1;
  }
  return r;
}

u64 invmod(u64 a, u64 p) {
  a %= p;
  if (a == 0) throw DivisionError("inverse of zero residue");
  long long t = 0, newt = 1;
  long long r = static_cast<long long>(p), newr = static_cast<long long>(a);
  while (newr != 0) {
    long long q = r / newr;
    t -= q * newt;
    std::swap(t, newt);
    r -= q * newr;
    std::swap(r, newr);
  }
  if (t < 0) t += static_cast<long long>(p);
  return static_cast<u64>(t);
}

namespace {

// Raw univariate arithmetic over F_p on trimmed coefficient vectors.
using FpVec = std::vector<u64>;

void fp_trim(FpVec& v) {
  while (!v.empty() && v.back() == 0) v.pop_back();
}

FpVec fp_mul(const FpVec& a, const FpVec& b, u64 p) {
  if (a.empty() || b.empty()) return {};
  FpVec r(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j)
      r[i + j] = (r[i + j] + mulmod(a[i], b[j], p)) % p;
  }
  fp_trim(r);
  return r;
}

FpVec fp_rem(FpVec a, const FpVec& m, u64 p) {
  fp_trim(a);
  u64 linv = invmod(m.back(), p);
  while (a.size() >= m.size()) {
    u64 f = mulmod(a.back(), linv, p);
    std::size_t off = a.size() - m.size();
    for (std::size_t i = 0; i < m.size(); ++i) {
      u64 sub = mulmod(f, m[i], p);
      a[off + i] = (a[off + i] + p - sub) % p;
    }
    fp_trim(a);
  }
  return a;
}

// Extended Euclid: returns (g, s) with s*a = g mod m, g = gcd(a, m) monic.
std::pair<FpVec, FpVec> fp_gcdext(FpVec a, FpVec m, u64 p) {
  FpVec r0 = std::move(m), r1 = std::move(a);
  fp_trim(r0);
  fp_trim(r1);
  FpVec s0 = {}, s1 = {1};
  while (!r1.empty()) {
    // divide r0 by r1
    FpVec q;
    FpVec rem = r0;
    u64 linv = invmod(r1.back(), p);
    if (rem.size() >= r1.size()) q.assign(rem.size() - r1.size() + 1, 0);
    while (rem.size() >= r1.size() && !rem.empty()) {
      u64 f = mulmod(rem.back(), linv, p);
      std::size_t off = rem.size() - r1.size();
      q[off] = f;
      for (std::size_t i = 0; i < r1.size(); ++i) {
        u64 sub = mulmod(f, r1[i], p);
        rem[off + i] = (rem[off + i] + p - sub) % p;
      }
      fp_trim(rem);
    }
    fp_trim(q);
    // (r0, r1) <- (r1, rem); (s0, s1) <- (s1, s0 - q*s1)
    FpVec qs = fp_mul(q, s1, p);
    FpVec s2 = s0;
    if (s2.size() < qs.size()) s2.resize(qs.size(), 0);
    for (std::size_t i = 0; i < qs.size(); ++i) s2[i] = (s2[i] + p - qs[i]) % p;
    fp_trim(s2);
    r0 = std::move(r1);
    r1 = std::move(rem);
    s0 = std::move(s1);
    s1 = std::move(s2);
  }
  if (r0.empty()) throw DivisionError("gcd of zero residues");
  u64 linv = invmod(r0.back(), p);
  for (auto& c : r0) c = mulmod(c, linv, p);
  for (auto& c : s0) c = mulmod(c, linv, p);
  return {r0, s0};
}

}  // namespace

GFCtxPtr make_prime_field(u64 p) {
  if (p < 2) throw ArgumentError("prime field needs p >= 2");
  auto ctx = std::make_shared<GFCtx>();
  ctx->p = p;
  ctx->k = 1;
  return ctx;
}

GFElem::GFElem(GFCtxPtr ctx) : ctx_(std::move(ctx)), c_(ctx_->k, 0) {}

GFElem::GFElem(GFCtxPtr ctx, u64 value) : ctx_(std::move(ctx)), c_(ctx_->k, 0) {
  c_[0] = value % ctx_->p;
}

GFElem::GFElem(GFCtxPtr ctx, std::vector<u64> coords) : ctx_(std::move(ctx)), c_(std::move(coords)) {
  reduce_();
}

void GFElem::reduce_() {
  const u64 p = ctx_->p;
  for (auto& x : c_) x %= p;
  if (c_.size() > ctx_->k) {
    c_ = fp_rem(std::move(c_), ctx_->modulus, p);
  }
  c_.resize(ctx_->k, 0);
}

GFElem GFElem::from_integer(const GFCtxPtr& ctx, const Integer& n) {
  u64 r = mpz_fdiv_ui(n.get_mpz_t(), ctx->p);
  return GFElem(ctx, r);
}

GFElem GFElem::from_rational(const GFCtxPtr& ctx, const Rational& r) {
  u64 den = mpz_fdiv_ui(r.get_den().get_mpz_t(), ctx->p);
  if (den == 0) throw DivisionError("denominator vanishes in the residue field");
  u64 num = mpz_fdiv_ui(r.get_num().get_mpz_t(), ctx->p);
  return GFElem(ctx, mulmod(num, invmod(den, ctx->p), ctx->p));
}

GFElem GFElem::generator(const GFCtxPtr& ctx) {
  if (ctx->k < 2) throw ArgumentError("prime field has no extension generator");
  std::vector<u64> c(ctx->k, 0);
  c[1] = 1;
  return GFElem(ctx, std::move(c));
}

bool GFElem::is_zero() const {
  for (u64 x : c_)
    if (x) return false;
  return true;
}

bool GFElem::in_prime_field() const {
  for (std::size_t i = 1; i < c_.size(); ++i)
    if (c_[i]) return false;
  return true;
}

u64 GFElem::prime_value() const {
  if (!in_prime_field()) throw ArgumentError("element lies outside the prime field");
  return c_.empty() ? 0 : c_[0];
}

GFElem GFElem::operator-() const {
  GFElem r = *this;
  for (auto& x : r.c_) x = x ? ctx_->p - x : 0;
  return r;
}

GFElem GFElem::operator+(const GFElem& o) const {
  GFElem r = *this;
  for (std::size_t i = 0; i < r.c_.size(); ++i) r.c_[i] = (r.c_[i] + o.c_[i]) % ctx_->p;
  return r;
}

GFElem GFElem::operator-(const GFElem& o) const {
  GFElem r = *this;
  for (std::size_t i = 0; i < r.c_.size(); ++i) r.c_[i] = (r.c_[i] + ctx_->p - o.c_[i]) % ctx_->p;
  return r;
}

GFElem GFElem::operator*(const GFElem& o) const {
  if (ctx_->k == 1) return GFElem(ctx_, mulmod(c_[0], o.c_[0], ctx_->p));
  FpVec prod = fp_mul(c_, o.c_, ctx_->p);
  return GFElem(ctx_, std::move(prod));
}

GFElem GFElem::inverse() const {
  if (is_zero()) throw DivisionError("inverse of zero");
  if (ctx_->k == 1) return GFElem(ctx_, invmod(c_[0], ctx_->p));
  FpVec a = c_;
  fp_trim(a);
  auto [g, s] = fp_gcdext(a, ctx_->modulus, ctx_->p);
  if (g.size() != 1) throw InternalError("modulus is not irreducible");
  return GFElem(ctx_, std::move(s));
}

GFElem GFElem::operator/(const GFElem& o) const { return *this * o.inverse(); }

GFElem GFElem::pow(const Integer& e) const {
  if (e < 0) return inverse().pow(-e);
  GFElem base = *this;
  GFElem r(ctx_, 1);
  mp_bitcnt_t bits = mpz_sizeinbase(e.get_mpz_t(), 2);
  if (e == 0) return r;
  for (mp_bitcnt_t i = bits; i-- > 0;) {
    r = r * r;
    if (mpz_tstbit(e.get_mpz_t(), i)) r = r * base;
  }
  return r;
}

bool GFElem::operator==(const GFElem& o) const {
  return ctx_->p == o.ctx_->p && ctx_->k == o.ctx_->k && c_ == o.c_;
}

std::string GFElem::to_string() const {
  if (ctx_->k == 1) return std::to_string(c_.empty() ? 0 : c_[0]);
  std::ostringstream out;
  out << "[";
  for (std::size_t i = 0; i < c_.size(); ++i) out << (i ? "," : "") << c_[i];
  out << "]";
  return out.str();
}

GFElem embed(const GFElem& a, const GFCtxPtr& ext) {
  if (!a.in_prime_field() || a.ctx()->p != ext->p)
    throw ArgumentError("embedding defined only from the prime field");
  return GFElem(ext, a.prime_value());
}

GFElem GFPoly::lead() const {
  if (c.empty()) throw ArgumentError("zero polynomial has no leading coefficient");
  return c.back();
}

GFElem GFPoly::eval(const GFElem& x) const {
  GFElem acc(ctx);
  for (std::size_t i = c.size(); i-- > 0;) acc = acc * x + c[i];
  return acc;
}

std::string GFPoly::to_string() const {
  if (c.empty()) return "0";
  std::ostringstream out;
  for (std::size_t i = c.size(); i-- > 0;) {
    if (c[i].is_zero()) continue;
    if (out.tellp() > 0) out << " + ";
    out << c[i].to_string();
    if (i) out << "*x^" << i;
  }
  return out.str();
}

GFPoly gp_zero(const GFCtxPtr& ctx) { return GFPoly{ctx, {}}; }

GFPoly gp_constant(const GFElem& a) {
  GFPoly f{a.ctx(), {}};
  if (!a.is_zero()) f.c.push_back(a);
  return f;
}

GFPoly gp_x(const GFCtxPtr& ctx) { return GFPoly{ctx, {GFElem(ctx), GFElem(ctx, 1)}}; }

GFPoly gp_from(const GFCtxPtr& ctx, std::vector<GFElem> coeffs) {
  GFPoly f{ctx, std::move(coeffs)};
  gp_trim(f);
  return f;
}

void gp_trim(GFPoly& f) {
  while (!f.c.empty() && f.c.back().is_zero()) f.c.pop_back();
}

GFPoly gp_add(const GFPoly& a, const GFPoly& b) {
  GFPoly r = a;
  if (r.c.size() < b.c.size()) r.c.resize(b.c.size(), GFElem(a.ctx));
  for (std::size_t i = 0; i < b.c.size(); ++i) r.c[i] = r.c[i] + b.c[i];
  gp_trim(r);
  return r;
}

GFPoly gp_sub(const GFPoly& a, const GFPoly& b) {
  GFPoly r = a;
  if (r.c.size() < b.c.size()) r.c.resize(b.c.size(), GFElem(a.ctx));
  for (std::size_t i = 0; i < b.c.size(); ++i) r.c[i] = r.c[i] - b.c[i];
  gp_trim(r);
  return r;
}

GFPoly gp_mul(const GFPoly& a, const GFPoly& b) {
  if (a.c.empty() || b.c.empty()) return gp_zero(a.ctx);
  GFPoly r{a.ctx, std::vector<GFElem>(a.c.size() + b.c.size() - 1, GFElem(a.ctx))};
  for (std::size_t i = 0; i < a.c.size(); ++i) {
    if (a.c[i].is_zero()) continue;
    for (std::size_t j = 0; j < b.c.size(); ++j) r.c[i + j] = r.c[i + j] + a.c[i] * b.c[j];
  }
  gp_trim(r);
  return r;
}

GFPoly gp_scale(const GFPoly& a, const GFElem& s) {
  GFPoly r = a;
  for (auto& c : r.c) c = c * s;
  gp_trim(r);
  return r;
}

std::pair<GFPoly, GFPoly> gp_divrem(const GFPoly& a, const GFPoly& b) {
  if (b.c.empty()) throw DivisionError("polynomial division by zero");
  GFPoly rem = a;
  GFPoly quot{a.ctx, {}};
  if (rem.c.size() >= b.c.size())
    quot.c.assign(rem.c.size() - b.c.size() + 1, GFElem(a.ctx));
  const GFElem linv = b.c.back().inverse();
  while (rem.c.size() >= b.c.size() && !rem.c.empty()) {
    GFElem f = rem.c.back() * linv;
    std::size_t off = rem.c.size() - b.c.size();
    quot.c[off] = f;
    for (std::size_t i = 0; i < b.c.size(); ++i) rem.c[off + i] = rem.c[off + i] - f * b.c[i];
    gp_trim(rem);
  }
  gp_trim(quot);
  return {quot, rem};
}

GFPoly gp_rem(const GFPoly& a, const GFPoly& b) { return gp_divrem(a, b).second; }

GFPoly gp_monic(const GFPoly& a) {
  if (a.c.empty()) return a;
  return gp_scale(a, a.c.back().inverse());
}

GFPoly gp_gcd(const GFPoly& a, const GFPoly& b) {
  GFPoly x = a, y = b;
  while (!y.c.empty()) {
    GFPoly r = gp_rem(x, y);
    x = std::move(y);
    y = std::move(r);
  }
  return gp_monic(x);
}

GFPoly gp_derivative(const GFPoly& a) {
  GFPoly r{a.ctx, {}};
  for (std::size_t i = 1; i < a.c.size(); ++i)
    r.c.push_back(a.c[i] * GFElem(a.ctx, static_cast<u64>(i % a.ctx->p)));
  gp_trim(r);
  return r;
}

GFPoly gp_powmod(const GFPoly& base, const Integer& e, const GFPoly& mod) {
  GFPoly b = gp_rem(base, mod);
  GFPoly r = gp_constant(GFElem(mod.ctx, 1));
  if (e == 0) return r;
  mp_bitcnt_t bits = mpz_sizeinbase(e.get_mpz_t(), 2);
  for (mp_bitcnt_t i = bits; i-- > 0;) {
    r = gp_rem(gp_mul(r, r), mod);
    if (mpz_tstbit(e.get_mpz_t(), i)) r = gp_rem(gp_mul(r, b), mod);
  }
  return r;
}

namespace {

Integer field_size(const GFCtxPtr& ctx) {
  Integer q = 1;
  for (unsigned i = 0; i < ctx->k; ++i) q *= static_cast<long>(ctx->p);
  return q;
}

Integer ipow(const Integer& b, unsigned e) {
  Integer r = 1;
  for (unsigned i = 0; i < e; ++i) r *= b;
  return r;
}

}  // namespace

bool gp_irreducible(const GFPoly& f) {
  const long n = f.deg();
  if (n <= 0) return false;
  if (n == 1) return true;
  const GFPoly m = gp_monic(f);
  const Integer q = field_size(f.ctx);
  const GFPoly x = gp_x(f.ctx);
  // x^(q^n) = x mod f, and x^(q^(n/l)) - x coprime to f for prime l | n.
  GFPoly xq = gp_powmod(x, ipow(q, static_cast<unsigned>(n)), m);
  if (!(gp_sub(xq, x).c.empty())) return false;
  long rest = n;
  std::vector<long> primes;
  for (long l = 2; l * l <= rest; ++l)
    if (rest % l == 0) {
      primes.push_back(l);
      while (rest % l == 0) rest /= l;
    }
  if (rest > 1) primes.push_back(rest);
  for (long l : primes) {
    GFPoly xs = gp_powmod(x, ipow(q, static_cast<unsigned>(n / l)), m);
    if (gp_gcd(gp_sub(xs, x), m).deg() != 0) return false;
  }
  return true;
}

GFCtxPtr make_extension_field(u64 p, unsigned k) {
  if (k < 2) return make_prime_field(p);
  auto base = make_prime_field(p);
  // Enumerate monic degree-k moduli by ascending coefficient tuples.
  std::vector<u64> lower(k, 0);
  for (;;) {
    std::vector<GFElem> coeffs;
    coeffs.reserve(k + 1);
    for (unsigned i = 0; i < k; ++i) coeffs.emplace_back(base, lower[i]);
    coeffs.emplace_back(base, 1);
    GFPoly cand = gp_from(base, std::move(coeffs));
    if (gp_irreducible(cand)) {
      auto ctx = std::make_shared<GFCtx>();
      ctx->p = p;
      ctx->k = k;
      ctx->modulus.assign(k + 1, 0);
      for (unsigned i = 0; i < k; ++i) ctx->modulus[i] = lower[i];
      ctx->modulus[k] = 1;
      return ctx;
    }
    unsigned pos = 0;
    while (pos < k && ++lower[pos] == p) lower[pos++] = 0;
    if (pos == k) throw InternalError("no irreducible modulus found");
  }
}

namespace {

GFPoly gp_random(const GFCtxPtr& ctx, long deg, std::mt19937_64& rng) {
  std::vector<GFElem> c;
  c.reserve(static_cast<std::size_t>(deg) + 1);
  for (long i = 0; i <= deg; ++i) {
    std::vector<u64> coords(ctx->k);
    for (auto& x : coords) x = rng() % ctx->p;
    c.emplace_back(ctx, std::move(coords));
  }
  return gp_from(ctx, std::move(c));
}

// Equal-degree splitting of a squarefree product of degree-d irreducibles.
void equal_degree(const GFPoly& f, long d, std::mt19937_64& rng, std::vector<GFPoly>& out) {
  if (f.deg() == d) {
    out.push_back(gp_monic(f));
    return;
  }
  const Integer q = field_size(f.ctx);
  const Integer e = (ipow(q, static_cast<unsigned>(d)) - 1) / 2;
  for (;;) {
    GFPoly r = gp_random(f.ctx, f.deg() - 1, rng);
    if (r.deg() < 1) continue;
    GFPoly s = gp_powmod(r, e, f);
    s = gp_sub(s, gp_constant(GFElem(f.ctx, 1)));
    GFPoly g = gp_gcd(s, f);
    if (g.deg() > 0 && g.deg() < f.deg()) {
      equal_degree(g, d, rng, out);
      equal_degree(gp_divrem(f, g).first, d, rng, out);
      return;
    }
  }
}

// Distinct-degree then equal-degree factorization of a monic squarefree f.
void factor_squarefree(GFPoly f, std::mt19937_64& rng, unsigned mult,
                       std::vector<GFFactor>& out) {
  const Integer q = field_size(f.ctx);
  const GFPoly x = gp_x(f.ctx);
  GFPoly h = x;
  long d = 0;
  while (f.deg() > 0) {
    ++d;
    if (2 * d > f.deg()) {
      out.push_back({gp_monic(f), mult});
      return;
    }
    h = gp_powmod(h, q, f);
    GFPoly g = gp_gcd(gp_sub(h, x), f);
    if (g.deg() > 0) {
      std::vector<GFPoly> parts;
      equal_degree(g, d, rng, parts);
      for (auto& pt : parts) out.push_back({std::move(pt), mult});
      f = gp_divrem(f, g).first;
      h = gp_rem(h, f);
    }
  }
}

// Replace f(x) = g(x^p) by g with coefficients' p^(k-1)-th powers (inverse
// Frobenius), valid over GF(p^k).
GFPoly pth_root(const GFPoly& f) {
  const u64 p = f.ctx->p;
  const Integer e = ipow(Integer(static_cast<long>(p)), f.ctx->k - 1);
  std::vector<GFElem> c;
  for (std::size_t i = 0; i < f.c.size(); i += static_cast<std::size_t>(p))
    c.push_back(f.c[i].pow(e));
  return gp_from(f.ctx, std::move(c));
}

bool gp_less(const GFPoly& a, const GFPoly& b) {
  if (a.c.size() != b.c.size()) return a.c.size() < b.c.size();
  for (std::size_t i = a.c.size(); i-- > 0;) {
    const auto& x = a.c[i].coords();
    const auto& y = b.c[i].coords();
    if (x != y) return x < y;
  }
  return false;
}

}  // namespace

GFFactorization gp_factor(const GFPoly& f, std::mt19937_64& rng) {
  if (f.c.empty()) throw ArgumentError("factorization of the zero polynomial");
  GFFactorization result{f.c.back(), {}};
  GFPoly work = gp_monic(f);
  if (work.deg() == 0) return result;

  // Squarefree decomposition in characteristic p.
  std::vector<std::pair<GFPoly, unsigned>> squarefree;
  unsigned scale = 1;
  while (work.deg() > 0) {
    GFPoly der = gp_derivative(work);
    if (der.c.empty()) {
      work = pth_root(work);
      scale *= static_cast<unsigned>(f.ctx->p);
      continue;
    }
    GFPoly c = gp_gcd(work, der);
    GFPoly w = gp_divrem(work, c).first;
    unsigned i = 1;
    while (w.deg() > 0) {
      GFPoly y = gp_gcd(w, c);
      GFPoly z = gp_divrem(w, y).first;
      if (z.deg() > 0) squarefree.push_back({z, i * scale});
      w = std::move(y);
      c = gp_divrem(c, w).first;
      ++i;
    }
    work = std::move(c);
  }

  for (auto& [part, mult] : squarefree) factor_squarefree(part, rng, mult, result.factors);
  std::sort(result.factors.begin(), result.factors.end(),
            [](const GFFactor& a, const GFFactor& b) { return gp_less(a.poly, b.poly); });
  return result;
}

std::vector<GFElem> gp_roots(const GFPoly& f, std::mt19937_64& rng) {
  std::vector<GFElem> roots;
  for (const auto& fac : gp_factor(f, rng).factors)
    if (fac.poly.deg() == 1) roots.push_back(-fac.poly.c[0]);
  return roots;
}

}  // namespace dyncubic::gf
