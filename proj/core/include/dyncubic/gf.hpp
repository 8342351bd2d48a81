#pragma once

#include <cstdint>
#include <memory>
#include <random>
#include <string>
#include <vector>

#include "dyncubic/rational.hpp"

namespace dyncubic::gf {

using u64 = std::uint64_t;

// GF(p) or GF(p^k), k >= 2 represented as F_p[x] modulo a monic irreducible
// modulus of degree k.
struct GFCtx {
  u64 p = 0;
  unsigned k = 1;
  std::vector<u64> modulus;  // degree k, monic; empty when k == 1
};
using GFCtxPtr = std::shared_ptr<const GFCtx>;

GFCtxPtr make_prime_field(u64 p);
// Deterministic: smallest monic irreducible of degree k in lexicographic
// coefficient order.
GFCtxPtr make_extension_field(u64 p, unsigned k);

u64 mulmod(u64 a, u64 b, u64 p);
u64 powmod(u64 a, u64 e, u64 p);
u64 invmod(u64 a, u64 p);

// Element of GF(p^k): coefficient vector of length k (low degree first).
class GFElem {
 public:
  GFElem() = default;
  explicit GFElem(GFCtxPtr ctx);                  // zero
  GFElem(GFCtxPtr ctx, u64 value);                // reduction of an integer
  GFElem(GFCtxPtr ctx, std::vector<u64> coords);  // coordinates mod p

  static GFElem from_integer(const GFCtxPtr& ctx, const algebra::Integer& n);
  static GFElem from_rational(const GFCtxPtr& ctx, const algebra::Rational& r);  // DivisionError if p | den
  static GFElem generator(const GFCtxPtr& ctx);  // the class of x (k >= 2)

  const GFCtxPtr& ctx() const { return ctx_; }
  const std::vector<u64>& coords() const { return c_; }
  bool is_zero() const;
  bool in_prime_field() const;
  u64 prime_value() const;  // value in F_p when in_prime_field

  GFElem operator-() const;
  GFElem operator+(const GFElem& o) const;
  GFElem operator-(const GFElem& o) const;
  GFElem operator*(const GFElem& o) const;
  GFElem operator/(const GFElem& o) const;  // DivisionError on zero
  GFElem inverse() const;
  GFElem pow(const algebra::Integer& e) const;
  bool operator==(const GFElem& o) const;
  bool operator!=(const GFElem& o) const { return !(*this == o); }

  std::string to_string() const;

 private:
  GFCtxPtr ctx_;
  std::vector<u64> c_;
  void reduce_();
};

// Embeds an element of GF(p) into an extension GF(p^k) (same p).
GFElem embed(const GFElem& a, const GFCtxPtr& ext);

// Univariate polynomial over GF(p^k); c[i] is the coefficient of x^i, trimmed.
struct GFPoly {
  GFCtxPtr ctx;
  std::vector<GFElem> c;

  long deg() const { return static_cast<long>(c.size()) - 1; }
  bool is_zero() const { return c.empty(); }
  GFElem lead() const;
  GFElem eval(const GFElem& x) const;
  std::string to_string() const;
};

GFPoly gp_zero(const GFCtxPtr& ctx);
GFPoly gp_constant(const GFElem& a);
GFPoly gp_x(const GFCtxPtr& ctx);
GFPoly gp_from(const GFCtxPtr& ctx, std::vector<GFElem> coeffs);
void gp_trim(GFPoly& f);

GFPoly gp_add(const GFPoly& a, const GFPoly& b);
GFPoly gp_sub(const GFPoly& a, const GFPoly& b);
GFPoly gp_mul(const GFPoly& a, const GFPoly& b);
GFPoly gp_scale(const GFPoly& a, const GFElem& s);
// Quotient and remainder; DivisionError on zero divisor.
std::pair<GFPoly, GFPoly> gp_divrem(const GFPoly& a, const GFPoly& b);
GFPoly gp_rem(const GFPoly& a, const GFPoly& b);
GFPoly gp_monic(const GFPoly& a);
GFPoly gp_gcd(const GFPoly& a, const GFPoly& b);  // monic
GFPoly gp_derivative(const GFPoly& a);
GFPoly gp_powmod(const GFPoly& base, const algebra::Integer& e, const GFPoly& mod);

bool gp_irreducible(const GFPoly& f);

// Full factorization into monic irreducibles with multiplicity, together with
// the leading unit. Deterministic for a fixed rng state (Cantor–Zassenhaus
// splitting draws from it).
struct GFFactor {
  GFPoly poly;
  unsigned multiplicity;
};
struct GFFactorization {
  GFElem unit;
  std::vector<GFFactor> factors;  // sorted by (degree, coefficient order)
};
GFFactorization gp_factor(const GFPoly& f, std::mt19937_64& rng);

// Roots in the coefficient field (from the degree-1 factors).
std::vector<GFElem> gp_roots(const GFPoly& f, std::mt19937_64& rng);

}  // namespace dyncubic::gf
