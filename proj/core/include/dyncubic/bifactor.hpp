#pragma once

#include <optional>

#include "dyncubic/gf.hpp"

namespace dyncubic::bifactor {

using gf::GFCtxPtr;
using gf::GFElem;
using gf::GFPoly;

// Bivariate polynomial over GF(p^k): c[i] is the t-polynomial coefficient of z^i.
struct BiPoly {
  GFCtxPtr ctx;
  std::vector<GFPoly> c;

  long zdeg() const { return static_cast<long>(c.size()) - 1; }
  long tdeg() const;
  bool is_zero() const { return c.empty(); }
  std::string to_string() const;
};

BiPoly bp_zero(const GFCtxPtr& ctx);
BiPoly bp_from(const GFCtxPtr& ctx, std::vector<GFPoly> coeffs);
void bp_trim(BiPoly& f);

BiPoly bp_add(const BiPoly& a, const BiPoly& b);
BiPoly bp_sub(const BiPoly& a, const BiPoly& b);
BiPoly bp_mul(const BiPoly& a, const BiPoly& b);
BiPoly bp_scale(const BiPoly& a, const GFElem& s);
bool bp_equal(const BiPoly& a, const BiPoly& b);

GFPoly bp_eval_t(const BiPoly& f, const GFElem& t0);  // specialize t, keep z
BiPoly bp_derivative_z(const BiPoly& f);
GFPoly bp_content_t(const BiPoly& f);  // monic gcd of the t-coefficients
BiPoly bp_primitive_t(const BiPoly& f);

// Exact division in GF(q)[t][z]; nullopt when the division is not exact.
std::optional<BiPoly> bp_exact_div(const BiPoly& a, const BiPoly& b);

// gcd with respect to z (primitive pseudo-remainder sequence); result primitive
// in t with normalized leading coefficient.
BiPoly bp_gcd_z(const BiPoly& a, const BiPoly& b);

// Embed a bivariate polynomial with prime-field coefficients into an extension.
BiPoly bp_embed(const BiPoly& f, const GFCtxPtr& ext);

struct BiFactor {
  BiPoly poly;  // primitive in t, leading coefficient normalized
  unsigned multiplicity;
};

// unit * content(t) * prod(factors^multiplicity) reconstructs the input exactly.
// conclusive is false when no squarefree specialization point exists in the
// coefficient field (retry with a different field).
struct BiFactorization {
  bool conclusive = false;
  GFElem unit;
  GFPoly content;  // monic in t (constant 1 when trivial)
  std::vector<BiFactor> factors;
};

// Factorization over GF(q)(t) by specialization, univariate factorization,
// Hensel lifting in (t - t0) past the t-degree bound, and subset recombination.
BiFactorization bp_factor(const BiPoly& f, std::mt19937_64& rng);

enum class Verdict { certified, refuted, inconclusive };

// No factor of z-degree 1 over GF(q)(t), i.e. no root z(t) in GF(q)(t).
Verdict no_linear_factor(const BiPoly& f, std::mt19937_64& rng);
// No root z(t) in the algebraic closure's function field: additionally factors
// every z-degree-k irreducible over GF(p^k)(t). Requires prime-field input.
Verdict no_root_in_closure(const BiPoly& f, std::mt19937_64& rng);
// Irreducible over the algebraic closure of the constant field. Requires
// prime-field input; refuted means reducible over that closure (which for a
// characteristic-0 certification is merely inconclusive).
Verdict geometrically_irreducible(const BiPoly& f, std::mt19937_64& rng);

}  // namespace dyncubic::bifactor
