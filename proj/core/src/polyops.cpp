#include "dyncubic/multipoly.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <optional>
#include <random>

#include "dyncubic/gf.hpp"

namespace dyncubic::algebra {

namespace {

// Dense univariate representation over the coefficient field (index = exponent).
using DenseU = std::vector<FieldElem>;

void dense_trim(DenseU& v) {
  while (!v.empty() && v.back().is_zero()) v.pop_back();
}

bool univariate_in(const MultiPoly& p, const std::string& var) {
  for (const auto& v : p.vars())
    if (v != var && p.depends_on(v)) return false;
  return true;
}

DenseU to_dense(const MultiPoly& p, const std::string& var) {
  std::vector<MultiPoly> cs = p.coeffs_in(var);
  DenseU out;
  out.reserve(cs.size());
  for (const auto& c : cs) out.push_back(c.constant_value());
  dense_trim(out);
  return out;
}

MultiPoly from_dense(const DenseU& v, const std::string& var,
                     const std::vector<std::string>& vars, const FieldPtr& field) {
  std::size_t idx = 0;
  while (idx < vars.size() && vars[idx] != var) ++idx;
  std::vector<MultiPoly::Term> terms;
  for (std::size_t k = 0; k < v.size(); ++k) {
    if (v[k].is_zero()) continue;
    std::vector<unsigned> e(vars.size(), 0);
    e[idx] = static_cast<unsigned>(k);
    terms.push_back({std::move(e), v[k]});
  }
  return MultiPoly::from_terms(vars, std::move(terms), field);
}

// Remainder of a by b over the field; b must be nonempty.
DenseU dense_rem(DenseU a, const DenseU& b) {
  FieldElem lb_inv = b.back().inverse();
  while (a.size() >= b.size()) {
    FieldElem q = a.back() * lb_inv;
    std::size_t off = a.size() - b.size();
    for (std::size_t j = 0; j < b.size(); ++j) a[off + j] -= q * b[j];
    a.pop_back();
    dense_trim(a);
  }
  return a;
}

MultiPoly dense_gcd(const MultiPoly& a, const MultiPoly& b, const std::string& var) {
  DenseU x = to_dense(a, var), y = to_dense(b, var);
  while (!y.empty()) {
    DenseU r = dense_rem(std::move(x), y);
    x = std::move(y);
    y = std::move(r);
  }
  if (!x.empty()) {
    FieldElem inv = x.back().inverse();
    for (auto& c : x) c *= inv;
  }
  return from_dense(x, var, a.vars(), a.field());
}

// Image of the coefficient field in characteristic p: the generator is sent to
// a root of one irreducible factor of its minimal polynomial mod p.
struct ModImage {
  gf::GFCtxPtr ctx;
  gf::GFElem gen;
};

std::optional<ModImage> field_mod_p(const FieldPtr& field, gf::u64 p) {
  if (!field) {
    auto ctx = gf::make_prime_field(p);
    return ModImage{ctx, gf::GFElem(ctx)};
  }
  static std::mutex mu;
  static std::map<std::pair<const void*, gf::u64>, std::optional<ModImage>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto key = std::make_pair(static_cast<const void*>(field.get()), p);
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;

  std::optional<ModImage> out;
  try {
    auto base = gf::make_prime_field(p);
    std::vector<gf::GFElem> mp;
    for (const Rational& c : field->min_poly())
      mp.push_back(gf::GFElem::from_rational(base, c));
    gf::GFPoly m = gf::gp_from(base, std::move(mp));
    if (m.deg() == static_cast<long>(field->degree())) {
      std::mt19937_64 rng(p);
      gf::GFFactorization fac = gf::gp_factor(m, rng);
      const gf::GFPoly& g = fac.factors.front().poly;
      if (g.deg() == 1) {
        out = ModImage{base, -g.c[0]};
      } else {
        std::vector<gf::u64> mod;
        for (const gf::GFElem& c : g.c) mod.push_back(c.in_prime_field() ? c.prime_value() : 0);
        auto ext = std::make_shared<gf::GFCtx>(
            gf::GFCtx{p, static_cast<unsigned>(g.deg()), std::move(mod)});
        out = ModImage{ext, gf::GFElem::generator(ext)};
      }
    }
  } catch (const Error&) {
    out = std::nullopt;
  }
  cache.emplace(key, out);
  return out;
}

// Specializes every variable except `keep` at the given values and reduces the
// coefficients through the image, giving a dense univariate polynomial.
gf::GFPoly specialize_mod_p(const MultiPoly& p, std::size_t keep,
                            const std::vector<gf::GFElem>& values, const ModImage& im) {
  std::vector<gf::GFElem> dense(static_cast<std::size_t>(p.degree(p.vars()[keep])) + 1,
                                gf::GFElem(im.ctx));
  std::vector<gf::GFElem> gen_pows{gf::GFElem(im.ctx, 1)};
  for (const auto& term : p.terms()) {
    gf::GFElem c(im.ctx);
    const std::vector<Rational>& coords = term.coeff.coords();
    for (std::size_t i = 0; i < coords.size(); ++i) {
      if (coords[i] == 0) continue;
      while (gen_pows.size() <= i) gen_pows.push_back(gen_pows.back() * im.gen);
      c = c + gf::GFElem::from_rational(im.ctx, coords[i]) * gen_pows[i];
    }
    for (std::size_t j = 0; j < term.exp.size(); ++j) {
      if (j == keep || term.exp[j] == 0) continue;
      c = c * values[j].pow(algebra::Integer(static_cast<long>(term.exp[j])));
    }
    dense[term.exp[keep]] = dense[term.exp[keep]] + c;
  }
  return gf::gp_from(im.ctx, std::move(dense));
}

// Proves gcd(a, b) constant: for each variable, some specialization of the
// remaining variables preserves both leading coefficients and has coprime
// univariate images mod p. Failure to certify is not a verdict.
bool certified_coprime(const MultiPoly& a, const MultiPoly& b) {
  static const gf::u64 kPrimes[] = {1000003, 1000033, 1000037, 1000039};
  const std::vector<std::string>& vars = a.vars();
  std::vector<std::size_t> active;
  for (std::size_t i = 0; i < vars.size(); ++i)
    if (a.depends_on(vars[i]) || b.depends_on(vars[i])) active.push_back(i);
  if (active.size() <= 1) return false;
  std::mt19937_64 rng(0xC0FFEE5EEDULL);
  for (std::size_t keep : active) {
    bool proven = false;
    for (int attempt = 0; attempt < 4 && !proven; ++attempt) {
      gf::u64 pr = kPrimes[attempt % 4];
      auto im = field_mod_p(a.field(), pr);
      if (!im) continue;
      std::vector<gf::GFElem> values(vars.size(), gf::GFElem(im->ctx));
      for (std::size_t j = 0; j < vars.size(); ++j)
        if (j != keep) values[j] = gf::GFElem(im->ctx, rng() % pr);
      try {
        gf::GFPoly A = specialize_mod_p(a, keep, values, *im);
        gf::GFPoly B = specialize_mod_p(b, keep, values, *im);
        if (A.deg() != a.degree(vars[keep]) || B.deg() != b.degree(vars[keep])) continue;
        if (gf::gp_gcd(A, B).deg() == 0) proven = true;
      } catch (const DivisionError&) {
        continue;
      }
    }
    if (!proven) return false;
  }
  return true;
}

long top_index(const std::vector<MultiPoly>& v) {
  for (std::size_t k = v.size(); k-- > 0;)
    if (!v[k].is_zero()) return static_cast<long>(k);
  return -1;
}

// Pseudo-remainder: lc(b)^(da-db+1) * a mod b with respect to var (da >= db >= 0).
MultiPoly prem(const MultiPoly& a, const MultiPoly& b, const std::string& var) {
  std::vector<MultiPoly> r = a.coeffs_in(var);
  std::vector<MultiPoly> d = b.coeffs_in(var);
  long dr = top_index(r);
  long db = top_index(d);
  const MultiPoly& lb = d[db];
  long e = dr - db + 1;
  while (dr >= db) {
    MultiPoly lt = r[dr];
    for (auto& c : r) c = c * lb;
    for (long j = 0; j <= db; ++j) r[dr - db + j] -= lt * d[j];
    --e;
    long next = -1;
    for (long k = dr - 1; k >= 0; --k)
      if (!r[k].is_zero()) {
        next = k;
        break;
      }
    dr = next;
    if (dr < 0) break;
  }
  if (e > 0 && dr >= 0) {
    MultiPoly le = lb.pow(static_cast<unsigned long>(e));
    for (auto& c : r) c = c * le;
  }
  if (dr < 0) return MultiPoly::zero(a.vars(), a.field());
  r.resize(static_cast<std::size_t>(dr) + 1);
  return MultiPoly::from_coeffs_in(var, r).aligned(a.vars(), a.field());
}

// gcd of the coefficients of p with respect to var (a polynomial free of var).
MultiPoly content_in(const MultiPoly& p, const std::string& var) {
  std::vector<MultiPoly> cs = p.coeffs_in(var);
  MultiPoly g = MultiPoly::zero(p.vars(), p.field());
  for (const auto& c : cs) {
    if (c.is_zero()) continue;
    g = poly_gcd(g, c);
    if (g.is_constant() && !g.is_zero()) break;
  }
  return g.aligned(p.vars(), p.field());
}

void align_pair(const MultiPoly& a, const MultiPoly& b, MultiPoly& x, MultiPoly& y) {
  std::vector<std::string> vars = MultiPoly::merge_vars(a.vars(), b.vars());
  FieldPtr f = a.field() ? a.field() : b.field();
  x = a.aligned(vars, f);
  y = b.aligned(vars, f);
}

MultiPoly res_rec(const MultiPoly& A, const MultiPoly& B, const std::string& var);

MultiPoly res_swapped(const MultiPoly& A, const MultiPoly& B, long dA, long dB,
                      const std::string& var) {
  MultiPoly r = res_rec(B, A, var);
  if ((dA & 1) && (dB & 1)) r = -r;
  return r;
}

MultiPoly res_rec(const MultiPoly& A, const MultiPoly& B, const std::string& var) {
  long dA = A.degree(var), dB = B.degree(var);
  if (dA < dB) return res_swapped(A, B, dA, dB, var);
  if (dB == 0) {
    // B is free of var; res = B^dA
    return B.pow(static_cast<unsigned long>(dA));
  }
  MultiPoly R = prem(A, B, var);
  if (R.is_zero()) return MultiPoly::zero(A.vars(), A.field());
  long dR = R.degree(var);
  MultiPoly cont = content_in(R, var);
  MultiPoly Rbar = R.exact_div(cont);
  MultiPoly sub = res_rec(B, Rbar, var);
  if (sub.is_zero()) return sub;
  MultiPoly resBR = sub * cont.pow(static_cast<unsigned long>(dB));
  MultiPoly lb = B.coeffs_in(var)[static_cast<std::size_t>(dB)];
  long expo = (dA - dB + 1) * dB - dA + dR;
  MultiPoly out = expo > 0 ? resBR.exact_div(lb.pow(static_cast<unsigned long>(expo))) : resBR;
  if ((dA & 1) && (dB & 1)) out = -out;
  return out;
}

}  // namespace

MultiPoly poly_gcd(const MultiPoly& a, const MultiPoly& b) {
  auto normalized = [](const MultiPoly& p) {
    if (p.is_zero()) return p;
    return p.scaled(p.leading_term().coeff.inverse());
  };
  if (a.is_zero()) return normalized(b);
  if (b.is_zero()) return normalized(a);
  MultiPoly x, y;
  align_pair(a, b, x, y);
  std::string var;
  for (const auto& v : x.vars())
    if (x.depends_on(v) || y.depends_on(v)) {
      var = v;
      break;
    }
  if (var.empty()) {
    // both nonzero constants
    FieldElem one = x.field() ? FieldElem::in_field(x.field(), 1) : FieldElem(1);
    return MultiPoly::constant(one, x.vars());
  }
  if (univariate_in(x, var) && univariate_in(y, var)) return dense_gcd(x, y, var);

  if (certified_coprime(x, y)) {
    FieldElem one = x.field() ? FieldElem::in_field(x.field(), 1) : FieldElem(1);
    return MultiPoly::constant(one, x.vars());
  }

  MultiPoly cont_x = content_in(x, var);
  MultiPoly cont_y = content_in(y, var);
  MultiPoly px = x.exact_div(cont_x);
  MultiPoly py = y.exact_div(cont_y);
  MultiPoly cont_gcd = poly_gcd(cont_x, cont_y);
  if (px.degree(var) < py.degree(var)) std::swap(px, py);
  MultiPoly gcd_pp;
  for (;;) {
    if (py.degree(var) <= 0) {
      if (py.is_zero()) {
        gcd_pp = px;
      } else {
        FieldElem one = x.field() ? FieldElem::in_field(x.field(), 1) : FieldElem(1);
        gcd_pp = MultiPoly::constant(one, x.vars());
      }
      break;
    }
    MultiPoly r = prem(px, py, var);
    px = std::move(py);
    if (r.is_zero()) {
      py = r;
    } else {
      py = r.exact_div(content_in(r, var));
    }
  }
  return normalized(cont_gcd * gcd_pp);
}

MultiPoly resultant(const MultiPoly& a, const MultiPoly& b, const std::string& var) {
  if (a.is_zero() || b.is_zero()) throw DegreeError("resultant of a zero polynomial");
  MultiPoly x, y;
  align_pair(a, b, x, y);
  if (x.degree(var) <= 0 && y.degree(var) <= 0) {
    FieldElem one = x.field() ? FieldElem::in_field(x.field(), 1) : FieldElem(1);
    return MultiPoly::constant(one, x.vars());
  }
  return res_rec(x, y, var);
}

MultiPoly squarefree_part(const MultiPoly& p, const std::string& var) {
  if (p.is_zero()) return p;
  MultiPoly d = p.derivative(var);
  MultiPoly g = poly_gcd(p, d);
  return p.exact_div(g);
}

}  // namespace dyncubic::algebra
