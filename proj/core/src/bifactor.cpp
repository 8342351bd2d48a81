#include "dyncubic/bifactor.hpp"

#include <algorithm>
#include <sstream>

#include "dyncubic/errors.hpp"

namespace dyncubic::bifactor {

using algebra::Integer;
using gf::gp_add;
using gf::gp_constant;
using gf::gp_derivative;
using gf::gp_divrem;
using gf::gp_factor;
using gf::gp_from;
using gf::gp_gcd;
using gf::gp_monic;
using gf::gp_mul;
using gf::gp_rem;
using gf::gp_scale;
using gf::gp_sub;
using gf::gp_trim;
using gf::gp_x;
using gf::gp_zero;

long BiPoly::tdeg() const {
  long d = -1;
  for (const auto& coeff : c) d = std::max(d, coeff.deg());
  return d;
}

std::string BiPoly::to_string() const {
  if (c.empty()) return "0";
  std::ostringstream out;
  for (std::size_t i = c.size(); i-- > 0;) {
    if (c[i].is_zero()) continue;
    if (out.tellp() > 0) out << " + ";
    out << "(" << c[i].to_string() << ")";
    if (i) out << "*z^" << i;
  }
  return out.str();
}

BiPoly bp_zero(const GFCtxPtr& ctx) { return BiPoly{ctx, {}}; }

BiPoly bp_from(const GFCtxPtr& ctx, std::vector<GFPoly> coeffs) {
  BiPoly f{ctx, std::move(coeffs)};
  bp_trim(f);
  return f;
}

void bp_trim(BiPoly& f) {
  while (!f.c.empty() && f.c.back().is_zero()) f.c.pop_back();
}

BiPoly bp_add(const BiPoly& a, const BiPoly& b) {
  BiPoly r = a;
  if (r.c.size() < b.c.size()) r.c.resize(b.c.size(), gp_zero(a.ctx));
  for (std::size_t i = 0; i < b.c.size(); ++i) r.c[i] = gp_add(r.c[i], b.c[i]);
  bp_trim(r);
  return r;
}

BiPoly bp_sub(const BiPoly& a, const BiPoly& b) {
  BiPoly r = a;
  if (r.c.size() < b.c.size()) r.c.resize(b.c.size(), gp_zero(a.ctx));
  for (std::size_t i = 0; i < b.c.size(); ++i) r.c[i] = gp_sub(r.c[i], b.c[i]);
  bp_trim(r);
  return r;
}

BiPoly bp_mul(const BiPoly& a, const BiPoly& b) {
  if (a.c.empty() || b.c.empty()) return bp_zero(a.ctx);
  BiPoly r{a.ctx, std::vector<GFPoly>(a.c.size() + b.c.size() - 1, gp_zero(a.ctx))};
  for (std::size_t i = 0; i < a.c.size(); ++i) {
    if (a.c[i].is_zero()) continue;
    for (std::size_t j = 0; j < b.c.size(); ++j)
      r.c[i + j] = gp_add(r.c[i + j], gp_mul(a.c[i], b.c[j]));
  }
  bp_trim(r);
  return r;
}

BiPoly bp_scale(const BiPoly& a, const GFElem& s) {
  BiPoly r = a;
  for (auto& coeff : r.c) coeff = gp_scale(coeff, s);
  bp_trim(r);
  return r;
}

bool bp_equal(const BiPoly& a, const BiPoly& b) {
  if (a.c.size() != b.c.size()) return false;
  for (std::size_t i = 0; i < a.c.size(); ++i) {
    if (a.c[i].c.size() != b.c[i].c.size()) return false;
    for (std::size_t j = 0; j < a.c[i].c.size(); ++j)
      if (a.c[i].c[j] != b.c[i].c[j]) return false;
  }
  return true;
}

GFPoly bp_eval_t(const BiPoly& f, const GFElem& t0) {
  std::vector<GFElem> c;
  c.reserve(f.c.size());
  for (const auto& coeff : f.c) c.push_back(coeff.eval(t0));
  return gp_from(f.ctx, std::move(c));
}

BiPoly bp_derivative_z(const BiPoly& f) {
  BiPoly r{f.ctx, {}};
  for (std::size_t i = 1; i < f.c.size(); ++i)
    r.c.push_back(gp_scale(f.c[i], GFElem(f.ctx, static_cast<gf::u64>(i % f.ctx->p))));
  bp_trim(r);
  return r;
}

GFPoly bp_content_t(const BiPoly& f) {
  GFPoly g = gp_zero(f.ctx);
  for (const auto& coeff : f.c) {
    g = gp_gcd(g, coeff);
    if (g.deg() == 0) break;
  }
  return g;
}

BiPoly bp_primitive_t(const BiPoly& f) {
  if (f.c.empty()) return f;
  GFPoly g = bp_content_t(f);
  if (g.deg() == 0) return bp_scale(f, g.c[0].inverse());
  BiPoly r{f.ctx, {}};
  r.c.reserve(f.c.size());
  for (const auto& coeff : f.c) r.c.push_back(gp_divrem(coeff, g).first);
  bp_trim(r);
  return r;
}

std::optional<BiPoly> bp_exact_div(const BiPoly& a, const BiPoly& b) {
  if (b.c.empty()) throw DivisionError("bivariate division by zero");
  if (a.c.empty()) return bp_zero(a.ctx);
  long da = a.zdeg(), db = b.zdeg();
  if (da < db) return std::nullopt;
  BiPoly rem = a;
  BiPoly quot{a.ctx, std::vector<GFPoly>(static_cast<std::size_t>(da - db) + 1, gp_zero(a.ctx))};
  const GFPoly& lb = b.c.back();
  while (!rem.c.empty() && rem.zdeg() >= db) {
    auto [qc, rc] = gp_divrem(rem.c.back(), lb);
    if (!rc.is_zero()) return std::nullopt;
    std::size_t off = rem.c.size() - b.c.size();
    quot.c[off] = qc;
    for (std::size_t i = 0; i < b.c.size(); ++i)
      rem.c[off + i] = gp_sub(rem.c[off + i], gp_mul(qc, b.c[i]));
    bp_trim(rem);
  }
  if (!rem.c.empty()) return std::nullopt;
  bp_trim(quot);
  return quot;
}

namespace {

GFPoly gp_pow_small(const GFPoly& a, unsigned e) {
  GFPoly r = gp_constant(GFElem(a.ctx, 1));
  for (unsigned i = 0; i < e; ++i) r = gp_mul(r, a);
  return r;
}

// f(x + a) by Horner.
GFPoly gp_shift(const GFPoly& f, const GFElem& a) {
  GFPoly lin = gp_from(f.ctx, {a, GFElem(f.ctx, 1)});
  GFPoly res = gp_zero(f.ctx);
  for (std::size_t i = f.c.size(); i-- > 0;) {
    res = gp_mul(res, lin);
    res = gp_add(res, gp_constant(f.c[i]));
  }
  return res;
}

GFPoly gp_invmod(const GFPoly& u, const GFPoly& m) {
  GFPoly r0 = m, r1 = gp_rem(u, m);
  GFPoly s0 = gp_zero(m.ctx), s1 = gp_constant(GFElem(m.ctx, 1));
  while (!r1.is_zero()) {
    auto [q, rem] = gp_divrem(r0, r1);
    GFPoly s2 = gp_sub(s0, gp_mul(q, s1));
    r0 = std::move(r1);
    r1 = std::move(rem);
    s0 = std::move(s1);
    s1 = std::move(s2);
  }
  if (r0.deg() != 0) throw DivisionError("inverse modulo a non-coprime polynomial");
  return gp_scale(s0, r0.c[0].inverse());
}

// Normalized form of a nonzero factor: primitive in t with the leading
// z-coefficient's leading t-coefficient equal to 1.
BiPoly bp_normalize(const BiPoly& f) {
  BiPoly r = bp_primitive_t(f);
  if (r.c.empty()) return r;
  GFElem lead = r.c.back().lead();
  return bp_scale(r, lead.inverse());
}

bool bp_less(const BiPoly& a, const BiPoly& b) {
  if (a.c.size() != b.c.size()) return a.c.size() < b.c.size();
  if (a.tdeg() != b.tdeg()) return a.tdeg() < b.tdeg();
  for (std::size_t i = a.c.size(); i-- > 0;) {
    const auto& x = a.c[i].c;
    const auto& y = b.c[i].c;
    if (x.size() != y.size()) return x.size() < y.size();
    for (std::size_t j = x.size(); j-- > 0;) {
      if (x[j] != y[j]) return x[j].coords() < y[j].coords();
    }
  }
  return false;
}

// Pseudo-remainder in z: repeatedly scale by the divisor's leading coefficient.
BiPoly bp_prem(BiPoly a, const BiPoly& b) {
  const GFPoly& lb = b.c.back();
  const long db = b.zdeg();
  while (!a.c.empty() && a.zdeg() >= db) {
    GFPoly la = a.c.back();
    std::size_t off = a.c.size() - b.c.size();
    BiPoly next{a.ctx, std::vector<GFPoly>(a.c.size() - 1, gp_zero(a.ctx))};
    for (std::size_t i = 0; i + 1 < a.c.size(); ++i) {
      GFPoly term = gp_mul(a.c[i], lb);
      if (i >= off && i - off < b.c.size() - 1)
        term = gp_sub(term, gp_mul(la, b.c[i - off]));
      next.c[i] = std::move(term);
    }
    bp_trim(next);
    a = std::move(next);
  }
  return a;
}

// Truncate the t-degree to < prec.
void bp_trunc_s(BiPoly& f, std::size_t prec) {
  for (auto& coeff : f.c) {
    if (coeff.c.size() > prec) coeff.c.resize(prec);
    gp_trim(coeff);
  }
  bp_trim(f);
}

BiPoly bp_shift_t(const BiPoly& f, const GFElem& a) {
  BiPoly r = f;
  for (auto& coeff : r.c) coeff = gp_shift(coeff, a);
  return r;
}

GFElem element_by_index(const GFCtxPtr& ctx, gf::u64 n) {
  std::vector<gf::u64> coords(ctx->k, 0);
  for (unsigned i = 0; i < ctx->k && n; ++i) {
    coords[i] = n % ctx->p;
    n /= ctx->p;
  }
  return GFElem(ctx, std::move(coords));
}

// Distinct irreducible factors over GF(q)(t) of a primitive polynomial that is
// squarefree in z with positive z-degree. Returns nullopt when no squarefree
// specialization point exists in the coefficient field.
std::optional<std::vector<BiPoly>> factor_squarefree_z(const BiPoly& w, std::mt19937_64& rng) {
  const GFCtxPtr& ctx = w.ctx;
  const long d = w.zdeg();
  if (d == 1) return std::vector<BiPoly>{bp_normalize(w)};

  // Force the polynomial monic in z: W*(y, t) = L^(d-1) W(y / L, t).
  const GFPoly L = w.c.back();
  BiPoly wm{ctx, std::vector<GFPoly>(w.c.size(), gp_zero(ctx))};
  const bool monicized = L.deg() > 0;
  if (!monicized) {
    wm = bp_scale(w, L.c[0].inverse());
  } else {
    for (long i = 0; i < d; ++i)
      wm.c[static_cast<std::size_t>(i)] =
          gp_mul(w.c[static_cast<std::size_t>(i)], gp_pow_small(L, static_cast<unsigned>(d - 1 - i)));
    wm.c[static_cast<std::size_t>(d)] = gp_constant(GFElem(ctx, 1));
  }

  // Squarefree specialization point.
  Integer qsize = 1;
  for (unsigned i = 0; i < ctx->k; ++i) qsize *= static_cast<long>(ctx->p);
  gf::u64 limit = qsize > 65536 ? 65536 : static_cast<gf::u64>(qsize.get_ui());
  std::optional<GFElem> t0;
  for (gf::u64 n = 0; n < limit; ++n) {
    GFElem cand = element_by_index(ctx, n);
    GFPoly spec = bp_eval_t(wm, cand);
    if (spec.deg() != d) continue;
    if (gp_gcd(spec, gp_derivative(spec)).deg() != 0) continue;
    t0 = cand;
    break;
  }
  if (!t0) return std::nullopt;

  GFPoly spec = bp_eval_t(wm, *t0);
  auto uni = gp_factor(spec, rng);
  if (uni.factors.size() == 1) return std::vector<BiPoly>{bp_normalize(w)};

  // Hensel lift the univariate factorization along s = t - t0.
  const std::size_t B = static_cast<std::size_t>(wm.tdeg()) + 1;
  BiPoly wsh = bp_shift_t(wm, *t0);
  std::vector<GFPoly> base;
  std::vector<GFPoly> bezout;
  std::vector<BiPoly> lifted;
  for (const auto& fac : uni.factors) base.push_back(fac.poly);
  for (std::size_t i = 0; i < base.size(); ++i) {
    GFPoly cof = gp_constant(GFElem(ctx, 1));
    for (std::size_t j = 0; j < base.size(); ++j)
      if (j != i) cof = gp_rem(gp_mul(cof, base[j]), base[i]);
    bezout.push_back(gp_invmod(cof, base[i]));
    BiPoly g{ctx, {}};
    for (const auto& ce : base[i].c) g.c.push_back(gp_constant(ce));
    lifted.push_back(std::move(g));
  }

  for (std::size_t m = 1; m < B; ++m) {
    BiPoly prod = lifted[0];
    for (std::size_t i = 1; i < lifted.size(); ++i) {
      prod = bp_mul(prod, lifted[i]);
      bp_trunc_s(prod, m + 1);
    }
    BiPoly err = bp_sub(wsh, prod);
    bp_trunc_s(err, m + 1);
    std::vector<GFElem> ec(static_cast<std::size_t>(d), GFElem(ctx));
    bool any = false;
    for (std::size_t i = 0; i < err.c.size() && i < ec.size(); ++i) {
      if (err.c[i].c.size() > m && !err.c[i].c[m].is_zero()) {
        ec[i] = err.c[i].c[m];
        any = true;
      }
    }
    if (!any) continue;
    GFPoly e = gp_from(ctx, std::move(ec));
    for (std::size_t i = 0; i < lifted.size(); ++i) {
      GFPoly delta = gp_rem(gp_mul(e, bezout[i]), base[i]);
      if (delta.is_zero()) continue;
      for (std::size_t j = 0; j < delta.c.size(); ++j) {
        if (delta.c[j].is_zero()) continue;
        if (lifted[i].c.size() <= j) lifted[i].c.resize(j + 1, gp_zero(ctx));
        GFPoly& slot = lifted[i].c[j];
        if (slot.c.size() <= m) slot.c.resize(m + 1, GFElem(ctx));
        slot.c[m] = slot.c[m] + delta.c[j];
        gp_trim(slot);
      }
      bp_trim(lifted[i]);
    }
  }

  // Recombine subsets of lifted factors into true factors of wsh.
  std::vector<std::size_t> pool(lifted.size());
  for (std::size_t i = 0; i < pool.size(); ++i) pool[i] = i;
  std::vector<BiPoly> monic_factors;
  BiPoly remaining = wsh;
  std::size_t size = 1;
  while (2 * size <= pool.size()) {
    std::vector<std::size_t> pick(size);
    for (std::size_t i = 0; i < size; ++i) pick[i] = i;
    bool found = false;
    for (;;) {
      BiPoly cand = lifted[pool[pick[0]]];
      for (std::size_t i = 1; i < size; ++i) {
        cand = bp_mul(cand, lifted[pool[pick[i]]]);
        bp_trunc_s(cand, B);
      }
      if (auto quot = bp_exact_div(remaining, cand)) {
        monic_factors.push_back(cand);
        remaining = *quot;
        std::vector<std::size_t> next_pool;
        for (std::size_t i = 0, k = 0; i < pool.size(); ++i) {
          if (k < size && pick[k] == i) {
            ++k;
            continue;
          }
          next_pool.push_back(pool[i]);
        }
        pool = std::move(next_pool);
        found = true;
        break;
      }
      // next subset of the current cardinality
      long pos = static_cast<long>(size) - 1;
      while (pos >= 0 && pick[static_cast<std::size_t>(pos)] ==
                             pool.size() - size + static_cast<std::size_t>(pos))
        --pos;
      if (pos < 0) break;
      ++pick[static_cast<std::size_t>(pos)];
      for (std::size_t i = static_cast<std::size_t>(pos) + 1; i < size; ++i)
        pick[i] = pick[i - 1] + 1;
    }
    if (!found) ++size;
  }
  if (remaining.zdeg() > 0) monic_factors.push_back(remaining);

  // Map monic factors in (y, s) back to primitive factors in (z, t).
  std::vector<BiPoly> out;
  GFElem neg_t0 = -*t0;
  for (auto& fm : monic_factors) {
    BiPoly ft = bp_shift_t(fm, neg_t0);
    if (monicized) {
      BiPoly fz{ctx, std::vector<GFPoly>(ft.c.size(), gp_zero(ctx))};
      for (std::size_t i = 0; i < ft.c.size(); ++i)
        fz.c[i] = gp_mul(ft.c[i], gp_pow_small(L, static_cast<unsigned>(i)));
      out.push_back(bp_normalize(fz));
    } else {
      out.push_back(bp_normalize(ft));
    }
  }
  std::sort(out.begin(), out.end(), bp_less);
  return out;
}

}  // namespace

BiPoly bp_gcd_z(const BiPoly& a, const BiPoly& b) {
  if (a.is_zero()) return b.is_zero() ? b : bp_normalize(b);
  if (b.is_zero()) return bp_normalize(a);
  GFPoly cg = gp_gcd(bp_content_t(a), bp_content_t(b));
  BiPoly x = bp_primitive_t(a), y = bp_primitive_t(b);
  if (x.zdeg() < y.zdeg()) std::swap(x, y);
  for (;;) {
    if (y.is_zero()) break;
    if (y.zdeg() == 0) {
      x = BiPoly{a.ctx, {gp_constant(GFElem(a.ctx, 1))}};
      break;
    }
    BiPoly r = bp_prem(x, y);
    x = std::move(y);
    y = bp_primitive_t(r);
  }
  BiPoly g{a.ctx, {}};
  g.c.reserve(x.c.size());
  for (const auto& coeff : x.c) g.c.push_back(gp_mul(coeff, cg));
  bp_trim(g);
  return bp_normalize(g);
}

BiPoly bp_embed(const BiPoly& f, const GFCtxPtr& ext) {
  BiPoly r{ext, {}};
  r.c.reserve(f.c.size());
  for (const auto& coeff : f.c) {
    GFPoly ce{ext, {}};
    ce.c.reserve(coeff.c.size());
    for (const auto& e : coeff.c) ce.c.push_back(gf::embed(e, ext));
    r.c.push_back(std::move(ce));
  }
  return r;
}

BiFactorization bp_factor(const BiPoly& f, std::mt19937_64& rng) {
  if (f.is_zero()) throw ArgumentError("factorization of the zero polynomial");
  const GFCtxPtr& ctx = f.ctx;
  BiFactorization result;
  result.unit = GFElem(ctx, 1);
  result.content = gp_constant(GFElem(ctx, 1));

  GFPoly content = bp_content_t(f);
  BiPoly prim = bp_primitive_t(f);
  if (content.deg() > 0) result.content = gp_monic(content);

  if (prim.zdeg() <= 0) {
    result.conclusive = true;
  } else if (bp_derivative_z(prim).is_zero()) {
    result.conclusive = false;  // z-exponents all divisible by p
  } else {
    BiPoly g = bp_gcd_z(prim, bp_derivative_z(prim));
    BiPoly w = prim;
    if (g.zdeg() > 0) {
      auto q = bp_exact_div(prim, g);
      if (!q) throw InternalError("squarefree split failed to divide");
      w = *q;
    }
    auto distinct = factor_squarefree_z(w, rng);
    if (distinct) {
      result.conclusive = true;
      BiPoly rest = prim;
      for (const auto& fac : *distinct) {
        unsigned mult = 0;
        while (auto q = bp_exact_div(rest, fac)) {
          rest = *q;
          ++mult;
        }
        if (mult == 0) throw InternalError("factor does not divide its source");
        result.factors.push_back({fac, mult});
      }
      if (rest.zdeg() != 0)
        result.conclusive = false;  // an inseparable piece survived
    }
  }

  if (result.conclusive) {
    // Fix the unit so that unit * content * prod factors^mult == f exactly.
    BiPoly recon{ctx, {result.content}};
    for (const auto& fac : result.factors)
      for (unsigned i = 0; i < fac.multiplicity; ++i) recon = bp_mul(recon, fac.poly);
    if (recon.zdeg() != f.zdeg()) throw InternalError("factorization degree mismatch");
    result.unit = f.c.back().lead() / recon.c.back().lead();
    if (!bp_equal(bp_scale(recon, result.unit), f))
      throw InternalError("factorization does not reconstruct its input");
  }
  return result;
}

Verdict no_linear_factor(const BiPoly& f, std::mt19937_64& rng) {
  auto fac = bp_factor(f, rng);
  if (!fac.conclusive) return Verdict::inconclusive;
  for (const auto& g : fac.factors)
    if (g.poly.zdeg() == 1) return Verdict::refuted;
  return Verdict::certified;
}

Verdict no_root_in_closure(const BiPoly& f, std::mt19937_64& rng) {
  if (f.ctx->k != 1)
    throw ArgumentError("closure search expects prime-field coefficients");
  auto fac = bp_factor(f, rng);
  if (!fac.conclusive) return Verdict::inconclusive;
  for (const auto& g : fac.factors) {
    long d = g.poly.zdeg();
    if (d == 1) return Verdict::refuted;
    if (d < 2) continue;
    auto ext = gf::make_extension_field(f.ctx->p, static_cast<unsigned>(d));
    auto lifted = bp_factor(bp_embed(g.poly, ext), rng);
    if (!lifted.conclusive) return Verdict::inconclusive;
    for (const auto& h : lifted.factors)
      if (h.poly.zdeg() == 1) return Verdict::refuted;
  }
  return Verdict::certified;
}

Verdict geometrically_irreducible(const BiPoly& f, std::mt19937_64& rng) {
  if (f.ctx->k != 1)
    throw ArgumentError("geometric irreducibility expects prime-field coefficients");
  auto fac = bp_factor(f, rng);
  if (!fac.conclusive) return Verdict::inconclusive;
  if (fac.content.deg() > 0) return Verdict::refuted;
  if (fac.factors.size() != 1 || fac.factors[0].multiplicity != 1) return Verdict::refuted;
  const BiPoly& g = fac.factors[0].poly;
  long d = g.zdeg();
  if (d <= 0) return Verdict::refuted;
  std::vector<long> primes;
  long rest = d;
  for (long l = 2; l * l <= rest; ++l)
    if (rest % l == 0) {
      primes.push_back(l);
      while (rest % l == 0) rest /= l;
    }
  if (rest > 1) primes.push_back(rest);
  for (long l : primes) {
    auto ext = gf::make_extension_field(f.ctx->p, static_cast<unsigned>(l));
    auto lifted = bp_factor(bp_embed(g, ext), rng);
    if (!lifted.conclusive) return Verdict::inconclusive;
    if (lifted.content.deg() > 0) return Verdict::refuted;
    if (lifted.factors.size() != 1 || lifted.factors[0].multiplicity != 1)
      return Verdict::refuted;
  }
  return Verdict::certified;
}

}  // namespace dyncubic::bifactor
