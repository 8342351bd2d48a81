#include "dyncubic/multipoly.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>
#include <unordered_map>

namespace dyncubic::algebra {

namespace {

long total_of(const std::vector<unsigned>& e) {
  long t = 0;
  for (unsigned x : e) t += x;
  return t;
}

// true when a > b in graded lex (total degree, then first variable most significant)
bool grlex_greater(const std::vector<unsigned>& a, const std::vector<unsigned>& b) {
  long ta = total_of(a), tb = total_of(b);
  if (ta != tb) return ta > tb;
  return a > b;
}

struct ExpHash {
  std::size_t operator()(const std::vector<unsigned>& e) const {
    std::size_t h = 1469598103934665603ull;
    for (unsigned x : e) {
      h ^= x;
      h *= 1099511628211ull;
    }
    return h;
  }
};

}  // namespace

MultiPoly MultiPoly::zero(std::vector<std::string> vars, FieldPtr field) {
  MultiPoly p;
  p.vars_ = std::move(vars);
  p.field_ = std::move(field);
  return p;
}

MultiPoly MultiPoly::constant(FieldElem c, std::vector<std::string> vars) {
  MultiPoly p;
  p.vars_ = std::move(vars);
  p.field_ = c.field();
  if (!c.is_zero()) p.terms_.push_back({std::vector<unsigned>(p.vars_.size(), 0), std::move(c)});
  return p;
}

MultiPoly MultiPoly::variable(const std::string& name, std::vector<std::string> vars,
                              FieldPtr field) {
  if (vars.empty()) vars = {name};
  MultiPoly p;
  p.vars_ = std::move(vars);
  p.field_ = std::move(field);
  std::size_t idx = p.var_index_(name);
  if (idx == static_cast<std::size_t>(-1))
    throw ArgumentError("variable " + name + " not in variable list");
  std::vector<unsigned> e(p.vars_.size(), 0);
  e[idx] = 1;
  FieldElem one = p.field_ ? FieldElem::in_field(p.field_, 1) : FieldElem(1);
  p.terms_.push_back({std::move(e), std::move(one)});
  return p;
}

MultiPoly MultiPoly::from_terms(std::vector<std::string> vars, std::vector<Term> terms,
                                FieldPtr field) {
  MultiPoly p;
  p.vars_ = std::move(vars);
  p.field_ = std::move(field);
  for (auto& t : terms) {
    if (t.exp.size() != p.vars_.size())
      throw ArgumentError("exponent vector length does not match variable list");
    if (!p.field_ && t.coeff.field()) p.field_ = t.coeff.field();
  }
  p.terms_ = std::move(terms);
  if (p.field_)
    for (auto& t : p.terms_) t.coeff = t.coeff.promoted(p.field_);
  p.normalize_();
  return p;
}

void MultiPoly::normalize_() {
  std::sort(terms_.begin(), terms_.end(),
            [](const Term& a, const Term& b) { return grlex_greater(a.exp, b.exp); });
  std::vector<Term> out;
  out.reserve(terms_.size());
  for (auto& t : terms_) {
    if (!out.empty() && out.back().exp == t.exp) {
      out.back().coeff += t.coeff;
      if (out.back().coeff.is_zero()) out.pop_back();
    } else if (!t.coeff.is_zero()) {
      out.push_back(std::move(t));
    }
  }
  terms_ = std::move(out);
}

std::size_t MultiPoly::var_index_(const std::string& var) const {
  for (std::size_t i = 0; i < vars_.size(); ++i)
    if (vars_[i] == var) return i;
  return static_cast<std::size_t>(-1);
}

std::vector<std::string> MultiPoly::merge_vars(const std::vector<std::string>& a,
                                               const std::vector<std::string>& b) {
  std::vector<std::string> out;
  std::size_t i = 0, j = 0;
  auto contains = [](const std::vector<std::string>& v, std::size_t from, const std::string& s) {
    for (std::size_t k = from; k < v.size(); ++k)
      if (v[k] == s) return true;
    return false;
  };
  while (i < a.size() || j < b.size()) {
    if (i < a.size() && j < b.size() && a[i] == b[j]) {
      out.push_back(a[i]);
      ++i;
      ++j;
    } else if (i < a.size() && !contains(b, j, a[i])) {
      out.push_back(a[i]);
      ++i;
    } else if (j < b.size() && !contains(a, i, b[j])) {
      out.push_back(b[j]);
      ++j;
    } else {
      throw ArgumentError("conflicting variable orders");
    }
  }
  return out;
}

MultiPoly MultiPoly::aligned(const std::vector<std::string>& vars, const FieldPtr& field) const {
  FieldPtr f = field;
  if (field_ && !f) f = field_;
  if (field_ && field && !same_field(field_, field))
    throw FieldError("polynomials over incompatible fields");
  std::vector<std::string> merged = merge_vars(vars_, vars);
  MultiPoly out;
  out.vars_ = merged;
  out.field_ = f;
  std::vector<std::size_t> pos(vars_.size());
  for (std::size_t i = 0; i < vars_.size(); ++i) {
    std::size_t p = static_cast<std::size_t>(-1);
    for (std::size_t k = 0; k < merged.size(); ++k)
      if (merged[k] == vars_[i]) {
        p = k;
        break;
      }
    pos[i] = p;
  }
  out.terms_.reserve(terms_.size());
  for (const auto& t : terms_) {
    std::vector<unsigned> e(merged.size(), 0);
    for (std::size_t i = 0; i < vars_.size(); ++i) e[pos[i]] = t.exp[i];
    out.terms_.push_back({std::move(e), f ? t.coeff.promoted(f) : t.coeff});
  }
  out.normalize_();
  return out;
}

void MultiPoly::unify_(MultiPoly& a, MultiPoly& b) {
  if (a.vars_ == b.vars_ && same_field(a.field_, b.field_)) return;
  FieldPtr f = a.field_ ? a.field_ : b.field_;
  if (a.field_ && b.field_ && !same_field(a.field_, b.field_))
    throw FieldError("polynomials over incompatible fields");
  std::vector<std::string> merged = merge_vars(a.vars_, b.vars_);
  a = a.aligned(merged, f);
  b = b.aligned(merged, f);
}

bool MultiPoly::is_constant() const {
  return terms_.empty() || (terms_.size() == 1 && total_of(terms_[0].exp) == 0);
}

FieldElem MultiPoly::constant_value() const {
  if (terms_.empty()) return field_ ? FieldElem::in_field(field_, 0) : FieldElem(0);
  if (!is_constant()) throw ArgumentError("polynomial is not constant");
  return terms_[0].coeff;
}

long MultiPoly::total_degree() const {
  if (terms_.empty()) return -1;
  return total_of(terms_[0].exp);
}

long MultiPoly::degree(const std::string& var) const {
  std::size_t idx = var_index_(var);
  if (idx == static_cast<std::size_t>(-1)) return terms_.empty() ? -1 : 0;
  long d = terms_.empty() ? -1 : 0;
  for (const auto& t : terms_) d = std::max(d, static_cast<long>(t.exp[idx]));
  return d;
}

const MultiPoly::Term& MultiPoly::leading_term() const {
  if (terms_.empty()) throw ArgumentError("zero polynomial has no leading term");
  return terms_[0];
}

MultiPoly MultiPoly::operator-() const {
  MultiPoly r = *this;
  for (auto& t : r.terms_) t.coeff = -t.coeff;
  return r;
}

MultiPoly& MultiPoly::operator+=(const MultiPoly& o) {
  MultiPoly rhs = o;
  unify_(*this, rhs);
  // merge two sorted term lists
  std::vector<Term> out;
  out.reserve(terms_.size() + rhs.terms_.size());
  std::size_t i = 0, j = 0;
  while (i < terms_.size() || j < rhs.terms_.size()) {
    if (j == rhs.terms_.size() ||
        (i < terms_.size() && grlex_greater(terms_[i].exp, rhs.terms_[j].exp))) {
      out.push_back(std::move(terms_[i++]));
    } else if (i == terms_.size() || grlex_greater(rhs.terms_[j].exp, terms_[i].exp)) {
      out.push_back(rhs.terms_[j++]);
    } else {
      FieldElem c = terms_[i].coeff + rhs.terms_[j].coeff;
      if (!c.is_zero()) out.push_back({terms_[i].exp, std::move(c)});
      ++i;
      ++j;
    }
  }
  terms_ = std::move(out);
  return *this;
}

MultiPoly& MultiPoly::operator-=(const MultiPoly& o) { return *this += -o; }

MultiPoly operator*(const MultiPoly& a, const MultiPoly& b) {
  MultiPoly x = a, y = b;
  MultiPoly::unify_(x, y);
  MultiPoly out;
  out.vars_ = x.vars_;
  out.field_ = x.field_;
  if (x.terms_.empty() || y.terms_.empty()) return out;
  if (x.terms_.size() < y.terms_.size()) std::swap(x, y);
  std::unordered_map<std::vector<unsigned>, FieldElem, ExpHash> acc;
  acc.reserve(x.terms_.size() * 2);
  const std::size_t nv = x.vars_.size();
  std::vector<unsigned> e(nv);
  for (const auto& ty : y.terms_) {
    for (const auto& tx : x.terms_) {
      for (std::size_t k = 0; k < nv; ++k) e[k] = tx.exp[k] + ty.exp[k];
      FieldElem prod = tx.coeff * ty.coeff;
      auto it = acc.find(e);
      if (it == acc.end()) {
        acc.emplace(e, std::move(prod));
      } else {
        it->second += prod;
      }
    }
  }
  out.terms_.reserve(acc.size());
  for (auto& [exp, c] : acc) {
    if (!c.is_zero()) out.terms_.push_back({exp, std::move(c)});
  }
  std::sort(out.terms_.begin(), out.terms_.end(),
            [](const MultiPoly::Term& s, const MultiPoly::Term& t) {
              return grlex_greater(s.exp, t.exp);
            });
  return out;
}

MultiPoly MultiPoly::scaled(const FieldElem& c) const {
  if (c.is_zero()) return zero(vars_, field_ ? field_ : c.field());
  MultiPoly r = *this;
  if (c.field() && !r.field_) {
    r = r.aligned(r.vars_, c.field());
  }
  for (auto& t : r.terms_) t.coeff *= c;
  return r;
}

MultiPoly MultiPoly::pow(unsigned long e) const {
  MultiPoly acc = constant(field_ ? FieldElem::in_field(field_, 1) : FieldElem(1), vars_);
  MultiPoly base = *this;
  while (e) {
    if (e & 1) acc = acc * base;
    if (e >>= 1) base = base * base;
  }
  return acc;
}

MultiPoly MultiPoly::derivative(const std::string& var) const {
  std::size_t idx = var_index_(var);
  MultiPoly out = zero(vars_, field_);
  if (idx == static_cast<std::size_t>(-1)) return out;
  for (const auto& t : terms_) {
    if (t.exp[idx] == 0) continue;
    Term d = t;
    d.coeff *= FieldElem(static_cast<long>(t.exp[idx]));
    --d.exp[idx];
    out.terms_.push_back(std::move(d));
  }
  out.normalize_();
  return out;
}

MultiPoly MultiPoly::exact_div(const MultiPoly& divisor) const {
  MultiPoly r = *this, d = divisor;
  unify_(r, d);
  if (d.is_zero()) throw DivisionError("division by zero polynomial");
  if (r.is_zero()) return r;

  // Single-term divisor: divide term by term.
  if (d.terms_.size() == 1) {
    const Term& ld = d.terms_[0];
    FieldElem ld_inv = ld.coeff.inverse();
    MultiPoly q = zero(r.vars_, r.field_);
    q.terms_.reserve(r.terms_.size());
    for (const auto& t : r.terms_) {
      std::vector<unsigned> e(t.exp.size());
      for (std::size_t k = 0; k < e.size(); ++k) {
        if (t.exp[k] < ld.exp[k]) throw DivisionError("not an exact divisor");
        e[k] = t.exp[k] - ld.exp[k];
      }
      q.terms_.push_back({std::move(e), t.coeff * ld_inv});
    }
    return q;
  }

  // Synthetic division along a variable in which the divisor has a constant
  // leading coefficient; quadratic leading-term rewriting otherwise. Among the
  // eligible variables, the one where the divisor has the highest degree keeps
  // the per-step coefficient polynomials smallest.
  std::string best;
  long best_deg = 0;
  for (const auto& v : r.vars_) {
    long dd = d.degree(v);
    if (dd <= best_deg) continue;
    if (!d.coeffs_in(v).back().is_constant()) continue;
    best = v;
    best_deg = dd;
  }
  if (best_deg > 0) {
    const std::string& v = best;
    long dd = best_deg;
    std::vector<MultiPoly> dc = d.coeffs_in(v);
    long dr = r.degree(v);
    if (dr < dd) throw DivisionError("not an exact divisor");
    std::vector<MultiPoly> rc = r.coeffs_in(v);
    FieldElem linv = dc.back().constant_value().inverse();
    std::vector<MultiPoly> q(static_cast<std::size_t>(dr - dd) + 1, zero(r.vars_, r.field_));
    for (long i = dr - dd; i >= 0; --i) {
      MultiPoly qi = rc[static_cast<std::size_t>(i + dd)].scaled(linv);
      if (qi.is_zero()) continue;
      for (long j = 0; j < dd; ++j) {
        if (dc[static_cast<std::size_t>(j)].is_zero()) continue;
        rc[static_cast<std::size_t>(i + j)] -= qi * dc[static_cast<std::size_t>(j)];
      }
      rc[static_cast<std::size_t>(i + dd)] = zero(r.vars_, r.field_);
      q[static_cast<std::size_t>(i)] = std::move(qi);
    }
    for (const auto& c : rc)
      if (!c.is_zero()) throw DivisionError("not an exact divisor");
    return from_coeffs_in(v, q).aligned(r.vars_, r.field_);
  }

  MultiPoly q = zero(r.vars_, r.field_);
  const Term& ld = d.leading_term();
  FieldElem ld_inv = ld.coeff.inverse();
  while (!r.is_zero()) {
    const Term& lr = r.leading_term();
    std::vector<unsigned> e(lr.exp.size());
    for (std::size_t k = 0; k < e.size(); ++k) {
      if (lr.exp[k] < ld.exp[k]) throw DivisionError("not an exact divisor");
      e[k] = lr.exp[k] - ld.exp[k];
    }
    MultiPoly t = zero(r.vars_, r.field_);
    t.terms_.push_back({std::move(e), lr.coeff * ld_inv});
    q += t;
    r -= t * d;
  }
  return q;
}

MultiPoly MultiPoly::substitute(const std::string& var, const MultiPoly& value) const {
  std::size_t idx = var_index_(var);
  if (idx == static_cast<std::size_t>(-1)) return *this;
  // Horner over the dense coefficient list in var.
  std::vector<MultiPoly> cs = coeffs_in(var);
  MultiPoly acc = cs.empty() ? zero(vars_, field_) : cs.back();
  for (std::size_t k = cs.size(); k-- > 1;) {
    acc = acc * value + cs[k - 1];
  }
  return acc;
}

MultiPoly MultiPoly::evaluate_var(const std::string& var, const FieldElem& value) const {
  std::vector<std::string> keep;
  for (const auto& v : vars_)
    if (v != var) keep.push_back(v);
  std::size_t idx = var_index_(var);
  if (idx == static_cast<std::size_t>(-1)) return *this;
  FieldPtr f = field_;
  if (!f && value.field()) f = value.field();
  MultiPoly out = zero(keep, f);
  for (const auto& t : terms_) {
    std::vector<unsigned> e;
    e.reserve(keep.size());
    for (std::size_t k = 0; k < vars_.size(); ++k)
      if (k != idx) e.push_back(t.exp[k]);
    FieldElem c = t.coeff;
    if (t.exp[idx] > 0) c = c * value.pow(static_cast<long>(t.exp[idx]));
    out.terms_.push_back({std::move(e), std::move(c)});
  }
  out.normalize_();
  return out;
}

FieldElem MultiPoly::evaluate(const std::map<std::string, FieldElem>& point) const {
  FieldElem acc = field_ ? FieldElem::in_field(field_, 0) : FieldElem(0);
  for (const auto& t : terms_) {
    FieldElem c = t.coeff;
    for (std::size_t k = 0; k < vars_.size(); ++k) {
      if (t.exp[k] == 0) continue;
      auto it = point.find(vars_[k]);
      if (it == point.end()) throw ArgumentError("no value for variable " + vars_[k]);
      c = c * it->second.pow(static_cast<long>(t.exp[k]));
    }
    acc += c;
  }
  return acc;
}

std::vector<MultiPoly> MultiPoly::coeffs_in(const std::string& var) const {
  std::size_t idx = var_index_(var);
  long d = degree(var);
  std::vector<MultiPoly> out(static_cast<std::size_t>(std::max(d, 0L)) + 1, zero(vars_, field_));
  if (idx == static_cast<std::size_t>(-1)) {
    out[0] = *this;
    return out;
  }
  for (const auto& t : terms_) {
    Term u = t;
    unsigned k = u.exp[idx];
    u.exp[idx] = 0;
    out[k].terms_.push_back(std::move(u));
  }
  for (auto& p : out) p.normalize_();
  return out;
}

MultiPoly MultiPoly::from_coeffs_in(const std::string& var, const std::vector<MultiPoly>& coeffs) {
  MultiPoly acc;
  bool have_var_poly = false;
  MultiPoly xv;
  for (std::size_t k = 0; k < coeffs.size(); ++k) {
    const MultiPoly& c = coeffs[k];
    if (c.is_zero()) continue;
    if (!have_var_poly) {
      std::vector<std::string> vs = merge_vars(c.vars(), {var});
      xv = MultiPoly::variable(var, vs, c.field());
      have_var_poly = true;
    }
    acc += c * xv.pow(k);
  }
  if (!have_var_poly) return MultiPoly::zero({var});
  return acc;
}

bool MultiPoly::operator==(const MultiPoly& o) const {
  MultiPoly a = *this, b = o;
  try {
    unify_(a, b);
  } catch (const Error&) {
    return false;
  }
  if (a.terms_.size() != b.terms_.size()) return false;
  for (std::size_t i = 0; i < a.terms_.size(); ++i) {
    if (a.terms_[i].exp != b.terms_[i].exp) return false;
    if (!(a.terms_[i].coeff == b.terms_[i].coeff)) return false;
  }
  return true;
}

std::string MultiPoly::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& t : terms_) {
    std::string cs = t.coeff.to_string();
    if (!first) {
      if (!cs.empty() && cs[0] == '-' && cs.find(" + ") == std::string::npos &&
          cs.find(" - ") == std::string::npos) {
        os << " - ";
        cs = cs.substr(1);
      } else {
        os << " + ";
      }
    }
    bool any_var = total_of(t.exp) > 0;
    bool coeff_is_one = (cs == "1");
    bool needs_parens = cs.find(" + ") != std::string::npos || cs.find(" - ") != std::string::npos;
    if (!any_var || !coeff_is_one) {
      if (needs_parens) os << "(" << cs << ")";
      else os << cs;
      if (any_var) os << "*";
    }
    bool first_var = true;
    for (std::size_t k = 0; k < vars_.size(); ++k) {
      if (t.exp[k] == 0) continue;
      if (!first_var) os << "*";
      os << vars_[k];
      if (t.exp[k] > 1) os << "^" << t.exp[k];
      first_var = false;
    }
    first = false;
  }
  return os.str();
}

// ---------------------------------------------------------------------------
// Tiny expression parser for hand-written polynomials.

namespace {

struct Parser {
  const std::string& s;
  std::size_t pos = 0;
  const std::vector<std::string>& vars;
  const FieldPtr& field;

  void skip() {
    while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
  }
  bool eat(char c) {
    skip();
    if (pos < s.size() && s[pos] == c) {
      ++pos;
      return true;
    }
    return false;
  }

  MultiPoly parse_expr() {
    skip();
    bool neg = false;
    if (eat('-')) neg = true;
    else (void)eat('+');
    MultiPoly acc = parse_term();
    if (neg) acc = -acc;
    for (;;) {
      skip();
      if (eat('+')) {
        acc += parse_term();
      } else if (eat('-')) {
        acc -= parse_term();
      } else {
        break;
      }
    }
    return acc;
  }

  MultiPoly parse_term() {
    MultiPoly acc = parse_factor();
    for (;;) {
      skip();
      if (eat('*')) {
        acc = acc * parse_factor();
      } else {
        break;
      }
    }
    return acc;
  }

  MultiPoly parse_factor() {
    MultiPoly base = parse_base();
    skip();
    if (eat('^')) {
      skip();
      std::size_t start = pos;
      while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
      if (start == pos) throw ArgumentError("expected exponent in polynomial expression");
      unsigned long e = std::stoul(s.substr(start, pos - start));
      return base.pow(e);
    }
    return base;
  }

  MultiPoly parse_base() {
    skip();
    if (eat('-')) return -parse_factor();
    if (eat('(')) {
      MultiPoly inner = parse_expr();
      if (!eat(')')) throw ArgumentError("missing ) in polynomial expression");
      return inner;
    }
    if (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) {
      std::size_t start = pos;
      while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
      if (pos < s.size() && s[pos] == '/') {
        std::size_t save = pos;
        ++pos;
        std::size_t dstart = pos;
        while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
        if (dstart == pos) {
          pos = save;
        } else {
          Rational r = rat_from_string(s.substr(start, pos - start));
          return MultiPoly::constant(
              field ? FieldElem::in_field(field, r) : FieldElem(r), vars);
        }
      }
      Rational r = rat_from_string(s.substr(start, pos - start));
      return MultiPoly::constant(field ? FieldElem::in_field(field, r) : FieldElem(r), vars);
    }
    // identifier
    std::size_t start = pos;
    while (pos < s.size() &&
           (std::isalnum(static_cast<unsigned char>(s[pos])) || s[pos] == '_'))
      ++pos;
    if (start == pos) throw ArgumentError("unexpected character in polynomial expression");
    std::string name = s.substr(start, pos - start);
    if (field && name == field->gen_name())
      return MultiPoly::constant(FieldElem::generator(field), vars);
    for (const auto& v : vars)
      if (v == name) return MultiPoly::variable(name, vars, field);
    throw ArgumentError("unknown symbol in polynomial expression: " + name);
  }
};

}  // namespace

MultiPoly parse_poly(const std::string& text, std::vector<std::string> vars, FieldPtr field) {
  Parser p{text, 0, vars, field};
  MultiPoly out = p.parse_expr();
  p.skip();
  if (p.pos != text.size()) throw ArgumentError("trailing characters in polynomial expression");
  return out.aligned(vars, field);
}

}  // namespace dyncubic::algebra
