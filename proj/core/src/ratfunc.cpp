#include "dyncubic/ratfunc.hpp"

namespace dyncubic::algebra {

RationalFunction::RationalFunction(MultiPoly num, MultiPoly den)
    : num_(std::move(num)), den_(std::move(den)) {
  if (den_.is_zero()) throw DivisionError("zero denominator");
  reduce_();
}

void RationalFunction::reduce_() {
  if (den_.is_zero()) throw DivisionError("zero denominator");
  if (num_.is_zero()) {
    den_ = MultiPoly::constant(
        num_.field() ? FieldElem::in_field(num_.field(), 1) : FieldElem(1), num_.vars());
    return;
  }
  MultiPoly g = poly_gcd(num_, den_);
  if (!g.is_constant()) {
    num_ = num_.exact_div(g);
    den_ = den_.exact_div(g);
  } else {
    // align variable lists and fields anyway
    std::vector<std::string> vars = MultiPoly::merge_vars(num_.vars(), den_.vars());
    FieldPtr f = num_.field() ? num_.field() : den_.field();
    num_ = num_.aligned(vars, f);
    den_ = den_.aligned(vars, f);
  }
  FieldElem lead = den_.leading_term().coeff;
  if (!lead.is_one()) {
    FieldElem inv = lead.inverse();
    num_ = num_.scaled(inv);
    den_ = den_.scaled(inv);
  }
}

FieldElem RationalFunction::constant_value() const {
  if (!is_constant()) throw ArgumentError("rational function is not constant");
  return num_.constant_value() / den_.constant_value();
}

RationalFunction RationalFunction::operator-() const {
  RationalFunction r = *this;
  r.num_ = -r.num_;
  return r;
}

RationalFunction& RationalFunction::operator+=(const RationalFunction& o) {
  num_ = num_ * o.den_ + o.num_ * den_;
  den_ = den_ * o.den_;
  reduce_();
  return *this;
}

RationalFunction& RationalFunction::operator-=(const RationalFunction& o) {
  num_ = num_ * o.den_ - o.num_ * den_;
  den_ = den_ * o.den_;
  reduce_();
  return *this;
}

RationalFunction& RationalFunction::operator*=(const RationalFunction& o) {
  num_ = num_ * o.num_;
  den_ = den_ * o.den_;
  reduce_();
  return *this;
}

RationalFunction& RationalFunction::operator/=(const RationalFunction& o) {
  if (o.is_zero()) throw DivisionError("division by zero rational function");
  num_ = num_ * o.den_;
  den_ = den_ * o.num_;
  reduce_();
  return *this;
}

RationalFunction RationalFunction::inverse() const {
  if (is_zero()) throw DivisionError("inverse of zero");
  return RationalFunction(den_, num_);
}

RationalFunction RationalFunction::pow(long e) const {
  if (e < 0) return inverse().pow(-e);
  RationalFunction acc(1L);
  RationalFunction base = *this;
  unsigned long k = static_cast<unsigned long>(e);
  while (k) {
    if (k & 1) acc *= base;
    if (k >>= 1) base *= base;
  }
  return acc;
}

RationalFunction RationalFunction::derivative(const std::string& var) const {
  MultiPoly dn = num_.derivative(var);
  MultiPoly dd = den_.derivative(var);
  return RationalFunction(dn * den_ - num_ * dd, den_ * den_);
}

RationalFunction RationalFunction::evaluate_var(const std::string& var,
                                                const FieldElem& value) const {
  MultiPoly d = den_.evaluate_var(var, value);
  if (d.is_zero()) throw PoleError("denominator vanishes at " + var + " = " + value.to_string());
  return RationalFunction(num_.evaluate_var(var, value), d);
}

FieldElem RationalFunction::evaluate(const std::map<std::string, FieldElem>& point) const {
  FieldElem d = den_.evaluate(point);
  if (d.is_zero()) throw PoleError("denominator vanishes at evaluation point");
  return num_.evaluate(point) / d;
}

RationalFunction RationalFunction::substitute(const std::string& var,
                                              const RationalFunction& value) const {
  // Clear the substitution's denominator degree-by-degree: for num = sum c_k var^k,
  // num(value) = sum c_k p^k q^(dn-k) / q^dn with value = p/q.
  auto subst_poly = [&](const MultiPoly& poly, long homog_deg) {
    std::vector<MultiPoly> cs = poly.coeffs_in(var);
    MultiPoly acc = MultiPoly::zero(poly.vars(), poly.field());
    for (std::size_t k = 0; k < cs.size(); ++k) {
      if (cs[k].is_zero()) continue;
      MultiPoly term = cs[k] * value.num().pow(k) *
                       value.den().pow(static_cast<unsigned long>(homog_deg) - k);
      acc += term;
    }
    return acc;
  };
  long dn = std::max(num_.degree(var), 0L);
  long dd = std::max(den_.degree(var), 0L);
  long d = std::max(dn, dd);
  MultiPoly new_num = subst_poly(num_, d);
  MultiPoly new_den = subst_poly(den_, d);
  if (new_den.is_zero()) throw PoleError("substitution lands in a pole");
  return RationalFunction(new_num, new_den);
}

RationalFunction eval_poly(const MultiPoly& p,
                           const std::map<std::string, RationalFunction>& values) {
  // Work over the common denominator prod den_v^(deg_v p) and reduce once.
  const auto& vars = p.vars();
  std::vector<long> degs(vars.size(), 0);
  std::vector<std::vector<MultiPoly>> num_pow(vars.size()), den_pow(vars.size());
  MultiPoly common = MultiPoly::constant(p.field() ? FieldElem::in_field(p.field(), 1)
                                                   : FieldElem(1));
  for (std::size_t k = 0; k < vars.size(); ++k) {
    degs[k] = p.degree(vars[k]);
    if (degs[k] <= 0) continue;
    auto it = values.find(vars[k]);
    if (it == values.end()) throw ArgumentError("no value for variable " + vars[k]);
    const RationalFunction& v = it->second;
    num_pow[k].resize(degs[k] + 1);
    den_pow[k].resize(degs[k] + 1);
    num_pow[k][0] = MultiPoly::constant(FieldElem(1));
    den_pow[k][0] = MultiPoly::constant(FieldElem(1));
    for (long e = 1; e <= degs[k]; ++e) {
      num_pow[k][e] = num_pow[k][e - 1] * v.num();
      den_pow[k][e] = den_pow[k][e - 1] * v.den();
    }
    common = common * den_pow[k][degs[k]];
  }
  MultiPoly acc = MultiPoly::zero({}, p.field());
  for (const auto& t : p.terms()) {
    MultiPoly m = MultiPoly::constant(t.coeff);
    for (std::size_t k = 0; k < vars.size(); ++k) {
      if (degs[k] <= 0) continue;
      unsigned e = t.exp[k];
      if (e > 0) m = m * num_pow[k][e];
      if (static_cast<long>(e) < degs[k]) m = m * den_pow[k][degs[k] - e];
    }
    acc += m;
  }
  return RationalFunction(acc, common);
}

std::string RationalFunction::to_string() const {
  if (den_.is_constant() && den_.constant_value().is_one()) return num_.to_string();
  std::string n = num_.to_string();
  std::string d = den_.to_string();
  bool n_paren = n.find(" + ") != std::string::npos || n.find(" - ") != std::string::npos;
  bool d_paren = d.find(" + ") != std::string::npos || d.find(" - ") != std::string::npos ||
                 d.find("*") != std::string::npos || d.find("^") != std::string::npos;
  std::string out;
  out += n_paren ? "(" + n + ")" : n;
  out += " / ";
  out += d_paren ? "(" + d + ")" : d;
  return out;
}

}  // namespace dyncubic::algebra
