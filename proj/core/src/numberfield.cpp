#include "dyncubic/numberfield.hpp"

#include <sstream>

namespace dyncubic::algebra {

Rational rat_from_string(const std::string& s) {
  Rational r;
  if (r.set_str(s, 10) != 0) throw std::invalid_argument("bad rational: " + s);
  r.canonicalize();
  return r;
}

std::size_t hash_rational(const Rational& r) {
  std::size_t h = 1469598103934665603ull;
  auto mix = [&h](const mpz_class& z) {
    std::size_t limbs = mpz_size(z.get_mpz_t());
    for (std::size_t i = 0; i < limbs; ++i) {
      h ^= static_cast<std::size_t>(mpz_getlimbn(z.get_mpz_t(), i));
      h *= 1099511628211ull;
    }
    h ^= static_cast<std::size_t>(mpz_sgn(z.get_mpz_t()) + 2);
    h *= 1099511628211ull;
  };
  mix(r.get_num());
  mix(r.get_den());
  return h;
}

Integer isqrt(const Integer& n, bool& exact) {
  if (n < 0) {
    exact = false;
    return 0;
  }
  Integer root, rem;
  mpz_sqrtrem(root.get_mpz_t(), rem.get_mpz_t(), n.get_mpz_t());
  exact = (rem == 0);
  return root;
}

NumberField::NumberField(std::vector<Rational> min_poly, std::string gen_name)
    : min_poly_(std::move(min_poly)), gen_name_(std::move(gen_name)) {
  if (min_poly_.size() < 2) throw ArgumentError("number field modulus must have degree >= 1");
  if (min_poly_.back() != 1) throw ArgumentError("number field modulus must be monic");
}

FieldPtr make_field(std::vector<Rational> min_poly, std::string gen_name) {
  return std::make_shared<const NumberField>(std::move(min_poly), std::move(gen_name));
}

bool same_field(const FieldPtr& a, const FieldPtr& b) {
  if (a == b) return true;
  if (!a || !b) return false;
  return *a == *b;
}

FieldElem::FieldElem(FieldPtr field, std::vector<Rational> coords)
    : field_(std::move(field)), coords_(std::move(coords)) {
  if (!field_) {
    if (coords_.size() != 1) throw ArgumentError("rational element needs exactly one coordinate");
    return;
  }
  if (coords_.size() > field_->degree()) {
    // Reduce a raw polynomial in the generator of arbitrary degree.
    reduce_();
  } else {
    coords_.resize(field_->degree(), Rational(0));
  }
}

FieldElem FieldElem::generator(const FieldPtr& field) {
  if (!field) throw ArgumentError("Q has no generator");
  std::vector<Rational> c(field->degree(), Rational(0));
  if (field->degree() == 1) {
    // Degree-1 "extension": generator is the root -c0 of x + c0.
    c[0] = -field->min_poly()[0];
  } else {
    c[1] = 1;
  }
  return FieldElem(field, std::move(c));
}

FieldElem FieldElem::gen_pow(const FieldPtr& field, unsigned long k) {
  return generator(field).pow(static_cast<long>(k));
}

FieldElem FieldElem::in_field(const FieldPtr& field, const Rational& r) {
  if (!field) return FieldElem(r);
  std::vector<Rational> c(field->degree(), Rational(0));
  c[0] = r;
  return FieldElem(field, std::move(c));
}

bool FieldElem::is_zero() const {
  for (const auto& c : coords_)
    if (c != 0) return false;
  return true;
}

bool FieldElem::is_one() const {
  if (coords_[0] != 1) return false;
  for (std::size_t i = 1; i < coords_.size(); ++i)
    if (coords_[i] != 0) return false;
  return true;
}

bool FieldElem::is_rational() const {
  for (std::size_t i = 1; i < coords_.size(); ++i)
    if (coords_[i] != 0) return false;
  return true;
}

Rational FieldElem::to_rational() const {
  if (!is_rational()) throw FieldError("element is not rational: " + to_string());
  return coords_[0];
}

void FieldElem::reduce_() {
  const auto& m = field_->min_poly();
  const std::size_t d = field_->degree();
  while (coords_.size() > d) {
    Rational lead = coords_.back();
    coords_.pop_back();
    if (lead == 0) continue;
    const std::size_t k = coords_.size() - d;  // x^(d+k-... ) position offset
    for (std::size_t i = 0; i < d; ++i) coords_[k + i] -= lead * m[i];
  }
  coords_.resize(d, Rational(0));
}

void FieldElem::unify_(FieldElem& a, FieldElem& b) {
  if (same_field(a.field_, b.field_)) {
    if (a.field_ && b.field_ && a.field_ != b.field_) b.field_ = a.field_;
    return;
  }
  if (!a.field_ && a.is_rational()) {
    a = FieldElem::in_field(b.field_, a.coords_[0]);
    return;
  }
  if (!b.field_ && b.is_rational()) {
    b = FieldElem::in_field(a.field_, b.coords_[0]);
    return;
  }
  throw FieldError("elements of incompatible fields");
}

FieldElem FieldElem::operator-() const {
  FieldElem r = *this;
  for (auto& c : r.coords_) c = -c;
  return r;
}

FieldElem& FieldElem::operator+=(const FieldElem& o) {
  FieldElem rhs = o;
  unify_(*this, rhs);
  for (std::size_t i = 0; i < coords_.size(); ++i) coords_[i] += rhs.coords_[i];
  return *this;
}

FieldElem& FieldElem::operator-=(const FieldElem& o) {
  FieldElem rhs = o;
  unify_(*this, rhs);
  for (std::size_t i = 0; i < coords_.size(); ++i) coords_[i] -= rhs.coords_[i];
  return *this;
}

FieldElem& FieldElem::operator*=(const FieldElem& o) {
  FieldElem rhs = o;
  unify_(*this, rhs);
  if (!field_) {
    coords_[0] *= rhs.coords_[0];
    return *this;
  }
  const std::size_t d = field_->degree();
  std::vector<Rational> prod(2 * d - 1, Rational(0));
  for (std::size_t i = 0; i < d; ++i) {
    if (coords_[i] == 0) continue;
    for (std::size_t j = 0; j < d; ++j) {
      if (rhs.coords_[j] == 0) continue;
      prod[i + j] += coords_[i] * rhs.coords_[j];
    }
  }
  coords_ = std::move(prod);
  reduce_();
  return *this;
}

FieldElem& FieldElem::operator/=(const FieldElem& o) { return *this *= o.inverse(); }

namespace {

// Polynomial arithmetic on rational coefficient vectors (lowest degree first),
// used for the extended Euclid inverse.
using RPoly = std::vector<Rational>;

std::size_t rdeg(const RPoly& p) {
  std::size_t n = p.size();
  while (n > 0 && p[n - 1] == 0) --n;
  return n;  // number of coefficients; 0 means zero polynomial
}

RPoly rtrim(RPoly p) {
  p.resize(rdeg(p));
  return p;
}

RPoly rsub(RPoly a, const RPoly& b, const Rational& scale, std::size_t shift) {
  if (a.size() < b.size() + shift) a.resize(b.size() + shift, Rational(0));
  for (std::size_t i = 0; i < b.size(); ++i) a[i + shift] -= scale * b[i];
  return rtrim(std::move(a));
}

// a mod b with quotient tracking: returns (q, r) with a = q*b + r.
std::pair<RPoly, RPoly> rdivmod(RPoly a, const RPoly& b) {
  RPoly q;
  std::size_t db = rdeg(b);
  if (db == 0) throw FieldError("division by zero polynomial");
  a = rtrim(std::move(a));
  if (rdeg(a) >= db) q.resize(rdeg(a) - db + 1, Rational(0));
  while (rdeg(a) >= db) {
    std::size_t da = rdeg(a);
    Rational c = a[da - 1] / b[db - 1];
    q[da - db] = c;
    a = rsub(std::move(a), b, c, da - db);
  }
  return {std::move(q), std::move(a)};
}

}  // namespace

FieldElem FieldElem::inverse() const {
  if (is_zero()) throw FieldError("division by zero");
  if (!field_ || is_rational()) {
    if (coords_[0] == 0) throw FieldError("division by zero");
    FieldElem r = *this;
    r.coords_.assign(r.coords_.size(), Rational(0));
    r.coords_[0] = 1 / coords_[0];
    return r;
  }
  // Extended Euclid: find u with u*a + v*m = 1 in Q[x].
  RPoly a = rtrim(coords_);
  RPoly m = field_->min_poly();
  RPoly r0 = m, r1 = a;
  RPoly s0 = {}, s1 = {Rational(1)};  // coefficients of a
  while (rdeg(r1) > 0) {
    auto [q, r2] = rdivmod(r0, r1);
    // s2 = s0 - q*s1
    RPoly s2 = s0;
    std::size_t dq = rdeg(q);
    for (std::size_t i = 0; i < dq; ++i) {
      if (q[i] == 0) continue;
      s2 = rsub(std::move(s2), s1, q[i], i);
    }
    r0 = std::move(r1);
    r1 = std::move(r2);
    s0 = std::move(s1);
    s1 = std::move(s2);
  }
  if (rdeg(r0) != 1) throw FieldError("zero divisor: modulus not irreducible");
  // r0 is a nonzero constant g = s0*a + t*m  -> a^{-1} = s0/g.
  Rational g = r0[0];
  std::vector<Rational> inv(field_->degree(), Rational(0));
  for (std::size_t i = 0; i < rdeg(s0) && i < inv.size(); ++i) inv[i] = s0[i] / g;
  return FieldElem(field_, std::move(inv));
}

FieldElem FieldElem::pow(long e) const {
  if (e < 0) return inverse().pow(-e);
  FieldElem base = *this;
  FieldElem acc = field_ ? in_field(field_, 1) : FieldElem(1);
  unsigned long k = static_cast<unsigned long>(e);
  while (k) {
    if (k & 1) acc *= base;
    base *= base;
    k >>= 1;
  }
  return acc;
}

bool FieldElem::operator==(const FieldElem& o) const {
  if (same_field(field_, o.field_)) return coords_ == o.coords_;
  if (is_rational() && o.is_rational()) return coords_[0] == o.coords_[0];
  return false;
}

FieldElem FieldElem::promoted(const FieldPtr& field) const {
  if (same_field(field_, field)) return *this;
  if (!field_) return in_field(field, coords_[0]);
  if (is_rational() && field) return in_field(field, coords_[0]);
  throw FieldError("cannot promote element into a different extension");
}

std::string FieldElem::to_string() const {
  if (!field_ || is_rational()) return coords_[0].get_str();
  std::ostringstream os;
  const std::string& g = field_->gen_name();
  bool first = true;
  for (std::size_t i = 0; i < coords_.size(); ++i) {
    if (coords_[i] == 0) continue;
    Rational c = coords_[i];
    if (first) {
      if (c < 0) os << "-";
    } else {
      os << (c < 0 ? " - " : " + ");
    }
    Rational ac = abs(c);
    bool show_coeff = (i == 0 || ac != 1);
    if (show_coeff) os << ac.get_str();
    if (i > 0) {
      if (show_coeff) os << "*";
      os << g;
      if (i > 1) os << "^" << i;
    }
    first = false;
  }
  if (first) os << "0";
  return os.str();
}

std::size_t FieldElem::hash() const {
  std::size_t h = field_ ? field_->degree() : 0;
  for (const auto& c : coords_) {
    h ^= hash_rational(c) + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
  }
  return h;
}

}  // namespace dyncubic::algebra
