#pragma once

#include <memory>
#include <string>
#include <vector>

#include "dyncubic/errors.hpp"
#include "dyncubic/rational.hpp"

namespace dyncubic::algebra {

// A number field Q[x]/(m(x)) presented by a monic minimal polynomial with rational
// coefficients. Irreducibility of m is assumed, not verified; a reducible modulus
// surfaces as FieldError when inverting a zero divisor.
class NumberField {
 public:
  // min_poly holds c0..cd with cd == 1, degree d >= 1.
  explicit NumberField(std::vector<Rational> min_poly, std::string gen_name = "x");

  std::size_t degree() const { return min_poly_.size() - 1; }
  const std::vector<Rational>& min_poly() const { return min_poly_; }
  const std::string& gen_name() const { return gen_name_; }

  bool operator==(const NumberField& o) const { return min_poly_ == o.min_poly_; }

 private:
  std::vector<Rational> min_poly_;
  std::string gen_name_;
};

// nullptr denotes the rational field Q.
using FieldPtr = std::shared_ptr<const NumberField>;

FieldPtr make_field(std::vector<Rational> min_poly, std::string gen_name = "x");

// True when the two field handles present the same field (both Q, same object, or
// equal minimal polynomials).
bool same_field(const FieldPtr& a, const FieldPtr& b);

// An element of Q or of a number field, stored on the power basis of the generator.
class FieldElem {
 public:
  FieldElem() : coords_(1) {}                      // 0 in Q
  FieldElem(long n) : coords_{Rational(n)} {}      // NOLINT: implicit by design
  FieldElem(const Rational& r) : coords_{r} {}     // NOLINT
  FieldElem(FieldPtr field, std::vector<Rational> coords);

  static FieldElem generator(const FieldPtr& field);
  // x^k in the field (reduced if k >= degree).
  static FieldElem gen_pow(const FieldPtr& field, unsigned long k);
  static FieldElem in_field(const FieldPtr& field, const Rational& r);

  const FieldPtr& field() const { return field_; }
  // Power-basis coordinates; size 1 for Q, field degree otherwise.
  const std::vector<Rational>& coords() const { return coords_; }

  bool is_zero() const;
  bool is_one() const;
  bool is_rational() const;  // lies in the prime field
  // Throws FieldError when the element is not rational.
  Rational to_rational() const;

  FieldElem operator-() const;
  FieldElem& operator+=(const FieldElem& o);
  FieldElem& operator-=(const FieldElem& o);
  FieldElem& operator*=(const FieldElem& o);
  FieldElem& operator/=(const FieldElem& o);
  friend FieldElem operator+(FieldElem a, const FieldElem& b) { return a += b; }
  friend FieldElem operator-(FieldElem a, const FieldElem& b) { return a -= b; }
  friend FieldElem operator*(FieldElem a, const FieldElem& b) { return a *= b; }
  friend FieldElem operator/(FieldElem a, const FieldElem& b) { return a /= b; }

  FieldElem inverse() const;  // FieldError on zero or zero divisor
  FieldElem pow(long e) const;

  bool operator==(const FieldElem& o) const;
  bool operator!=(const FieldElem& o) const { return !(*this == o); }

  // Promote into the given field (no-op if already there). FieldError when the
  // element lives in a different extension.
  FieldElem promoted(const FieldPtr& field) const;

  std::string to_string() const;
  std::size_t hash() const;

 private:
  FieldPtr field_;                 // nullptr = Q
  std::vector<Rational> coords_;   // size 1 (Q) or degree (number field)

  void reduce_();  // reduce coords_ mod min_poly (after raw multiplication)
  static void unify_(FieldElem& a, FieldElem& b);
};

}  // namespace dyncubic::algebra
