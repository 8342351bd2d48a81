#pragma once

#include "dyncubic/multipoly.hpp"

namespace dyncubic::algebra {

// Quotient of two multivariate polynomials, kept gcd-reduced with the denominator's
// graded-lex leading coefficient normalized to 1. Equal functions therefore have
// identical representations.
class RationalFunction {
 public:
  RationalFunction() : num_(), den_(MultiPoly::constant(FieldElem(1))) {}
  RationalFunction(const MultiPoly& p) : num_(p), den_(MultiPoly::constant(FieldElem(1))) {  // NOLINT
    reduce_();
  }
  RationalFunction(MultiPoly num, MultiPoly den);
  RationalFunction(const FieldElem& c) : RationalFunction(MultiPoly::constant(c)) {}  // NOLINT
  RationalFunction(long n) : RationalFunction(MultiPoly::constant(FieldElem(n))) {}   // NOLINT

  const MultiPoly& num() const { return num_; }
  const MultiPoly& den() const { return den_; }

  bool is_zero() const { return num_.is_zero(); }
  bool is_polynomial() const { return den_.is_constant(); }
  bool is_constant() const { return num_.is_constant() && den_.is_constant(); }
  FieldElem constant_value() const;

  RationalFunction operator-() const;
  RationalFunction& operator+=(const RationalFunction& o);
  RationalFunction& operator-=(const RationalFunction& o);
  RationalFunction& operator*=(const RationalFunction& o);
  RationalFunction& operator/=(const RationalFunction& o);  // DivisionError on 0
  friend RationalFunction operator+(RationalFunction a, const RationalFunction& b) { return a += b; }
  friend RationalFunction operator-(RationalFunction a, const RationalFunction& b) { return a -= b; }
  friend RationalFunction operator*(RationalFunction a, const RationalFunction& b) { return a *= b; }
  friend RationalFunction operator/(RationalFunction a, const RationalFunction& b) { return a /= b; }

  RationalFunction inverse() const;
  RationalFunction pow(long e) const;
  RationalFunction derivative(const std::string& var) const;

  // Evaluate one variable, keeping the rest symbolic. Throws PoleError when the
  // denominator vanishes identically at the value.
  RationalFunction evaluate_var(const std::string& var, const FieldElem& value) const;
  FieldElem evaluate(const std::map<std::string, FieldElem>& point) const;
  RationalFunction substitute(const std::string& var, const RationalFunction& value) const;

  bool operator==(const RationalFunction& o) const { return num_ == o.num_ && den_ == o.den_; }
  bool operator!=(const RationalFunction& o) const { return !(*this == o); }

  std::string to_string() const;

 private:
  MultiPoly num_, den_;
  void reduce_();
};

// Evaluates a polynomial at rational-function values, one per variable (missing
// variables raise ArgumentError). The common pattern for plugging parametrized
// coordinates into a defining equation.
RationalFunction eval_poly(const MultiPoly& p,
                           const std::map<std::string, RationalFunction>& values);

}  // namespace dyncubic::algebra
