#pragma once

#include <map>
#include <string>
#include <vector>

#include "dyncubic/numberfield.hpp"

namespace dyncubic::algebra {

// Sparse multivariate polynomial over Q or a number field. Terms are kept sorted in
// descending graded lexicographic order (total degree first, then exponent vectors
// compared with the first declared variable most significant), with no zero
// coefficients, so equal polynomials have identical representations and
// serialization is deterministic.
class MultiPoly {
 public:
  struct Term {
    std::vector<unsigned> exp;  // one entry per variable
    FieldElem coeff;
  };

  MultiPoly() = default;  // zero polynomial over Q with no variables

  static MultiPoly zero(std::vector<std::string> vars, FieldPtr field = nullptr);
  static MultiPoly constant(FieldElem c, std::vector<std::string> vars = {});
  static MultiPoly variable(const std::string& name,
                            std::vector<std::string> vars = {},
                            FieldPtr field = nullptr);
  // Bulk constructor; terms are sorted, merged and stripped of zeros.
  static MultiPoly from_terms(std::vector<std::string> vars, std::vector<Term> terms,
                              FieldPtr field = nullptr);

  const std::vector<std::string>& vars() const { return vars_; }
  const FieldPtr& field() const { return field_; }
  const std::vector<Term>& terms() const { return terms_; }

  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  // Constant term as a field element (the value when the polynomial is constant).
  FieldElem constant_value() const;

  long total_degree() const;          // -1 for the zero polynomial
  long degree(const std::string& var) const;
  bool depends_on(const std::string& var) const { return degree(var) > 0; }
  std::size_t term_count() const { return terms_.size(); }

  const Term& leading_term() const;   // graded-lex; ArgumentError on zero

  MultiPoly operator-() const;
  MultiPoly& operator+=(const MultiPoly& o);
  MultiPoly& operator-=(const MultiPoly& o);
  friend MultiPoly operator+(MultiPoly a, const MultiPoly& b) { return a += b; }
  friend MultiPoly operator-(MultiPoly a, const MultiPoly& b) { return a -= b; }
  friend MultiPoly operator*(const MultiPoly& a, const MultiPoly& b);
  MultiPoly& operator*=(const MultiPoly& o) { return *this = *this * o; }

  MultiPoly scaled(const FieldElem& c) const;
  MultiPoly pow(unsigned long e) const;
  MultiPoly derivative(const std::string& var) const;

  // Exact division; throws DivisionError when the divisor does not divide.
  MultiPoly exact_div(const MultiPoly& divisor) const;

  // Substitute a polynomial for a variable.
  MultiPoly substitute(const std::string& var, const MultiPoly& value) const;
  // Evaluate one variable at a field element, keeping the others symbolic.
  MultiPoly evaluate_var(const std::string& var, const FieldElem& value) const;
  // Evaluate every variable; throws ArgumentError when one is missing.
  FieldElem evaluate(const std::map<std::string, FieldElem>& point) const;

  // Dense coefficient vector in one variable (index = exponent), coefficients being
  // polynomials in the remaining variables.
  std::vector<MultiPoly> coeffs_in(const std::string& var) const;
  static MultiPoly from_coeffs_in(const std::string& var,
                                  const std::vector<MultiPoly>& coeffs);

  // Extend to (at least) the given variable list / field; variable orders must be
  // mergeable without reordering.
  MultiPoly aligned(const std::vector<std::string>& vars, const FieldPtr& field) const;

  bool operator==(const MultiPoly& o) const;
  bool operator!=(const MultiPoly& o) const { return !(*this == o); }

  std::string to_string() const;

  // Shared variable-order merge; throws ArgumentError when the orders conflict.
  static std::vector<std::string> merge_vars(const std::vector<std::string>& a,
                                             const std::vector<std::string>& b);

 private:
  std::vector<std::string> vars_;
  FieldPtr field_;
  std::vector<Term> terms_;

  void normalize_();  // sort, merge duplicates, drop zeros
  static void unify_(MultiPoly& a, MultiPoly& b);
  std::size_t var_index_(const std::string& var) const;  // npos when absent
};

// Convenience builders for hand-written polynomials in tests and model catalogs.
// parse_poly accepts integer/rational coefficients, variable names, ^, *, +, -,
// and parentheses, e.g. "z^3 + (a-1)*z + b" or "x^2 - 2/3*y".
MultiPoly parse_poly(const std::string& text, std::vector<std::string> vars,
                     FieldPtr field = nullptr);

// Greatest common divisor (primitive polynomial remainder sequences; monic dense
// Euclid in the single-variable case). The result's leading coefficient is 1.
MultiPoly poly_gcd(const MultiPoly& a, const MultiPoly& b);

// Resultant of a and b with respect to var, computed by a subresultant-style
// pseudo-remainder sequence with exact correction divisions.
MultiPoly resultant(const MultiPoly& a, const MultiPoly& b, const std::string& var);

// Squarefree part (poly / gcd(poly, poly')) with respect to var.
MultiPoly squarefree_part(const MultiPoly& p, const std::string& var);

}  // namespace dyncubic::algebra
