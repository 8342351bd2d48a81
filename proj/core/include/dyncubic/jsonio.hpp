#pragma once

#include <string>

#include "dyncubic/ratfunc.hpp"

namespace dyncubic::algebra {

// JSON wire format.
//
// Polynomial:
//   {"field": {"min_poly": [c0, ..., 1]} | null,
//    "vars": ["a", "b", "z"],
//    "terms": [{"exp": [i, j, k], "coeff": <coeff>}, ...]}
// where a rational coefficient is [num, den] (decimal strings) and a number-field
// coefficient is the power-basis list [[n0,d0], ..., [nk,dk]]. Terms are emitted in
// descending graded-lex order, so serialization is deterministic.
//
// Rational function: {"num": <polynomial>, "den": <polynomial>}.

std::string poly_to_json(const MultiPoly& p, int indent = -1);
MultiPoly poly_from_json(const std::string& text);

std::string ratfunc_to_json(const RationalFunction& f, int indent = -1);
RationalFunction ratfunc_from_json(const std::string& text);

}  // namespace dyncubic::algebra
