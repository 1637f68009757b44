#pragma once

#include <string>
#include <string_view>

#include "newton_shape/geometry.hpp"

namespace nshape {

// poly  := term (('+'|'-') term)*, with an optional sign before the first term
// term  := [coeff '*'] factor ('*' factor)* | coeff
// coeff := integer ['/' positive-integer]
// factor:= 'x' ['^' xexp] | 'y' ['^' nonneg-integer]
// xexp  := integer | '(' integer '/' positive-integer ')'
// Throws ParseError with the byte offset of the offending token.
LaurentPoly parse_poly(std::string_view text);

// Terms by descending v_{1,1}, ties by descending y-exponent. parse_poly(render_poly(p)) == p.
std::string render_poly(const LaurentPoly& p);

std::string render_point(const ExpPoint& e);
std::string render_point(const PlanePoint& p);
std::string render_direction(const Direction& d);

}  // namespace nshape
