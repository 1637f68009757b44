#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>

namespace nshape {

using Rational = mpq_class;
using Integer = mpz_class;

// Canonical rational num/den. Throws std::invalid_argument on den == 0.
Rational make_rational(long num, long den = 1);
Rational make_rational(const Integer& num, const Integer& den);

bool is_integer(const Rational& q);
Integer floor_of(const Rational& q);
Integer ceil_of(const Rational& q);

Integer gcd(const Integer& a, const Integer& b);
Integer lcm(const Integer& a, const Integer& b);
long gcd_l(long a, long b);
long lcm_l(long a, long b);

// Converts an integral Rational or Integer to long; throws std::overflow_error if it does not fit.
long to_long(const Integer& z);
long to_long(const Rational& q);

// "p" for integers, "p/q" otherwise.
std::string to_string(const Rational& q);
// Accepts "p" or "p/q" with optional sign; throws std::invalid_argument.
Rational rational_from_string(const std::string& s);

}  // namespace nshape
