#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <string>
#include <string_view>

namespace ambientlab {

// Exact arbitrary-precision arithmetic for all symbolic coefficients.
// The k! * p_k denominators in the ambient series overflow fixed-width
// integers already for moderate truncation orders.
using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

std::string to_string(const Rational& q);
std::string to_latex(const Rational& q);
double to_double(const Rational& q);

// Parses "p", "-p" or "p/q" with q > 0. Throws std::invalid_argument on
// malformed input or zero denominator.
Rational rational_from_string(std::string_view text);

Rational factorial(unsigned k);

}  // namespace ambientlab
