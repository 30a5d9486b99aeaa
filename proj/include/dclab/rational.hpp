#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>
#include <string>

namespace dclab {

// All quantitative state in the library is exact: arbitrary-precision
// integers and gcd-reduced rationals with positive denominators.  Floating
// point appears only in rendering (SVG layout) and report approximations.
using Int = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

// Parses "p/q", plain integers, and decimal literals ("0.25" -> 1/4).
// Throws std::invalid_argument on anything else or on a zero denominator.
Rational parse_rational(const std::string& text);

// "p/q", or just "p" when the denominator is 1.  Round-trips through
// parse_rational.
std::string rat_str(const Rational& r);

double rat_double(const Rational& r);

// base^exp for small nonnegative exponents.
Int pow_int(const Int& base, std::uint64_t exp);

// Smallest k >= 0 with 3^k >= n (n >= 1).
int ceil_log3(const Int& n);

// The exponent m with 2^-(m+1) < delta <= 2^-m; requires 0 < delta <= 1.
// For shift-space distances (powers of two), d < delta iff the first
// disagreement offset exceeds m.
int delta_exponent(const Rational& delta);

}  // namespace dclab
