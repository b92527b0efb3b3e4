#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <string>

namespace anarchy {

using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

// Parses "3", "-3" or "7/2". No whitespace, no decimal points.
// Throws InputError on anything else (including a zero denominator).
Rat parse_rational(const std::string& text);

// Renders as "p" or "p/q" with q > 1 and gcd(p, q) = 1.
std::string format_rational(const Rat& value);

inline Rat pow2(unsigned k) { return Rat(Int(1) << k); }

}  // namespace anarchy
