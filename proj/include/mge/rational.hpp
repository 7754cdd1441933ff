#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <string>

namespace mge {

using Rat = boost::multiprecision::cpp_rational;

// Parses "p/q" or "p". Throws std::invalid_argument on malformed input or
// zero denominator.
Rat parse_rational(const std::string& s);

std::string rational_to_string(const Rat& r);

double rational_to_double(const Rat& r);

Rat rat_pow(const Rat& base, int exp);

}  // namespace mge
