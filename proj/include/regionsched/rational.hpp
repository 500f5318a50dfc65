#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <optional>
#include <string>
#include <string_view>

namespace rsched {

using BigInt = boost::multiprecision::cpp_int;

// Exact rational number. Canonical form (gcd(num,den)=1, den>0) is maintained
// by the backend; every operation in the engine stays in this type, there is
// no floating point on any scheduling path.
using Rat = boost::multiprecision::cpp_rational;

// Time values are rationals too; the aliases keep signatures readable.
using TimePoint = Rat;
using Duration = Rat;

// Parses "7", "-3", "3/2", "-3/2". Throws BadRationalError on anything else
// (including zero denominators).
Rat parse_rational(std::string_view text);
std::optional<Rat> try_parse_rational(std::string_view text);

// Canonical text form: "7" when the denominator is 1, otherwise "num/den".
std::string to_string(const Rat& value);

BigInt rat_floor(const Rat& value);
BigInt rat_ceil(const Rat& value);

// Lossy, only for CSV rendering.
double to_double(const Rat& value);

inline BigInt numerator_of(const Rat& value) { return boost::multiprecision::numerator(value); }
inline BigInt denominator_of(const Rat& value) { return boost::multiprecision::denominator(value); }

BigInt lcm(const BigInt& a, const BigInt& b);

}  // namespace rsched
