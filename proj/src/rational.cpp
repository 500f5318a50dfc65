#include "regionsched/rational.hpp"

#include "regionsched/errors.hpp"

#include <boost/multiprecision/integer.hpp>

namespace rsched {

namespace {

bool parse_integer(std::string_view text, BigInt* out) {
  if (text.empty()) return false;
  std::size_t i = 0;
  bool negative = false;
  if (text[0] == '-' || text[0] == '+') {
    negative = (text[0] == '-');
    i = 1;
  }
  if (i == text.size()) return false;
  BigInt value = 0;
  for (; i < text.size(); ++i) {
    char c = text[i];
    if (c < '0' || c > '9') return false;
    value *= 10;
    value += (c - '0');
  }
  *out = negative ? BigInt(-value) : value;
  return true;
}

}  // namespace

std::optional<Rat> try_parse_rational(std::string_view text) {
  BigInt num;
  BigInt den = 1;
  auto slash = text.find('/');
  if (slash == std::string_view::npos) {
    if (!parse_integer(text, &num)) return std::nullopt;
  } else {
    if (!parse_integer(text.substr(0, slash), &num)) return std::nullopt;
    if (!parse_integer(text.substr(slash + 1), &den)) return std::nullopt;
    if (den == 0) return std::nullopt;
    if (den < 0) {
      num = -num;
      den = -den;
    }
  }
  return Rat(num, den);
}

Rat parse_rational(std::string_view text) {
  auto parsed = try_parse_rational(text);
  if (!parsed) {
    throw BadRationalError("not a rational: '" + std::string(text) + "'");
  }
  return *parsed;
}

std::string to_string(const Rat& value) {
  BigInt num = numerator_of(value);
  BigInt den = denominator_of(value);
  if (den == 1) return num.str();
  return num.str() + "/" + den.str();
}

BigInt rat_floor(const Rat& value) {
  BigInt num = numerator_of(value);
  BigInt den = denominator_of(value);
  BigInt q = num / den;  // truncates toward zero
  if (num < 0 && q * den != num) --q;
  return q;
}

BigInt rat_ceil(const Rat& value) { return -rat_floor(-value); }

double to_double(const Rat& value) { return value.convert_to<double>(); }

BigInt lcm(const BigInt& a, const BigInt& b) {
  if (a == 0 || b == 0) return 0;
  return boost::multiprecision::lcm(a, b);
}

}  // namespace rsched
