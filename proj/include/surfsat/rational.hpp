#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace surfsat {

using Integer = boost::multiprecision::cpp_int;
// Always normalized: gcd(|p|, q) = 1, q > 0, zero is 0/1.
using Rational = boost::multiprecision::cpp_rational;
using Vector = std::vector<Rational>;

inline Integer numerator_of(const Rational& r) { return boost::multiprecision::numerator(r); }
inline Integer denominator_of(const Rational& r) { return boost::multiprecision::denominator(r); }

inline bool is_integral(const Rational& r) { return denominator_of(r) == 1; }

inline int sign(const Rational& r) { return r.sign(); }

/// Parses "p", "-p" or "p/q" with optional surrounding whitespace.
inline Rational parse_rational(std::string_view text) {
  auto trim = [](std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
    return s;
  };
  auto parse_int = [&](std::string_view s) {
    s = trim(s);
    std::size_t start = (!s.empty() && (s[0] == '-' || s[0] == '+')) ? 1 : 0;
    if (s.size() == start) throw std::invalid_argument("malformed rational '" + std::string(text) + "'");
    for (std::size_t i = start; i < s.size(); ++i) {
      if (s[i] < '0' || s[i] > '9') throw std::invalid_argument("malformed rational '" + std::string(text) + "'");
    }
    std::string digits(s[0] == '+' ? s.substr(1) : s);
    return Integer(digits);
  };
  auto slash = text.find('/');
  if (slash == std::string_view::npos) return Rational(parse_int(text));
  Integer den = parse_int(text.substr(slash + 1));
  if (den == 0) throw std::invalid_argument("zero denominator in '" + std::string(text) + "'");
  Integer num = parse_int(text.substr(0, slash));
  if (den < 0) {  // cpp_rational rejects a negative denominator
    num = -num;
    den = -den;
  }
  return Rational(num, den);
}

inline std::string to_string(const Rational& r) {
  if (is_integral(r)) return numerator_of(r).str();
  return numerator_of(r).str() + "/" + denominator_of(r).str();
}

/// True when the value fits a signed 64-bit integer without loss.
inline bool fits_int64(const Rational& r) {
  if (!is_integral(r)) return false;
  Integer n = numerator_of(r);
  return n >= Integer(INT64_MIN) && n <= Integer(INT64_MAX);
}

/// Scales v to an integral vector with content 1 whose first nonzero entry
/// is positive. The zero vector is returned unchanged.
inline Vector primitive_integral(Vector v) {
  Integer lcm_den = 1;
  for (const auto& x : v) lcm_den = boost::multiprecision::lcm(lcm_den, denominator_of(x));
  Integer content = 0;
  for (const auto& x : v) {
    Integer n = numerator_of(x * Rational(lcm_den));
    content = boost::multiprecision::gcd(content, boost::multiprecision::abs(n));
  }
  if (content == 0) return v;
  Rational scale(lcm_den, content);
  for (const auto& x : v) {
    if (x != 0) {
      if (x < 0) scale = -scale;
      break;
    }
  }
  for (auto& x : v) x *= scale;
  return v;
}

}  // namespace surfsat
