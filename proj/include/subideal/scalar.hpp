#pragma once

// Coefficient fields: exact rationals (GMP) and IEEE doubles.

#include <gmpxx.h>

#include <charconv>
#include <cmath>
#include <concepts>
#include <string>
#include <string_view>
#include <system_error>

#include "subideal/error.hpp"

namespace subideal {

using Rational = mpq_class;

template <class K>
struct ScalarTraits;

template <>
struct ScalarTraits<Rational> {
  static constexpr bool exact = true;
  static constexpr const char* mode_name = "exact";

  static Rational zero() { return Rational(0); }
  static Rational one() { return Rational(1); }
  static bool is_zero(const Rational& x) { return sgn(x) == 0; }
  static Rational abs(const Rational& x) { return ::abs(x); }
  static double to_double(const Rational& x) { return x.get_d(); }

  // Accepts integers, p/q, and finite decimals with an optional exponent;
  // decimals are converted exactly (0.98 -> 49/50).
  static Rational parse(std::string_view text) {
    std::string s(text);
    if (s.empty()) throw ValidationError("empty scalar");
    if (auto slash = s.find('/'); slash != std::string::npos) {
      mpz_class num, den;
      if (num.set_str(s.substr(0, slash), 10) != 0 ||
          den.set_str(s.substr(slash + 1), 10) != 0 || s.find('+', 1) != std::string::npos)
        throw ValidationError("unparsable rational '" + s + "'");
      if (sgn(den) == 0) throw ValidationError("zero denominator in '" + s + "'");
      Rational r(num, den);
      r.canonicalize();
      return r;
    }
    std::size_t pos = 0;
    bool negative = false;
    if (s[pos] == '+' || s[pos] == '-') negative = s[pos++] == '-';
    std::string digits;
    long scale = 0;
    bool any_digit = false, seen_point = false;
    for (; pos < s.size(); ++pos) {
      char c = s[pos];
      if (c >= '0' && c <= '9') {
        digits.push_back(c);
        any_digit = true;
        if (seen_point) ++scale;
      } else if (c == '.' && !seen_point) {
        seen_point = true;
      } else {
        break;
      }
    }
    if (!any_digit) throw ValidationError("unparsable scalar '" + s + "'");
    long exponent = 0;
    if (pos < s.size() && (s[pos] == 'e' || s[pos] == 'E')) {
      ++pos;
      auto [ptr, ec] = std::from_chars(s.data() + pos + (s[pos] == '+' ? 1 : 0),
                                       s.data() + s.size(), exponent);
      if (ec != std::errc() || ptr != s.data() + s.size())
        throw ValidationError("unparsable exponent in '" + s + "'");
      pos = s.size();
    }
    if (pos != s.size()) throw ValidationError("unparsable scalar '" + s + "'");
    mpz_class num(digits, 10);
    if (negative) num = -num;
    long shift = exponent - scale;
    mpz_class pow10;
    mpz_ui_pow_ui(pow10.get_mpz_t(), 10, static_cast<unsigned long>(shift < 0 ? -shift : shift));
    Rational r = shift >= 0 ? Rational(num * pow10) : Rational(num, pow10);
    r.canonicalize();
    return r;
  }

  static std::string format(const Rational& x) { return x.get_str(); }
};

template <>
struct ScalarTraits<double> {
  static constexpr bool exact = false;
  static constexpr const char* mode_name = "float";

  static double zero() { return 0.0; }
  static double one() { return 1.0; }
  // Only a literal zero counts; thresholds belong to the approximate engine.
  static bool is_zero(double x) { return x == 0.0; }
  static double abs(double x) { return std::fabs(x); }
  static double to_double(double x) { return x; }

  static double parse(std::string_view text) {
    if (text.find('/') != std::string_view::npos) {
      Rational r = ScalarTraits<Rational>::parse(text);
      return r.get_d();
    }
    std::string_view body = text;
    if (!body.empty() && body.front() == '+') body.remove_prefix(1);
    double value = 0.0;
    auto [ptr, ec] = std::from_chars(body.data(), body.data() + body.size(), value);
    if (ec != std::errc() || ptr != body.data() + body.size() || body.empty())
      throw ValidationError("unparsable scalar '" + std::string(text) + "'");
    if (!std::isfinite(value)) throw ValidationError("non-finite scalar '" + std::string(text) + "'");
    return value;
  }

  // Shortest representation that reads back to the same double.
  static std::string format(double x) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, x);
    if (ec != std::errc()) throw InternalError("to_chars failed");
    return std::string(buf, ptr);
  }
};

template <class K>
concept Scalar = requires { ScalarTraits<K>::exact; };

}  // namespace subideal
