#pragma once

// Text form of polynomials: `0.5*y - 0.5*z`, `x^2 - 1`, `1/3*x*y^2`.
// Parentheses and integer powers of parenthesized groups are also accepted
// on input (`x*(y - z) - (y - z)`); the printer emits the flat form.

#include <cctype>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "subideal/polynomial.hpp"

namespace subideal {

namespace detail {

template <class K>
class PolyParser {
 public:
  PolyParser(std::string_view text, const std::vector<std::string>& vars)
      : text_(text), vars_(vars) {}

  Polynomial<K> parse() {
    skip_ws();
    if (at_end()) throw error("empty polynomial");
    Polynomial<K> p = expression();
    skip_ws();
    if (!at_end()) throw error("unexpected character");
    return p;
  }

 private:
  using T = ScalarTraits<K>;

  Polynomial<K> expression() {
    skip_ws();
    bool negate = false;
    if (peek() == '+' || peek() == '-') negate = text_[pos_++] == '-';
    Polynomial<K> acc = product();
    if (negate) acc = -acc;
    for (;;) {
      skip_ws();
      if (peek() != '+' && peek() != '-') break;
      bool minus = text_[pos_++] == '-';
      Polynomial<K> rhs = product();
      acc = minus ? acc - rhs : acc + rhs;
    }
    return acc;
  }

  Polynomial<K> product() {
    Polynomial<K> acc = factor();
    for (;;) {
      skip_ws();
      if (peek() != '*') break;
      ++pos_;
      acc = acc * factor();
    }
    return acc;
  }

  Polynomial<K> factor() {
    skip_ws();
    char c = peek();
    Polynomial<K> base(vars_.size());
    if (c == '(') {
      ++pos_;
      base = expression();
      skip_ws();
      if (peek() != ')') throw error("expected ')'");
      ++pos_;
    } else if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
      return Polynomial<K>::constant(vars_.size(), scalar());
    } else if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t start = pos_;
      while (!at_end() && (std::isalnum(static_cast<unsigned char>(peek())) || peek() == '_')) ++pos_;
      std::string_view name = text_.substr(start, pos_ - start);
      std::size_t k = 0;
      while (k < vars_.size() && vars_[k] != name) ++k;
      if (k == vars_.size()) throw error("unknown indeterminate '" + std::string(name) + "'");
      base = Polynomial<K>::variable(vars_.size(), k);
    } else {
      throw error("expected a coefficient, indeterminate or '('");
    }
    skip_ws();
    if (peek() == '^') {
      ++pos_;
      skip_ws();
      std::size_t start = pos_;
      while (!at_end() && std::isdigit(static_cast<unsigned char>(peek()))) ++pos_;
      if (start == pos_) throw error("expected a non-negative integer exponent");
      unsigned e = static_cast<unsigned>(std::stoul(std::string(text_.substr(start, pos_ - start))));
      Polynomial<K> r = Polynomial<K>::one(vars_.size());
      for (unsigned i = 0; i < e; ++i) r = r * base;
      return r;
    }
    return base;
  }

  K scalar() {
    std::size_t start = pos_;
    auto digits = [&] {
      while (!at_end() && std::isdigit(static_cast<unsigned char>(peek()))) ++pos_;
    };
    digits();
    if (peek() == '/') {
      ++pos_;
      std::size_t den = pos_;
      digits();
      if (den == pos_) throw error("expected denominator");
    } else {
      if (peek() == '.') {
        ++pos_;
        digits();
      }
      if (peek() == 'e' || peek() == 'E') {
        std::size_t save = pos_++;
        if (peek() == '+' || peek() == '-') ++pos_;
        std::size_t exp_start = pos_;
        digits();
        if (exp_start == pos_) pos_ = save;  // not an exponent after all
      }
    }
    return T::parse(text_.substr(start, pos_ - start));
  }

  void skip_ws() {
    while (!at_end() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }
  bool at_end() const { return pos_ >= text_.size(); }
  char peek() const { return at_end() ? '\0' : text_[pos_]; }

  ValidationError error(const std::string& what) const {
    return ValidationError("polynomial parse error at column " + std::to_string(pos_ + 1) +
                           " in '" + std::string(text_) + "': " + what);
  }

  std::string_view text_;
  const std::vector<std::string>& vars_;
  std::size_t pos_ = 0;
};

}  // namespace detail

template <class K>
Polynomial<K> parse_polynomial(std::string_view text, const std::vector<std::string>& vars) {
  return detail::PolyParser<K>(text, vars).parse();
}

/// Splits "f1; f2; ..." and parses each piece.
template <class K>
std::vector<Polynomial<K>> parse_polynomial_list(std::string_view text,
                                                 const std::vector<std::string>& vars) {
  std::vector<Polynomial<K>> out;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find(';', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view piece = text.substr(start, end - start);
    if (piece.find_first_not_of(" \t\r\n") != std::string_view::npos)
      out.push_back(parse_polynomial<K>(piece, vars));
    start = end + 1;
  }
  return out;
}

inline std::string format_term(const Term& t, const std::vector<std::string>& vars) {
  std::string out;
  for (std::size_t k = 0; k < t.nvars(); ++k) {
    if (t[k] == 0) continue;
    if (!out.empty()) out += '*';
    out += vars.at(k);
    if (t[k] > 1) out += '^' + std::to_string(t[k]);
  }
  return out;
}

namespace detail {

// Appends `coeff*body` with sign handling; body may be empty (constant).
template <class K>
void append_signed(std::string& out, const K& c, const std::string& body) {
  using T = ScalarTraits<K>;
  bool negative = c < T::zero();
  K mag = negative ? K(-c) : c;
  if (out.empty())
    out += negative ? "-" : "";
  else
    out += negative ? " - " : " + ";
  bool unit = mag == T::one();
  if (body.empty()) {
    out += T::format(mag);
  } else {
    if (!unit) out += T::format(mag) + "*";
    out += body;
  }
}

}  // namespace detail

/// Terms in decreasing sigma-order, e.g. `x^2*y - 1/2*x + 3`.
template <class K>
std::string to_string(const Polynomial<K>& f, const std::vector<std::string>& vars,
                      const TermOrdering& sigma) {
  if (f.is_zero()) return "0";
  std::string out;
  for (const Term& t : f.support(sigma)) detail::append_signed(out, f.coeff(t), format_term(t, vars));
  return out;
}

template <class K>
std::string to_string(const Polynomial<K>& f, const std::vector<std::string>& vars) {
  return to_string(f, vars, TermOrdering::degrevlex(f.nvars()));
}

}  // namespace subideal
