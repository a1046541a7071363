#pragma once

#include <algorithm>
#include <compare>
#include <cstddef>
#include <numeric>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "subideal/error.hpp"

namespace subideal {

/// A power product x_1^{e_1} ... x_n^{e_n}. Immutable once built.
class Term {
 public:
  Term() = default;
  explicit Term(std::vector<unsigned> exponents)
      : exps_(std::move(exponents)),
        degree_(std::accumulate(exps_.begin(), exps_.end(), 0u)) {}

  static Term one(std::size_t nvars) { return Term(std::vector<unsigned>(nvars, 0)); }
  static Term variable(std::size_t nvars, std::size_t k) {
    std::vector<unsigned> e(nvars, 0);
    e.at(k) = 1;
    return Term(std::move(e));
  }

  std::size_t nvars() const { return exps_.size(); }
  unsigned degree() const { return degree_; }
  unsigned operator[](std::size_t k) const { return exps_[k]; }
  const std::vector<unsigned>& exponents() const { return exps_; }
  bool is_one() const { return degree_ == 0; }

  Term operator*(const Term& other) const {
    check_same(other);
    std::vector<unsigned> e(exps_);
    for (std::size_t k = 0; k < e.size(); ++k) e[k] += other.exps_[k];
    return Term(std::move(e));
  }

  bool divides(const Term& other) const {
    check_same(other);
    for (std::size_t k = 0; k < exps_.size(); ++k)
      if (exps_[k] > other.exps_[k]) return false;
    return true;
  }

  /// other / *this when *this divides other.
  std::optional<Term> quotient_of(const Term& other) const {
    if (!divides(other)) return std::nullopt;
    std::vector<unsigned> e(other.exps_);
    for (std::size_t k = 0; k < e.size(); ++k) e[k] -= exps_[k];
    return Term(std::move(e));
  }

  Term lcm(const Term& other) const {
    check_same(other);
    std::vector<unsigned> e(exps_);
    for (std::size_t k = 0; k < e.size(); ++k) e[k] = std::max(e[k], other.exps_[k]);
    return Term(std::move(e));
  }

  // Storage order only (lexicographic on exponent vectors); use TermOrdering
  // for anything mathematical.
  friend std::strong_ordering operator<=>(const Term& a, const Term& b) {
    return a.exps_ <=> b.exps_;
  }
  friend bool operator==(const Term& a, const Term& b) { return a.exps_ == b.exps_; }

 private:
  void check_same(const Term& other) const {
    if (other.exps_.size() != exps_.size())
      throw ValidationError("term arity mismatch");
  }

  std::vector<unsigned> exps_;
  unsigned degree_ = 0;
};

/// All terms of exactly the given degree in nvars indeterminates.
inline std::vector<Term> terms_of_degree(std::size_t nvars, unsigned degree) {
  std::vector<Term> out;
  if (nvars == 0) {
    if (degree == 0) out.emplace_back();
    return out;
  }
  std::vector<unsigned> e(nvars, 0);
  auto rec = [&](auto&& self, std::size_t k, unsigned left) -> void {
    if (k + 1 == nvars) {
      e[k] = left;
      out.emplace_back(e);
      return;
    }
    for (unsigned v = 0; v <= left; ++v) {
      e[k] = v;
      self(self, k + 1, left - v);
    }
  };
  rec(rec, 0, degree);
  return out;
}

/// Degree-compatible term orderings with a configurable variable precedence.
class TermOrdering {
 public:
  enum class Kind { DegRevLex, DegLex };

  TermOrdering() = default;
  TermOrdering(Kind kind, std::vector<std::size_t> variable_order)
      : kind_(kind), order_(std::move(variable_order)) {
    std::vector<std::size_t> sorted(order_);
    std::sort(sorted.begin(), sorted.end());
    for (std::size_t k = 0; k < sorted.size(); ++k)
      if (sorted[k] != k) throw ValidationError("variable order is not a permutation");
  }

  // x_1 > x_2 > ... > x_n
  static TermOrdering degrevlex(std::size_t nvars) { return {Kind::DegRevLex, identity(nvars)}; }
  static TermOrdering deglex(std::size_t nvars) { return {Kind::DegLex, identity(nvars)}; }

  static TermOrdering parse(std::string_view name, std::size_t nvars) {
    if (name == "degrevlex" || name == "DegRevLex") return degrevlex(nvars);
    if (name == "deglex" || name == "DegLex") return deglex(nvars);
    throw ValidationError("unknown term ordering '" + std::string(name) + "'");
  }

  Kind kind() const { return kind_; }
  std::size_t nvars() const { return order_.size(); }
  const std::vector<std::size_t>& variable_order() const { return order_; }
  std::string name() const { return kind_ == Kind::DegRevLex ? "degrevlex" : "deglex"; }

  std::strong_ordering compare(const Term& s, const Term& t) const {
    if (s.nvars() != order_.size() || t.nvars() != order_.size())
      throw ValidationError("term arity does not match ordering");
    if (auto c = s.degree() <=> t.degree(); c != 0) return c;
    if (kind_ == Kind::DegLex) {
      for (std::size_t k : order_)
        if (auto c = s[k] <=> t[k]; c != 0) return c;
    } else {
      for (auto it = order_.rbegin(); it != order_.rend(); ++it)
        if (auto c = t[*it] <=> s[*it]; c != 0) return c;
    }
    return std::strong_ordering::equal;
  }

  bool less(const Term& s, const Term& t) const { return compare(s, t) < 0; }
  bool greater(const Term& s, const Term& t) const { return compare(s, t) > 0; }

  friend bool operator==(const TermOrdering&, const TermOrdering&) = default;

 private:
  static std::vector<std::size_t> identity(std::size_t n) {
    std::vector<std::size_t> v(n);
    std::iota(v.begin(), v.end(), std::size_t{0});
    return v;
  }

  Kind kind_;
  std::vector<std::size_t> order_;
};

}  // namespace subideal
