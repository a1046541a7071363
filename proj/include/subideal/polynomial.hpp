#pragma once

#include <algorithm>
#include <cmath>
#include <map>
#include <span>
#include <utility>
#include <vector>

#include "subideal/error.hpp"
#include "subideal/scalar.hpp"
#include "subideal/term.hpp"

namespace subideal {

/// Sparse multivariate polynomial over K (Rational or double).
///
/// Values are immutable: every operation returns a fresh polynomial. Zero
/// coefficients are never stored; in float mode only a literal 0.0 is pruned.
template <class K>
class Polynomial {
 public:
  using Coeff = K;
  using Traits = ScalarTraits<K>;
  using Map = std::map<Term, K>;

  Polynomial() = default;
  explicit Polynomial(std::size_t nvars) : nvars_(nvars) {}
  Polynomial(std::size_t nvars, Map coeffs) : nvars_(nvars), coeffs_(std::move(coeffs)) {
    for (auto it = coeffs_.begin(); it != coeffs_.end();) {
      if (it->first.nvars() != nvars_) throw ValidationError("term arity mismatch");
      it = Traits::is_zero(it->second) ? coeffs_.erase(it) : std::next(it);
    }
  }

  static Polynomial constant(std::size_t nvars, const K& c) {
    return Polynomial(nvars, Map{{Term::one(nvars), c}});
  }
  static Polynomial one(std::size_t nvars) { return constant(nvars, Traits::one()); }
  static Polynomial variable(std::size_t nvars, std::size_t k) {
    return Polynomial(nvars, Map{{Term::variable(nvars, k), Traits::one()}});
  }
  static Polynomial monomial(const Term& t, const K& c) {
    return Polynomial(t.nvars(), Map{{t, c}});
  }

  std::size_t nvars() const { return nvars_; }
  bool is_zero() const { return coeffs_.empty(); }
  std::size_t size() const { return coeffs_.size(); }
  const Map& coeffs() const { return coeffs_; }

  K coeff(const Term& t) const {
    auto it = coeffs_.find(t);
    return it == coeffs_.end() ? Traits::zero() : it->second;
  }

  /// Total degree; 0 for the zero polynomial.
  unsigned degree() const {
    unsigned d = 0;
    for (const auto& [t, c] : coeffs_) d = std::max(d, t.degree());
    return d;
  }

  /// Supp(f) in decreasing order under sigma.
  std::vector<Term> support(const TermOrdering& sigma) const {
    std::vector<Term> out;
    out.reserve(coeffs_.size());
    for (const auto& [t, c] : coeffs_) out.push_back(t);
    std::sort(out.begin(), out.end(),
              [&](const Term& a, const Term& b) { return sigma.greater(a, b); });
    return out;
  }

  std::pair<Term, K> leading_term(const TermOrdering& sigma) const {
    if (is_zero()) throw ValidationError("leading term of the zero polynomial");
    auto best = coeffs_.begin();
    for (auto it = std::next(best); it != coeffs_.end(); ++it)
      if (sigma.greater(it->first, best->first)) best = it;
    return {best->first, best->second};
  }

  Polynomial mul_term(const Term& t, const K& c = Traits::one()) const {
    check_arity(t.nvars());
    Map out;
    if (Traits::is_zero(c)) return Polynomial(nvars_);
    for (const auto& [s, a] : coeffs_) out.emplace(s * t, a * c);
    return Polynomial(nvars_, std::move(out));
  }

  Polynomial scaled(const K& c) const {
    Map out;
    if (!Traits::is_zero(c))
      for (const auto& [s, a] : coeffs_) out.emplace(s, a * c);
    return Polynomial(nvars_, std::move(out));
  }

  friend Polynomial operator+(const Polynomial& a, const Polynomial& b) {
    return combine(a, b, Traits::one());
  }
  friend Polynomial operator-(const Polynomial& a, const Polynomial& b) {
    return combine(a, b, -Traits::one());
  }
  friend Polynomial operator-(const Polynomial& a) { return a.scaled(-Traits::one()); }
  friend Polynomial operator*(const K& c, const Polynomial& a) { return a.scaled(c); }
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    a.check_arity(b.nvars_);
    Map out;
    for (const auto& [s, x] : a.coeffs_)
      for (const auto& [t, y] : b.coeffs_) {
        auto [it, fresh] = out.try_emplace(s * t, x * y);
        if (!fresh) it->second += x * y;
      }
    return Polynomial(a.nvars_, std::move(out));
  }

  /// a + factor * b
  static Polynomial combine(const Polynomial& a, const Polynomial& b, const K& factor) {
    a.check_arity(b.nvars_);
    Map out(a.coeffs_);
    for (const auto& [t, c] : b.coeffs_) {
      auto [it, fresh] = out.try_emplace(t, factor * c);
      if (!fresh) it->second += factor * c;
    }
    return Polynomial(a.nvars_, std::move(out));
  }

  friend bool operator==(const Polynomial& a, const Polynomial& b) {
    return a.nvars_ == b.nvars_ && a.coeffs_ == b.coeffs_;
  }

  /// f(p) for a single point.
  K operator()(std::span<const K> point) const {
    if (point.size() != nvars_) throw ValidationError("point dimension does not match polynomial");
    K sum = Traits::zero();
    for (const auto& [t, c] : coeffs_) {
      K v = c;
      for (std::size_t k = 0; k < nvars_; ++k)
        for (unsigned e = 0; e < t[k]; ++e) v *= point[k];
      sum += v;
    }
    return sum;
  }

  /// Euclidean norm of the coefficient vector.
  double norm2() const {
    double s = 0.0;
    for (const auto& [t, c] : coeffs_) {
      double v = Traits::to_double(c);
      s += v * v;
    }
    return std::sqrt(s);
  }

  double norm1() const {
    double s = 0.0;
    for (const auto& [t, c] : coeffs_) s += std::fabs(Traits::to_double(c));
    return s;
  }

  double max_abs_coeff() const {
    double m = 0.0;
    for (const auto& [t, c] : coeffs_) m = std::max(m, std::fabs(Traits::to_double(c)));
    return m;
  }

 private:
  void check_arity(std::size_t n) const {
    if (n != nvars_) throw ValidationError("indeterminate count mismatch");
  }

  std::size_t nvars_ = 0;
  Map coeffs_;
};

/// Exact sum of absolute coefficient values (for exact-mode normalization checks).
inline Rational norm1_exact(const Polynomial<Rational>& f) {
  Rational s = 0;
  for (const auto& [t, c] : f.coeffs()) s += abs(c);
  return s;
}

inline Polynomial<double> to_float(const Polynomial<Rational>& f) {
  typename Polynomial<double>::Map out;
  for (const auto& [t, c] : f.coeffs()) out.emplace(t, c.get_d());
  return Polynomial<double>(f.nvars(), std::move(out));
}

}  // namespace subideal
