#pragma once

// Order ideals, F-order ideals and their borders.
//
// An F-term is the pair (t, i) standing for t*f_i. Identity is positional:
// two F-terms with the same polynomial value but different pairs are
// distinct, and no list in this module ever merges them.

#include <algorithm>
#include <compare>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "subideal/poly_io.hpp"
#include "subideal/polynomial.hpp"

namespace subideal {

struct FTerm {
  Term term;
  std::size_t gen = 0;  // 0-based index into F

  friend std::strong_ordering operator<=>(const FTerm&, const FTerm&) = default;
  friend bool operator==(const FTerm&, const FTerm&) = default;
};

/// `t*f[i]` with a 1-based generator index; `f[i]` when t = 1.
inline std::string format_fterm(const FTerm& ft, const std::vector<std::string>& vars) {
  std::string gen = "f[" + std::to_string(ft.gen + 1) + "]";
  return ft.term.is_one() ? gen : format_term(ft.term, vars) + "*" + gen;
}

/// Canonical numbering: decreasing sigma on the term, ties by ascending generator.
inline bool canonical_less(const FTerm& a, const FTerm& b, const TermOrdering& sigma) {
  auto c = sigma.compare(a.term, b.term);
  if (c != 0) return c > 0;
  return a.gen < b.gen;
}

inline void sort_canonical(std::vector<FTerm>& v, const TermOrdering& sigma) {
  std::sort(v.begin(), v.end(),
            [&](const FTerm& a, const FTerm& b) { return canonical_less(a, b, sigma); });
}

/// Finite set of terms; divisor-closedness is checked on request.
class OrderIdeal {
 public:
  OrderIdeal() = default;
  OrderIdeal(std::size_t nvars, std::vector<Term> terms) : nvars_(nvars), terms_(std::move(terms)) {
    for (const Term& t : terms_) {
      if (t.nvars() != nvars_) throw ValidationError("order ideal term arity mismatch");
      if (!set_.insert(t).second) throw ValidationError("duplicate term in order ideal");
    }
  }

  std::size_t nvars() const { return nvars_; }
  std::size_t size() const { return terms_.size(); }
  bool empty() const { return terms_.empty(); }
  const std::vector<Term>& terms() const { return terms_; }
  bool contains(const Term& t) const { return set_.contains(t); }

  bool is_divisor_closed() const {
    for (const Term& t : terms_)
      for (std::size_t k = 0; k < nvars_; ++k)
        if (t[k] > 0) {
          auto e = t.exponents();
          --e[k];
          if (!set_.contains(Term(std::move(e)))) return false;
        }
    return true;
  }

  /// Classical border (x_1 O u ... u x_n O) \ O in decreasing sigma-order.
  /// The empty order ideal has border {1}.
  std::vector<Term> border(const TermOrdering& sigma) const {
    std::set<Term> out;
    if (terms_.empty()) out.insert(Term::one(nvars_));
    for (const Term& t : terms_)
      for (std::size_t k = 0; k < nvars_; ++k) {
        Term m = t * Term::variable(nvars_, k);
        if (!set_.contains(m)) out.insert(m);
      }
    std::vector<Term> v(out.begin(), out.end());
    std::sort(v.begin(), v.end(), [&](const Term& a, const Term& b) { return sigma.greater(a, b); });
    return v;
  }

 private:
  std::size_t nvars_ = 0;
  std::vector<Term> terms_;
  std::set<Term> set_;
};

/// O_F = O_1*f_1 u ... u O_m*f_m, kept as an ordered list of mu F-terms.
template <class K>
class FOrderIdeal {
 public:
  struct Unchecked {};

  FOrderIdeal() = default;

  /// Validates that every O_i is divisor-closed.
  FOrderIdeal(std::vector<Polynomial<K>> gens, std::vector<FTerm> fterms)
      : FOrderIdeal(std::move(gens), std::move(fterms), Unchecked{}) {
    for (std::size_t i = 0; i < gens_.size(); ++i)
      if (!per_gen(i).is_divisor_closed())
        throw ValidationError("O_" + std::to_string(i + 1) + " is not divisor-closed");
  }

  /// Skips the closure check (the approximate engine reports closure instead).
  FOrderIdeal(std::vector<Polynomial<K>> gens, std::vector<FTerm> fterms, Unchecked)
      : gens_(std::move(gens)), fterms_(std::move(fterms)) {
    if (gens_.empty()) throw ValidationError("F must contain at least one generator");
    nvars_ = gens_.front().nvars();
    for (const auto& g : gens_) {
      if (g.is_zero()) throw ValidationError("generators must be non-zero");
      if (g.nvars() != nvars_) throw ValidationError("generator arity mismatch");
    }
    per_gen_terms_.resize(gens_.size());
    for (std::size_t pos = 0; pos < fterms_.size(); ++pos) {
      const FTerm& ft = fterms_[pos];
      if (ft.gen >= gens_.size()) throw ValidationError("F-term references unknown generator");
      if (ft.term.nvars() != nvars_) throw ValidationError("F-term arity mismatch");
      if (!index_.emplace(ft, pos).second) throw ValidationError("duplicate F-term");
      per_gen_terms_[ft.gen].push_back(ft.term);
    }
  }

  std::size_t nvars() const { return nvars_; }
  std::size_t size() const { return fterms_.size(); }
  std::size_t num_generators() const { return gens_.size(); }
  const std::vector<Polynomial<K>>& generators() const { return gens_; }
  const Polynomial<K>& generator(std::size_t i) const { return gens_.at(i); }
  const std::vector<FTerm>& fterms() const { return fterms_; }
  const FTerm& operator[](std::size_t pos) const { return fterms_[pos]; }

  OrderIdeal per_gen(std::size_t i) const { return OrderIdeal(nvars_, per_gen_terms_.at(i)); }

  std::optional<std::size_t> position(const FTerm& ft) const {
    auto it = index_.find(ft);
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }
  bool contains(const FTerm& ft) const { return index_.contains(ft); }

  bool is_divisor_closed() const {
    for (std::size_t i = 0; i < gens_.size(); ++i)
      if (!per_gen(i).is_divisor_closed()) return false;
    return true;
  }

  unsigned degree(const FTerm& ft) const { return ft.term.degree() + gens_.at(ft.gen).degree(); }

  Polynomial<K> expand(const FTerm& ft) const { return gens_.at(ft.gen).mul_term(ft.term); }

 private:
  std::size_t nvars_ = 0;
  std::vector<Polynomial<K>> gens_;
  std::vector<FTerm> fterms_;
  std::vector<std::vector<Term>> per_gen_terms_;
  std::map<FTerm, std::size_t> index_;
};

/// Per-generator classical borders (border of O_i times f_i), canonical order.
/// A generator with empty O_i contributes 1*f_i.
template <class K>
std::vector<FTerm> border(const FOrderIdeal<K>& of, const TermOrdering& sigma) {
  std::vector<FTerm> out;
  for (std::size_t i = 0; i < of.num_generators(); ++i)
    for (Term& b : of.per_gen(i).border(sigma)) out.push_back({std::move(b), i});
  sort_canonical(out, sigma);
  return out;
}

/// T^n_{<=k} * O_F, generator by generator, canonical order.
template <class K>
std::vector<FTerm> border_closure(const FOrderIdeal<K>& of, unsigned k, const TermOrdering& sigma) {
  std::set<FTerm> out;
  std::vector<Term> multipliers;
  for (unsigned d = 0; d <= k; ++d)
    for (Term& t : terms_of_degree(of.nvars(), d)) multipliers.push_back(std::move(t));
  for (const FTerm& ft : of.fterms())
    for (const Term& t : multipliers) out.insert({t * ft.term, ft.gen});
  std::vector<FTerm> v(out.begin(), out.end());
  sort_canonical(v, sigma);
  return v;
}

/// k-th border: closure(k) \ closure(k-1); the 0-th border is O_F itself.
template <class K>
std::vector<FTerm> kth_border(const FOrderIdeal<K>& of, unsigned k, const TermOrdering& sigma) {
  if (k == 0) {
    std::vector<FTerm> v(of.fterms());
    sort_canonical(v, sigma);
    return v;
  }
  auto outer = border_closure(of, k, sigma);
  auto inner = border_closure(of, k - 1, sigma);
  std::set<FTerm> drop(inner.begin(), inner.end());
  std::vector<FTerm> v;
  for (auto& ft : outer)
    if (!drop.contains(ft)) v.push_back(std::move(ft));
  return v;
}

/// Minimal k with t = t'*t'', deg t' = k and t''*f_i in O_F.
template <class K>
unsigned of_index(const FTerm& ft, const FOrderIdeal<K>& of) {
  if (ft.gen >= of.num_generators()) throw ValidationError("F-term references unknown generator");
  std::optional<unsigned> best;
  bool any = false;
  for (const FTerm& u : of.fterms()) {
    if (u.gen != ft.gen) continue;
    any = true;
    if (u.term.divides(ft.term)) {
      unsigned k = ft.term.degree() - u.term.degree();
      if (!best || k < *best) best = k;
    }
  }
  if (!any)
    throw ValidationError("O_F-index undefined: O_" + std::to_string(ft.gen + 1) + " is empty");
  if (!best) throw ValidationError("O_F-index undefined: O_" + std::to_string(ft.gen + 1) + " lacks 1");
  return *best;
}

/// (p_1, ..., p_m) standing for p_1 f_1 + ... + p_m f_m.
template <class K>
using Representation = std::vector<Polynomial<K>>;

template <class K>
unsigned representation_index(const Representation<K>& rep, const FOrderIdeal<K>& of) {
  if (rep.size() != of.num_generators())
    throw ValidationError("representation has " + std::to_string(rep.size()) +
                          " components but F has " + std::to_string(of.num_generators()));
  std::optional<unsigned> best;
  for (std::size_t i = 0; i < rep.size(); ++i)
    for (const auto& [t, c] : rep[i].coeffs()) {
      unsigned k = of_index(FTerm{t, i}, of);
      if (!best || k > *best) best = k;
    }
  if (!best) throw ValidationError("O_F-index of the zero representation");
  return *best;
}

namespace detail {

/// S2 list order: decreasing sigma on t*LT(f_i), then generator, then sigma on t.
template <class K>
void sort_by_leading_term(std::vector<FTerm>& L, const std::vector<Polynomial<K>>& F, const TermOrdering& sigma) {
  std::vector<Term> lts;
  for (const auto& f : F) lts.push_back(f.leading_term(sigma).first);
  std::sort(L.begin(), L.end(), [&](const FTerm& a, const FTerm& b) {
    auto c = sigma.compare(a.term * lts[a.gen], b.term * lts[b.gen]);
    if (c != 0) return c > 0;
    if (a.gen != b.gen) return a.gen < b.gen;
    return sigma.less(a.term, b.term);
  });
}

}  // namespace detail

/// sum p_i f_i
template <class K>
Polynomial<K> combine(const Representation<K>& rep, const std::vector<Polynomial<K>>& gens) {
  if (rep.size() != gens.size()) throw ValidationError("representation/generator count mismatch");
  Polynomial<K> f(gens.empty() ? 0 : gens.front().nvars());
  for (std::size_t i = 0; i < rep.size(); ++i) f = f + rep[i] * gens[i];
  return f;
}

/// Neighbor pairs (i < j, 0-based) of a border list: same generator and the
/// terms are next-door (b_i = x_k b_j) or across the street (x_k b_i = x_l b_j).
inline std::vector<std::pair<std::size_t, std::size_t>> neighbors(const std::vector<FTerm>& border) {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  for (std::size_t i = 0; i < border.size(); ++i)
    for (std::size_t j = i + 1; j < border.size(); ++j) {
      const FTerm& a = border[i];
      const FTerm& b = border[j];
      if (a.gen != b.gen || a.term == b.term) continue;
      Term l = a.term.lcm(b.term);
      unsigned da = a.term.degree(), db = b.term.degree(), dl = l.degree();
      bool next_door = (dl == da && db + 1 == da) || (dl == db && da + 1 == db);
      bool across = da == db && dl == da + 1;
      if (next_door || across) out.emplace_back(i, j);
    }
  return out;
}

}  // namespace subideal
