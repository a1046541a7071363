#pragma once

#include <map>
#include <string>
#include <vector>

#include "subideal/order_ideal.hpp"

namespace subideal {

/// g_j = c_j * b_j f_{beta_j} - sum_i c_ij * t_i f_{alpha_i}, one per border F-term.
///
/// Rows are indexed against `border()`; the constructor accepts any order of
/// the border F-terms, `canonical()` renumbers to the canonical order used by
/// the division algorithm.
template <class K>
class SubidealBorderPrebasis {
 public:
  using Traits = ScalarTraits<K>;

  SubidealBorderPrebasis() = default;
  SubidealBorderPrebasis(FOrderIdeal<K> of, TermOrdering sigma, std::vector<FTerm> border_terms,
                         std::vector<std::vector<K>> coeff_rows, std::vector<K> leading)
      : of_(std::move(of)),
        sigma_(std::move(sigma)),
        border_(std::move(border_terms)),
        rows_(std::move(coeff_rows)),
        leading_(std::move(leading)) {
    if (rows_.size() != border_.size() || leading_.size() != border_.size())
      throw ValidationError("prebasis: one coefficient row and leading coefficient per border F-term");
    std::map<FTerm, int> expected;
    for (FTerm& b : subideal::border(of_, sigma_)) ++expected[b];
    for (const FTerm& b : border_)
      if (--expected[b] < 0) throw ValidationError("prebasis: F-term is not in the border");
    for (const auto& [b, left] : expected)
      if (left != 0) throw ValidationError("prebasis: border F-term without a polynomial");
    for (const auto& r : rows_)
      if (r.size() != of_.size()) throw ValidationError("prebasis: coefficient row length != mu");
    polys_.reserve(border_.size());
    for (std::size_t j = 0; j < border_.size(); ++j) {
      Polynomial<K> g = of_.expand(border_[j]).scaled(leading_[j]);
      for (std::size_t i = 0; i < of_.size(); ++i)
        if (!Traits::is_zero(rows_[j][i]))
          g = Polynomial<K>::combine(g, of_.expand(of_[i]), K(-rows_[j][i]));
      polys_.push_back(std::move(g));
    }
  }

  const FOrderIdeal<K>& order_ideal() const { return of_; }
  const TermOrdering& ordering() const { return sigma_; }
  const std::vector<FTerm>& border() const { return border_; }
  std::size_t size() const { return border_.size(); }
  const std::vector<Polynomial<K>>& polys() const { return polys_; }
  const Polynomial<K>& poly(std::size_t j) const { return polys_.at(j); }
  /// c_ij for the j-th border element, i over O_F.
  const std::vector<K>& coeff_row(std::size_t j) const { return rows_.at(j); }
  const K& leading_coeff(std::size_t j) const { return leading_.at(j); }
  const std::vector<K>& leading_coeffs() const { return leading_; }

  /// g_j as a tuple over the generators (positional, no cancellation across F-terms).
  Representation<K> representation(std::size_t j) const {
    Representation<K> rep(of_.num_generators(), Polynomial<K>(of_.nvars()));
    const FTerm& b = border_.at(j);
    rep[b.gen] = rep[b.gen] + Polynomial<K>::monomial(b.term, leading_[j]);
    for (std::size_t i = 0; i < of_.size(); ++i)
      if (!Traits::is_zero(rows_[j][i]))
        rep[of_[i].gen] = rep[of_[i].gen] + Polynomial<K>::monomial(of_[i].term, K(-rows_[j][i]));
    return rep;
  }

  /// Each g_j divided by its border coefficient c_j.
  SubidealBorderPrebasis normalized() const {
    std::vector<std::vector<K>> rows(rows_);
    for (std::size_t j = 0; j < rows.size(); ++j) {
      if (Traits::is_zero(leading_[j]))
        throw NumericError("prebasis element " + std::to_string(j + 1) + " has zero border coefficient");
      for (auto& c : rows[j]) c = c / leading_[j];
    }
    return SubidealBorderPrebasis(of_, sigma_, border_, std::move(rows),
                                  std::vector<K>(border_.size(), Traits::one()));
  }

  /// Same elements renumbered to the canonical border order; `permutation`
  /// (if given) receives new_index for every old index.
  SubidealBorderPrebasis canonical(std::vector<std::size_t>* permutation = nullptr) const {
    std::vector<std::size_t> order(border_.size());
    for (std::size_t j = 0; j < order.size(); ++j) order[j] = j;
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
      return canonical_less(border_[a], border_[b], sigma_);
    });
    std::vector<FTerm> border;
    std::vector<std::vector<K>> rows;
    std::vector<K> leading;
    if (permutation) permutation->assign(order.size(), 0);
    for (std::size_t pos = 0; pos < order.size(); ++pos) {
      border.push_back(border_[order[pos]]);
      rows.push_back(rows_[order[pos]]);
      leading.push_back(leading_[order[pos]]);
      if (permutation) (*permutation)[order[pos]] = pos;
    }
    return SubidealBorderPrebasis(of_, sigma_, std::move(border), std::move(rows), std::move(leading));
  }

  /// g_j written over F-terms, border term first, e.g. `x*f[2] - f[2]`.
  std::string fterm_form(std::size_t j, const std::vector<std::string>& vars) const {
    std::vector<std::pair<FTerm, K>> parts;
    for (std::size_t i = 0; i < of_.size(); ++i)
      if (!Traits::is_zero(rows_[j][i])) parts.emplace_back(of_[i], K(-rows_[j][i]));
    std::sort(parts.begin(), parts.end(),
              [&](const auto& a, const auto& b) { return canonical_less(a.first, b.first, sigma_); });
    parts.insert(parts.begin(), {border_.at(j), leading_[j]});
    std::string out;
    for (const auto& [ft, c] : parts) {
      if (Traits::is_zero(c)) continue;
      detail::append_signed(out, c, format_fterm(ft, vars));
    }
    return out.empty() ? "0" : out;
  }

 private:
  FOrderIdeal<K> of_;
  TermOrdering sigma_;
  std::vector<FTerm> border_;
  std::vector<std::vector<K>> rows_;
  std::vector<K> leading_;
  std::vector<Polynomial<K>> polys_;
};

/// Classical O-border prebasis (F = {1}) from expanded polynomials: each g
/// must contain exactly one border term of O, all other terms in O.
template <class K>
SubidealBorderPrebasis<K> classical_prebasis(const OrderIdeal& O, const std::vector<Polynomial<K>>& polys,
                                             const TermOrdering& sigma) {
  std::size_t n = O.nvars();
  std::vector<FTerm> fts;
  for (const Term& t : O.terms()) fts.push_back({t, 0});
  FOrderIdeal<K> of({Polynomial<K>::one(n)}, fts);
  std::set<Term> border_set;
  for (Term& b : O.border(sigma)) border_set.insert(std::move(b));
  std::vector<FTerm> border_terms;
  std::vector<std::vector<K>> rows;
  std::vector<K> leading;
  for (const auto& g : polys) {
    std::optional<Term> b;
    std::vector<K> row(of.size(), ScalarTraits<K>::zero());
    for (const auto& [t, c] : g.coeffs()) {
      if (border_set.contains(t)) {
        if (b) throw ValidationError("border prebasis element has two border terms");
        b = t;
      } else if (auto pos = of.position({t, 0})) {
        row[*pos] = -c;
      } else {
        throw ValidationError("border prebasis element has a term outside O and its border");
      }
    }
    if (!b) throw ValidationError("border prebasis element has no border term");
    leading.push_back(g.coeff(*b));
    border_terms.push_back({*b, 0});
    rows.push_back(std::move(row));
  }
  return SubidealBorderPrebasis<K>(std::move(of), sigma, std::move(border_terms), std::move(rows),
                                   std::move(leading));
}

}  // namespace subideal
