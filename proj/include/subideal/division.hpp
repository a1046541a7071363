#pragma once

// Subideal border division and its consequences.

#include <optional>
#include <string>
#include <vector>

#include "subideal/matrix.hpp"
#include "subideal/point_set.hpp"
#include "subideal/prebasis.hpp"

namespace subideal {

/// Which term of maximal index D4 rewrites first. The result does not depend
/// on it; the option exists so tests can confirm that.
enum class TermChoice { SigmaLargest, SigmaSmallest };

struct DivisionOptions {
  TermChoice choice = TermChoice::SigmaLargest;
  bool record_trace = false;
  std::size_t max_steps = 1'000'000;
};

/// (index of Q, number of F-terms of Q at that index) before each D4 step.
struct IndexMeasure {
  unsigned index = 0;
  std::size_t count = 0;
  friend auto operator<=>(const IndexMeasure&, const IndexMeasure&) = default;
};

template <class K>
struct DivisionResult {
  std::vector<Polynomial<K>> quotients;  // h_1..h_nu
  std::vector<K> remainder;              // c_1..c_mu over O_F
  std::size_t steps = 0;                 // number of D4 executions
  std::vector<IndexMeasure> trace;

  friend bool operator==(const DivisionResult& a, const DivisionResult& b) {
    return a.quotients == b.quotients && a.remainder == b.remainder;
  }
};

namespace detail {

template <class K>
IndexMeasure max_index(const Representation<K>& q, const FOrderIdeal<K>& of) {
  IndexMeasure m;
  bool any = false;
  for (std::size_t i = 0; i < q.size(); ++i)
    for (const auto& [t, c] : q[i].coeffs()) {
      unsigned k = of_index(FTerm{t, i}, of);
      if (!any || k > m.index) {
        m = {k, 1};
        any = true;
      } else if (k == m.index) {
        ++m.count;
      }
    }
  return m;
}

}  // namespace detail

/// Rewrites f = sum p_i f_i as sum h_j g_j + sum c_i t_i f_{alpha_i}.
template <class K>
DivisionResult<K> divide(const Representation<K>& P, const SubidealBorderPrebasis<K>& G,
                         const DivisionOptions& opts = {}) {
  using Traits = ScalarTraits<K>;
  const auto& of = G.order_ideal();
  const auto& sigma = G.ordering();
  const std::size_t m = of.num_generators();
  if (P.size() != m)
    throw ValidationError("representation has " + std::to_string(P.size()) +
                          " components but F has " + std::to_string(m));
  for (const auto& p : P)
    if (p.nvars() != of.nvars()) throw ValidationError("representation arity mismatch");

  DivisionResult<K> res;
  res.quotients.assign(G.size(), Polynomial<K>(of.nvars()));
  res.remainder.assign(of.size(), Traits::zero());
  Representation<K> Q = P;
  // "smallest j" refers to the canonical border numbering, whatever order G is stored in
  std::vector<std::size_t> order(G.size());
  for (std::size_t j = 0; j < order.size(); ++j) order[j] = j;
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return canonical_less(G.border()[a], G.border()[b], sigma);
  });

  for (;;) {
    bool all_zero = true;
    for (const auto& q : Q) all_zero = all_zero && q.is_zero();
    if (all_zero) return res;  // D2

    IndexMeasure top = detail::max_index(Q, of);
    if (top.index == 0) {  // D3
      for (std::size_t i = 0; i < m; ++i)
        for (const auto& [t, c] : Q[i].coeffs()) {
          auto pos = of.position({t, i});
          if (!pos) throw InternalError("index-0 F-term outside O_F");
          res.remainder[*pos] += c;
        }
      return res;
    }

    // D4
    if (res.steps >= opts.max_steps) throw InternalError("border division exceeded its step budget");
    if (opts.record_trace) res.trace.push_back(top);
    std::optional<std::size_t> gen;
    std::optional<Term> chosen;
    for (std::size_t i = 0; i < m && !gen; ++i)
      for (const Term& t : Q[i].support(sigma)) {
        if (of_index(FTerm{t, i}, of) != top.index) continue;
        if (!chosen || opts.choice == TermChoice::SigmaSmallest) chosen = t;
        gen = i;
        if (opts.choice == TermChoice::SigmaLargest) break;
      }
    const std::size_t i = *gen;
    const Term& t = *chosen;
    const K a = Q[i].coeff(t);

    std::optional<std::size_t> jsel;
    Term tprime;
    for (std::size_t j : order) {
      if (jsel) break;
      const FTerm& b = G.border()[j];
      if (b.gen != i) continue;
      auto q = b.term.quotient_of(t);
      if (q && q->degree() + 1 == top.index) {
        jsel = j;
        tprime = *q;
      }
    }
    if (!jsel) throw InternalError("no border element factors an F-term of maximal index");
    const std::size_t j = *jsel;
    if (Traits::is_zero(G.leading_coeff(j)))
      throw NumericError("prebasis element " + std::to_string(j + 1) + " has zero border coefficient");
    const K factor = a / G.leading_coeff(j);

    Representation<K> gj = G.representation(j);
    for (std::size_t k = 0; k < m; ++k) Q[k] = Polynomial<K>::combine(Q[k], gj[k].mul_term(tprime), K(-factor));
    // In float mode a*c_j/c_j need not round back to a; the rewritten F-term
    // is removed exactly.
    {
      auto coeffs = Q[i].coeffs();
      coeffs.erase(t);
      Q[i] = Polynomial<K>(of.nvars(), std::move(coeffs));
    }
    res.quotients[j] = res.quotients[j] + Polynomial<K>::monomial(tprime, factor);
    ++res.steps;
  }
}

/// sum c_i t_i f_{alpha_i} from the division of P.
template <class K>
Polynomial<K> normal_remainder_of(const DivisionResult<K>& res, const FOrderIdeal<K>& of) {
  Polynomial<K> r(of.nvars());
  for (std::size_t i = 0; i < of.size(); ++i)
    if (!ScalarTraits<K>::is_zero(res.remainder[i]))
      r = Polynomial<K>::combine(r, of.expand(of[i]), res.remainder[i]);
  return r;
}

template <class K>
Polynomial<K> normal_remainder(const Representation<K>& P, const SubidealBorderPrebasis<K>& G) {
  return normal_remainder_of(divide(P, G), G.order_ideal());
}

/// sum h_j g_j + NR, which equals sum p_i f_i.
template <class K>
Polynomial<K> reconstruct(const DivisionResult<K>& res, const SubidealBorderPrebasis<K>& G) {
  Polynomial<K> f = normal_remainder_of(res, G.order_ideal());
  for (std::size_t j = 0; j < G.size(); ++j) f = f + res.quotients[j] * G.poly(j);
  return f;
}

struct SpecialGenerationReport {
  bool is_basis = false;
  bool contained_in_ideal = false;           // every g_j vanishes on X
  std::optional<std::size_t> non_vanishing;  // first g_j that does not
  std::vector<Rational> witness;             // nonzero combination of O_F vanishing on X, if any
  Polynomial<Rational> witness_poly;
};

/// Exact test with I = I_X: G must vanish on X and no nonzero K-combination
/// of O_F may vanish on X (residues of O_F independent modulo I n J).
inline SpecialGenerationReport is_subideal_border_basis_exact(const SubidealBorderPrebasis<Rational>& G,
                                                              const PointSet<Rational>& X) {
  SpecialGenerationReport rep;
  const auto& of = G.order_ideal();
  rep.witness_poly = Polynomial<Rational>(of.nvars());
  rep.contained_in_ideal = true;
  for (std::size_t j = 0; j < G.size() && rep.contained_in_ideal; ++j)
    for (const auto& v : evaluate(G.poly(j), X))
      if (v != 0) {
        rep.contained_in_ideal = false;
        rep.non_vanishing = j;
        break;
      }
  std::vector<std::vector<Rational>> cols;
  for (const FTerm& ft : of.fterms()) cols.push_back(evaluate(of.expand(ft), X));
  Matrix<Rational> K = kernel_basis(Matrix<Rational>::from_columns(X.size(), cols));
  if (K.rows() > 0) {
    rep.witness = K.row(0);
    for (std::size_t i = 0; i < of.size(); ++i)
      if (rep.witness[i] != 0)
        rep.witness_poly = Polynomial<Rational>::combine(rep.witness_poly, of.expand(of[i]), rep.witness[i]);
  }
  rep.is_basis = rep.contained_in_ideal && K.rows() == 0;
  return rep;
}

}  // namespace subideal
