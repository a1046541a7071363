#pragma once

// Random instance generators and independent oracles shared by the unit
// tests and the acceptance binary. The oracles deliberately avoid the
// library's matrix and border code.

#include <algorithm>
#include <cmath>
#include <random>
#include <set>
#include <vector>

#include "subideal/subideal.hpp"

namespace testing_support {

using namespace subideal;
using Q = Rational;
using Rng = std::mt19937_64;

inline std::vector<std::string> var_names(std::size_t n) {
  static const std::vector<std::string> all{"x", "y", "z", "w"};
  return {all.begin(), all.begin() + static_cast<long>(n)};
}

inline Term random_term(Rng& rng, std::size_t n, unsigned maxdeg) {
  std::uniform_int_distribution<unsigned> d(0, maxdeg);
  unsigned deg = d(rng);
  std::vector<unsigned> e(n, 0);
  std::uniform_int_distribution<std::size_t> k(0, n - 1);
  for (unsigned i = 0; i < deg; ++i) ++e[k(rng)];
  return Term(std::move(e));
}

inline Q random_rational(Rng& rng, int range = 5) {
  std::uniform_int_distribution<int> num(-range, range), den(1, 3);
  Q q(num(rng), den(rng));
  q.canonicalize();
  return q;
}

inline Polynomial<Q> random_poly(Rng& rng, std::size_t n, unsigned maxdeg, std::size_t nterms) {
  Polynomial<Q> f(n);
  for (std::size_t i = 0; i < nterms; ++i) f = f + Polynomial<Q>::monomial(random_term(rng, n, maxdeg), random_rational(rng));
  return f;
}

inline Polynomial<Q> random_nonzero_poly(Rng& rng, std::size_t n, unsigned maxdeg, std::size_t nterms) {
  for (;;) {
    auto f = random_poly(rng, n, maxdeg, nterms);
    if (!f.is_zero()) return f;
  }
}

/// Distinct points with small integer coordinates.
inline PointSet<Q> random_points(Rng& rng, std::size_t n, std::size_t s, int range = 2) {
  while (std::pow(2.0 * range + 1, static_cast<double>(n)) < static_cast<double>(s)) ++range;
  std::uniform_int_distribution<int> c(-range, range);
  std::set<std::vector<Q>> seen;
  std::vector<std::vector<Q>> rows;
  while (rows.size() < s) {
    std::vector<Q> p;
    for (std::size_t k = 0; k < n; ++k) p.emplace_back(c(rng));
    if (seen.insert(p).second) rows.push_back(p);
  }
  return PointSet<Q>(var_names(n), std::move(rows));
}

/// Divisor-closed term set built by adding random divisor-minimal steps.
inline std::vector<Term> random_order_ideal(Rng& rng, std::size_t n, std::size_t size) {
  std::set<Term> O;
  if (size == 0) return {};
  O.insert(Term::one(n));
  std::uniform_int_distribution<std::size_t> k(0, n - 1);
  int guard = 0;
  while (O.size() < size && ++guard < 1000) {
    std::vector<Term> v(O.begin(), O.end());
    Term t = v[std::uniform_int_distribution<std::size_t>(0, v.size() - 1)(rng)] * Term::variable(n, k(rng));
    bool closed = true;
    for (std::size_t j = 0; j < n; ++j)
      if (t[j] > 0) {
        auto e = t.exponents();
        --e[j];
        closed = closed && O.contains(Term(e));
      }
    if (closed) O.insert(t);
  }
  return {O.begin(), O.end()};
}

/// Random F-order ideal with m generators, every O_i nonempty, |OF| <= cap.
inline FOrderIdeal<Q> random_f_order_ideal(Rng& rng, std::size_t n, std::size_t m, std::size_t cap) {
  std::vector<Polynomial<Q>> F;
  for (std::size_t i = 0; i < m; ++i) F.push_back(random_nonzero_poly(rng, n, 2, 3));
  std::vector<std::size_t> sizes(m, 1);
  std::size_t total = m;
  std::uniform_int_distribution<std::size_t> pick(0, m - 1), extra(0, cap > m ? cap - m : 0);
  for (std::size_t left = extra(rng); left > 0 && total < cap; --left, ++total) ++sizes[pick(rng)];
  std::vector<FTerm> fts;
  for (std::size_t i = 0; i < m; ++i)
    for (Term& t : random_order_ideal(rng, n, sizes[i])) fts.push_back({std::move(t), i});
  return FOrderIdeal<Q>(F, fts);
}

// ---- oracles ----------------------------------------------------------------

/// Rank by plain Gaussian elimination on row vectors.
inline std::size_t rank_oracle(std::vector<std::vector<Q>> rows) {
  std::size_t r = 0;
  const std::size_t cols = rows.empty() ? 0 : rows[0].size();
  for (std::size_t c = 0; c < cols && r < rows.size(); ++c) {
    std::size_t p = r;
    while (p < rows.size() && rows[p][c] == 0) ++p;
    if (p == rows.size()) continue;
    std::swap(rows[p], rows[r]);
    for (std::size_t i = r + 1; i < rows.size(); ++i) {
      if (rows[i][c] == 0) continue;
      Q f = rows[i][c] / rows[r][c];
      for (std::size_t j = c; j < cols; ++j) rows[i][j] -= f * rows[r][j];
    }
    ++r;
  }
  return r;
}

/// Classical border {x_k t} \ O of a term set.
inline std::set<Term> classical_border_oracle(const std::vector<Term>& O, std::size_t n) {
  std::set<Term> in(O.begin(), O.end()), out;
  if (O.empty()) {
    out.insert(Term::one(n));
    return out;
  }
  for (const Term& t : O)
    for (std::size_t k = 0; k < n; ++k) {
      Term u = t * Term::variable(n, k);
      if (!in.contains(u)) out.insert(u);
    }
  return out;
}

/// Smallest k with ft reachable from OF by k variable multiplications (BFS).
template <class K>
unsigned of_index_oracle(const FTerm& ft, const FOrderIdeal<K>& of) {
  const std::size_t n = of.nvars();
  std::set<FTerm> layer;
  for (const FTerm& u : of.fterms())
    if (u.gen == ft.gen) layer.insert(u);
  for (unsigned k = 0; k <= ft.term.degree(); ++k) {
    if (layer.contains(ft)) return k;
    std::set<FTerm> next(layer);
    for (const FTerm& u : layer)
      for (std::size_t v = 0; v < n; ++v) {
        FTerm w{u.term * Term::variable(n, v), u.gen};
        if (w.term.divides(ft.term)) next.insert(w);
      }
    layer = std::move(next);
  }
  return ~0u;
}

/// F-term evaluation vectors of all t*f_i with deg(t) + deg(f_i) <= d.
inline std::size_t fterm_rank_oracle(const PointSet<Q>& X, const std::vector<Polynomial<Q>>& F, unsigned d) {
  const std::size_t n = X.nvars();
  std::vector<std::vector<Q>> rows;
  for (const auto& f : F) {
    if (f.degree() > d) continue;
    for (unsigned e = 0; e + f.degree() <= d; ++e)
      for (const Term& t : terms_of_degree(n, e)) rows.push_back(evaluate(f.mul_term(t), X));
  }
  return rank_oracle(std::move(rows));
}

inline double max_abs_diff(const std::vector<double>& a, const std::vector<double>& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::fabs(a[i] - b[i]));
  return m;
}

/// Float point set in [-1,1]^n rounded to a grid so duplicates are controlled.
inline PointSet<double> random_unit_points(Rng& rng, std::size_t n, std::size_t s) {
  std::uniform_int_distribution<int> c(-4, 4);
  std::set<std::vector<double>> seen;
  std::vector<std::vector<double>> rows;
  while (rows.size() < s) {
    std::vector<double> p;
    for (std::size_t k = 0; k < n; ++k) p.push_back(c(rng) / 4.0);
    if (seen.insert(p).second) rows.push_back(p);
  }
  return PointSet<double>(var_names(n), std::move(rows));
}

inline Polynomial<double> unitary(const Polynomial<Q>& f) {
  auto g = to_float(f);
  return g.scaled(1.0 / g.norm1());
}

}  // namespace testing_support
