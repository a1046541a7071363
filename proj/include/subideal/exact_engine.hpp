#pragma once

// Exact border bases of vanishing ideals: blockwise BM, its subideal
// version, and the greedy passage from a border basis of I to a subideal one.

#include <algorithm>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "subideal/division.hpp"
#include "subideal/matrix.hpp"
#include "subideal/point_set.hpp"
#include "subideal/prebasis.hpp"

namespace subideal {

/// What happened at one degree.
struct DegreeTrace {
  int degree = 0;
  std::vector<FTerm> L;
  std::size_t kernel_dim = 0;
  std::vector<std::size_t> pivots;      // 0-based columns of C
  std::vector<std::size_t> non_pivots;  // new columns appended to O_F
  bool pivots_in_new_columns = true;
};

template <class K>
struct BMResult {
  FOrderIdeal<K> order_ideal;         // in the algorithm's order (S6 prepends)
  SubidealBorderPrebasis<K> basis;    // emission order (g_1, g_2, ... as produced)
  std::vector<DegreeTrace> trace;
  std::vector<std::string> warnings;
  int terminal_degree = 0;
};

namespace detail {

inline std::vector<Rational> hadamard(const std::vector<Rational>& a, const std::vector<Rational>& b) {
  std::vector<Rational> out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] * b[i];
  return out;
}

inline std::vector<Rational> eval_term(const Term& t, const PointSet<Rational>& X) {
  std::vector<Rational> out;
  out.reserve(X.size());
  for (const auto& p : X.rows()) {
    Rational v = 1;
    for (std::size_t k = 0; k < t.nvars(); ++k)
      for (unsigned e = 0; e < t[k]; ++e) v *= p[k];
    out.push_back(std::move(v));
  }
  return out;
}

inline void warn_duplicates(const PointSet<Rational>& X, std::vector<std::string>& warnings) {
  if (std::size_t d = X.distinct_count(); d < X.size())
    warnings.push_back(std::to_string(X.size() - d) + " duplicate point(s); the result describes the " +
                       std::to_string(d) + " distinct points");
}

inline void check_points(const PointSet<Rational>& X) {
  if (X.empty()) throw ValidationError("empty point set");
  if (X.nvars() == 0) throw ValidationError("points have no coordinates");
}

}  // namespace detail

/// Blockwise BM-algorithm: O_sigma(I_X) and its border basis (F = {1}).
inline BMResult<Rational> bm_border_basis(const PointSet<Rational>& X, const TermOrdering& sigma) {
  detail::check_points(X);
  const std::size_t n = X.nvars(), s = X.size();
  BMResult<Rational> res;
  detail::warn_duplicates(X, res.warnings);

  std::vector<Term> O{Term::one(n)};  // B1
  std::vector<std::vector<Rational>> M{std::vector<Rational>(s, Rational(1))};
  struct Emitted {
    Term b;
    std::vector<Term> cols;
    std::vector<Rational> row;
  };
  std::vector<Emitted> emitted;
  int d = 0;
  for (;;) {
    ++d;  // B2
    if (static_cast<std::size_t>(d) > s + 1) throw InternalError("BM exceeded its degree cap");
    std::vector<Term> L;
    for (Term& t : OrderIdeal(n, O).border(sigma))
      if (t.degree() == static_cast<unsigned>(d)) L.push_back(std::move(t));
    if (L.empty()) break;

    std::vector<std::vector<Rational>> cols;  // B3
    for (const Term& t : L) cols.push_back(detail::eval_term(t, X));
    cols.insert(cols.end(), M.begin(), M.end());
    EchelonForm ef = rref(kernel_basis(Matrix<Rational>::from_columns(s, cols)));  // B4

    DegreeTrace tr;
    tr.degree = d;
    for (const Term& t : L) tr.L.push_back({t, 0});
    tr.kernel_dim = ef.pivots.size();
    tr.pivots = ef.pivots;
    std::vector<Term> colterms(L);
    colterms.insert(colterms.end(), O.begin(), O.end());
    std::vector<bool> is_pivot(L.size(), false);
    for (std::size_t i = 0; i < ef.pivots.size(); ++i) {  // B5
      std::size_t j = ef.pivots[i];
      if (j >= L.size()) {
        tr.pivots_in_new_columns = false;
        continue;
      }
      is_pivot[j] = true;
      emitted.push_back({L[j], colterms, ef.matrix.row(i)});
    }
    for (std::size_t j = L.size(); j-- > 0;)  // B6
      if (!is_pivot[j]) {
        tr.non_pivots.push_back(j);
        O.insert(O.begin(), L[j]);
        M.insert(M.begin(), detail::eval_term(L[j], X));
      }
    std::reverse(tr.non_pivots.begin(), tr.non_pivots.end());
    res.trace.push_back(std::move(tr));
  }
  res.terminal_degree = d;

  std::vector<FTerm> fts;
  for (const Term& t : O) fts.push_back({t, 0});
  FOrderIdeal<Rational> of({Polynomial<Rational>::one(n)}, fts);
  std::vector<FTerm> border;
  std::vector<std::vector<Rational>> rows;
  for (const auto& e : emitted) {
    border.push_back({e.b, 0});
    std::vector<Rational> row(of.size(), Rational(0));
    for (std::size_t c = 0; c < e.cols.size(); ++c) {
      if (e.cols[c] == e.b || e.row[c] == 0) continue;
      auto pos = of.position({e.cols[c], 0});
      if (!pos) throw InternalError("BM basis element leaves O");
      row[*pos] = -e.row[c];
    }
    rows.push_back(std::move(row));
  }
  std::vector<Rational> lead(border.size(), Rational(1));
  res.basis = SubidealBorderPrebasis<Rational>(of, sigma, std::move(border), std::move(rows), std::move(lead));
  res.order_ideal = std::move(of);
  return res;
}

/// Subideal BM-algorithm: O_sigma(I)_F and the subideal border basis of I_X in <F>.
inline BMResult<Rational> subideal_bm(const PointSet<Rational>& X, const TermOrdering& sigma,
                                      const std::vector<Polynomial<Rational>>& F) {
  detail::check_points(X);
  if (F.empty()) throw ValidationError("F must contain at least one generator");
  const std::size_t n = X.nvars(), s = X.size();
  for (const auto& f : F) {
    if (f.is_zero()) throw ValidationError("generators must be non-zero");
    if (f.nvars() != n) throw ValidationError("generator arity does not match the points");
  }
  BMResult<Rational> res;
  detail::warn_duplicates(X, res.warnings);

  unsigned mindeg = F[0].degree(), maxdeg = F[0].degree();
  for (const auto& f : F) {
    mindeg = std::min(mindeg, f.degree());
    maxdeg = std::max(maxdeg, f.degree());
  }
  std::vector<std::vector<Rational>> fev;
  for (const auto& f : F) fev.push_back(evaluate(f, X));
  auto eval_ft = [&](const FTerm& ft) { return detail::hadamard(detail::eval_term(ft.term, X), fev[ft.gen]); };

  std::vector<FTerm> OF;  // S1
  std::vector<std::vector<Rational>> M;
  struct Emitted {
    FTerm b;
    std::vector<FTerm> cols;
    std::vector<Rational> row;
  };
  std::vector<Emitted> emitted;
  const int cap = static_cast<int>(s + maxdeg + 1);
  int d = static_cast<int>(mindeg) - 1;
  for (;;) {
    ++d;  // S2
    if (d > cap) throw InternalError("subideal BM exceeded its degree cap");
    FOrderIdeal<Rational> cur(F, OF, FOrderIdeal<Rational>::Unchecked{});
    std::vector<FTerm> L;
    for (FTerm& ft : border(cur, sigma))
      if (static_cast<int>(cur.degree(ft)) == d) L.push_back(std::move(ft));
    detail::sort_by_leading_term(L, F, sigma);
    if (L.empty() && d >= static_cast<int>(maxdeg)) break;
    if (L.empty()) continue;

    std::vector<std::vector<Rational>> cols;  // S3
    for (const FTerm& ft : L) cols.push_back(eval_ft(ft));
    cols.insert(cols.end(), M.begin(), M.end());
    EchelonForm ef = rref(kernel_basis(Matrix<Rational>::from_columns(s, cols)));  // S4

    DegreeTrace tr;
    tr.degree = d;
    tr.L = L;
    tr.kernel_dim = ef.pivots.size();
    tr.pivots = ef.pivots;
    std::vector<FTerm> colterms(L);
    colterms.insert(colterms.end(), OF.begin(), OF.end());
    std::vector<bool> is_pivot(L.size(), false);
    for (std::size_t i = 0; i < ef.pivots.size(); ++i) {  // S5
      std::size_t j = ef.pivots[i];
      if (j >= L.size()) {
        tr.pivots_in_new_columns = false;
        continue;
      }
      is_pivot[j] = true;
      emitted.push_back({L[j], colterms, ef.matrix.row(i)});
    }
    for (std::size_t j = L.size(); j-- > 0;)  // S6
      if (!is_pivot[j]) {
        tr.non_pivots.push_back(j);
        OF.insert(OF.begin(), L[j]);
        M.insert(M.begin(), eval_ft(L[j]));
      }
    std::reverse(tr.non_pivots.begin(), tr.non_pivots.end());
    res.trace.push_back(std::move(tr));
  }
  res.terminal_degree = d;

  FOrderIdeal<Rational> of(F, OF);
  std::vector<FTerm> bterms;
  std::vector<std::vector<Rational>> rows;
  for (const auto& e : emitted) {
    bterms.push_back(e.b);
    std::vector<Rational> row(of.size(), Rational(0));
    for (std::size_t c = 0; c < e.cols.size(); ++c) {
      if (e.cols[c] == e.b || e.row[c] == 0) continue;
      auto pos = of.position(e.cols[c]);
      if (!pos) throw InternalError("subideal BM basis element leaves O_F");
      row[*pos] = -e.row[c];
    }
    rows.push_back(std::move(row));
  }
  std::vector<Rational> lead(bterms.size(), Rational(1));
  res.basis = SubidealBorderPrebasis<Rational>(of, sigma, std::move(bterms), std::move(rows), std::move(lead));
  res.order_ideal = std::move(of);
  return res;
}

/// From an O-border basis G_I of I, an O_F-subideal border basis of I for
/// J = <F>: scan t*f_i (t in O, sigma-ascending, then by generator), keep those
/// whose normal forms modulo I stay independent, drop multiples of rejected
/// ones, then express every border F-term through the kept ones.
inline SubidealBorderPrebasis<Rational> extend_border_basis_to_subideal(const SubidealBorderPrebasis<Rational>& GI,
                                                                        const std::vector<Polynomial<Rational>>& F) {
  const auto& cof = GI.order_ideal();
  const auto& sigma = GI.ordering();
  if (cof.num_generators() != 1 || cof.generator(0) != Polynomial<Rational>::one(cof.nvars()))
    throw ValidationError("extend: G_I must be a classical border basis (F = {1})");
  if (F.empty()) throw ValidationError("F must contain at least one generator");
  const std::size_t n = cof.nvars(), m = F.size();
  for (const auto& f : F) {
    if (f.is_zero()) throw ValidationError("generators must be non-zero");
    if (f.nvars() != n) throw ValidationError("generator arity mismatch");
  }

  DivisionOptions opts;
  opts.max_steps = 100'000;
  auto normal_form = [&](const Polynomial<Rational>& p) {
    auto r = divide(Representation<Rational>{p}, GI, opts);
    return r.remainder;  // coordinates over O
  };

  std::vector<Term> O(cof.size());
  for (std::size_t i = 0; i < cof.size(); ++i) O[i] = cof[i].term;
  std::sort(O.begin(), O.end(), [&](const Term& a, const Term& b) { return sigma.less(a, b); });

  std::vector<FTerm> kept;
  std::vector<std::vector<Rational>> kept_nf;
  std::vector<std::vector<Term>> rejected(m);
  for (const Term& t : O)
    for (std::size_t i = 0; i < m; ++i) {
      bool pruned = std::any_of(rejected[i].begin(), rejected[i].end(), [&](const Term& r) { return r.divides(t); });
      if (pruned) continue;
      auto nf = normal_form(F[i].mul_term(t));
      auto trial = kept_nf;
      trial.push_back(nf);
      if (rank(Matrix<Rational>::from_columns(cof.size(), trial)) == trial.size()) {
        kept.push_back({t, i});
        kept_nf.push_back(std::move(nf));
      } else {
        rejected[i].push_back(t);
      }
    }

  FOrderIdeal<Rational> of(F, kept);
  std::vector<FTerm> bterms = border(of, sigma);
  std::vector<std::vector<Rational>> rows;
  const std::size_t mu = kept.size();
  for (const FTerm& b : bterms) {
    // Solve sum_k c_k nf_k = nf(b) via rref of (nf_1 | ... | nf_mu | nf(b)).
    auto cols = kept_nf;
    cols.push_back(normal_form(of.expand(b)));
    EchelonForm ef = rref(Matrix<Rational>::from_columns(cof.size(), cols));
    if (!ef.pivots.empty() && ef.pivots.back() == mu)
      throw InternalError("extend: border F-term outside the span of O_F modulo I");
    std::vector<Rational> row(mu, Rational(0));
    for (std::size_t r = 0; r < ef.pivots.size(); ++r) row[ef.pivots[r]] = ef.matrix(r, mu);
    rows.push_back(std::move(row));
  }
  std::vector<Rational> lead(bterms.size(), Rational(1));
  return SubidealBorderPrebasis<Rational>(std::move(of), sigma, std::move(bterms), std::move(rows), std::move(lead));
}

}  // namespace subideal
