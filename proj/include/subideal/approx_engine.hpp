#pragma once

// Approximate vanishing ideals: SVD approximate kernels, stabilized row
// echelon forms, AVI and its subideal version, and the a posteriori checks.

#include <Eigen/Dense>
#include <Eigen/SVD>

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "subideal/division.hpp"
#include "subideal/point_set.hpp"
#include "subideal/prebasis.hpp"

namespace subideal {

struct Thresholds {
  double epsilon = 0.0;
  double tau = 0.0;

  void validate() const {
    if (!(tau > 0.0) || !(epsilon > tau) || !std::isfinite(epsilon))
      throw ValidationError("thresholds must satisfy epsilon > tau > 0");
  }
};

/// Rows: ONB of the right singular vectors of A with singular value <= eps.
/// Columns beyond min(rows, cols) have singular value 0 and always qualify.
inline Eigen::MatrixXd apker(const Eigen::MatrixXd& A, double eps, std::vector<double>* spectrum = nullptr) {
  if (!A.allFinite()) throw NumericError("apker: non-finite matrix entry");
  const Eigen::Index c = A.cols();
  if (spectrum) spectrum->clear();
  if (c == 0) return Eigen::MatrixXd(0, 0);
  if (A.rows() == 0) return Eigen::MatrixXd::Identity(c, c);
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(A, Eigen::ComputeFullV);
  if (svd.info() != Eigen::Success) throw NumericError("apker: SVD did not converge");
  const auto& sv = svd.singularValues();
  if (spectrum) spectrum->assign(sv.data(), sv.data() + sv.size());
  std::vector<Eigen::Index> keep;
  for (Eigen::Index j = 0; j < c; ++j)
    if (j >= sv.size() || sv(j) <= eps) keep.push_back(j);
  Eigen::MatrixXd B(keep.size(), c);
  for (std::size_t r = 0; r < keep.size(); ++r) B.row(r) = svd.matrixV().col(keep[r]).transpose();
  return B;
}

inline double smallest_singular_value(const Eigen::MatrixXd& M) {
  if (M.cols() == 0) return std::numeric_limits<double>::infinity();
  if (M.rows() < M.cols()) return 0.0;
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(M);
  return svd.singularValues()(svd.singularValues().size() - 1);
}

enum class SrrefPolicy {
  // Gauss-Jordan, rows to unit length, drop entries below tau, repeat until
  // the pivots are distinct.
  NormalizedCleanup,
  // Single left-to-right sweep, max-abs pivot row, pivot accepted above tau.
  ColumnSweep,
};

struct StabilizedEchelon {
  Eigen::MatrixXd C;                // unit rows, positive pivots
  std::vector<std::size_t> pivots;  // strictly increasing
};

namespace detail {

inline void normalize_and_clean(Eigen::MatrixXd& C, double tau) {
  for (Eigen::Index i = 0; i < C.rows(); ++i) {
    double nrm = C.row(i).norm();
    if (nrm > 0) C.row(i) /= nrm;
  }
  for (Eigen::Index i = 0; i < C.rows(); ++i)
    for (Eigen::Index j = 0; j < C.cols(); ++j)
      if (std::fabs(C(i, j)) < tau) C(i, j) = 0.0;
}

// Drops zero rows, makes each pivot positive and sorts by pivot column.
inline StabilizedEchelon tidy(const Eigen::MatrixXd& C) {
  std::vector<std::pair<std::size_t, Eigen::Index>> lead;  // (pivot col, row)
  for (Eigen::Index i = 0; i < C.rows(); ++i)
    for (Eigen::Index j = 0; j < C.cols(); ++j)
      if (C(i, j) != 0.0) {
        lead.emplace_back(static_cast<std::size_t>(j), i);
        break;
      }
  std::stable_sort(lead.begin(), lead.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  StabilizedEchelon out;
  out.C.resize(lead.size(), C.cols());
  for (std::size_t r = 0; r < lead.size(); ++r) {
    double sign = C(lead[r].second, lead[r].first) < 0 ? -1.0 : 1.0;
    out.C.row(r) = sign * C.row(lead[r].second);
    out.pivots.push_back(lead[r].first);
  }
  return out;
}

inline bool distinct(const std::vector<std::size_t>& p) {
  return std::adjacent_find(p.begin(), p.end()) == p.end();
}

inline Eigen::MatrixXd gauss_jordan(Eigen::MatrixXd C) {
  constexpr double tiny = 1e-12;
  const Eigen::Index k = C.rows(), n = C.cols();
  Eigen::Index r = 0;
  for (Eigen::Index j = 0; j < n && r < k; ++j) {
    Eigen::Index p;
    double best = C.col(j).segment(r, k - r).cwiseAbs().maxCoeff(&p);
    if (best <= tiny) continue;
    p += r;
    C.row(r).swap(C.row(p));
    C.row(r) /= C(r, j);
    for (Eigen::Index q = 0; q < k; ++q)
      if (q != r && C(q, j) != 0.0) {
        C.row(q) -= C(q, j) * C.row(r);
        C(q, j) = 0.0;
      }
    ++r;
  }
  return C.topRows(r);
}

inline Eigen::MatrixXd column_sweep(Eigen::MatrixXd C, double tau) {
  const Eigen::Index k = C.rows(), n = C.cols();
  Eigen::Index r = 0;
  for (Eigen::Index j = 0; j < n && r < k; ++j) {
    Eigen::Index p;
    double best = C.col(j).segment(r, k - r).cwiseAbs().maxCoeff(&p);
    if (best <= tau) {
      C.col(j).segment(r, k - r).setZero();
      continue;
    }
    p += r;
    C.row(r).swap(C.row(p));
    for (Eigen::Index q = r + 1; q < k; ++q) {
      C.row(q) -= (C(q, j) / C(r, j)) * C.row(r);
      C(q, j) = 0.0;
    }
    ++r;
  }
  return C.topRows(r);
}

}  // namespace detail

inline StabilizedEchelon stabilized_rref(const Eigen::MatrixXd& B, double tau,
                                         SrrefPolicy policy = SrrefPolicy::NormalizedCleanup) {
  if (B.rows() == 0) return {Eigen::MatrixXd(0, B.cols()), {}};
  if (policy == SrrefPolicy::ColumnSweep) {
    Eigen::MatrixXd C = detail::column_sweep(B, tau);
    detail::normalize_and_clean(C, tau);
    return detail::tidy(C);
  }
  Eigen::MatrixXd C = B;
  for (int round = 0; round < 50; ++round) {
    C = detail::gauss_jordan(C);
    detail::normalize_and_clean(C, tau);
    StabilizedEchelon e = detail::tidy(C);
    if (detail::distinct(e.pivots)) return e;
    C = e.C;
  }
  throw NumericError("stabilized rref did not settle");
}

struct Bounds {
  double delta = 0.0;
  double eta = 0.0;
  bool eta_defined = true;
};

/// delta = eps*sqrt(nu) + tau*nu*(mu+nu)*sqrt(s),
/// eta = 2 delta + 2 nu delta^2 / (gamma eps) + 2 nu delta sqrt(s) / eps.
inline Bounds bounds(double eps, double tau, std::size_t mu, std::size_t nu, std::size_t s, double gamma) {
  Bounds b;
  if (nu == 0) return b;
  const double v = static_cast<double>(nu), rs = std::sqrt(static_cast<double>(s));
  b.delta = eps * std::sqrt(v) + tau * v * static_cast<double>(mu + nu) * rs;
  if (!(gamma > 0.0)) {
    b.eta = std::numeric_limits<double>::quiet_NaN();
    b.eta_defined = false;
    return b;
  }
  b.eta = 2 * b.delta + 2 * v * b.delta * b.delta / (gamma * eps) + 2 * v * b.delta * rs / eps;
  return b;
}

struct SPolyResidual {
  std::size_t i = 0, j = 0;  // canonical border indices, 0-based
  double nr_norm = 0.0;      // ||NR(S_ij)||
  double s_norm = 0.0;       // ||S_ij||
};

struct ApproxCheck {
  std::vector<SPolyResidual> residuals;
  double max_residual = 0.0;
  std::optional<std::size_t> worst;  // index into residuals
  bool pass = true;
};

/// S-polynomials of neighboring border elements, divided by G; passes iff
/// every normal remainder has norm < eps. G is normalized and renumbered
/// canonically first.
template <class K>
ApproxCheck check_approx_basis(const SubidealBorderPrebasis<K>& G, double eps) {
  const SubidealBorderPrebasis<K> Gc = G.normalized().canonical();
  const auto& of = Gc.order_ideal();
  const auto& gens = of.generators();
  ApproxCheck out;
  for (auto [i, j] : neighbors(Gc.border())) {
    const FTerm &bi = Gc.border()[i], &bj = Gc.border()[j];
    Term l = bi.term.lcm(bj.term);
    Term ui = *bi.term.quotient_of(l), uj = *bj.term.quotient_of(l);
    Representation<K> ri = Gc.representation(i), rj = Gc.representation(j);
    Representation<K> S(of.num_generators(), Polynomial<K>(of.nvars()));
    for (std::size_t k = 0; k < S.size(); ++k)
      S[k] = ri[k].mul_term(ui) - rj[k].mul_term(uj);
    SPolyResidual r{i, j, 0.0, combine(S, gens).norm2()};
    bool zero = std::all_of(S.begin(), S.end(), [](const auto& p) { return p.is_zero(); });
    if (!zero) r.nr_norm = normal_remainder_of(divide(S, Gc), of).norm2();
    if (!out.worst || r.nr_norm > out.max_residual) {
      out.max_residual = r.nr_norm;
      out.worst = out.residuals.size();
    }
    if (!(r.nr_norm < eps)) out.pass = false;
    out.residuals.push_back(r);
  }
  return out;
}

/// Per-coordinate affine map x -> (x - center) / half_width into [-1,1].
struct Scaling {
  bool applied = false;
  std::vector<double> center, half_width;
};

struct AviOptions {
  bool auto_scale = false;
  bool normalize_generators = false;
  SrrefPolicy policy = SrrefPolicy::NormalizedCleanup;
};

struct KernelPass {
  int degree = 0;
  int iteration = 0;
  std::vector<double> singular_values;
  std::size_t kernel_dim = 0;
  std::vector<std::size_t> pivots;
};

/// One row of a stabilized echelon form, as produced: coefficients over the
/// columns (new F-terms, then O_F) of the pass that found it.
struct KernelRow {
  FTerm border;
  std::vector<FTerm> cols;
  std::vector<double> row;
  double eval_norm = 0.0;  // ||A * row||

  double coeff(const FTerm& ft) const {
    for (std::size_t q = 0; q < cols.size(); ++q)
      if (cols[q] == ft) return row[q];
    return 0.0;
  }

  /// Border F-term first, then the remaining F-terms canonically.
  std::string fterm_form(const std::vector<std::string>& vars, const TermOrdering& sigma) const {
    std::vector<std::pair<FTerm, double>> parts;
    for (std::size_t q = 0; q < cols.size(); ++q)
      if (row[q] != 0.0 && cols[q] != border) parts.emplace_back(cols[q], row[q]);
    std::sort(parts.begin(), parts.end(),
              [&](const auto& a, const auto& b) { return canonical_less(a.first, b.first, sigma); });
    parts.insert(parts.begin(), {border, coeff(border)});
    std::string out;
    for (const auto& [ft, c] : parts)
      if (c != 0.0) detail::append_signed(out, c, format_fterm(ft, vars));
    return out.empty() ? "0" : out;
  }
};

struct ApproxBasisReport {
  FOrderIdeal<double> order_ideal;           // algorithm order
  std::vector<KernelRow> raw;                // G as computed: unit rows over F-terms, emission order
  SubidealBorderPrebasis<double> basis;      // raw rows rewritten over O_F and their own border F-term
  SubidealBorderPrebasis<double> normalized; // each g divided by its border coefficient
  std::vector<Polynomial<double>> unitary;   // each expanded g scaled to ||g|| = 1
  std::vector<double> eval_norms;            // ||eval(g)|| for the prebasis elements
  double delta = 0.0, eta = 0.0, gamma = 0.0;
  bool eta_defined = true;
  std::size_t mu = 0, nu = 0, s = 0;
  double sigma_min_M = 0.0;
  double max_fterm_eval_norm = 0.0;
  bool order_ideal_closed = true;
  std::vector<KernelPass> passes;
  ApproxCheck spoly;                         // at eps
  Scaling scaling;
  Thresholds thresholds;
  int terminal_degree = 0;
  std::vector<std::string> warnings;
};

namespace detail {

inline Eigen::VectorXd eval_fterm(const FTerm& ft, const PointSet<double>& X, const Eigen::VectorXd& fev) {
  Eigen::VectorXd v(X.size());
  for (std::size_t i = 0; i < X.size(); ++i) {
    double t = 1.0;
    for (std::size_t k = 0; k < ft.term.nvars(); ++k)
      for (unsigned e = 0; e < ft.term[k]; ++e) t *= X[i][k];
    v(i) = t * fev(i);
  }
  return v;
}

// One degree of A3-A8 / SA3-SA8. `OF`/`M` are the current order ideal and its
// evaluation columns; returns the F-terms of L that join O_F, in their final order.
inline std::vector<FTerm> approx_block(int degree, std::vector<FTerm> cand, std::vector<Eigen::VectorXd> cand_eval,
                                       const std::vector<FTerm>& OF, const std::vector<Eigen::VectorXd>& M,
                                       const Thresholds& th, SrrefPolicy policy, std::size_t s,
                                       std::vector<KernelRow>& emitted, std::vector<KernelPass>& passes,
                                       std::vector<std::string>& warnings) {
  for (int it = 0; !cand.empty(); ++it) {
    const std::size_t c = cand.size(), m = M.size();
    Eigen::MatrixXd A(s, c + m);
    for (std::size_t j = 0; j < c; ++j) A.col(j) = cand_eval[j];
    for (std::size_t j = 0; j < m; ++j) A.col(c + j) = M[j];
    KernelPass pass{degree, it, {}, 0, {}};
    Eigen::MatrixXd B = apker(A, th.epsilon, &pass.singular_values);
    pass.kernel_dim = B.rows();
    if (B.rows() == 0) {
      passes.push_back(std::move(pass));
      break;
    }
    StabilizedEchelon C = stabilized_rref(B, th.tau, policy);
    pass.pivots = C.pivots;
    passes.push_back(std::move(pass));

    std::vector<FTerm> cols(cand);
    cols.insert(cols.end(), OF.begin(), OF.end());
    std::vector<bool> is_pivot(c, false);
    bool any = false;
    for (std::size_t i = 0; i < C.pivots.size(); ++i) {
      std::size_t j = C.pivots[i];
      if (j >= c) {
        warnings.push_back("degree " + std::to_string(degree) + ": stabilized pivot in an old column ignored");
        continue;
      }
      is_pivot[j] = true;
      any = true;
      std::vector<double> row(C.C.cols());
      for (std::size_t q = 0; q < row.size(); ++q) row[q] = C.C(i, q);
      double en = (A * C.C.row(i).transpose()).norm();
      emitted.push_back({cand[j], cols, std::move(row), en});
    }
    if (!any) {
      warnings.push_back("degree " + std::to_string(degree) +
                         ": approximate kernel without a pivot among the new columns; stopping the inner loop");
      break;
    }
    std::vector<FTerm> next;
    std::vector<Eigen::VectorXd> next_eval;
    for (std::size_t j = 0; j < c; ++j)
      if (!is_pivot[j]) {
        next.push_back(cand[j]);
        next_eval.push_back(cand_eval[j]);
      }
    cand = std::move(next);
    cand_eval = std::move(next_eval);
  }
  return cand;
}

inline Scaling scale_points(PointSet<double>& X, bool auto_scale) {
  Scaling sc;
  if (X.in_unit_cube()) return sc;
  if (!auto_scale)
    throw ValidationError("points must lie in [-1,1]^n (pass auto-scale to map them there)");
  const std::size_t n = X.nvars();
  sc.applied = true;
  sc.center.assign(n, 0.0);
  sc.half_width.assign(n, 1.0);
  for (std::size_t k = 0; k < n; ++k) {
    double lo = X[0][k], hi = X[0][k];
    for (const auto& r : X.rows()) {
      lo = std::min(lo, r[k]);
      hi = std::max(hi, r[k]);
    }
    sc.center[k] = (lo + hi) / 2;
    if (hi > lo) sc.half_width[k] = (hi - lo) / 2;
  }
  std::vector<std::vector<double>> rows;
  for (const auto& r : X.rows()) {
    std::vector<double> row(n);
    for (std::size_t k = 0; k < n; ++k) row[k] = (r[k] - sc.center[k]) / sc.half_width[k];
    rows.push_back(std::move(row));
  }
  X = PointSet<double>(X.names(), std::move(rows));
  return sc;
}

// Rewrites raw rows over O_F. A stabilized row may still carry the border
// F-term of another element (the echelon form is not fully reduced); that
// entry is eliminated with the other element.
inline SubidealBorderPrebasis<double> assemble(const FOrderIdeal<double>& of, const TermOrdering& sigma,
                                              const std::vector<KernelRow>& emitted,
                                              std::vector<std::string>& warnings) {
  std::map<FTerm, std::map<FTerm, double>> done;  // border -> coefficients incl. border
  std::vector<std::map<FTerm, double>> forms(emitted.size());
  std::set<std::size_t> reduced;
  for (std::size_t e = emitted.size(); e-- > 0;) {
    const KernelRow& el = emitted[e];
    std::map<FTerm, double> g;
    for (std::size_t q = 0; q < el.cols.size(); ++q)
      if (el.row[q] != 0.0) g[el.cols[q]] += el.row[q];
    for (auto it = g.begin(); it != g.end();) {
      if (it->first == el.border || of.contains(it->first)) {
        ++it;
        continue;
      }
      auto h = done.find(it->first);
      if (h == done.end()) throw InternalError("approximate basis element leaves O_F and its border");
      reduced.insert(e);
      double f = it->second / h->second.at(it->first);
      FTerm key = it->first;
      for (const auto& [ft, c] : h->second) g[ft] -= f * c;
      g.erase(key);
      it = g.begin();
    }
    done[el.border] = g;
    forms[e] = std::move(g);
  }
  if (!reduced.empty()) {
    std::string which;
    for (std::size_t e : reduced) which += (which.empty() ? "g" : ", g") + std::to_string(e + 1);
    warnings.push_back(which + " contain(s) other border F-terms in raw form; reduced for the prebasis");
  }
  std::vector<FTerm> bterms;
  std::vector<std::vector<double>> rows;
  std::vector<double> lead;
  for (std::size_t e = 0; e < emitted.size(); ++e) {
    bterms.push_back(emitted[e].border);
    std::vector<double> row(of.size(), 0.0);
    for (const auto& [ft, c] : forms[e])
      if (ft != emitted[e].border) row[*of.position(ft)] = -c;
    rows.push_back(std::move(row));
    lead.push_back(forms[e].at(emitted[e].border));
  }
  return SubidealBorderPrebasis<double>(of, sigma, std::move(bterms), std::move(rows), std::move(lead));
}

inline void finish_report(ApproxBasisReport& rep, const PointSet<double>& X, const std::vector<Eigen::VectorXd>& M) {
  const auto& G = rep.basis;
  rep.mu = rep.order_ideal.size();
  rep.nu = G.size();
  rep.s = X.size();
  rep.order_ideal_closed = rep.order_ideal.is_divisor_closed();
  rep.gamma = rep.nu ? std::numeric_limits<double>::infinity() : 0.0;
  for (std::size_t j = 0; j < G.size(); ++j) rep.gamma = std::min(rep.gamma, std::fabs(G.leading_coeff(j)));
  Bounds b = bounds(rep.thresholds.epsilon, rep.thresholds.tau, rep.mu, rep.nu, rep.s, rep.gamma);
  rep.delta = b.delta;
  rep.eta = b.eta;
  rep.eta_defined = b.eta_defined;
  for (std::size_t j = 0; j < G.size(); ++j) {
    double sq = 0.0;
    for (double v : evaluate(G.poly(j), X)) sq += v * v;
    rep.eval_norms.push_back(std::sqrt(sq));
    double nrm = G.poly(j).norm2();
    rep.unitary.push_back(nrm > 0 ? G.poly(j).scaled(1.0 / nrm) : G.poly(j));
  }
  Eigen::MatrixXd Mm(X.size(), M.size());
  for (std::size_t j = 0; j < M.size(); ++j) Mm.col(j) = M[j];
  rep.sigma_min_M = smallest_singular_value(Mm);
  bool degenerate = false;
  for (std::size_t j = 0; j < G.size(); ++j) degenerate = degenerate || G.leading_coeff(j) == 0.0;
  if (degenerate) {
    rep.warnings.push_back("a basis element has zero border coefficient; normalized basis unavailable");
    return;
  }
  rep.normalized = G.normalized();
  rep.spoly = check_approx_basis(rep.normalized, rep.thresholds.epsilon);
}

}  // namespace detail

/// Subideal AVI: approximate O_F-subideal border basis of the points in <F>.
inline ApproxBasisReport subideal_avi(PointSet<double> X, const TermOrdering& sigma,
                                      std::vector<Polynomial<double>> F, const Thresholds& th,
                                      const AviOptions& opts = {}) {
  th.validate();
  if (X.empty()) throw ValidationError("empty point set");
  if (F.empty()) throw ValidationError("F must contain at least one generator");
  const std::size_t n = X.nvars(), s = X.size();
  ApproxBasisReport rep;
  rep.thresholds = th;
  for (auto& f : F) {
    if (f.is_zero()) throw ValidationError("generators must be non-zero");
    if (f.nvars() != n) throw ValidationError("generator arity does not match the points");
    double n1 = f.norm1();
    if (std::fabs(n1 - 1.0) > 1e-12) {
      if (!opts.normalize_generators)
        throw ValidationError("generators must be ||.||_1-unitary (pass normalize-generators to rescale)");
      f = f.scaled(1.0 / n1);
    }
  }
  rep.scaling = detail::scale_points(X, opts.auto_scale);

  unsigned mindeg = F[0].degree(), maxdeg = F[0].degree();
  for (const auto& f : F) {
    mindeg = std::min(mindeg, f.degree());
    maxdeg = std::max(maxdeg, f.degree());
  }
  std::vector<Eigen::VectorXd> fev;
  for (const auto& f : F) {
    auto v = evaluate(f, X);
    fev.push_back(Eigen::Map<Eigen::VectorXd>(v.data(), v.size()));
  }

  std::vector<FTerm> OF;  // SA1
  std::vector<Eigen::VectorXd> M;
  std::vector<KernelRow> emitted;
  const int cap = static_cast<int>(s + maxdeg + 1);
  int d = static_cast<int>(mindeg) - 1;
  for (;;) {
    ++d;  // SA2
    if (d > cap) throw InternalError("subideal AVI exceeded its degree cap");
    FOrderIdeal<double> cur(F, OF, FOrderIdeal<double>::Unchecked{});
    std::vector<FTerm> L;
    for (FTerm& ft : border(cur, sigma))
      if (static_cast<int>(cur.degree(ft)) == d) L.push_back(std::move(ft));
    detail::sort_by_leading_term(L, F, sigma);
    if (L.empty() && d >= static_cast<int>(maxdeg)) break;
    if (L.empty()) continue;

    std::vector<Eigen::VectorXd> Lev;
    for (const FTerm& ft : L) {
      Lev.push_back(detail::eval_fterm(ft, X, fev[ft.gen]));
      rep.max_fterm_eval_norm = std::max(rep.max_fterm_eval_norm, Lev.back().norm());
    }
    auto joined = detail::approx_block(d, L, Lev, OF, M, th, opts.policy, s, emitted, rep.passes, rep.warnings);
    for (std::size_t j = joined.size(); j-- > 0;) {  // SA6
      M.insert(M.begin(), detail::eval_fterm(joined[j], X, fev[joined[j].gen]));
      OF.insert(OF.begin(), joined[j]);
    }
  }
  rep.terminal_degree = d;
  rep.order_ideal = FOrderIdeal<double>(F, OF, FOrderIdeal<double>::Unchecked{});
  rep.basis = detail::assemble(rep.order_ideal, sigma, emitted, rep.warnings);
  rep.raw = std::move(emitted);
  detail::finish_report(rep, X, M);
  return rep;
}

/// AVI: approximate O-border basis of the points (F = {1}).
inline ApproxBasisReport avi(PointSet<double> X, const TermOrdering& sigma, const Thresholds& th,
                             const AviOptions& opts = {}) {
  th.validate();
  if (X.empty()) throw ValidationError("empty point set");
  const std::size_t n = X.nvars(), s = X.size();
  ApproxBasisReport rep;
  rep.thresholds = th;
  rep.scaling = detail::scale_points(X, opts.auto_scale);
  const std::vector<Polynomial<double>> one{Polynomial<double>::one(n)};
  const Eigen::VectorXd ones = Eigen::VectorXd::Ones(s);

  std::vector<FTerm> O{{Term::one(n), 0}};  // A1
  std::vector<Eigen::VectorXd> M{ones};
  std::vector<KernelRow> emitted;
  rep.max_fterm_eval_norm = ones.norm();
  int d = 0;
  for (;;) {
    ++d;  // A2
    if (static_cast<std::size_t>(d) > s + 1) throw InternalError("AVI exceeded its degree cap");
    std::vector<Term> terms;
    std::vector<Term> Ot;
    for (const FTerm& ft : O) Ot.push_back(ft.term);
    for (Term& t : OrderIdeal(n, Ot).border(sigma))
      if (t.degree() == static_cast<unsigned>(d)) terms.push_back(std::move(t));
    if (terms.empty()) break;
    std::vector<FTerm> L;
    std::vector<Eigen::VectorXd> Lev;
    for (Term& t : terms) {
      L.push_back({std::move(t), 0});
      Lev.push_back(detail::eval_fterm(L.back(), X, ones));
      rep.max_fterm_eval_norm = std::max(rep.max_fterm_eval_norm, Lev.back().norm());
    }
    auto joined = detail::approx_block(d, L, Lev, O, M, th, opts.policy, s, emitted, rep.passes, rep.warnings);
    for (std::size_t j = joined.size(); j-- > 0;) {  // A6
      M.insert(M.begin(), detail::eval_fterm(joined[j], X, ones));
      O.insert(O.begin(), joined[j]);
    }
  }
  rep.terminal_degree = d;
  rep.order_ideal = FOrderIdeal<double>(one, O, FOrderIdeal<double>::Unchecked{});
  rep.basis = detail::assemble(rep.order_ideal, sigma, emitted, rep.warnings);
  rep.raw = std::move(emitted);
  detail::finish_report(rep, X, M);
  return rep;
}

}  // namespace subideal
