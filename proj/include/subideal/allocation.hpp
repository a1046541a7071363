#pragma once

// Two-zone production allocation. Zone models come from subideal AVI bases
// of the test-phase data, the interaction term from a basis inside
// <x_B p_A, x_A p_B> on the commingled data; coefficients by least squares.

#include <Eigen/Dense>

#include <cmath>
#include <random>
#include <string>
#include <vector>

#include "subideal/approx_engine.hpp"

namespace subideal {

struct AllocationInput {
  PointSet<double> commingled;
  PointSet<double> test_a;  // zone B shut: valve_b == 0
  PointSet<double> test_b;  // zone A shut: valve_a == 0
  std::string valve_a = "xA";
  std::string valve_b = "xB";
  std::string production = "p";
  Thresholds thresholds{0.02, 0.0005};
};

struct ZoneFit {
  std::size_t mu = 0, nu = 0;
  double delta = 0.0;
  double residual = 0.0;  // ||eval(model) - target|| on the fitted rows
};

struct AllocationResult {
  std::vector<std::string> vars;  // model indeterminates (production column removed)
  Polynomial<double> p_a, p_b, f_a, f_b, q_ab, c_a, c_b;
  double residual = 0.0;  // ||eval(p_A + p_B + q_AB) - p_AB|| on commingled rows
  double rms = 0.0;
  double delta = 0.0;     // delta of the interaction fit
  ZoneFit fit_a, fit_b, fit_q;
  std::vector<std::string> warnings;
};

namespace detail {

inline std::size_t column_of(const std::vector<std::string>& names, const std::string& name, const char* what) {
  for (std::size_t k = 0; k < names.size(); ++k)
    if (names[k] == name) return k;
  throw ValidationError(std::string("missing ") + what + " column '" + name + "'");
}

// Splits off the production column: (inputs, target).
inline std::pair<PointSet<double>, std::vector<double>> split_target(const PointSet<double>& D, std::size_t prod) {
  std::vector<std::string> names;
  for (std::size_t k = 0; k < D.nvars(); ++k)
    if (k != prod) names.push_back(D.names()[k]);
  std::vector<std::vector<double>> rows;
  std::vector<double> y;
  for (const auto& r : D.rows()) {
    std::vector<double> row;
    for (std::size_t k = 0; k < r.size(); ++k)
      if (k != prod) row.push_back(r[k]);
    rows.push_back(std::move(row));
    y.push_back(r[prod]);
  }
  return {PointSet<double>(std::move(names), std::move(rows)), std::move(y)};
}

// Least squares of y against the O_F columns; returns sum_i c_i t_i (per generator).
inline std::vector<Polynomial<double>> fit_over(const FOrderIdeal<double>& of, const PointSet<double>& X,
                                                const std::vector<double>& y, double& residual) {
  const std::size_t s = X.size(), mu = of.size(), n = X.nvars();
  std::vector<Polynomial<double>> out(of.num_generators(), Polynomial<double>(n));
  Eigen::VectorXd b = Eigen::Map<const Eigen::VectorXd>(y.data(), y.size());
  if (mu == 0) {
    residual = b.norm();
    return out;
  }
  Eigen::MatrixXd A(s, mu);
  for (std::size_t j = 0; j < mu; ++j) {
    auto v = evaluate(of.expand(of[j]), X);
    for (std::size_t i = 0; i < s; ++i) A(i, j) = v[i];
  }
  Eigen::VectorXd c = A.colPivHouseholderQr().solve(b);
  if (!c.allFinite()) throw NumericError("least squares fit produced non-finite coefficients");
  residual = (A * c - b).norm();
  for (std::size_t j = 0; j < mu; ++j)
    out[of[j].gen] = out[of[j].gen] + Polynomial<double>::monomial(of[j].term, c(j));
  return out;
}

inline void check_same_header(const PointSet<double>& a, const PointSet<double>& b, const char* what) {
  if (a.names() != b.names()) throw ValidationError(std::string(what) + " header differs from the commingled data");
}

}  // namespace detail

inline AllocationResult allocate(const AllocationInput& in, const TermOrdering& sigma) {
  in.thresholds.validate();
  const auto& names = in.commingled.names();
  detail::check_same_header(in.test_a, in.commingled, "test A");
  detail::check_same_header(in.test_b, in.commingled, "test B");
  for (const auto* D : {&in.commingled, &in.test_a, &in.test_b})
    if (D->empty()) throw ValidationError("empty data set in allocation input");
  const std::size_t prod = detail::column_of(names, in.production, "production");
  const std::size_t ca = detail::column_of(names, in.valve_a, "valve");
  const std::size_t cb = detail::column_of(names, in.valve_b, "valve");

  auto valve_range = [](const PointSet<double>& D, std::size_t k) {
    double lo = D[0][k], hi = D[0][k];
    for (const auto& r : D.rows()) {
      lo = std::min(lo, std::fabs(r[k]));
      hi = std::max(hi, std::fabs(r[k]));
    }
    return std::pair{lo, hi};
  };
  if (valve_range(in.test_a, cb).second != 0.0) throw ValidationError("test A must have zone B's valve at 0");
  if (valve_range(in.test_b, ca).second != 0.0) throw ValidationError("test B must have zone A's valve at 0");
  if (valve_range(in.test_a, ca).second == 0.0) throw ValidationError("degenerate test A: zone A never produces");
  if (valve_range(in.test_b, cb).second == 0.0) throw ValidationError("degenerate test B: zone B never produces");

  AllocationResult res;
  auto [XA, yA] = detail::split_target(in.test_a, prod);
  auto [XB, yB] = detail::split_target(in.test_b, prod);
  auto [XC, yC] = detail::split_target(in.commingled, prod);
  res.vars = XC.names();
  const std::size_t n = XC.nvars();
  const std::size_t ka = ca - (ca > prod), kb = cb - (cb > prod);
  const auto xa = Polynomial<double>::variable(n, ka), xb = Polynomial<double>::variable(n, kb);

  auto zone = [&](const PointSet<double>& X, const std::vector<double>& y, const Polynomial<double>& gen,
                  ZoneFit& fit) {
    ApproxBasisReport rep = subideal_avi(X, sigma, {gen}, in.thresholds);
    for (auto& w : rep.warnings) res.warnings.push_back(w);
    fit.mu = rep.mu;
    fit.nu = rep.nu;
    fit.delta = rep.delta;
    auto coef = detail::fit_over(rep.order_ideal, X, y, fit.residual);
    return coef[0] * gen;
  };
  res.p_a = zone(XA, yA, xa, res.fit_a);
  res.p_b = zone(XB, yB, xb, res.fit_b);

  // Interaction: q_AB = f_A * (x_B p_A) + f_B * (x_A p_B) fitted to the commingled residual.
  std::vector<double> r(yC.size());
  auto pa_ev = evaluate(res.p_a, XC), pb_ev = evaluate(res.p_b, XC);
  for (std::size_t i = 0; i < r.size(); ++i) r[i] = yC[i] - pa_ev[i] - pb_ev[i];
  Polynomial<double> ga = xb * res.p_a, gb = xa * res.p_b;
  std::vector<Polynomial<double>> F;
  std::vector<double> scale;
  for (const auto* g : {&ga, &gb}) {
    double n1 = g->norm1();
    if (n1 == 0.0) throw NumericError("zone model vanished; interaction generators are zero");
    F.push_back(g->scaled(1.0 / n1));
    scale.push_back(n1);
  }
  ApproxBasisReport rq = subideal_avi(XC, sigma, F, in.thresholds);
  for (auto& w : rq.warnings) res.warnings.push_back(w);
  res.fit_q = {rq.mu, rq.nu, rq.delta, 0.0};
  auto coef = detail::fit_over(rq.order_ideal, XC, r, res.fit_q.residual);
  res.f_a = coef[0].scaled(1.0 / scale[0]);
  res.f_b = coef[1].scaled(1.0 / scale[1]);
  res.q_ab = res.f_a * ga + res.f_b * gb;
  res.c_a = res.p_a + res.f_a * ga;  // (1 + f_A x_B) p_A
  res.c_b = res.p_b + res.f_b * gb;  // (1 + f_B x_A) p_B
  res.delta = rq.delta;

  auto total = evaluate(res.c_a + res.c_b, XC);
  double sq = 0.0;
  for (std::size_t i = 0; i < total.size(); ++i) sq += (total[i] - yC[i]) * (total[i] - yC[i]);
  res.residual = std::sqrt(sq);
  res.rms = std::sqrt(sq / static_cast<double>(total.size()));
  return res;
}

/// Ground truth behind the synthetic two-zone data.
struct SyntheticTruth {
  std::vector<std::string> vars{"xA", "xB", "w"};
  Polynomial<double> p_a, p_b, f_a, f_b;
};

struct SyntheticOptions {
  std::uint64_t seed = 1;
  std::size_t test_rows = 40;
  std::size_t commingled_rows = 60;
  double noise = 1e-3;
  bool interaction = true;
};

struct SyntheticData {
  SyntheticTruth truth;
  AllocationInput input;
};

/// Valves xA, xB and a sensor w in [0,1]; production p = c_A + c_B + noise.
inline SyntheticData synthesize(const SyntheticOptions& o) {
  SyntheticData out;
  auto& T = out.truth;
  T.p_a = parse_polynomial<double>("0.6*xA + 0.25*xA*w - 0.2*xA^2", T.vars);
  T.p_b = parse_polynomial<double>("0.5*xB + 0.3*xB*w - 0.1*xB^2", T.vars);
  T.f_a = parse_polynomial<double>(o.interaction ? "-0.3" : "0", T.vars);
  T.f_b = parse_polynomial<double>(o.interaction ? "-0.2" : "0", T.vars);
  const auto xa = Polynomial<double>::variable(3, 0), xb = Polynomial<double>::variable(3, 1);
  const Polynomial<double> total = T.p_a + T.p_b + T.f_a * xb * T.p_a + T.f_b * xa * T.p_b;

  std::mt19937_64 rng(o.seed);
  std::uniform_real_distribution<double> open(0.05, 1.0), sensor(0.0, 1.0);
  std::normal_distribution<double> noise(0.0, o.noise);
  std::vector<std::string> header{"xA", "xB", "w", "p"};
  auto rows = [&](std::size_t count, bool a_open, bool b_open) {
    std::vector<std::vector<double>> out;
    for (std::size_t i = 0; i < count; ++i) {
      std::vector<double> pt{a_open ? open(rng) : 0.0, b_open ? open(rng) : 0.0, sensor(rng)};
      double p = total(std::span<const double>(pt)) + noise(rng);
      pt.push_back(p);
      out.push_back(std::move(pt));
    }
    return PointSet<double>(header, std::move(out));
  };
  out.input.test_a = rows(o.test_rows, true, false);
  out.input.test_b = rows(o.test_rows, false, true);
  out.input.commingled = rows(o.commingled_rows, true, true);
  return out;
}

}  // namespace subideal
