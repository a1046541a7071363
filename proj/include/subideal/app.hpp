#pragma once

// Command-line front end: CSV input, JSON output, subcommand dispatch.
// Exit codes: 0 success, 2 invalid input, 3 numerical failure, 1 internal error.

#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "subideal/allocation.hpp"
#include "subideal/approx_engine.hpp"
#include "subideal/exact_engine.hpp"

namespace subideal {

using Json = nlohmann::ordered_json;

inline constexpr const char* kSchema = "subideal-result/1";

enum class ExitCode : int { Ok = 0, Internal = 1, Validation = 2, Numeric = 3 };

struct RunConfig {
  std::string command;
  std::string order = "degrevlex";
  std::optional<double> epsilon, tau;
  std::string points, gens, basis, rep, output;
  bool auto_scale = false;
  bool normalize_generators = false;
  // allocate
  std::string commingled, test_a, test_b;
  std::string valve_a = "xA", valve_b = "xB", production = "p";
  // synth
  std::uint64_t seed = 1;
  std::string out_dir = ".";
  double noise = 1e-3;
  bool no_interaction = false;
};

// ---- CSV --------------------------------------------------------------------

namespace detail {

inline std::string trim(std::string_view s) {
  auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string_view::npos) return {};
  auto e = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(b, e - b + 1));
}

inline std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> out;
  std::size_t start = 0;
  for (;;) {
    auto comma = line.find(',', start);
    out.push_back(trim(std::string_view(line).substr(start, comma == std::string::npos ? std::string::npos : comma - start)));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return out;
}

}  // namespace detail

/// CSV with a header row of indeterminate names and one row per point.
template <class K>
PointSet<K> parse_points(std::istream& in, const std::string& origin = "input") {
  std::string line;
  std::vector<std::string> header;
  std::vector<std::vector<K>> rows;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (detail::trim(line).empty()) continue;
    auto cells = detail::split_csv(line);
    if (header.empty()) {
      header = cells;
      for (const auto& h : header)
        if (h.empty()) throw ValidationError(origin + ": empty column name in header");
      continue;
    }
    if (cells.size() != header.size())
      throw ValidationError(origin + ":" + std::to_string(lineno) + ": expected " + std::to_string(header.size()) +
                            " fields, found " + std::to_string(cells.size()));
    std::vector<K> row;
    for (const auto& c : cells) {
      try {
        row.push_back(ScalarTraits<K>::parse(c));
      } catch (const ValidationError& e) {
        throw ValidationError(origin + ":" + std::to_string(lineno) + ": " + e.what());
      }
    }
    rows.push_back(std::move(row));
  }
  if (header.empty()) throw ValidationError(origin + ": empty file");
  if (rows.empty()) throw ValidationError(origin + ": empty point set");
  return PointSet<K>(std::move(header), std::move(rows));
}

template <class K>
PointSet<K> load_points(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open '" + path + "'");
  return parse_points<K>(in, path);
}

template <class K>
void write_points(std::ostream& out, const PointSet<K>& X) {
  for (std::size_t k = 0; k < X.nvars(); ++k) out << (k ? "," : "") << X.names()[k];
  out << "\n";
  for (const auto& r : X.rows()) {
    for (std::size_t k = 0; k < r.size(); ++k) out << (k ? "," : "") << ScalarTraits<K>::format(r[k]);
    out << "\n";
  }
}

// ---- JSON -------------------------------------------------------------------

namespace detail {

template <class K>
Json scalar_json(const K& c) {
  if constexpr (ScalarTraits<K>::exact)
    return ScalarTraits<K>::format(c);  // exact values travel as strings
  else
    return c;
}

template <class K>
K scalar_from_json(const Json& j) {
  if (j.is_string()) return ScalarTraits<K>::parse(j.get<std::string>());
  if (j.is_number()) {
    if constexpr (ScalarTraits<K>::exact)
      throw ValidationError("exact basis files store coefficients as strings");
    else
      return j.get<double>();
  }
  throw ValidationError("coefficient must be a string or number");
}

inline Json fterm_json(const FTerm& ft, const std::vector<std::string>& vars) {
  return Json{{"fterm", format_fterm(ft, vars)},
              {"term", ft.term.is_one() ? std::string("1") : format_term(ft.term, vars)},
              {"gen", ft.gen + 1}};
}

inline FTerm fterm_from_json(const Json& j, const std::vector<std::string>& vars, std::size_t m) {
  auto p = parse_polynomial<Rational>(j.at("term").get<std::string>(), vars);
  if (p.size() != 1 || p.coeffs().begin()->second != 1) throw ValidationError("F-term entry is not a term");
  auto gen = j.at("gen").get<std::size_t>();
  if (gen < 1 || gen > m) throw ValidationError("F-term generator index out of range");
  return {p.coeffs().begin()->first, gen - 1};
}

template <class K>
Json prebasis_json(const SubidealBorderPrebasis<K>& G, const std::vector<std::string>& vars) {
  const auto& of = G.order_ideal();
  const auto& sigma = G.ordering();
  Json j;
  j["generators"] = Json::array();
  for (const auto& f : of.generators()) j["generators"].push_back(to_string(f, vars, sigma));
  j["order_ideal"] = Json::array();
  for (const auto& ft : of.fterms()) j["order_ideal"].push_back(fterm_json(ft, vars));
  j["basis"] = Json::array();
  for (std::size_t b = 0; b < G.size(); ++b) {
    Json e;
    e["border"] = fterm_json(G.border()[b], vars);
    e["fterm_form"] = G.fterm_form(b, vars);
    e["polynomial"] = to_string(G.poly(b), vars, sigma);
    e["leading"] = scalar_json(G.leading_coeff(b));
    Json cs = Json::array();
    for (const auto& c : G.coeff_row(b)) cs.push_back(scalar_json(c));
    e["coefficients"] = std::move(cs);
    j["basis"].push_back(std::move(e));
  }
  return j;
}

template <class K>
SubidealBorderPrebasis<K> prebasis_from_json(const Json& doc) {
  auto vars = doc.at("vars").get<std::vector<std::string>>();
  auto sigma = TermOrdering::parse(doc.at("order").get<std::string>(), vars.size());
  std::vector<Polynomial<K>> F;
  for (const auto& g : doc.at("generators")) F.push_back(parse_polynomial<K>(g.get<std::string>(), vars));
  std::vector<FTerm> fts;
  for (const auto& ft : doc.at("order_ideal")) fts.push_back(fterm_from_json(ft, vars, F.size()));
  FOrderIdeal<K> of(F, fts, typename FOrderIdeal<K>::Unchecked{});
  std::vector<FTerm> border;
  std::vector<std::vector<K>> rows;
  std::vector<K> lead;
  for (const auto& e : doc.at("basis")) {
    border.push_back(fterm_from_json(e.at("border"), vars, F.size()));
    lead.push_back(scalar_from_json<K>(e.at("leading")));
    std::vector<K> row;
    for (const auto& c : e.at("coefficients")) row.push_back(scalar_from_json<K>(c));
    rows.push_back(std::move(row));
  }
  return SubidealBorderPrebasis<K>(std::move(of), sigma, std::move(border), std::move(rows), std::move(lead));
}

inline Json trace_json(const std::vector<DegreeTrace>& trace, const std::vector<std::string>& vars) {
  Json out = Json::array();
  for (const auto& t : trace) {
    Json L = Json::array();
    for (const auto& ft : t.L) L.push_back(format_fterm(ft, vars));
    out.push_back({{"degree", t.degree},
                   {"L", L},
                   {"kernel_dim", t.kernel_dim},
                   {"pivots", t.pivots},
                   {"non_pivots", t.non_pivots},
                   {"pivots_in_new_columns", t.pivots_in_new_columns}});
  }
  return out;
}

inline Json header(const std::string& command, const char* mode, const TermOrdering& sigma,
                   const std::vector<std::string>& vars) {
  return Json{{"schema", kSchema}, {"command", command}, {"mode", mode}, {"order", sigma.name()}, {"vars", vars}};
}

inline Json bm_json(const std::string& command, const BMResult<Rational>& r, const std::vector<std::string>& vars) {
  Json j = header(command, "exact", r.basis.ordering(), vars);
  j.update(prebasis_json(r.basis, vars));
  j["terminal_degree"] = r.terminal_degree;
  j["trace"] = trace_json(r.trace, vars);
  j["warnings"] = r.warnings;
  return j;
}

inline Json poly_list_json(const std::vector<Polynomial<double>>& ps, const std::vector<std::string>& vars,
                           const TermOrdering& sigma) {
  Json out = Json::array();
  for (const auto& p : ps) out.push_back(to_string(p, vars, sigma));
  return out;
}

inline Json check_json(const ApproxCheck& c, const SubidealBorderPrebasis<double>& G,
                       const std::vector<std::string>& vars) {
  auto Gc = G.canonical();
  Json res = Json::array();
  for (const auto& r : c.residuals)
    res.push_back({{"pair", {r.i + 1, r.j + 1}},
                   {"fterms", {format_fterm(Gc.border()[r.i], vars), format_fterm(Gc.border()[r.j], vars)}},
                   {"nr_norm", r.nr_norm},
                   {"s_norm", r.s_norm}});
  return Json{{"pass", c.pass}, {"max_residual", c.max_residual}, {"residuals", res}};
}

inline Json approx_json(const std::string& command, const ApproxBasisReport& r, const TermOrdering& sigma,
                        const std::vector<std::string>& vars) {
  Json j = header(command, "float", sigma, vars);
  j["epsilon"] = r.thresholds.epsilon;
  j["tau"] = r.thresholds.tau;
  j.update(prebasis_json(r.basis, vars));
  Json raw = Json::array();
  for (const auto& k : r.raw) {
    Json cs = Json::array();
    for (std::size_t q = 0; q < k.cols.size(); ++q)
      if (k.row[q] != 0.0) cs.push_back({{"fterm", format_fterm(k.cols[q], vars)}, {"coeff", k.row[q]}});
    raw.push_back({{"border", fterm_json(k.border, vars)},
                   {"fterm_form", k.fterm_form(vars, sigma)},
                   {"coefficients", cs},
                   {"eval_norm", k.eval_norm}});
  }
  j["raw"] = std::move(raw);
  if (r.normalized.size() == r.basis.size() && r.basis.size() > 0) {
    Json nf = Json::array();
    for (std::size_t b = 0; b < r.normalized.size(); ++b) nf.push_back(r.normalized.fterm_form(b, vars));
    j["normalized"] = std::move(nf);
  }
  j["unitary"] = poly_list_json(r.unitary, vars, sigma);
  j["bounds"] = {{"mu", r.mu},   {"nu", r.nu},       {"s", r.s},
                 {"delta", r.delta}, {"gamma", r.gamma}, {"eta", r.eta_defined ? Json(r.eta) : Json(nullptr)}};
  j["eval_norms"] = r.eval_norms;
  j["sigma_min_M"] = std::isfinite(r.sigma_min_M) ? Json(r.sigma_min_M) : Json(nullptr);
  j["max_fterm_eval_norm"] = r.max_fterm_eval_norm;
  j["order_ideal_closed"] = r.order_ideal_closed;
  Json passes = Json::array();
  for (const auto& p : r.passes)
    passes.push_back({{"degree", p.degree},
                      {"iteration", p.iteration},
                      {"singular_values", p.singular_values},
                      {"kernel_dim", p.kernel_dim},
                      {"pivots", p.pivots}});
  j["passes"] = std::move(passes);
  if (r.normalized.size() == r.basis.size()) j["spoly"] = check_json(r.spoly, r.normalized, vars);
  if (r.scaling.applied) j["scaling"] = {{"center", r.scaling.center}, {"half_width", r.scaling.half_width}};
  j["terminal_degree"] = r.terminal_degree;
  j["warnings"] = r.warnings;
  return j;
}

inline Json read_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open '" + path + "'");
  try {
    return Json::parse(in);
  } catch (const Json::exception& e) {
    throw ValidationError(path + ": " + e.what());
  }
}

inline void require(bool ok, const std::string& what) {
  if (!ok) throw ValidationError(what);
}

inline Thresholds thresholds_of(const RunConfig& c) {
  require(c.epsilon.has_value() && c.tau.has_value(), "float mode requires --epsilon and --tau");
  Thresholds th{*c.epsilon, *c.tau};
  th.validate();
  return th;
}

inline void forbid_thresholds(const RunConfig& c) {
  require(!c.epsilon && !c.tau, "exact mode does not take --epsilon/--tau");
}

template <class K>
Json divide_json(const Json& doc, const RunConfig& c) {
  auto G = prebasis_from_json<K>(doc);
  const auto& of = G.order_ideal();
  auto vars = doc.at("vars").get<std::vector<std::string>>();
  auto P = parse_polynomial_list<K>(c.rep, vars);
  require(P.size() == of.num_generators(), "--rep needs one polynomial per generator, separated by ';'");
  DivisionResult<K> d = divide(P, G);
  Json j = header("divide", ScalarTraits<K>::mode_name, G.ordering(), vars);
  Json q = Json::array();
  for (std::size_t b = 0; b < G.size(); ++b)
    q.push_back({{"border", format_fterm(G.border()[b], vars)}, {"quotient", to_string(d.quotients[b], vars, G.ordering())}});
  j["quotients"] = std::move(q);
  Json rem = Json::array();
  for (std::size_t i = 0; i < of.size(); ++i)
    rem.push_back({{"fterm", format_fterm(of[i], vars)}, {"coeff", scalar_json(d.remainder[i])}});
  j["remainder"] = std::move(rem);
  j["normal_remainder"] = to_string(normal_remainder_of(d, of), vars, G.ordering());
  j["steps"] = d.steps;
  j["representation_index"] = representation_index(P, of);
  if constexpr (ScalarTraits<K>::exact) j["identity_holds"] = reconstruct(d, G) == combine(P, of.generators());
  return j;
}

inline Json check_doc(const Json& doc, const RunConfig& c) {
  auto vars = doc.at("vars").get<std::vector<std::string>>();
  auto mode = doc.at("mode").get<std::string>();
  Json j;
  if (mode == "exact") {
    auto G = prebasis_from_json<Rational>(doc);
    auto chk = check_approx_basis(G, c.epsilon.value_or(std::numeric_limits<double>::min()));
    j = header("check", "exact", G.ordering(), vars);
    auto Gc = G.canonical();
    Json res = Json::array();
    bool all_zero = true;
    for (const auto& r : chk.residuals) {
      all_zero = all_zero && r.nr_norm == 0.0;
      res.push_back({{"pair", {r.i + 1, r.j + 1}},
                     {"fterms", {format_fterm(Gc.border()[r.i], vars), format_fterm(Gc.border()[r.j], vars)}},
                     {"nr_norm", r.nr_norm},
                     {"s_norm", r.s_norm}});
    }
    j["pass"] = c.epsilon ? chk.pass : all_zero;
    j["max_residual"] = chk.max_residual;
    j["residuals"] = std::move(res);
  } else if (mode == "float") {
    auto G = prebasis_from_json<double>(doc);
    double eps = c.epsilon ? *c.epsilon : doc.value("epsilon", 0.0);
    require(eps > 0, "check on a float basis needs --epsilon (or an epsilon stored in the file)");
    j = header("check", "float", G.ordering(), vars);
    j["epsilon"] = eps;
    j.update(check_json(check_approx_basis(G, eps), G, vars));
  } else {
    throw ValidationError("unknown mode '" + mode + "' in basis file");
  }
  return j;
}

inline Json run_command(const RunConfig& c) {
  const std::string& cmd = c.command;
  if (cmd == "bm" || cmd == "sbm") {
    forbid_thresholds(c);
    require(!c.points.empty(), "--points is required");
    auto X = load_points<Rational>(c.points);
    auto sigma = TermOrdering::parse(c.order, X.nvars());
    if (cmd == "bm") return bm_json(cmd, bm_border_basis(X, sigma), X.names());
    require(!c.gens.empty(), "--gens is required");
    return bm_json(cmd, subideal_bm(X, sigma, parse_polynomial_list<Rational>(c.gens, X.names())), X.names());
  }
  if (cmd == "avi" || cmd == "savi") {
    auto th = thresholds_of(c);
    require(!c.points.empty(), "--points is required");
    auto X = load_points<double>(c.points);
    auto sigma = TermOrdering::parse(c.order, X.nvars());
    AviOptions opts;
    opts.auto_scale = c.auto_scale;
    opts.normalize_generators = c.normalize_generators;
    if (cmd == "avi") return approx_json(cmd, avi(X, sigma, th, opts), sigma, X.names());
    require(!c.gens.empty(), "--gens is required");
    auto F = parse_polynomial_list<double>(c.gens, X.names());
    return approx_json(cmd, subideal_avi(X, sigma, F, th, opts), sigma, X.names());
  }
  if (cmd == "divide") {
    require(!c.basis.empty() && !c.rep.empty(), "divide needs --basis and --rep");
    Json doc = read_json(c.basis);
    auto mode = doc.at("mode").get<std::string>();
    if (mode == "exact") return divide_json<Rational>(doc, c);
    if (mode == "float") return divide_json<double>(doc, c);
    throw ValidationError("unknown mode '" + mode + "' in basis file");
  }
  if (cmd == "check") {
    require(!c.basis.empty(), "check needs --basis");
    return check_doc(read_json(c.basis), c);
  }
  if (cmd == "allocate") {
    AllocationInput in;
    in.thresholds = thresholds_of(c);
    require(!c.commingled.empty() && !c.test_a.empty() && !c.test_b.empty(),
            "allocate needs --commingled, --test-a and --test-b");
    in.commingled = load_points<double>(c.commingled);
    in.test_a = load_points<double>(c.test_a);
    in.test_b = load_points<double>(c.test_b);
    in.valve_a = c.valve_a;
    in.valve_b = c.valve_b;
    in.production = c.production;
    auto sigma = TermOrdering::parse(c.order, in.commingled.nvars() - 1);
    auto r = allocate(in, sigma);
    Json j = header("allocate", "float", sigma, r.vars);
    j["epsilon"] = in.thresholds.epsilon;
    j["tau"] = in.thresholds.tau;
    for (auto [key, p] : {std::pair{"p_A", &r.p_a}, {"p_B", &r.p_b}, {"f_A", &r.f_a}, {"f_B", &r.f_b},
                          {"q_AB", &r.q_ab}, {"c_A", &r.c_a}, {"c_B", &r.c_b}})
      j[key] = to_string(*p, r.vars, sigma);
    j["residual"] = r.residual;
    j["rms"] = r.rms;
    j["delta"] = r.delta;
    auto fit = [](const ZoneFit& f) {
      return Json{{"mu", f.mu}, {"nu", f.nu}, {"delta", f.delta}, {"residual", f.residual}};
    };
    j["fits"] = {{"A", fit(r.fit_a)}, {"B", fit(r.fit_b)}, {"AB", fit(r.fit_q)}};
    j["warnings"] = r.warnings;
    return j;
  }
  if (cmd == "synth") {
    SyntheticOptions o;
    o.seed = c.seed;
    o.noise = c.noise;
    o.interaction = !c.no_interaction;
    auto d = synthesize(o);
    std::filesystem::create_directories(c.out_dir);
    Json files;
    for (auto [name, X] : {std::pair{"commingled", &d.input.commingled}, {"test_a", &d.input.test_a},
                           {"test_b", &d.input.test_b}}) {
      auto path = (std::filesystem::path(c.out_dir) / (std::string(name) + ".csv")).string();
      std::ofstream out(path);
      if (!out) throw ValidationError("cannot write '" + path + "'");
      write_points(out, *X);
      files[name] = path;
    }
    auto sigma = TermOrdering::degrevlex(3);
    Json j{{"schema", kSchema}, {"command", "synth"}, {"seed", c.seed}, {"noise", c.noise}, {"files", files}};
    j["truth"] = {{"vars", d.truth.vars},
                  {"p_A", to_string(d.truth.p_a, d.truth.vars, sigma)},
                  {"p_B", to_string(d.truth.p_b, d.truth.vars, sigma)},
                  {"f_A", to_string(d.truth.f_a, d.truth.vars, sigma)},
                  {"f_B", to_string(d.truth.f_b, d.truth.vars, sigma)}};
    return j;
  }
  throw ValidationError("unknown command '" + cmd + "'");
}

}  // namespace detail

/// Runs one subcommand; writes the JSON document to `out` (or c.output).
inline int run(const RunConfig& c, std::ostream& out, std::ostream& err) {
  auto fail = [&](ExitCode code, const char* kind, const std::string& msg) {
    err << "error: " << msg << "\n";
    out << Json{{"schema", kSchema}, {"command", c.command}, {"error", {{"kind", kind}, {"message", msg}}}}.dump(2)
        << "\n";
    return static_cast<int>(code);
  };
  try {
    Json j = detail::run_command(c);
    if (c.output.empty()) {
      out << j.dump(2) << "\n";
    } else {
      std::ofstream f(c.output);
      if (!f) throw ValidationError("cannot write '" + c.output + "'");
      f << j.dump(2) << "\n";
    }
    return 0;
  } catch (const ValidationError& e) {
    return fail(ExitCode::Validation, "validation", e.what());
  } catch (const Json::exception& e) {
    return fail(ExitCode::Validation, "validation", e.what());
  } catch (const NumericError& e) {
    return fail(ExitCode::Numeric, "numeric", e.what());
  } catch (const std::exception& e) {
    return fail(ExitCode::Internal, "internal", e.what());
  }
}

}  // namespace subideal
