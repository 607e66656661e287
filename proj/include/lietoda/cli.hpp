#pragma once

// Command-line front end. Every command prints one JSON report
//   {"command", "status", "config", "result"}
// (or CSV with --format csv where a table exists). Exit codes: 0 ok, 1 verification failed,
// 2 input error, 3 numeric error.

#include <CLI11.hpp>

#include <chrono>
#include <charconv>
#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "chevalley.hpp"
#include "errors.hpp"
#include "rootsys.hpp"
#include "sl2.hpp"
#include "split.hpp"
#include "toda.hpp"
#include "toda/io.hpp"

namespace lietoda::cli {

enum class Status { Ok = 0, VerificationFailed = 1, InputError = 2, NumericError = 3 };

inline const char* status_name(Status s) {
  switch (s) {
    case Status::Ok: return "ok";
    case Status::VerificationFailed: return "verification-failed";
    case Status::InputError: return "input-error";
    case Status::NumericError: return "numeric-error";
  }
  return "";
}

struct Globals {
  std::uint64_t seed = 0;
  std::optional<double> tol;
  std::optional<int> max_iter;
  std::string output;
  std::string format = "json";
  bool timing = false;
};

struct Outcome {
  Status status = Status::Ok;
  Json config = Json::object();
  Json result = Json::object();
  std::optional<std::string> csv;  // table for --format csv
};

inline std::vector<double> parse_doubles(const std::string& text, const char* what) {
  std::vector<double> v;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t comma = text.find(',', pos);
    const std::string tok = text.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
    double x = 0;
    const auto r = std::from_chars(tok.data(), tok.data() + tok.size(), x);
    if (tok.empty() || r.ec != std::errc() || r.ptr != tok.data() + tok.size() || !std::isfinite(x))
      throw InputError(std::string("bad number list for ") + what + ": '" + text + "'");
    v.push_back(x);
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  return v;
}

inline std::vector<int> parse_ints(const std::string& text, const char* what) {
  std::vector<int> v;
  for (double x : parse_doubles(text, what)) {
    if (x != std::floor(x) || std::abs(x) > 1e9) throw InputError(std::string(what) + " must be integers");
    v.push_back(static_cast<int>(x));
  }
  return v;
}

inline Json rational_json(const Rational& q) { return to_string(q); }

inline Json rational_json(const RationalVector& v) {
  Json a = Json::array();
  for (const auto& q : v) a.push_back(to_string(q));
  return a;
}

inline Json rational_json(const RationalMatrix& m) {
  Json a = Json::array();
  for (const auto& row : m) a.push_back(rational_json(row));
  return a;
}

inline Json subset_json(const RootSubset& s, int rank) {
  Json a = Json::array();
  for (int i : s) a.push_back(pi_q_label(i, rank));
  return a;
}

// ---------------------------------------------------------------------------------------------

inline void rootsys_info(Outcome& o, const std::string& type) {
  o.config = {{"type", type}};
  const RootSystem rs(SimpleType::parse(type));
  Json pos = Json::array();
  for (const auto& r : rs.positive_roots()) pos.push_back(r);
  Json pi_q = Json::array();
  for (const auto& r : rs.weight_one_eigenroots()) pi_q.push_back(r);
  o.result = {{"type", rs.type().name()},
              {"rank", rs.rank()},
              {"dim", rs.dim()},
              {"h", rs.h()},
              {"cartan_matrix", rs.cartan()},
              {"positive_roots", pos},
              {"num_positive_roots", rs.positive_roots().size()},
              {"highest_root", rs.highest_root()},
              {"psi", rs.psi()},
              {"weight_one_eigenroots", pi_q},
              {"killing_gram", rational_json(rs.killing_gram())},
              {"root_gram", rational_json(rs.root_gram())}};
}

inline void chevalley_verify(Outcome& o, const std::string& type, int samples, const Globals& g) {
  o.config = {{"type", type}, {"samples", samples}, {"seed", g.seed}};
  if (samples < 1) throw InputError("--samples must be positive");
  const LieAlgebra lie(SimpleType::parse(type));
  const auto rep = verify_lie_algebra(lie, g.seed, samples);
  Json checks = Json::array();
  for (const auto& c : rep.checks) checks.push_back({{"name", c.name}, {"passed", c.passed}, {"detail", c.detail}});
  o.result = {{"type", rep.type}, {"dim", lie.dim()}, {"rational_constants", lie.has_rational_constants()}, {"checks", checks}};
  o.status = rep.all_passed() ? Status::Ok : Status::VerificationFailed;
}

inline void split_verify(Outcome& o, const std::string& type, int samples, const Globals& g) {
  const double tol = g.tol.value_or(1e-8);
  o.config = {{"type", type}, {"samples", samples}, {"seed", g.seed}, {"tol", tol}};
  if (samples < 1) throw InputError("--samples must be positive");
  const LieAlgebra lie(SimpleType::parse(type));
  const RootSystem& rs = lie.root_system();
  const SplitAutomorphism sigma(lie);
  const CartanInvolution rho(lie);
  const auto dec = eigenspace_decomposition(sigma);
  Json dims = Json::array();
  for (const auto& p : dec.pieces) dims.push_back(p.size());

  std::mt19937_64 rng(g.seed);
  int cyc_rs = 0, cyc_split = 0, non_rs = 0, disagreements = 0, indeterminate = 0;
  double bracket = 0;
  for (int k = 0; k < samples; ++k) {
    const CyclicElement u = random_cyclic(rs, rng);
    const auto reg = regularity(lie, u.realize(lie), tol);
    const auto sp = verify_split(lie, sigma, u, tol);
    cyc_rs += reg.regular_semisimple;
    cyc_split += sp.holds;
    disagreements += !reg.regular_semisimple;
    indeterminate += reg.indeterminate || sp.indeterminate;
    bracket = std::max(bracket, bracket_rho_closed_form(lie, rho, u).residual);
  }
  for (int k = 0; k < samples; ++k) {
    const CyclicElement u = random_noncyclic(rs, rng);
    const auto reg = regularity(lie, u.realize(lie), tol);
    non_rs += reg.regular_semisimple;
    disagreements += reg.regular_semisimple;
    indeterminate += reg.indeterminate;
  }
  const bool g1_ok = static_cast<int>(dec.pieces[1].size()) == rs.rank() + 1;
  o.result = {{"type", rs.type().name()},
              {"order", sigma.order()},
              {"eigenspace_dims", dims},
              {"grading_compatible", dec.grading_compatible},
              {"dim_g1", dec.pieces[1].size()},
              {"cyclic", {{"samples", samples}, {"regular_semisimple", cyc_rs}, {"split", cyc_split}}},
              {"noncyclic", {{"samples", samples}, {"regular_semisimple", non_rs}}},
              {"disagreements", disagreements},
              {"indeterminate", indeterminate},
              {"bracket_rho_max_residual", bracket}};
  const bool ok = dec.grading_compatible && g1_ok && cyc_split == samples && disagreements == 0 && indeterminate == 0 &&
                  bracket <= 1e-12;
  o.status = ok ? Status::Ok : Status::VerificationFailed;
}

inline void split_region(Outcome& o, const std::string& type, int ord, const std::optional<std::string>& beta_text) {
  o.config = {{"type", type}, {"ord", ord}};
  const RootSystem rs(SimpleType::parse(type));
  const auto region = classification_region(rs, ord);
  o.result = {{"type", rs.type().name()},
              {"h", rs.h()},
              {"c_theta", region.c_theta()},
              {"in_positive_part", region.in_positive_part()},
              {"trivial", region.is_trivial()}};
  if (beta_text) {
    const auto beta = parse_doubles(*beta_text, "--beta");
    if (static_cast<int>(beta.size()) != rs.rank()) throw InputError("--beta needs rank components");
    o.config["beta"] = beta;
    o.result["admissible"] = region.contains(beta);
  }
}

inline Json triple_json(const LieAlgebra& lie, const SL2Triple& t, const SL2Certificate& c) {
  const int l = lie.rank();
  Json eig = Json::array();
  for (Eigen::Index i = 0; i < c.span_eigenvalues.size(); ++i) eig.push_back(c.span_eigenvalues[i]);
  return {{"subset", subset_json(t.u_S.subset, l)},
          {"u_S_coefficients", rational_json(t.u_S.coeffs)},
          {"u_S_sharp", rational_json(t.u_S.sharp)},
          {"u_S_eps", rational_json(t.u_S.eps)},
          {"beta_squared", rational_json(t.beta_sq)},
          {"beta", t.beta},
          {"residuals",
           {{"v_rho_v", c.bracket_v_vbar}, {"u_v", c.bracket_u_v}, {"u_rho_v", c.bracket_u_vbar}}},
          {"span_eigenvalues", eig},
          {"all_beta_squared_positive", c.all_positive}};
}

inline bool certificate_ok(const SL2Certificate& c) {
  if (c.max_residual() > 1e-12 || !c.all_positive || c.span_eigenvalues.size() != 3) return false;
  return std::abs(c.span_eigenvalues[0] + 1) <= 1e-10 && std::abs(c.span_eigenvalues[1]) <= 1e-10 &&
         std::abs(c.span_eigenvalues[2] - 1) <= 1e-10;
}

inline void sl2(Outcome& o, const std::string& type, const std::optional<std::string>& subset, bool all) {
  o.config = {{"type", type}, {"subset", subset ? Json(*subset) : Json(nullptr)}, {"all", all}};
  if (subset.has_value() == all) throw InputError("give exactly one of --subset or --all");
  const LieAlgebra lie(SimpleType::parse(type));
  std::vector<RootSubset> subsets = all ? all_proper_subsets(lie.rank()) : std::vector<RootSubset>{parse_subset(*subset, lie.rank())};
  Json triples = Json::array();
  bool ok = true;
  for (const auto& s : subsets) {
    const SL2Triple t = compute_v_S(lie, s);
    const SL2Certificate c = certify(lie, t);
    ok = ok && certificate_ok(c);
    triples.push_back(triple_json(lie, t, c));
  }
  o.result = all ? Json{{"type", lie.root_system().type().name()}, {"count", triples.size()}, {"triples", triples}}
                 : triples.at(0);
  o.status = ok ? Status::Ok : Status::VerificationFailed;
}

inline void apply_solver_overrides(TodaProblem& p, const Globals& g) {
  if (g.tol) p.solver.tol = *g.tol;
  if (g.max_iter) p.solver.max_iter = *g.max_iter;
}

inline Json solution_json(const TodaProblem& p, const TodaSolution& sol) {
  TodaProblem q = p;
  q.domain = sol.domain;
  const double recomputed = sup_norm(toda_residual(q, sol.xi));
  return {{"converged", sol.converged},
          {"iterations", sol.iterations},
          {"residual", sol.residual},
          {"residual_recomputed", recomputed},
          {"residual_history", sol.residual_history},
          {"message", sol.message},
          {"nodes", sol.xi.cols()}};
}

inline void toda_solve(Outcome& o, const std::string& path, const Globals& g) {
  TodaProblem p = load_problem(path);
  apply_solver_overrides(p, g);
  o.config = {{"problem_file", path}, {"problem", to_json(p)}};
  const TodaSolution sol = solve_dirichlet(p);
  o.result = solution_json(p, sol);
  o.csv = solution_csv(sol);
  o.status = sol.converged ? Status::Ok : Status::NumericError;
}

inline void toda_radial(Outcome& o, const std::string& path, bool compare_2d, const Globals& g) {
  TodaProblem p = load_problem(path);
  apply_solver_overrides(p, g);
  o.config = {{"problem_file", path}, {"problem", to_json(p)}, {"compare_2d", compare_2d}};
  const TodaSolution sol = solve_radial(p);
  o.result = solution_json(radial_reduction(p), sol);
  o.csv = solution_csv(sol);
  o.status = sol.converged ? Status::Ok : Status::NumericError;
  if (compare_2d) {
    if (!std::holds_alternative<LogPolarAnnulus>(p.domain)) throw InputError("--compare-2d needs an annulus problem");
    const TodaSolution full = solve_dirichlet(p);
    const double diff = sup_norm(full.xi - extend_radial(sol.xi, Grid(p.domain)));
    o.result["two_dimensional"] = solution_json(p, full);
    o.result["sup_difference"] = diff;
    if (!full.converged) o.status = Status::NumericError;
    else if (o.status == Status::Ok && diff > 1e-8) o.status = Status::VerificationFailed;
  }
}

struct ModelArgs {
  std::string subset;
  std::string beta;
  std::string m;
  double t = 1;
};

inline ModelParams model_params(const RootSystem& rs, const ModelArgs& a) {
  ModelParams p;
  p.subset = parse_subset(a.subset, rs.rank());
  p.beta = parse_doubles(a.beta, "--beta");
  p.m = parse_ints(a.m, "--m");
  return p;
}

inline Json model_config(const std::string& type, const ModelArgs& a) {
  return {{"type", type}, {"subset", a.subset}, {"beta", a.beta}, {"m", a.m}, {"t", a.t}};
}

inline void model_verify(Outcome& o, const std::string& type, const ModelArgs& a, double r_min, double r_max,
                            const std::string& sizes_text) {
  o.config = model_config(type, a);
  o.config["r"] = {r_min, r_max};
  o.config["sizes"] = sizes_text;
  const RootSystem rs(SimpleType::parse(type));
  const ModelParams p = model_params(rs, a);
  const auto sizes = parse_ints(sizes_text, "--sizes");
  if (sizes.size() < 2) throw InputError("--sizes needs at least two grids");
  const auto study = model_refinement(rs, p, a.t, r_min, r_max, sizes);

  // |e_phi|^2 at |z| = 0.25 against |z|^{-2 beta(phi)} (-log |z|^{2t})^{-2 phi(u_S)}.
  const ModelMetric mm = model_metric(rs, p, a.t);
  const auto pi_q = rs.weight_one_eigenroots();
  const double s = std::log(0.25);
  const Eigen::VectorXd xi = mm.at(s);
  double norm_defect = 0;
  for (int idx : p.subset) {
    double phi_xi = 0, phi_beta = 0, phi_u = 0;
    for (int i = 0; i < rs.rank(); ++i) {
      phi_xi += pi_q[idx][i] * xi[i];
      phi_beta += pi_q[idx][i] * mm.beta[i];
      phi_u += pi_q[idx][i] * mm.u_eps[i];
    }
    const double direct = std::exp(2 * phi_xi);
    const double formula = std::pow(0.25, -2 * phi_beta) * std::pow(-2 * a.t * s, -2 * phi_u);
    norm_defect = std::max(norm_defect, std::abs(direct - formula) / formula);
  }
  bool ok = true;
  for (double ord : study.orders) ok = ok && ord >= 1.8 && ord <= 2.2;
  o.result = {{"sizes", study.sizes},
              {"residuals", study.residuals},
              {"orders", study.orders},
              {"norm_check_relative_defect", norm_defect}};
  ok = ok && norm_defect <= 1e-12;
  o.status = ok ? Status::Ok : Status::VerificationFailed;
  std::string csv = "n,residual\n";
  for (std::size_t k = 0; k < study.sizes.size(); ++k)
    csv += std::to_string(study.sizes[k]) + "," + format_double(study.residuals[k]) + "\n";
  o.csv = csv;
}

inline void decay(Outcome& o, const std::string& type, const std::string& b_text, const std::string& t_text,
                     const std::optional<std::string>& delta_text, int n, double inner, const Globals& g) {
  const RootSystem rs(SimpleType::parse(type));
  CyclicElement b;
  for (double x : parse_doubles(b_text, "--b")) b.b.push_back(x);
  if (static_cast<int>(b.b.size()) != rs.rank() + 1) throw InputError("--b needs rank+1 coefficients");
  std::vector<double> delta;
  if (delta_text) {
    delta = parse_doubles(*delta_text, "--delta");
  } else {
    for (int i = 0; i < rs.rank(); ++i) delta.push_back(0.3 * to_double(rs.root_gram()[i][0]));
  }
  const auto ts = parse_doubles(t_text, "--t-list");
  SolverOptions solver;
  if (g.tol) solver.tol = *g.tol;
  if (g.max_iter) solver.max_iter = *g.max_iter;
  o.config = {{"type", type}, {"b", b_text}, {"t_list", ts}, {"delta", delta}, {"domain", to_json(Domain(Rectangle{-1, 1, -1, 1, n, n}))},
              {"inner_fraction", inner}, {"tol", solver.tol}, {"max_iter", solver.max_iter}};
  const auto study = decay_study(rs, b, ts, delta, Rectangle{-1, 1, -1, 1, n, n}, inner, solver);
  Json pts = Json::array();
  std::string csv = "t,M,residual,iterations\n";
  bool monotone = true;
  for (std::size_t k = 0; k < study.points.size(); ++k) {
    const auto& pt = study.points[k];
    pts.push_back({{"t", pt.t}, {"M", pt.sup_distance}, {"residual", pt.residual}, {"iterations", pt.iterations}});
    csv += format_double(pt.t) + "," + format_double(pt.sup_distance) + "," + format_double(pt.residual) + "," +
           std::to_string(pt.iterations) + "\n";
    if (k && pt.sup_distance > study.points[k - 1].sup_distance + 1e-9) monotone = false;
  }
  o.result = {{"points", pts}, {"monotone", monotone}};
  bool ok = monotone;
  if (study.fit) {
    o.result["fit"] = {{"slope", study.fit->slope},
                       {"intercept", study.fit->intercept},
                       {"r2", study.fit->r2},
                       {"C1", study.c1()},
                       {"C2", study.c2()}};
    ok = ok && study.fit->slope < 0 && study.fit->r2 > 0.99;
  } else {
    o.result["fit"] = nullptr;
  }
  o.status = ok ? Status::Ok : Status::VerificationFailed;
  o.csv = csv;
}

inline void slope_fit(Outcome& o, const std::optional<std::string>& type, const std::optional<std::string>& problem_path,
                         const ModelArgs& a, const std::string& s_range, int ns, const std::string& window,
                         const std::optional<int>& ord, bool linear, const Globals& g) {
  const auto win = parse_doubles(window, "--window");
  if (win.size() != 2) throw InputError("--window needs two values");
  TodaSolution sol;
  std::optional<RootSystem> rs;
  std::optional<int> m_p = ord;
  std::optional<Eigen::VectorXd> truth;
  if (problem_path) {
    if (type) throw InputError("give either a type with model parameters or --problem");
    TodaProblem p = load_problem(*problem_path);
    apply_solver_overrides(p, g);
    o.config = {{"problem_file", *problem_path}, {"problem", to_json(p)}};
    rs = p.rs;
    sol = std::holds_alternative<Rectangle>(p.domain) ? solve_dirichlet(p) : solve_radial(p);
    if (!sol.converged) throw NumericError("solve did not converge: " + sol.message);
    if (!m_p) m_p = o_order(*rs, p.higgs);
  } else {
    if (!type) throw InputError("slope-fit needs a type with model parameters or --problem");
    rs.emplace(SimpleType::parse(*type));
    o.config = model_config(*type, a);
    const auto range = parse_doubles(s_range, "--s-range");
    if (range.size() != 2) throw InputError("--s-range needs two values");
    o.config["s_range"] = range;
    o.config["ns"] = ns;
    const ModelParams p = model_params(*rs, a);
    sol = sample_model_solution(*rs, p, a.t, range[0], range[1], ns);
    truth = Eigen::Map<const Eigen::VectorXd>(p.beta.data(), rs->rank());
    if (!m_p) m_p = o_order(*rs, completed_model_higgs(*rs, p));
  }
  o.config["window"] = win;
  o.config["fit"] = linear ? "linear" : "log-log";
  o.config["ord"] = ord ? Json(*ord) : Json(nullptr);
  const SlopeFit fit = asymptotic_slope(sol, win[0], win[1], !linear);
  o.result = {{"beta", to_json(fit.beta)}, {"intercept", to_json(fit.intercept)}, {"log_log", to_json(fit.log_log)}, {"nodes", fit.nodes}};
  bool ok = true;
  if (truth) {
    const double err = (fit.beta - *truth).cwiseAbs().maxCoeff();
    o.result["max_error"] = err;
    ok = err <= 0.05;
  }
  if (m_p) {
    const auto region = classification_region(*rs, *m_p);
    o.result["ord"] = *m_p;
    o.result["in_positive_part"] = region.in_positive_part();
    o.result["admissible"] = region.contains(std::vector<double>(fit.beta.data(), fit.beta.data() + fit.beta.size()), 1e-9);
  }
  o.status = ok ? Status::Ok : Status::VerificationFailed;
}

// ---------------------------------------------------------------------------------------------

/// Joins the two-word forms "rootsys info", "chevalley verify", "split verify|region".
inline std::vector<std::string> normalize_args(std::vector<std::string> args) {
  for (std::size_t i = 0; i + 1 < args.size(); ++i) {
    if (!args[i].empty() && args[i][0] == '-') continue;
    const std::string& a = args[i];
    const std::string& b = args[i + 1];
    if ((a == "rootsys" && b == "info") || (a == "chevalley" && b == "verify") ||
        (a == "split" && (b == "verify" || b == "region"))) {
      args[i] = a + "-" + b;
      args.erase(args.begin() + static_cast<long>(i) + 1);
    }
    break;
  }
  return args;
}

inline int run(int argc, const char* const* argv, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
  std::vector<std::string> args(argv + 1, argv + argc);
  args = normalize_args(std::move(args));

  CLI::App app{"Split automorphisms, sl2-triples and Toda harmonic metrics", "lietoda"};
  app.require_subcommand(1);
  app.fallthrough();
  Globals g;
  double tol_value = 0;
  int max_iter_value = 0;
  app.add_option("--seed", g.seed, "seed for randomized suites")->capture_default_str();
  auto* tol_opt = app.add_option("--tol", tol_value, "tolerance (solver residual, rank threshold)");
  auto* iter_opt = app.add_option("--max-iter", max_iter_value, "Newton iteration limit");
  app.add_option("--output", g.output, "write the report to this file");
  app.add_option("--format", g.format, "json or csv")->check(CLI::IsMember({"json", "csv"}))->capture_default_str();
  app.add_flag("--timing", g.timing, "add wall-clock timing to the report");

  std::string type, problem;
  int samples = 0, ord = 0, n = 80, ns = 600;
  std::optional<std::string> beta_text, subset_text, delta_text, type_opt, problem_opt;
  std::optional<int> ord_opt;
  bool all = false, compare = false, linear = false;
  ModelArgs model;
  double r_min = 0.1, r_max = 0.5, inner = 0.5;
  std::string sizes = "64,128,256", b_text, t_list = "1,2,3,4,6,8", s_range = "-7,-1", window = "-6,-4";

  auto* c_info = app.add_subcommand("rootsys-info", "root data as JSON");
  c_info->add_option("type", type, "Lie type, e.g. A2")->required();

  auto* c_chev = app.add_subcommand("chevalley-verify", "exact invariant suite for the normalized basis");
  c_chev->add_option("type", type)->required();
  c_chev->add_option("--samples", samples, "random elements for the adjoint identity")->default_val(100);

  auto* c_split = app.add_subcommand("split-verify", "randomized Kostant splitness suite");
  c_split->add_option("type", type)->required();
  c_split->add_option("--samples", samples, "cyclic and non-cyclic samples each")->default_val(20);

  auto* c_region = app.add_subcommand("split-region", "classification region membership");
  c_region->add_option("type", type)->required();
  c_region->add_option("--ord", ord, "ord_P o(theta)")->required();
  c_region->add_option("--beta", beta_text, "alpha_i(beta), comma separated");

  auto* c_sl2 = app.add_subcommand("sl2", "sl2-triple attached to a subset of Pi^Q");
  c_sl2->add_option("type", type)->required();
  c_sl2->add_option("--subset", subset_text, "e.g. alpha1,-psi");
  c_sl2->add_flag("--all", all, "every nonempty proper subset");

  auto* c_solve = app.add_subcommand("toda-solve", "Dirichlet problem from a JSON document");
  c_solve->add_option("problem", problem)->required()->check(CLI::ExistingFile);

  auto* c_radial = app.add_subcommand("toda-radial", "S^1-invariant problem as a two-point problem in s");
  c_radial->add_option("problem", problem)->required()->check(CLI::ExistingFile);
  c_radial->add_flag("--compare-2d", compare, "also solve on the annulus and compare");

  auto add_model = [&](CLI::App* c, bool required) {
    auto* s = c->add_option("--subset", model.subset, "S");
    auto* b = c->add_option("--beta", model.beta, "alpha_i(beta)");
    auto* m = c->add_option("--m", model.m, "m(phi) for phi in S");
    if (required) {
      s->required();
      b->required();
      m->required();
    }
    c->add_option("--t", model.t, "scale t")->capture_default_str();
  };

  auto* c_model = app.add_subcommand("model-verify", "refinement order of the model metric residual");
  c_model->add_option("type", type)->required();
  add_model(c_model, true);
  c_model->add_option("--r-min", r_min)->capture_default_str();
  c_model->add_option("--r-max", r_max)->capture_default_str();
  c_model->add_option("--sizes", sizes, "grid sizes n (n x n annulus grids)")->capture_default_str();

  auto* c_decay = app.add_subcommand("decay-study", "decay of xi_t - xi_can on [-1,1]^2");
  c_decay->add_option("type", type)->required();
  c_decay->add_option("--b", b_text, "real coefficients b_1..b_l, b_{-psi}")->required();
  c_decay->add_option("--t-list", t_list)->capture_default_str();
  c_decay->add_option("--delta", delta_text, "boundary shift alpha_i(delta); default 0.3 alpha_1^#");
  c_decay->add_option("--n", n, "intervals per side")->capture_default_str();
  c_decay->add_option("--inner", inner, "inner fraction")->capture_default_str();

  auto* c_slope = app.add_subcommand("slope-fit", "asymptotic slope near the puncture");
  c_slope->add_option("type", type_opt);
  c_slope->add_option("--problem", problem_opt)->check(CLI::ExistingFile);
  add_model(c_slope, false);
  c_slope->add_option("--s-range", s_range)->capture_default_str();
  c_slope->add_option("--ns", ns)->capture_default_str();
  c_slope->add_option("--window", window)->capture_default_str();
  c_slope->add_option("--ord", ord_opt, "ord o(theta); default from the Higgs field");
  c_slope->add_flag("--linear", linear, "fit beta s + c only");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      out << app.help();
      return 0;
    }
    err << "lietoda: " << e.what() << "\n";
    return static_cast<int>(Status::InputError);
  }
  if (*tol_opt) g.tol = tol_value;
  if (*iter_opt) g.max_iter = max_iter_value;

  CLI::App* cmd = app.get_subcommands().front();
  const std::string name = cmd->get_name();
  const auto start = std::chrono::steady_clock::now();
  Outcome o;
  try {
    if (g.tol && !(*g.tol > 0)) throw InputError("--tol must be positive");
    if (g.max_iter && *g.max_iter < 1) throw InputError("--max-iter must be positive");
    if (cmd == c_info) rootsys_info(o, type);
    else if (cmd == c_chev) chevalley_verify(o, type, samples, g);
    else if (cmd == c_split) split_verify(o, type, samples, g);
    else if (cmd == c_region) split_region(o, type, ord, beta_text);
    else if (cmd == c_sl2) sl2(o, type, subset_text, all);
    else if (cmd == c_solve) toda_solve(o, problem, g);
    else if (cmd == c_radial) toda_radial(o, problem, compare, g);
    else if (cmd == c_model) model_verify(o, type, model, r_min, r_max, sizes);
    else if (cmd == c_decay) decay(o, type, b_text, t_list, delta_text, n, inner, g);
    else slope_fit(o, type_opt, problem_opt, model, s_range, ns, window, ord_opt, linear, g);
  } catch (const InputError& e) {
    o.status = Status::InputError;
    o.result = {{"error", e.what()}};
    o.csv.reset();
  } catch (const NumericError& e) {
    o.status = Status::NumericError;
    o.result = {{"error", e.what()}};
    o.csv.reset();
  }

  Json globals = {{"seed", g.seed},
                  {"tol", g.tol ? Json(*g.tol) : Json(nullptr)},
                  {"max_iter", g.max_iter ? Json(*g.max_iter) : Json(nullptr)},
                  {"output", g.output},
                  {"format", g.format}};
  Json config = o.config;
  config["global"] = globals;
  Json report = {{"command", name}, {"status", status_name(o.status)}, {"config", config}, {"result", o.result}};
  if (g.timing)
    report["timing_seconds"] = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

  std::string text;
  if (g.format == "csv") {
    if (o.csv) {
      text = *o.csv;
    } else if (o.status == Status::InputError || o.status == Status::NumericError) {
      text = report.dump(2) + "\n";
    } else {
      err << "lietoda: no CSV table for " << name << "\n";
      return static_cast<int>(Status::InputError);
    }
  } else {
    text = report.dump(2) + "\n";
  }
  if (g.output.empty()) {
    out << text;
  } else {
    std::ofstream f(g.output, std::ios::binary);
    if (!f || !(f << text)) {
      err << "lietoda: cannot write '" << g.output << "'\n";
      return static_cast<int>(Status::InputError);
    }
  }
  if (o.status == Status::InputError || o.status == Status::NumericError) {
    const Json& why = o.result.contains("error") ? o.result["error"] : o.result.value("message", Json("solve failed"));
    err << "lietoda: " << why.get<std::string>() << "\n";
  }
  return static_cast<int>(o.status);
}

} // namespace lietoda::cli
