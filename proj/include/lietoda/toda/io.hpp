#pragma once

// JSON problem documents and CSV output for Toda solutions.

#include <charconv>
#include <fstream>
#include <set>
#include <sstream>
#include <string>

#include <json.hpp>

#include "../errors.hpp"
#include "../sl2.hpp"
#include "problem.hpp"
#include "solver.hpp"

namespace lietoda {

using Json = nlohmann::ordered_json;

/// 17 significant digits with '.' as separator, independent of the locale.
inline std::string format_double(double v) {
  char buf[64];
  const auto r = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 17);
  return std::string(buf, r.ptr);
}

namespace detail {

inline void require_keys(const Json& j, std::initializer_list<const char*> allowed, const std::string& where) {
  if (!j.is_object()) throw InputError(where + " must be an object");
  std::set<std::string> ok(allowed.begin(), allowed.end());
  for (const auto& [k, v] : j.items())
    if (!ok.count(k)) throw InputError("unknown key '" + k + "' in " + where);
}

inline double get_number(const Json& j, const char* key, const std::string& where) {
  if (!j.contains(key) || !j.at(key).is_number()) throw InputError(where + "." + key + " must be a number");
  return j.at(key).get<double>();
}

inline int get_int(const Json& j, const char* key, const std::string& where) {
  if (!j.contains(key) || !j.at(key).is_number_integer()) throw InputError(where + "." + key + " must be an integer");
  return j.at(key).get<int>();
}

inline std::vector<double> get_vector(const Json& j, const char* key, const std::string& where) {
  if (!j.contains(key) || !j.at(key).is_array()) throw InputError(where + "." + key + " must be an array of numbers");
  std::vector<double> v;
  for (const auto& x : j.at(key)) {
    if (!x.is_number()) throw InputError(where + "." + key + " must be an array of numbers");
    v.push_back(x.get<double>());
  }
  return v;
}

inline std::pair<double, double> get_range(const Json& j, const char* key, const std::string& where) {
  const auto v = get_vector(j, key, where);
  if (v.size() != 2) throw InputError(where + "." + key + " must have two entries");
  return {v[0], v[1]};
}

inline RootSubset get_subset(const Json& j, int rank, const std::string& where) {
  if (!j.contains("subset") || !j.at("subset").is_array()) throw InputError(where + ".subset must be an array of root names");
  std::string list;
  for (const auto& x : j.at("subset")) {
    if (!x.is_string()) throw InputError(where + ".subset must be an array of root names");
    list += (list.empty() ? "" : ",") + x.get<std::string>();
  }
  return parse_subset(list, rank);
}

} // namespace detail

inline SimpleType parse_algebra(const Json& j) {
  if (j.is_string()) return SimpleType::parse(j.get<std::string>());
  detail::require_keys(j, {"family", "rank"}, "algebra");
  if (!j.contains("family") || !j.at("family").is_string()) throw InputError("algebra.family must be a string");
  return SimpleType::parse(j.at("family").get<std::string>() + std::to_string(detail::get_int(j, "rank", "algebra")));
}

inline Domain parse_domain(const Json& j) {
  if (!j.is_object() || !j.contains("kind") || !j.at("kind").is_string()) throw InputError("domain.kind must be a string");
  const std::string kind = j.at("kind").get<std::string>();
  if (kind == "rectangle") {
    detail::require_keys(j, {"kind", "x", "y", "nx", "ny"}, "domain");
    const auto [x0, x1] = detail::get_range(j, "x", "domain");
    const auto [y0, y1] = detail::get_range(j, "y", "domain");
    return Rectangle{x0, x1, y0, y1, detail::get_int(j, "nx", "domain"), detail::get_int(j, "ny", "domain")};
  }
  if (kind == "annulus" || kind == "radial") {
    if (kind == "annulus")
      detail::require_keys(j, {"kind", "r", "s", "ns", "ntheta"}, "domain");
    else
      detail::require_keys(j, {"kind", "r", "s", "ns"}, "domain");
    if (j.contains("r") == j.contains("s")) throw InputError("domain needs exactly one of r or s ranges");
    double s0, s1;
    if (j.contains("r")) {
      const auto [r0, r1] = detail::get_range(j, "r", "domain");
      if (!(r0 > 0) || !(r1 > r0)) throw InputError("domain.r needs 0 < r_min < r_max");
      s0 = std::log(r0);
      s1 = std::log(r1);
    } else {
      std::tie(s0, s1) = detail::get_range(j, "s", "domain");
    }
    const int ns = detail::get_int(j, "ns", "domain");
    if (kind == "radial") return Radial{s0, s1, ns};
    return LogPolarAnnulus{s0, s1, ns, detail::get_int(j, "ntheta", "domain")};
  }
  throw InputError("unknown domain kind '" + kind + "'");
}

inline HiggsCoefficient parse_higgs(const Json& j, const RootSystem& rs) {
  if (j.is_string()) {
    if (j.get<std::string>() == "homogeneous") return HiggsCoefficient::homogeneous(rs);
    throw InputError("unknown higgs preset '" + j.get<std::string>() + "'");
  }
  if (!j.is_array()) throw InputError("higgs must be an array or \"homogeneous\"");
  HiggsCoefficient h;
  h.f.assign(rs.rank() + 1, LaurentSeries{});
  std::vector<bool> seen(rs.rank() + 1, false);
  for (const auto& entry : j) {
    detail::require_keys(entry, {"root", "terms"}, "higgs entry");
    if (!entry.contains("root") || !entry.at("root").is_string()) throw InputError("higgs entry needs a root name");
    const int a = parse_pi_q_token(entry.at("root").get<std::string>(), rs.rank());
    if (seen[a]) throw InputError("duplicate higgs entry for " + pi_q_label(a, rs.rank()));
    seen[a] = true;
    if (!entry.contains("terms") || !entry.at("terms").is_array()) throw InputError("higgs entry needs a terms array");
    for (const auto& t : entry.at("terms")) {
      detail::require_keys(t, {"k", "re", "im"}, "higgs term");
      const double re = t.contains("re") ? detail::get_number(t, "re", "higgs term") : 0.0;
      const double im = t.contains("im") ? detail::get_number(t, "im", "higgs term") : 0.0;
      if (!std::isfinite(re) || !std::isfinite(im)) throw InputError("higgs coefficients must be finite");
      h.f[a].terms.push_back({detail::get_int(t, "k", "higgs term"), {re, im}});
    }
  }
  h.validate(rs);
  return h;
}

inline Boundary parse_boundary(const Json& j, const RootSystem& rs) {
  if (!j.is_object() || !j.contains("kind") || !j.at("kind").is_string()) throw InputError("boundary.kind must be a string");
  const std::string kind = j.at("kind").get<std::string>();
  Boundary b;
  if (kind == "constant") {
    detail::require_keys(j, {"kind", "values"}, "boundary");
    b.kind = Boundary::Kind::Constant;
    b.values = detail::get_vector(j, "values", "boundary");
  } else if (kind == "canonical_plus") {
    detail::require_keys(j, {"kind", "values", "delta"}, "boundary");
    b.kind = Boundary::Kind::CanonicalPlus;
    if (j.contains("values") && j.contains("delta")) throw InputError("boundary needs one of values or delta");
    b.values = j.contains("delta") || j.contains("values")
                   ? detail::get_vector(j, j.contains("delta") ? "delta" : "values", "boundary")
                   : std::vector<double>(rs.rank(), 0.0);
  } else if (kind == "ends") {
    detail::require_keys(j, {"kind", "inner", "outer"}, "boundary");
    b.kind = Boundary::Kind::Ends;
    b.inner = detail::get_vector(j, "inner", "boundary");
    b.outer = detail::get_vector(j, "outer", "boundary");
  } else if (kind == "model") {
    detail::require_keys(j, {"kind", "subset", "beta", "m"}, "boundary");
    b.kind = Boundary::Kind::Model;
    b.model.subset = detail::get_subset(j, rs.rank(), "boundary");
    b.model.beta = detail::get_vector(j, "beta", "boundary");
    if (!j.contains("m") || !j.at("m").is_array()) throw InputError("boundary.m must be an array of integers");
    for (const auto& x : j.at("m")) {
      if (!x.is_number_integer()) throw InputError("boundary.m must be an array of integers");
      b.model.m.push_back(x.get<int>());
    }
  } else {
    throw InputError("unknown boundary kind '" + kind + "'");
  }
  return b;
}

inline SolverOptions parse_solver(const Json& j) {
  SolverOptions o;
  detail::require_keys(j, {"tol", "max_iter", "init", "cg_tol", "cg_max_iter"}, "solver");
  if (j.contains("tol")) o.tol = detail::get_number(j, "tol", "solver");
  if (j.contains("max_iter")) o.max_iter = detail::get_int(j, "max_iter", "solver");
  if (j.contains("cg_tol")) o.cg_tol = detail::get_number(j, "cg_tol", "solver");
  if (j.contains("cg_max_iter")) o.cg_max_iter = detail::get_int(j, "cg_max_iter", "solver");
  if (j.contains("init")) {
    if (!j.at("init").is_string()) throw InputError("solver.init must be a string");
    o.init = j.at("init").get<std::string>();
  }
  return o;
}

inline TodaProblem parse_problem(const Json& j) {
  detail::require_keys(j, {"algebra", "domain", "higgs", "boundary", "scale_t", "solver"}, "problem");
  for (const char* key : {"algebra", "domain", "higgs", "boundary"})
    if (!j.contains(key)) throw InputError(std::string("problem needs '") + key + "'");
  RootSystem rs(parse_algebra(j.at("algebra")));
  TodaProblem p{rs, parse_domain(j.at("domain")), parse_higgs(j.at("higgs"), rs), parse_boundary(j.at("boundary"), rs), 1.0, {}};
  if (j.contains("scale_t")) p.t = detail::get_number(j, "scale_t", "problem");
  if (j.contains("solver")) p.solver = parse_solver(j.at("solver"));
  return p;
}

inline TodaProblem load_problem(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open problem file '" + path + "'");
  Json j;
  try {
    j = Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw InputError(std::string("malformed problem JSON: ") + e.what());
  }
  return parse_problem(j);
}

inline Json to_json(const std::vector<double>& v) {
  Json a = Json::array();
  for (double x : v) a.push_back(x);
  return a;
}

inline Json to_json(const Eigen::VectorXd& v) { return to_json(std::vector<double>(v.data(), v.data() + v.size())); }

inline Json to_json(const Domain& d) {
  if (const auto* r = std::get_if<Rectangle>(&d))
    return {{"kind", "rectangle"}, {"x", {r->x0, r->x1}}, {"y", {r->y0, r->y1}}, {"nx", r->nx}, {"ny", r->ny}};
  if (const auto* a = std::get_if<LogPolarAnnulus>(&d))
    return {{"kind", "annulus"}, {"s", {a->s0, a->s1}}, {"ns", a->ns}, {"ntheta", a->ntheta}};
  const auto& r = std::get<Radial>(d);
  return {{"kind", "radial"}, {"s", {r.s0, r.s1}}, {"ns", r.ns}};
}

inline Json to_json(const TodaProblem& p) {
  Json higgs = Json::array();
  for (int a = 0; a <= p.rs.rank(); ++a) {
    Json terms = Json::array();
    for (const auto& t : p.higgs.f[a].terms) terms.push_back({{"k", t.k}, {"re", t.c.real()}, {"im", t.c.imag()}});
    higgs.push_back({{"root", pi_q_label(a, p.rs.rank())}, {"terms", terms}});
  }
  Json b = {{"kind", to_string(p.boundary.kind)}};
  switch (p.boundary.kind) {
    case Boundary::Kind::Constant: b["values"] = to_json(p.boundary.values); break;
    case Boundary::Kind::CanonicalPlus: b["delta"] = to_json(p.boundary.values); break;
    case Boundary::Kind::Ends:
      b["inner"] = to_json(p.boundary.inner);
      b["outer"] = to_json(p.boundary.outer);
      break;
    case Boundary::Kind::Model: {
      Json s = Json::array();
      for (int i : p.boundary.model.subset) s.push_back(pi_q_label(i, p.rs.rank()));
      b["subset"] = s;
      b["beta"] = to_json(p.boundary.model.beta);
      b["m"] = p.boundary.model.m;
      break;
    }
  }
  return {{"algebra", {{"family", std::string(1, p.rs.type().name()[0])}, {"rank", p.rs.rank()}}},
          {"domain", to_json(p.domain)},
          {"higgs", higgs},
          {"boundary", b},
          {"scale_t", p.t},
          {"solver",
           {{"tol", p.solver.tol},
            {"max_iter", p.solver.max_iter},
            {"init", p.solver.init},
            {"cg_tol", p.solver.cg_tol},
            {"cg_max_iter", p.solver.cg_max_iter}}}};
}

/// Node coordinates (x,y or s,theta or s) followed by the l components alpha_i(xi).
inline std::string solution_csv(const TodaSolution& sol) {
  const Grid g(sol.domain);
  std::string out;
  if (g.kind() == "rectangle")
    out = "x,y";
  else if (g.kind() == "annulus")
    out = "s,theta";
  else
    out = "s";
  for (Eigen::Index i = 0; i < sol.xi.rows(); ++i) out += ",xi_" + std::to_string(i + 1);
  out += '\n';
  for (int k = 0; k < g.nodes(); ++k) {
    out += format_double(g.c1(k));
    if (g.has_second_axis()) out += "," + format_double(g.c2(k));
    for (Eigen::Index i = 0; i < sol.xi.rows(); ++i) out += "," + format_double(sol.xi(i, k));
    out += '\n';
  }
  return out;
}

} // namespace lietoda
