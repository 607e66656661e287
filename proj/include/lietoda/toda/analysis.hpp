#pragma once

// Studies built on the solver: refinement order of the model-metric residual, the exponential decay
// of xi_t - xi_can under boundary perturbations, and slope extraction near a puncture.

#include <Eigen/Dense>

#include <cmath>
#include <limits>
#include <optional>
#include <vector>

#include "../errors.hpp"
#include "problem.hpp"
#include "solver.hpp"

namespace lietoda {

struct RefinementStudy {
  std::vector<int> sizes;
  std::vector<double> residuals;  // sup |E| of the sampled model metric
  std::vector<double> orders;     // log2(r_k / r_{k+1})
};

/// Residual of the closed-form model metric on annuli with n x n nodes (ns = ntheta = n).
inline RefinementStudy model_refinement(const RootSystem& rs, const ModelParams& params, double t, double r_min,
                                        double r_max, const std::vector<int>& sizes) {
  if (!(r_max < 1)) throw InputError("model metric domain must lie in |z| < 1");
  RefinementStudy out;
  out.sizes = sizes;
  for (int n : sizes) {
    TodaProblem p{rs, LogPolarAnnulus::from_radii(r_min, r_max, n, n), model_higgs(rs, params), {}, t, {}};
    p.boundary.kind = Boundary::Kind::Model;
    p.boundary.model = params;
    const TodaOperator op(p);
    const Field y = sample_model(op.grid(), model_metric(rs, params, t));
    out.residuals.push_back(sup_norm(op.residual(y)));
  }
  for (std::size_t k = 0; k + 1 < out.residuals.size(); ++k)
    out.orders.push_back(std::log2(out.residuals[k] / out.residuals[k + 1]) /
                         std::log2(static_cast<double>(sizes[k + 1]) / sizes[k]));
  return out;
}

/// Nodes whose normalized coordinates lie within the central fraction of each non-periodic axis.
inline std::vector<int> inner_nodes(const Grid& g, double fraction) {
  if (!(fraction > 0) || fraction > 1) throw InputError("inner fraction must lie in (0, 1]");
  std::vector<int> out;
  for (int k = 0; k < g.nodes(); ++k) {
    const double u1 = static_cast<double>(g.i_of(k)) / (g.n1() - 1);
    bool inside = std::abs(u1 - 0.5) <= fraction / 2 + 1e-12;
    if (g.has_second_axis() && !g.periodic()) {
      const double u2 = static_cast<double>(g.j_of(k)) / (g.n2() - 1);
      inside = inside && std::abs(u2 - 0.5) <= fraction / 2 + 1e-12;
    }
    if (inside) out.push_back(k);
  }
  return out;
}

struct LinearFit {
  double slope = 0, intercept = 0, r2 = 0;
};

inline LinearFit fit_line(const std::vector<double>& x, const std::vector<double>& y) {
  const std::size_t n = x.size();
  if (n < 2 || y.size() != n) throw InputError("line fit needs at least two points");
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < n; ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0, sxy = 0, syy = 0;
  for (std::size_t i = 0; i < n; ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
    syy += (y[i] - my) * (y[i] - my);
  }
  if (sxx == 0) throw InputError("line fit needs distinct abscissae");
  LinearFit f;
  f.slope = sxy / sxx;
  f.intercept = my - f.slope * mx;
  double ss_res = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const double r = y[i] - (f.intercept + f.slope * x[i]);
    ss_res += r * r;
  }
  f.r2 = syy > 0 ? 1 - ss_res / syy : 1.0;
  return f;
}

struct DecayPoint {
  double t = 0;
  double sup_distance = 0;  // M(t)
  double residual = 0;
  int iterations = 0;
};

struct DecayStudy {
  std::vector<DecayPoint> points;
  std::optional<LinearFit> fit;  // log M(t) = log C1 - C2 t; empty when some M(t) = 0
  double c1() const { return fit ? std::exp(fit->intercept) : 0.0; }
  double c2() const { return fit ? -fit->slope : 0.0; }
};

/// Solves with boundary xi_can + delta for each t and fits log of the inner sup Killing-distance to xi_can.
inline DecayStudy decay_study(const RootSystem& rs, const CyclicElement& b, const std::vector<double>& t_list,
                              const std::vector<double>& delta, const Domain& domain, double inner_fraction,
                              const SolverOptions& solver = {}) {
  if (!is_cyclic(b)) throw InputError("decay study needs a cyclic element");
  if (t_list.empty()) throw InputError("decay study needs at least one t");
  for (std::size_t i = 0; i < t_list.size(); ++i)
    if (!(t_list[i] >= 1) || (i && !(t_list[i] > t_list[i - 1]))) throw InputError("t values must be >= 1 and increasing");
  const Eigen::VectorXd can = canonical_xi(rs, b);
  DecayStudy out;
  for (double t : t_list) {
    TodaProblem p{rs, domain, HiggsCoefficient::constant(b), {Boundary::Kind::CanonicalPlus, delta, {}, {}, {}}, t, solver};
    const TodaSolution sol = solve_dirichlet(p);
    if (!sol.converged) throw NumericError("decay study solve failed at t = " + std::to_string(t) + ": " + sol.message);
    const Grid g(domain);
    double m = 0;
    for (int k : inner_nodes(g, inner_fraction)) m = std::max(m, killing_norm(rs, sol.xi.col(k) - can));
    out.points.push_back({t, m, sol.residual, sol.iterations});
  }
  bool positive = out.points.size() >= 2;
  for (const auto& pt : out.points) positive = positive && pt.sup_distance > 0;
  if (positive) {
    std::vector<double> x, y;
    for (const auto& pt : out.points) {
      x.push_back(pt.t);
      y.push_back(std::log(pt.sup_distance));
    }
    out.fit = fit_line(x, y);
  }
  return out;
}

struct SlopeFit {
  Eigen::VectorXd beta;       // coefficient of s in -xi, per eps coordinate
  Eigen::VectorXd intercept;
  Eigen::VectorXd log_log;    // coefficient of log(-s); zero for the linear fit
  int nodes = 0;
  bool with_log_log = true;
};

/// Fits -xi(s) ~ beta s + c (+ u log(-s)) over the s-rows inside [s_lo, s_hi]; annulus rows are
/// averaged over theta. At least five rows are required.
inline SlopeFit asymptotic_slope(const TodaSolution& sol, double s_lo, double s_hi, bool with_log_log = true) {
  const Grid g(sol.domain);
  if (!g.log_polar()) throw InputError("slope fit needs an annulus or radial solution");
  std::vector<double> s;
  std::vector<Eigen::VectorXd> v;
  for (int i = 0; i < g.n1(); ++i) {
    const double si = g.c1(g.index(i, 0));
    if (si < s_lo - 1e-12 || si > s_hi + 1e-12) continue;
    Eigen::VectorXd mean = Eigen::VectorXd::Zero(sol.xi.rows());
    for (int j = 0; j < g.n2(); ++j) mean += sol.xi.col(g.index(i, j));
    s.push_back(si);
    v.push_back(mean / g.n2());
  }
  if (s.size() < 5) throw InputError("slope window holds fewer than 5 nodes");
  if (with_log_log && s.back() >= 0) throw InputError("log-log slope fit needs s < 0 on the window");
  const int cols = with_log_log ? 3 : 2;
  Eigen::MatrixXd a(s.size(), cols);
  Eigen::MatrixXd rhs(s.size(), sol.xi.rows());
  for (std::size_t r = 0; r < s.size(); ++r) {
    a(r, 0) = s[r];
    a(r, 1) = 1;
    if (with_log_log) a(r, 2) = std::log(-s[r]);
    rhs.row(r) = -v[r].transpose();
  }
  const Eigen::MatrixXd coef = a.colPivHouseholderQr().solve(rhs);
  SlopeFit f;
  f.beta = coef.row(0).transpose();
  f.intercept = coef.row(1).transpose();
  f.log_log = with_log_log ? Eigen::VectorXd(coef.row(2).transpose()) : Eigen::VectorXd::Zero(sol.xi.rows());
  f.nodes = static_cast<int>(s.size());
  f.with_log_log = with_log_log;
  return f;
}

/// The model field completed to a generically cyclic one: outside S, f_{alpha_i} = z^{-1} and
/// f_{-psi} = z^h (coefficients against dz), so that only S carries z-powers.
inline HiggsCoefficient completed_model_higgs(const RootSystem& rs, const ModelParams& params) {
  HiggsCoefficient h = model_higgs(rs, params);
  for (int a = 0; a <= rs.rank(); ++a)
    if (h.f[a].is_zero()) h.f[a] = LaurentSeries::monomial(1.0, a < rs.rank() ? -1 : rs.h());
  return h;
}

/// Closed-form model metric as a radial solution on [s0, s1] (no solve).
inline TodaSolution sample_model_solution(const RootSystem& rs, const ModelParams& params, double t, double s0, double s1,
                                          int ns) {
  TodaSolution sol;
  sol.domain = Radial{s0, s1, ns};
  sol.xi = sample_model(Grid(sol.domain), model_metric(rs, params, t));
  sol.converged = true;
  sol.residual = 0;
  return sol;
}

} // namespace lietoda
