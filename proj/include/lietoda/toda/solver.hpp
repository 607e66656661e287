#pragma once

// Damped Newton for the discrete Toda system with Dirichlet data. Each step solves
// -J_F delta = F, F = omega G^{-1} E, by diagonally preconditioned conjugate gradients; -J_F is
// symmetric positive definite. Steps are halved (Armijo on |F|^2) down to 2^-20.

#include <Eigen/Dense>

#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "../errors.hpp"
#include "problem.hpp"

namespace lietoda {

struct TodaSolution {
  Field xi;
  std::vector<double> residual_history;  // sup |E| before each Newton step
  double residual = std::numeric_limits<double>::infinity();
  int iterations = 0;
  bool converged = false;
  std::string message;
  Domain domain;
};

namespace detail {

struct CGResult {
  Eigen::MatrixXd x;
  int iterations = 0;
  bool converged = false;
};

template <class Apply>
CGResult pcg(const Apply& apply, const Eigen::MatrixXd& b, const Eigen::MatrixXd& diag, double rel_tol, int max_iter) {
  CGResult out;
  out.x = Eigen::MatrixXd::Zero(b.rows(), b.cols());
  const double bnorm = b.norm();
  if (bnorm == 0) {
    out.converged = true;
    return out;
  }
  Eigen::MatrixXd r = b;
  Eigen::MatrixXd z = r.cwiseQuotient(diag);
  Eigen::MatrixXd p = z;
  double rz = (r.array() * z.array()).sum();
  for (int it = 1; it <= max_iter; ++it) {
    const Eigen::MatrixXd ap = apply(p);
    const double alpha = rz / (p.array() * ap.array()).sum();
    out.x += alpha * p;
    r -= alpha * ap;
    out.iterations = it;
    if (r.norm() <= rel_tol * bnorm) {
      out.converged = true;
      break;
    }
    z = r.cwiseQuotient(diag);
    const double rz_new = (r.array() * z.array()).sum();
    p = z + (rz_new / rz) * p;
    rz = rz_new;
  }
  return out;
}

inline Eigen::MatrixXd gather(const Field& y, const std::vector<int>& nodes) {
  Eigen::MatrixXd v(y.rows(), nodes.size());
  for (std::size_t c = 0; c < nodes.size(); ++c) v.col(c) = y.col(nodes[c]);
  return v;
}

inline void scatter_add(Field& y, const std::vector<int>& nodes, const Eigen::MatrixXd& v, double scale = 1.0) {
  for (std::size_t c = 0; c < nodes.size(); ++c) y.col(nodes[c]) += scale * v.col(c);
}

} // namespace detail

/// Interior = discrete harmonic extension of the boundary data.
inline Field harmonic_extension(const TodaOperator& op, const Field& boundary, const SolverOptions& opt = {}) {
  const Grid& g = op.grid();
  Field y = boundary;
  int first = 0;
  while (first < g.nodes() && !g.is_boundary(first)) ++first;
  for (int k : op.interior()) y.col(k) = boundary.col(first);
  Eigen::MatrixXd rhs(op.rank(), op.interior().size());
  for (std::size_t c = 0; c < op.interior().size(); ++c) rhs.col(c) = op.laplacian(y, op.interior()[c]);
  const double d = 2 / (g.h1() * g.h1()) + (g.has_second_axis() ? 2 / (g.h2() * g.h2()) : 0.0);
  const Eigen::MatrixXd diag = Eigen::MatrixXd::Constant(rhs.rows(), rhs.cols(), d);
  const auto cg = detail::pcg([&](const Eigen::MatrixXd& v) { return op.minus_laplacian(v); }, rhs, diag, opt.cg_tol,
                              opt.cg_max_iter);
  detail::scatter_add(y, op.interior(), cg.x);
  return y;
}

inline TodaSolution solve_dirichlet(const TodaProblem& p) {
  const TodaOperator op(p);
  const Grid& g = op.grid();
  const SolverOptions& opt = p.solver;
  if (!(opt.tol > 0) || opt.max_iter < 1) throw InputError("solver needs tol > 0 and max_iter >= 1");
  const Field bd = boundary_field(p, g);

  TodaSolution sol;
  sol.domain = p.domain;
  Field y;
  if (opt.init == "harmonic") {
    y = harmonic_extension(op, bd, opt);
  } else if (opt.init == "zero") {
    y = bd;
  } else {
    throw InputError("unknown init '" + opt.init + "'");
  }

  const auto& interior = op.interior();
  const Eigen::MatrixXd& ginv = op.dual_gram();
  const double lap_diag = 2 / (g.h1() * g.h1()) + (g.has_second_axis() ? 2 / (g.h2() * g.h2()) : 0.0);

  Field best = y;
  double best_res = std::numeric_limits<double>::infinity();
  for (int iter = 1; iter <= opt.max_iter; ++iter) {
    const double res = sup_norm(op.residual(y));
    sol.residual_history.push_back(res);
    sol.iterations = iter;
    if (res < best_res) {
      best_res = res;
      best = y;
    }
    if (res <= opt.tol) {
      sol.converged = true;
      break;
    }
    if (iter == opt.max_iter) {
      sol.message = "no convergence within max_iter";
      break;
    }

    const Eigen::MatrixXd f = op.scaled_residual(y);
    const auto blocks = op.reaction_blocks(y);
    Eigen::MatrixXd diag(op.rank(), interior.size());
    for (std::size_t c = 0; c < interior.size(); ++c)
      diag.col(c) = ginv.diagonal() * lap_diag + blocks[c].diagonal();
    auto apply = [&](const Eigen::MatrixXd& v) {
      Eigen::MatrixXd out = ginv * op.minus_laplacian(v);
      for (std::size_t c = 0; c < interior.size(); ++c) out.col(c) += blocks[c] * v.col(c);
      return out;
    };
    const auto cg = detail::pcg(apply, f, diag, opt.cg_tol, opt.cg_max_iter);

    const double f2 = f.squaredNorm();
    double lambda = 1;
    bool accepted = false;
    while (lambda >= std::ldexp(1.0, -20)) {
      Field trial = y;
      detail::scatter_add(trial, interior, cg.x, lambda);
      if (trial.allFinite()) {
        const Eigen::MatrixXd ft = op.scaled_residual(trial);
        if (ft.allFinite() && ft.squaredNorm() <= (1 - 2e-4 * lambda) * f2) {
          y = std::move(trial);
          accepted = true;
          break;
        }
      }
      lambda /= 2;
    }
    if (!accepted) {
      sol.message = "line search reached the damping floor";
      break;
    }
  }
  sol.xi = sol.converged ? y : best;
  sol.residual = sol.converged ? sol.residual_history.back() : best_res;
  return sol;
}

/// S^1-invariant problems on an annulus (or already radial) reduced to a two-point problem in s.
inline TodaProblem radial_reduction(const TodaProblem& p) {
  if (!p.higgs.is_monomial()) throw InputError("radial reduction needs monomial Higgs coefficients");
  TodaProblem r = p;
  if (const auto* a = std::get_if<LogPolarAnnulus>(&p.domain)) {
    r.domain = Radial{a->s0, a->s1, a->ns};
  } else if (!std::holds_alternative<Radial>(p.domain)) {
    throw InputError("radial reduction needs an annulus or radial domain");
  }
  return r;
}

inline TodaSolution solve_radial(const TodaProblem& p) { return solve_dirichlet(radial_reduction(p)); }

/// Radial profile repeated around the circle of an annulus grid.
inline Field extend_radial(const Field& radial, const Grid& annulus) {
  if (radial.cols() != annulus.n1()) throw InputError("radial profile does not match the annulus");
  Field y(radial.rows(), annulus.nodes());
  for (int k = 0; k < annulus.nodes(); ++k) y.col(k) = radial.col(annulus.i_of(k));
  return y;
}

} // namespace lietoda
