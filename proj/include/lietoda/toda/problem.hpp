#pragma once

// The torus-reduced Hitchin equation for xi : domain -> t_R,
//   Delta xi = 2 t^2 sum_{phi in Pi^Q} |f_phi|^2 e^{2 phi(xi)} phi^#,
// with |e_phi|_h^2 = e^{2 phi(xi)}. Fields are stored in eps coordinates, y_i = alpha_i(xi), as an
// l x nodes matrix; all t_R-valued inputs and outputs (boundary data, beta, xi_can) use the same
// coordinates.

#include <Eigen/Dense>

#include <cmath>
#include <complex>
#include <string>
#include <vector>

#include "../errors.hpp"
#include "../exact.hpp"
#include "../rootsys.hpp"
#include "../sl2.hpp"
#include "../split.hpp"
#include "grid.hpp"
#include "higgs.hpp"

namespace lietoda {

using Field = Eigen::MatrixXd;  // l x nodes

/// Killing norm on t_R in eps coordinates: |x|^2 = y^T G^{-1} y, G = root_gram.
inline double killing_norm(const RootSystem& rs, const Eigen::VectorXd& y) {
  const int l = rs.rank();
  double s = 0;
  for (int i = 0; i < l; ++i)
    for (int j = 0; j < l; ++j) s += y[i] * to_double(rs.dual_gram()[i][j]) * y[j];
  return std::sqrt(std::max(s, 0.0));
}

/// Canonical decoupled metric of a cyclic b: (alpha_i + psi)(xi) = (log psi_i + 2 log|b_{-psi}| - 2 log|b_i|) / 2.
inline Eigen::VectorXd canonical_xi(const RootSystem& rs, const CyclicElement& b) {
  if (static_cast<int>(b.b.size()) != rs.rank() + 1) throw InputError("cyclic element needs rank+1 coefficients");
  if (!is_cyclic(b)) throw InputError("canonical_xi requires a cyclic element");
  const int l = rs.rank();
  Eigen::MatrixXd m = Eigen::MatrixXd::Identity(l, l);
  Eigen::VectorXd rhs(l);
  for (int i = 0; i < l; ++i) {
    for (int j = 0; j < l; ++j) m(i, j) += rs.psi()[j];
    rhs[i] = 0.5 * (std::log(static_cast<double>(rs.psi()[i])) + 2 * std::log(std::abs(b.b[l])) - 2 * std::log(std::abs(b.b[i])));
  }
  return m.partialPivLu().solve(rhs);
}

/// max_i | |b_i|^2 e^{2 alpha_i(xi)} - psi_i |b_{-psi}|^2 e^{-2 psi(xi)} |, relative to the larger side.
inline double decoupling_defect(const RootSystem& rs, const CyclicElement& b, const Eigen::VectorXd& xi) {
  const int l = rs.rank();
  double psi_xi = 0;
  for (int i = 0; i < l; ++i) psi_xi += rs.psi()[i] * xi[i];
  double worst = 0;
  for (int i = 0; i < l; ++i) {
    const double lhs = std::norm(b.b[i]) * std::exp(2 * xi[i]);
    const double rhs = rs.psi()[i] * std::norm(b.b[l]) * std::exp(-2 * psi_xi);
    worst = std::max(worst, std::abs(lhs - rhs) / std::max(lhs, rhs));
  }
  return worst;
}

/// Parameters of the model metric xi = -beta log|z| - u_S log(-log|z|^{2t}).
struct ModelParams {
  RootSubset subset;
  std::vector<double> beta;  // alpha_i(beta)
  std::vector<int> m;        // over subset; must equal beta(phi)
};

/// Closed form of the model metric at s = log|z| < 0, in eps coordinates.
struct ModelMetric {
  Eigen::VectorXd beta;
  Eigen::VectorXd u_eps;  // alpha_i(u_S)
  double t = 1;

  Eigen::VectorXd at(double s) const {
    if (!(s < 0)) throw InputError("model metric needs |z| < 1");
    return -beta * s - u_eps * std::log(-2 * t * s);
  }
};

inline ModelMetric model_metric(const RootSystem& rs, const ModelParams& p, double t) {
  if (!(t > 0)) throw InputError("model metric needs t > 0");
  if (static_cast<int>(p.beta.size()) != rs.rank()) throw InputError("beta needs rank components");
  if (p.m.size() != p.subset.size()) throw InputError("m needs one integer per element of S");
  const ToralSolution u = compute_u_S(rs, p.subset);
  const auto pi_q = rs.weight_one_eigenroots();
  for (std::size_t a = 0; a < p.subset.size(); ++a) {
    double v = 0;
    for (int i = 0; i < rs.rank(); ++i) v += pi_q[p.subset[a]][i] * p.beta[i];
    if (std::abs(v - p.m[a]) > 1e-12)
      throw InputError("beta(phi) must equal m(phi) for " + pi_q_label(p.subset[a], rs.rank()));
  }
  ModelMetric mm;
  mm.beta = Eigen::Map<const Eigen::VectorXd>(p.beta.data(), rs.rank());
  mm.u_eps.resize(rs.rank());
  for (int i = 0; i < rs.rank(); ++i) mm.u_eps[i] = to_double(u.eps[i]);
  mm.t = t;
  return mm;
}

/// theta = sum_{phi in S} beta_phi z^{m_phi - 1} e_phi dz with beta_phi = |2 c_phi|^{1/2}; the factor t
/// is the problem's scale.
inline HiggsCoefficient model_higgs(const RootSystem& rs, const ModelParams& p) {
  const ToralSolution u = compute_u_S(rs, p.subset);
  HiggsCoefficient h;
  h.f.assign(rs.rank() + 1, LaurentSeries{});
  for (std::size_t a = 0; a < p.subset.size(); ++a) {
    const double bsq = to_double(2 * u.coeffs[a]);
    if (!(bsq > 0)) throw NumericError("|beta_phi|^2 <= 0 in model Higgs field");
    h.f[p.subset[a]] = LaurentSeries::monomial(std::sqrt(bsq), p.m[a] - 1);
  }
  return h;
}

struct Boundary {
  enum class Kind { Constant, CanonicalPlus, Ends, Model };
  Kind kind = Kind::Constant;
  std::vector<double> values;  // Constant: the value; CanonicalPlus: delta added to xi_can
  std::vector<double> inner, outer;  // Ends: values at s0 and s1
  ModelParams model;                 // Model: closed-form model metric on the boundary
};

inline std::string to_string(Boundary::Kind k) {
  switch (k) {
    case Boundary::Kind::Constant: return "constant";
    case Boundary::Kind::CanonicalPlus: return "canonical_plus";
    case Boundary::Kind::Ends: return "ends";
    case Boundary::Kind::Model: return "model";
  }
  return "";
}

struct SolverOptions {
  double tol = 1e-10;      // sup-norm of the residual
  int max_iter = 50;
  double cg_tol = 1e-12;   // relative
  int cg_max_iter = 20000;
  std::string init = "harmonic";  // "harmonic" | "zero"
};

struct TodaProblem {
  RootSystem rs;
  Domain domain;
  HiggsCoefficient higgs;
  Boundary boundary;
  double t = 1;
  SolverOptions solver;
};

/// For constant cyclic data the canonical metric of the coefficient values.
inline CyclicElement constant_coefficients(const HiggsCoefficient& h) {
  CyclicElement b;
  for (const auto& s : h.f) {
    if (!s.is_monomial() || s.order().value_or(0) != 0) throw InputError("canonical boundary needs constant Higgs coefficients");
    b.b.push_back(s(1.0));
  }
  return b;
}

/// Precomputed data for residual and Newton evaluations.
class TodaOperator {
public:
  explicit TodaOperator(const TodaProblem& p) : rs_(p.rs), grid_(p.domain), t_(p.t) {
    p.higgs.validate(rs_);
    if (!(p.t >= 0) || !std::isfinite(p.t)) throw InputError("scale t must be finite and >= 0");
    if (grid_.is_radial() && !p.higgs.is_monomial()) throw InputError("radial solve needs monomial Higgs coefficients");
    const int l = rank(), nq = l + 1;
    const auto pi_q = rs_.weight_one_eigenroots();
    n_.resize(l, nq);
    for (int a = 0; a < nq; ++a)
      for (int i = 0; i < l; ++i) n_(i, a) = pi_q[a][i];
    g_.resize(l, l);
    ginv_.resize(l, l);
    for (int i = 0; i < l; ++i)
      for (int j = 0; j < l; ++j) {
        g_(i, j) = to_double(rs_.root_gram()[i][j]);
        ginv_(i, j) = to_double(rs_.dual_gram()[i][j]);
      }
    gn_ = g_ * n_;
    const int nodes = grid_.nodes();
    w_.resize(nq, nodes);
    omega_.resize(nodes);
    for (int k = 0; k < nodes; ++k) {
      const auto z = grid_.z(k);
      omega_[k] = grid_.omega(k);
      for (int a = 0; a < nq; ++a) {
        const auto& f = p.higgs.f[a];
        if (z == 0.0 && f.has_pole_at_zero()) throw InputError("Higgs field has a pole on the grid");
        const double v = std::norm(f(z));
        if (!std::isfinite(v)) throw InputError("Higgs field is not finite on the grid");
        w_(a, k) = 2 * t_ * t_ * v;
      }
    }
    for (int k = 0; k < nodes; ++k)
      if (!grid_.is_boundary(k)) interior_.push_back(k);
  }

  const RootSystem& root_system() const { return rs_; }
  const Grid& grid() const { return grid_; }
  int rank() const { return rs_.rank(); }
  const std::vector<int>& interior() const { return interior_; }
  const Eigen::MatrixXd& root_gram() const { return g_; }
  const Eigen::MatrixXd& dual_gram() const { return ginv_; }
  /// n_phi as columns, Pi^Q order.
  const Eigen::MatrixXd& root_coefficients() const { return n_; }
  /// 2 t^2 |f_phi(z_k)|^2.
  double weight(int a, int k) const { return w_(a, k); }
  double omega(int k) const { return omega_[k]; }

  Eigen::VectorXd laplacian(const Field& y, int k) const {
    const auto st = grid_.stencil(k);
    Eigen::VectorXd v = (y.col(st.e) - 2 * y.col(k) + y.col(st.w)) / (grid_.h1() * grid_.h1());
    if (st.n >= 0) v += (y.col(st.n) - 2 * y.col(k) + y.col(st.s)) / (grid_.h2() * grid_.h2());
    return v;
  }

  /// sum_phi w_phi e^{2 phi(y)} n_phi, the source in sharp coordinates.
  Eigen::VectorXd source_sharp(const Field& y, int k) const {
    Eigen::VectorXd s = Eigen::VectorXd::Zero(rank());
    for (int a = 0; a < n_.cols(); ++a)
      if (w_(a, k) != 0) s += w_(a, k) * std::exp(2 * n_.col(a).dot(y.col(k))) * n_.col(a);
    return s;
  }

  /// E(y) = omega^{-1} L y - G * source; zero on the boundary.
  Field residual(const Field& y) const {
    check_shape(y);
    Field e = Field::Zero(rank(), grid_.nodes());
    for (int k : interior_) e.col(k) = laplacian(y, k) / omega_[k] - g_ * source_sharp(y, k);
    return e;
  }

  /// F = omega G^{-1} E, the symmetric form used by Newton; one column per interior node.
  Eigen::MatrixXd scaled_residual(const Field& y) const {
    Eigen::MatrixXd f(rank(), interior_.size());
    for (std::size_t c = 0; c < interior_.size(); ++c) {
      const int k = interior_[c];
      f.col(c) = ginv_ * laplacian(y, k) - omega_[k] * source_sharp(y, k);
    }
    return f;
  }

  /// Per interior node the l x l block 4 t^2 omega sum |f|^2 e^{2 phi(y)} n n^T of -J_F.
  std::vector<Eigen::MatrixXd> reaction_blocks(const Field& y) const {
    std::vector<Eigen::MatrixXd> b(interior_.size());
    for (std::size_t c = 0; c < interior_.size(); ++c) {
      const int k = interior_[c];
      b[c] = Eigen::MatrixXd::Zero(rank(), rank());
      for (int a = 0; a < n_.cols(); ++a)
        if (w_(a, k) != 0)
          b[c] += 2 * omega_[k] * w_(a, k) * std::exp(2 * n_.col(a).dot(y.col(k))) * n_.col(a) * n_.col(a).transpose();
    }
    return b;
  }

  /// -L on interior vectors (zero Dirichlet data), one column per interior node.
  Eigen::MatrixXd minus_laplacian(const Eigen::MatrixXd& v) const {
    Field full = Field::Zero(rank(), grid_.nodes());
    for (std::size_t c = 0; c < interior_.size(); ++c) full.col(interior_[c]) = v.col(c);
    Eigen::MatrixXd out(rank(), interior_.size());
    for (std::size_t c = 0; c < interior_.size(); ++c) out.col(c) = -laplacian(full, interior_[c]);
    return out;
  }

  /// Dense dE/dy over interior unknowns (node-major, component-minor).
  Eigen::MatrixXd residual_jacobian(const Field& y) const {
    const int l = rank();
    const int n = static_cast<int>(interior_.size()) * l;
    Eigen::MatrixXd j = Eigen::MatrixXd::Zero(n, n);
    std::vector<int> pos(grid_.nodes(), -1);
    for (std::size_t c = 0; c < interior_.size(); ++c) pos[interior_[c]] = static_cast<int>(c);
    for (std::size_t c = 0; c < interior_.size(); ++c) {
      const int k = interior_[c];
      const auto st = grid_.stencil(k);
      auto couple = [&](int nb, double coef) {
        if (nb < 0 || pos[nb] < 0) return;
        for (int i = 0; i < l; ++i) j(c * l + i, pos[nb] * l + i) += coef / omega_[k];
      };
      const double a1 = 1 / (grid_.h1() * grid_.h1());
      couple(st.e, a1);
      couple(st.w, a1);
      double diag = -2 * a1;
      if (st.n >= 0) {
        const double a2 = 1 / (grid_.h2() * grid_.h2());
        couple(st.n, a2);
        couple(st.s, a2);
        diag -= 2 * a2;
      }
      couple(k, diag);
      for (int a = 0; a < n_.cols(); ++a)
        if (w_(a, k) != 0)
          j.block(c * l, c * l, l, l) -=
              2 * w_(a, k) * std::exp(2 * n_.col(a).dot(y.col(k))) * gn_.col(a) * n_.col(a).transpose();
    }
    return j;
  }

  /// Dense J_F = G^{-1} (x) L - 4 t^2 omega sum ..., symmetric negative definite.
  Eigen::MatrixXd newton_matrix(const Field& y) const {
    const int l = rank();
    const int n = static_cast<int>(interior_.size()) * l;
    Eigen::MatrixXd m(n, n);
    const auto blocks = reaction_blocks(y);
    for (int col = 0; col < n; ++col) {
      Eigen::MatrixXd e = Eigen::MatrixXd::Zero(l, interior_.size());
      e(col % l, col / l) = 1;
      Eigen::MatrixXd r = -(ginv_ * minus_laplacian(e));
      for (std::size_t c = 0; c < interior_.size(); ++c) r.col(c) -= blocks[c] * e.col(c);
      m.col(col) = Eigen::Map<Eigen::VectorXd>(r.data(), n);
    }
    return m;
  }

  void check_shape(const Field& y) const {
    if (y.rows() != rank() || y.cols() != grid_.nodes()) throw InputError("field shape does not match the grid");
    if (!y.allFinite()) throw InputError("field has non-finite values");
  }

private:
  RootSystem rs_;
  Grid grid_;
  double t_;
  Eigen::MatrixXd n_, g_, ginv_, gn_, w_;
  Eigen::VectorXd omega_;
  std::vector<int> interior_;
};

/// Boundary values on boundary nodes, zero elsewhere.
inline Field boundary_field(const TodaProblem& p, const Grid& grid) {
  const int l = p.rs.rank();
  Field y = Field::Zero(l, grid.nodes());
  auto vec = [&](const std::vector<double>& v, const char* what) {
    if (static_cast<int>(v.size()) != l) throw InputError(std::string(what) + " needs rank components");
    Eigen::VectorXd out = Eigen::Map<const Eigen::VectorXd>(v.data(), l);
    if (!out.allFinite()) throw InputError(std::string(what) + " must be finite");
    return out;
  };
  const Boundary& b = p.boundary;
  switch (b.kind) {
    case Boundary::Kind::Constant: {
      const auto v = vec(b.values, "boundary values");
      for (int k = 0; k < grid.nodes(); ++k)
        if (grid.is_boundary(k)) y.col(k) = v;
      break;
    }
    case Boundary::Kind::CanonicalPlus: {
      const Eigen::VectorXd v = canonical_xi(p.rs, constant_coefficients(p.higgs)) + vec(b.values, "boundary delta");
      for (int k = 0; k < grid.nodes(); ++k)
        if (grid.is_boundary(k)) y.col(k) = v;
      break;
    }
    case Boundary::Kind::Ends: {
      if (!grid.log_polar()) throw InputError("'ends' boundary needs an annulus or radial domain");
      const auto in = vec(b.inner, "inner values"), out = vec(b.outer, "outer values");
      for (int k = 0; k < grid.nodes(); ++k)
        if (grid.is_boundary(k)) y.col(k) = grid.i_of(k) == 0 ? in : out;
      break;
    }
    case Boundary::Kind::Model: {
      const ModelMetric mm = model_metric(p.rs, b.model, p.t);
      for (int k = 0; k < grid.nodes(); ++k)
        if (grid.is_boundary(k)) y.col(k) = mm.at(std::log(std::abs(grid.z(k))));
      break;
    }
  }
  return y;
}

/// E(xi) on the problem's grid.
inline Field toda_residual(const TodaProblem& p, const Field& y) { return TodaOperator(p).residual(y); }

inline double sup_norm(const Field& f) { return f.size() ? f.cwiseAbs().maxCoeff() : 0.0; }

/// Closed-form model metric sampled on every node of a grid (|z| < 1 required).
inline Field sample_model(const Grid& grid, const ModelMetric& mm) {
  Field y(mm.beta.size(), grid.nodes());
  for (int k = 0; k < grid.nodes(); ++k) {
    const double r = std::abs(grid.z(k));
    if (!(r > 0) || !(r < 1)) throw InputError("model metric domain must lie in 0 < |z| < 1");
    y.col(k) = mm.at(std::log(r));
  }
  return y;
}

} // namespace lietoda
