#pragma once

// The Kostant automorphism sigma = Ad(w), w = exp(2 pi i x0 / (h+1)), its eigenspace grading,
// cyclic elements of g_1 and their regular semisimplicity / splitness, the closed form of
// [u, rho(u)], the o-invariant and the admissible region for classification parameters.

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "chevalley.hpp"
#include "errors.hpp"
#include "rootsys.hpp"

namespace lietoda {

class SplitAutomorphism {
public:
  explicit SplitAutomorphism(const LieAlgebra& lie) : lie_(&lie) {}

  const LieAlgebra& lie() const { return *lie_; }
  int order() const { return lie_->root_system().h() + 1; }
  std::complex<double> omega() const { return std::polar(1.0, 2 * std::numbers::pi / order()); }

  /// l in Z/(h+1) with sigma(b_k) = omega^l b_k.
  int eigen_index(int k) const {
    if (lie_->is_cartan(k)) return 0;
    const int m = order();
    return ((height(lie_->root_of(k)) % m) + m) % m;
  }

  Eigen::VectorXcd action() const {
    Eigen::VectorXcd d(lie_->dim());
    for (int k = 0; k < lie_->dim(); ++k) d[k] = std::pow(omega(), eigen_index(k));
    return d;
  }

  GElement apply(const GElement& u) const { return action().cwiseProduct(u); }

private:
  const LieAlgebra* lie_;
};

struct EigenspaceDecomposition {
  int modulus = 0;
  std::vector<std::vector<int>> pieces;  // basis indices of g_l, l = 0..modulus-1
  bool grading_compatible = false;       // [g_k, g_l] in g_{k+l} on all basis pairs (exact)
};

inline EigenspaceDecomposition eigenspace_decomposition(const SplitAutomorphism& sigma) {
  const LieAlgebra& lie = sigma.lie();
  EigenspaceDecomposition d;
  d.modulus = sigma.order();
  d.pieces.assign(d.modulus, {});
  for (int k = 0; k < lie.dim(); ++k) d.pieces[sigma.eigen_index(k)].push_back(k);
  d.grading_compatible = true;
  for (int a = 0; a < lie.dim(); ++a)
    for (int b = 0; b < lie.dim(); ++b)
      for (const auto& [c, v] : lie.bracket_basis(a, b))
        if (sigma.eigen_index(c) != (sigma.eigen_index(a) + sigma.eigen_index(b)) % d.modulus)
          d.grading_compatible = false;
  return d;
}

/// u = sum_i b_i e_{alpha_i} + b_{-psi} e_{-psi}; coefficients ordered as Pi^Q (last one is b_{-psi}).
struct CyclicElement {
  std::vector<std::complex<double>> b;

  GElement realize(const LieAlgebra& lie) const {
    const auto pi_q = lie.root_system().weight_one_eigenroots();
    if (b.size() != pi_q.size()) throw InputError("cyclic element needs rank+1 coefficients");
    GElement u = GElement::Zero(lie.dim());
    for (std::size_t i = 0; i < pi_q.size(); ++i) u[lie.root_vector(pi_q[i])] = b[i];
    return u;
  }

  CyclicElement scaled(std::complex<double> lambda) const {
    CyclicElement c = *this;
    for (auto& x : c.b) x *= lambda;
    return c;
  }
};

inline bool is_cyclic(const CyclicElement& u) {
  return std::all_of(u.b.begin(), u.b.end(), [](const std::complex<double>& x) { return x != 0.0; });
}

/// Random element of g_1 with coefficient moduli in [0.5, 2] and uniform phases.
inline CyclicElement random_cyclic(const RootSystem& rs, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> mod(0.5, 2.0), ph(0.0, 2 * std::numbers::pi);
  CyclicElement u;
  for (int i = 0; i <= rs.rank(); ++i) u.b.push_back(std::polar(mod(rng), ph(rng)));
  return u;
}

/// Random element of g_1 with at least one vanishing coefficient.
inline CyclicElement random_noncyclic(const RootSystem& rs, std::mt19937_64& rng) {
  CyclicElement u = random_cyclic(rs, rng);
  std::uniform_int_distribution<int> pick(0, rs.rank());
  std::bernoulli_distribution extra(0.3);
  u.b[pick(rng)] = 0.0;
  for (auto& x : u.b)
    if (extra(rng)) x = 0.0;
  return u;
}

namespace detail {

struct RankInfo {
  int rank = 0;
  bool ambiguous = false;
  Eigen::VectorXd singular_values;
};

inline RankInfo numerical_rank(const Eigen::MatrixXcd& m, double tol) {
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(m);
  RankInfo r;
  r.singular_values = svd.singularValues();
  for (Eigen::Index i = 0; i < r.singular_values.size(); ++i) {
    const double s = r.singular_values[i];
    if (s > tol) ++r.rank;
    if (s > tol * 1e-2 && s < tol * 1e2) r.ambiguous = true;
  }
  return r;
}

} // namespace detail

struct RegularityReport {
  bool regular_semisimple = false;
  int kernel_dim = 0;        // dim ker ad(u)
  int generalized_kernel = 0; // dim ker ad(u)^2
  bool indeterminate = false;
  double tol = 0;
};

/// u is regular semisimple iff dim ker ad(u) = l and ker ad(u)^2 = ker ad(u) (no nilpotent part on
/// the generalized 0-eigenspace). Ranks use the singular-value threshold tol_rel * ||ad u||.
inline RegularityReport regularity(const LieAlgebra& lie, const GElement& u, double tol_rel = 1e-8) {
  const Eigen::MatrixXcd a = lie.ad(u);
  RegularityReport r;
  const double norm = a.norm();
  r.tol = tol_rel * std::max(norm, 1e-300);
  if (norm == 0) {
    r.kernel_dim = r.generalized_kernel = lie.dim();
    return r;
  }
  const auto r1 = detail::numerical_rank(a, r.tol);
  const auto r2 = detail::numerical_rank(a * a, r.tol * norm);
  r.kernel_dim = lie.dim() - r1.rank;
  r.generalized_kernel = lie.dim() - r2.rank;
  r.indeterminate = r1.ambiguous || r2.ambiguous;
  r.regular_semisimple = r.kernel_dim == lie.rank() && r.generalized_kernel == r.kernel_dim;
  return r;
}

inline bool is_regular_semisimple(const LieAlgebra& lie, const GElement& u, double tol_rel = 1e-8) {
  return regularity(lie, u, tol_rel).regular_semisimple;
}

struct SplitReport {
  bool holds = false;
  int centralizer_dim = 0;
  int intersection_dim = 0;  // dim C_g(u) cap g_0
  bool indeterminate = false;
  double min_singular_on_cartan = 0;
};

/// Checks C_g(u) cap g_0 = 0 (g_0 = t) and dim C_g(u) = l for a cyclic u.
inline SplitReport verify_split(const LieAlgebra& lie, const SplitAutomorphism& sigma, const CyclicElement& u,
                                double tol_rel = 1e-8) {
  if (!is_cyclic(u)) throw InputError("verify_split requires a cyclic element");
  const GElement x = u.realize(lie);
  const Eigen::MatrixXcd a = lie.ad(x);
  const double tol = tol_rel * a.norm();
  SplitReport rep;
  const auto full = detail::numerical_rank(a, tol);
  rep.centralizer_dim = lie.dim() - full.rank;

  std::vector<int> g0;
  for (int k = 0; k < lie.dim(); ++k)
    if (sigma.eigen_index(k) == 0) g0.push_back(k);
  Eigen::MatrixXcd restricted(lie.dim(), static_cast<Eigen::Index>(g0.size()));
  for (std::size_t j = 0; j < g0.size(); ++j) restricted.col(j) = a.col(g0[j]);
  const auto on_t = detail::numerical_rank(restricted, tol);
  rep.intersection_dim = static_cast<int>(g0.size()) - on_t.rank;
  rep.min_singular_on_cartan = on_t.singular_values.size() ? on_t.singular_values.minCoeff() : 0.0;
  rep.indeterminate = full.ambiguous || on_t.ambiguous;
  rep.holds = rep.intersection_dim == 0 && rep.centralizer_dim == lie.rank() && !rep.indeterminate;
  return rep;
}

struct BracketRho {
  Eigen::VectorXd sharp_coords;  // [u, rho(u)] = sum_i sharp_coords[i] alpha_i^#
  double residual = 0;           // max-abs difference against the ad-matrix bracket
};

/// [u, rho(u)] = -sum_i (|b_i|^2 - psi_i |b_{-psi}|^2) alpha_i^#, compared with the direct bracket.
inline BracketRho bracket_rho_closed_form(const LieAlgebra& lie, const CartanInvolution& rho, const CyclicElement& u) {
  const RootSystem& rs = lie.root_system();
  const int l = rs.rank();
  BracketRho out;
  out.sharp_coords.resize(l);
  const double bpsi = std::norm(u.b[l]);
  for (int i = 0; i < l; ++i) out.sharp_coords[i] = -(std::norm(u.b[i]) - rs.psi()[i] * bpsi);

  const GElement x = u.realize(lie);
  const GElement direct = lie.ad(x) * rho.apply(x);
  GElement closed = GElement::Zero(lie.dim());
  for (int i = 0; i < l; ++i) closed[i] = out.sharp_coords[i];
  out.residual = (direct - closed).cwiseAbs().maxCoeff();
  return out;
}

/// Same identity in the normalization u = sum c_i psi_i^{1/2} e_{alpha_i} + c_{-psi} e_{-psi}:
/// [u, rho(u)] = -sum (|c_i|^2 - |c_{-psi}|^2) psi_i alpha_i^#.
inline Eigen::VectorXd bracket_rho_normalized_form(const RootSystem& rs, const std::vector<std::complex<double>>& c) {
  const int l = rs.rank();
  Eigen::VectorXd v(l);
  for (int i = 0; i < l; ++i) v[i] = -(std::norm(c[i]) - std::norm(c[l])) * rs.psi()[i];
  return v;
}

inline CyclicElement from_normalized_coefficients(const RootSystem& rs, const std::vector<std::complex<double>>& c) {
  CyclicElement u{c};
  for (int i = 0; i < rs.rank(); ++i) u.b[i] *= std::sqrt(static_cast<double>(rs.psi()[i]));
  return u;
}

/// o(u) = prod_i b_i^{psi_i} * b_{-psi}; homogeneous of degree h+1.
inline std::complex<double> o_invariant(const RootSystem& rs, const CyclicElement& u) {
  std::complex<double> o = u.b[rs.rank()];
  for (int i = 0; i < rs.rank(); ++i) o *= std::pow(u.b[i], rs.psi()[i]);
  return o;
}

/// Admissible classification parameters at a puncture with ord o(theta) = m:
/// {beta in t_R : alpha_i(beta) <= 0, psi(beta) + h + 1 + m >= 0}. Points with h+1+m <= 0 are
/// outside D^{>0}; there the parameter set is a single point and no beta is attached.
class ClassificationRegion {
public:
  ClassificationRegion(const RootSystem& rs, int m) : psi_(rs.psi()), h_(rs.h()), m_(m) {}

  int order() const { return m_; }
  /// c(theta) = -m / (h+1).
  double c_theta() const { return -static_cast<double>(m_) / (h_ + 1); }
  bool in_positive_part() const { return h_ + 1 + m_ > 0; }
  /// Nonempty closed polytope with interior iff the puncture lies in D^{>0}.
  bool has_interior() const { return in_positive_part(); }
  bool is_trivial() const { return !in_positive_part(); }

  /// beta given by its values alpha_i(beta) (eps coordinates).
  bool contains(const std::vector<double>& beta, double slack = 0.0) const {
    if (!in_positive_part()) return false;
    double psi_beta = 0;
    for (std::size_t i = 0; i < beta.size(); ++i) {
      if (beta[i] > slack) return false;
      psi_beta += psi_[i] * beta[i];
    }
    return psi_beta + h_ + 1 + m_ >= -slack;
  }

private:
  Root psi_;
  int h_;
  int m_;
};

inline ClassificationRegion classification_region(const RootSystem& rs, int m) { return {rs, m}; }

} // namespace lietoda
