#pragma once

// Kostant-normalized basis of g: h_i = alpha_i^# (Cartan, via the Killing identification) and
// root vectors e_phi with B(e_phi, e_-phi) = 1, real structure constants N_{phi,phi'} and
// N_{-phi,-phi'} = -N_{phi,phi'}. Structure constants live exactly in a multiquadratic field.
//
// Sign convention: positive roots are totally ordered as in RootSystem::positive_roots(). For
// every non-simple positive root xi the extraspecial pair (a, b) takes a as the first positive
// root with xi - a positive, and the integral Chevalley constant N_{a,b} = +(p+1). All other
// integral constants follow from the Chevalley relations; the normalized constants are
// N_{r,s} sqrt(c_r c_s / (2 c_{r+s})) with c_r = (r, r) under the Killing form.

#include <Eigen/Dense>

#include <complex>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "errors.hpp"
#include "exact.hpp"
#include "rootsys.hpp"

namespace lietoda {

/// Element of g in float mode: complex coefficients over the basis (h_1..h_l, e_{Delta+}, e_{-Delta+}).
using GElement = Eigen::VectorXcd;

/// Exact sparse element with (basis index, coefficient) pairs sorted by index.
using ExactElement = std::vector<std::pair<int, Surd>>;

inline ExactElement& accumulate(ExactElement& acc, int index, const Surd& value) {
  auto it = std::lower_bound(acc.begin(), acc.end(), index, [](const auto& p, int k) { return p.first < k; });
  if (it != acc.end() && it->first == index) {
    it->second += value;
    if (it->second.is_zero()) acc.erase(it);
  } else if (!value.is_zero()) {
    acc.insert(it, {index, value});
  }
  return acc;
}

/// Integral Chevalley-basis structure constants via Carter's relations.
class ChevalleyConstants {
public:
  explicit ChevalleyConstants(const RootSystem& rs) : rs_(rs), roots_(rs.roots()) {
    const int np = static_cast<int>(rs.positive_roots().size());
    extraspecial_.assign(np, -1);
    for (int x = 0; x < np; ++x) {
      const Root& xi = rs.positive_roots()[x];
      if (height(xi) == 1) continue;
      for (int r = 0; r < x; ++r) {
        const Root rest = subtract(xi, rs.positive_roots()[r]);
        if (is_positive(rest) && rs.is_root(rest)) {
          extraspecial_[x] = r;
          break;
        }
      }
    }
  }

  /// N_{r,s} for root indices r, s into RootSystem::roots(); 0 when r + s is not a root.
  int operator()(int r, int s) {
    const Root sum = add(roots_[r], roots_[s]);
    if (!rs_.is_root(sum)) return 0;
    auto key = std::make_pair(r, s);
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;
    const Rational value = compute(r, s);
    if (boost::multiprecision::denominator(value) != 1)
      throw NumericError("non-integral Chevalley constant");
    const int n = boost::multiprecision::numerator(value).convert_to<int>();
    if (std::abs(n) != string_p(r, s) + 1) throw NumericError("Chevalley constant violates |N| = p+1");
    memo_[key] = n;
    return n;
  }

  /// Largest p with s - p r a root.
  int string_p(int r, int s) const {
    int p = 0;
    Root cur = subtract(roots_[s], roots_[r]);
    while (rs_.is_root(cur)) {
      ++p;
      cur = subtract(cur, roots_[r]);
    }
    return p;
  }

private:
  int np() const { return static_cast<int>(rs_.positive_roots().size()); }
  bool positive(int k) const { return k < np(); }
  int opposite(int k) const { return k < np() ? k + np() : k - np(); }
  int index(const Root& r) const { return rs_.root_index(r); }
  Rational len2(const Root& r) const { return rs_.pairing(r, r); }

  Rational compute(int r, int s) {
    const Root& rr = roots_[r];
    const Root& ss = roots_[s];
    if (positive(r) && positive(s)) {
      if (r > s) return -Rational((*this)(s, r));
      const Root xi = add(rr, ss);
      const int x = index(xi);
      const int a = extraspecial_[x];
      const int b = index(subtract(xi, roots_[a]));
      if (a == r) return string_p(r, s) + 1;
      // r + s - a - b = 0 with no opposite pair.
      const int na = opposite(a), nb = opposite(b);
      Rational acc = 0;
      const Root s_minus_a = subtract(ss, roots_[a]);
      if (rs_.is_root(s_minus_a)) acc += Rational((*this)(s, na)) * (*this)(r, nb) / len2(s_minus_a);
      const Root r_minus_a = subtract(rr, roots_[a]);
      if (rs_.is_root(r_minus_a)) acc += Rational((*this)(na, r)) * (*this)(s, nb) / len2(r_minus_a);
      return len2(xi) / (*this)(a, b) * acc;
    }
    if (!positive(r) && !positive(s)) return -Rational((*this)(opposite(r), opposite(s)));
    // Mixed signs: r + s + t = 0 and N_{r,s}/(t,t) = N_{s,t}/(r,r) = N_{t,r}/(s,s).
    const Root t = negate(add(rr, ss));
    const int ti = index(t);
    if (positive(ti) == positive(r)) return len2(t) / len2(ss) * (*this)(ti, r);
    return len2(t) / len2(rr) * (*this)(s, ti);
  }

  const RootSystem& rs_;
  std::vector<Root> roots_;
  std::vector<int> extraspecial_;
  std::map<std::pair<int, int>, int> memo_;
};

class LieAlgebra {
public:
  explicit LieAlgebra(const SimpleType& type) : LieAlgebra(RootSystem(type)) {}
  explicit LieAlgebra(RootSystem rs);

  const RootSystem& root_system() const { return rs_; }
  int rank() const { return rs_.rank(); }
  int dim() const { return rs_.dim(); }
  int num_positive() const { return static_cast<int>(rs_.positive_roots().size()); }

  bool is_cartan(int k) const { return k < rank(); }
  /// Basis index of e_phi.
  int root_vector(const Root& phi) const {
    const int r = rs_.root_index(phi);
    if (r < 0) throw InputError("not a root: " + root_label(phi));
    return rank() + r;
  }
  const Root& root_of(int k) const { return roots_.at(k - rank()); }
  /// Index of e_{-phi} for a root-vector index, or k itself for Cartan elements.
  int opposite(int k) const {
    if (is_cartan(k)) return k;
    const int r = k - rank();
    return rank() + (r < num_positive() ? r + num_positive() : r - num_positive());
  }
  std::string basis_label(int k) const {
    return is_cartan(k) ? "h_" + std::to_string(k + 1) : "e[" + root_label(root_of(k)) + "]";
  }

  /// [b_a, b_b] exactly.
  const ExactElement& bracket_basis(int a, int b) const { return table_[a * dim() + b]; }
  ExactElement bracket(const ExactElement& x, const ExactElement& y) const {
    ExactElement out;
    for (const auto& [a, ca] : x)
      for (const auto& [b, cb] : y)
        for (const auto& [c, v] : bracket_basis(a, b)) accumulate(out, c, ca * cb * v);
    return out;
  }
  /// Stored Killing form value B(b_a, b_b).
  Surd killing_basis(int a, int b) const {
    if (is_cartan(a) && is_cartan(b)) return Surd(rs_.root_gram()[a][b]);
    if (!is_cartan(a) && !is_cartan(b) && opposite(a) == b) return Surd(1);
    return Surd();
  }
  Surd killing(const ExactElement& x, const ExactElement& y) const {
    Surd s;
    for (const auto& [a, ca] : x)
      for (const auto& [b, cb] : y) {
        const Surd k = killing_basis(a, b);
        if (!k.is_zero()) s += ca * cb * k;
      }
    return s;
  }
  /// Tr(ad b_a ad b_b), computed from the structure table.
  Surd trace_form_basis(int a, int b) const {
    Surd s;
    for (int j = 0; j < dim(); ++j)
      for (const auto& [k, v] : bracket_basis(b, j))
        for (const auto& [m, w] : bracket_basis(a, k))
          if (m == j) s += v * w;
    return s;
  }

  /// Normalized N_{phi,phi'} with [e_phi, e_phi'] = N e_{phi+phi'}; zero if phi+phi' is not a root.
  Surd structure_constant(const Root& phi, const Root& phi2) const {
    const ExactElement& br = bracket_basis(root_vector(phi), root_vector(phi2));
    const Root sum = add(phi, phi2);
    if (!rs_.is_root(sum)) return {};
    for (const auto& [c, v] : br)
      if (c == root_vector(sum)) return v;
    return {};
  }
  /// Integral constant of the underlying Chevalley basis.
  int chevalley_constant(const Root& phi, const Root& phi2) const {
    const int r = rs_.root_index(phi), s = rs_.root_index(phi2);
    if (r < 0 || s < 0) throw InputError("not a root");
    return chevalley_[r * static_cast<int>(roots_.size()) + s];
  }
  bool has_rational_constants() const { return rational_; }

  // Float-mode views.

  GElement basis_vector(int k) const {
    GElement u = GElement::Zero(dim());
    u[k] = 1.0;
    return u;
  }
  /// Element of t_R given by its values y_i = alpha_i(x) (coordinates in the eps basis).
  GElement toral(const std::vector<double>& eps_coords) const {
    GElement u = GElement::Zero(dim());
    for (int i = 0; i < rank(); ++i)
      for (int j = 0; j < rank(); ++j) u[i] += to_double(rs_.dual_gram()[i][j]) * eps_coords[j];
    return u;
  }
  /// Element of t_R from coefficients over the alpha_i^# basis.
  GElement toral_sharp(const Eigen::VectorXd& sharp) const {
    GElement u = GElement::Zero(dim());
    for (int i = 0; i < rank(); ++i) u[i] = sharp[i];
    return u;
  }
  /// phi^# for a root or any integral combination of simple roots.
  GElement sharp(const Root& phi) const {
    GElement u = GElement::Zero(dim());
    for (int i = 0; i < rank(); ++i) u[i] = phi[i];
    return u;
  }
  /// phi(x) for x in t given in h-coordinates.
  std::complex<double> evaluate(const Root& phi, const GElement& x) const {
    std::complex<double> v = 0;
    for (int i = 0; i < rank(); ++i)
      for (int j = 0; j < rank(); ++j) v += static_cast<double>(phi[i]) * root_gram_d_(i, j) * x[j];
    return v;
  }

  Eigen::MatrixXcd ad(const GElement& u) const {
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(dim(), dim());
    for (const auto& [a, b, c, v] : float_table_)
      if (u[a] != 0.0) m(c, b) += u[a] * v;
    return m;
  }
  GElement bracket(const GElement& x, const GElement& y) const {
    GElement out = GElement::Zero(dim());
    for (const auto& [a, b, c, v] : float_table_) out[c] += x[a] * y[b] * v;
    return out;
  }
  const Eigen::MatrixXd& killing_matrix() const { return killing_d_; }
  /// Complex-bilinear Killing form.
  std::complex<double> killing(const GElement& x, const GElement& y) const {
    return (x.transpose() * killing_d_.cast<std::complex<double>>() * y)(0, 0);
  }
  const Eigen::MatrixXd& root_gram_d() const { return root_gram_d_; }

private:
  RootSystem rs_;
  std::vector<Root> roots_;
  std::vector<int> chevalley_;
  std::vector<ExactElement> table_;
  std::vector<std::tuple<int, int, int, double>> float_table_;
  Eigen::MatrixXd killing_d_;
  Eigen::MatrixXd root_gram_d_;
  bool rational_ = true;
};

inline LieAlgebra::LieAlgebra(RootSystem rs) : rs_(std::move(rs)), roots_(rs_.roots()) {
  const int n = dim(), l = rank(), nr = static_cast<int>(roots_.size());
  {
    ChevalleyConstants constants(rs_);
    chevalley_.assign(static_cast<std::size_t>(nr) * nr, 0);
    for (int r = 0; r < nr; ++r)
      for (int s = 0; s < nr; ++s) chevalley_[r * nr + s] = constants(r, s);
  }
  table_.assign(static_cast<std::size_t>(n) * n, {});
  std::vector<Rational> c(nr);
  for (int r = 0; r < nr; ++r) c[r] = rs_.pairing(roots_[r], roots_[r]);

  for (int i = 0; i < l; ++i)
    for (int r = 0; r < nr; ++r) {
      // [h_i, e_r] = (alpha_i, r) e_r
      Rational v = 0;
      for (int j = 0; j < l; ++j) v += rs_.root_gram()[i][j] * roots_[r][j];
      accumulate(table_[i * n + (l + r)], l + r, Surd(v));
      accumulate(table_[(l + r) * n + i], l + r, Surd(-v));
    }
  for (int r = 0; r < nr; ++r)
    for (int s = 0; s < nr; ++s) {
      const Root sum = add(roots_[r], roots_[s]);
      ExactElement& cell = table_[(l + r) * n + (l + s)];
      if (std::all_of(sum.begin(), sum.end(), [](int x) { return x == 0; })) {
        for (int j = 0; j < l; ++j) accumulate(cell, j, Surd(roots_[r][j]));  // r^#
        continue;
      }
      const int t = rs_.root_index(sum);
      if (t < 0) continue;
      const int nrs = chevalley_[r * nr + s];
      const Surd value = Surd(nrs) * Surd::sqrt(c[r] * c[s] / (2 * c[t]));
      if (!value.is_rational()) rational_ = false;
      accumulate(cell, l + t, value);
    }

  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (const auto& [cidx, v] : table_[a * n + b]) float_table_.emplace_back(a, b, cidx, v.to_double());

  root_gram_d_.resize(l, l);
  for (int i = 0; i < l; ++i)
    for (int j = 0; j < l; ++j) root_gram_d_(i, j) = to_double(rs_.root_gram()[i][j]);
  killing_d_ = Eigen::MatrixXd::Zero(n, n);
  killing_d_.topLeftCorner(l, l) = root_gram_d_;
  for (int k = l; k < n; ++k) killing_d_(k, opposite(k)) = 1.0;
}

/// The anti-linear Cartan involution of the compact real form compatible with t:
/// rho(e_phi) = -e_{-phi}, rho(x) = -conj(x) on t. Represented as (signed permutation) o (conjugation).
class CartanInvolution {
public:
  explicit CartanInvolution(const LieAlgebra& lie) : lie_(&lie) {}

  /// rho(b_k) = -b_{image(k)}.
  int image(int k) const { return lie_->opposite(k); }
  int sign(int) const { return -1; }

  Eigen::MatrixXd linear_part() const {
    Eigen::MatrixXd r = Eigen::MatrixXd::Zero(lie_->dim(), lie_->dim());
    for (int k = 0; k < lie_->dim(); ++k) r(image(k), k) = sign(k);
    return r;
  }

  GElement apply(const GElement& u) const {
    GElement out = GElement::Zero(u.size());
    for (int k = 0; k < lie_->dim(); ++k) out[image(k)] += static_cast<double>(sign(k)) * std::conj(u[k]);
    return out;
  }

  /// rho on a real exact element (conjugation is trivial on real coefficients).
  ExactElement apply(const ExactElement& u) const {
    ExactElement out;
    for (const auto& [k, v] : u) accumulate(out, image(k), sign(k) == 1 ? v : -v);
    return out;
  }

private:
  const LieAlgebra* lie_;
};

/// h_{g,K}(u, v) = -B(u, rho(v)); linear in u, anti-linear in v.
inline std::complex<double> hermitian_metric(const LieAlgebra& lie, const CartanInvolution& rho, const GElement& u,
                                             const GElement& v) {
  return -lie.killing(u, rho.apply(v));
}

/// Gram matrix of h_{g,K} on the basis: H(k, m) = h(b_k, b_m).
inline Eigen::MatrixXd hermitian_gram(const LieAlgebra& lie) {
  Eigen::MatrixXd h = Eigen::MatrixXd::Identity(lie.dim(), lie.dim());
  h.topLeftCorner(lie.rank(), lie.rank()) = lie.root_gram_d();
  return h;
}

/// Adjoint of a matrix with respect to h_{g,K}: A^dagger = H^{-1} A^* H, where h(u,v) = v^* H u.
inline Eigen::MatrixXcd hermitian_adjoint(const LieAlgebra& lie, const Eigen::MatrixXcd& a) {
  const Eigen::MatrixXd h = hermitian_gram(lie);
  return h.inverse().cast<std::complex<double>>() * a.adjoint() * h.cast<std::complex<double>>();
}

struct NormGap {
  double metric_norm = 0;     // h(u, u)
  double eigen_sum = 0;       // sum |lambda|^2 over eigenvalues of ad u
  double gap = 0;             // metric_norm - eigen_sum
  double commutator_norm = 0; // h-norm of [u, rho(u)]
};

/// h(u,u) >= sum |eigenvalues of ad u|^2 with equality iff [u, rho(u)] = 0.
inline NormGap eigen_norm_gap(const LieAlgebra& lie, const CartanInvolution& rho, const GElement& u) {
  NormGap g;
  g.metric_norm = hermitian_metric(lie, rho, u, u).real();
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(lie.ad(u), false);
  if (es.info() != Eigen::Success) throw NumericError("eigenvalue computation failed");
  g.eigen_sum = es.eigenvalues().squaredNorm();
  g.gap = g.metric_norm - g.eigen_sum;
  const GElement c = lie.bracket(u, rho.apply(u));
  g.commutator_norm = std::sqrt(std::max(0.0, hermitian_metric(lie, rho, c, c).real()));
  return g;
}

struct Check {
  std::string name;
  bool passed = false;
  std::string detail;
};

struct VerificationReport {
  std::string type;
  std::vector<Check> checks;
  bool all_passed() const {
    return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.passed; });
  }
};

/// The full exact invariant suite plus the float-mode adjoint identity on random elements.
inline VerificationReport verify_lie_algebra(const LieAlgebra& lie, std::uint64_t seed = 0, int samples = 100) {
  VerificationReport rep;
  rep.type = lie.root_system().type().name();
  const int n = lie.dim(), l = lie.rank();
  auto add_check = [&](std::string name, bool ok, std::string detail = {}) {
    rep.checks.push_back({std::move(name), ok, std::move(detail)});
  };

  add_check("dimension", n == classical_dimension(lie.root_system().type()),
            std::to_string(n) + " vs " + std::to_string(classical_dimension(lie.root_system().type())));

  {
    std::string bad;
    for (int a = 0; a < n && bad.empty(); ++a)
      for (int b = 0; b < n && bad.empty(); ++b)
        for (int c = 0; c < n && bad.empty(); ++c) {
          ExactElement sum = lie.bracket(lie.bracket_basis(a, b), {{c, Surd(1)}});
          for (const auto& [k, v] : lie.bracket(lie.bracket_basis(b, c), {{a, Surd(1)}})) accumulate(sum, k, v);
          for (const auto& [k, v] : lie.bracket(lie.bracket_basis(c, a), {{b, Surd(1)}})) accumulate(sum, k, v);
          if (!sum.empty()) bad = lie.basis_label(a) + "," + lie.basis_label(b) + "," + lie.basis_label(c);
        }
    add_check("jacobi", bad.empty(), bad);
  }
  {
    std::string bad;
    for (int a = 0; a < n && bad.empty(); ++a)
      for (int b = 0; b < n && bad.empty(); ++b)
        if (lie.trace_form_basis(a, b) != lie.killing_basis(a, b))
          bad = lie.basis_label(a) + "," + lie.basis_label(b) + ": " + lie.trace_form_basis(a, b).to_string();
    add_check("killing_equals_trace_form", bad.empty(), bad);
  }
  {
    std::string bad;
    for (int a = 0; a < n && bad.empty(); ++a)
      for (int b = 0; b < n && bad.empty(); ++b)
        for (int c = 0; c < n && bad.empty(); ++c) {
          const Surd s = lie.killing(lie.bracket_basis(a, b), {{c, Surd(1)}}) +
                         lie.killing({{b, Surd(1)}}, lie.bracket_basis(a, c));
          if (!s.is_zero()) bad = lie.basis_label(a) + "," + lie.basis_label(b) + "," + lie.basis_label(c);
        }
    add_check("killing_invariance", bad.empty(), bad);
  }
  {
    std::string bad;
    for (int k = l; k < n && bad.empty(); ++k) {
      if (lie.trace_form_basis(k, lie.opposite(k)) != Surd(1)) bad = "B != 1 at " + lie.basis_label(k);
      ExactElement expect;
      for (int j = 0; j < l; ++j) accumulate(expect, j, Surd(lie.root_of(k)[j]));
      if (lie.bracket_basis(k, lie.opposite(k)) != expect) bad = "[e,e-] != phi# at " + lie.basis_label(k);
    }
    add_check("root_vector_normalization", bad.empty(), bad);
  }
  {
    // N real by construction; check N_{phi,phi'} = -N_{-phi,-phi'}, nonzero exactly when phi+phi' is a root.
    std::string bad;
    const auto roots = lie.root_system().roots();
    for (const Root& p : roots)
      for (const Root& q : roots) {
        if (!bad.empty()) break;
        const Root s = add(p, q);
        if (std::all_of(s.begin(), s.end(), [](int x) { return x == 0; })) continue;
        const Surd n1 = lie.structure_constant(p, q), n2 = lie.structure_constant(negate(p), negate(q));
        if (n1 != -n2 || (n1.is_zero() == lie.root_system().is_root(s)))
          bad = root_label(p) + "," + root_label(q);
      }
    add_check("structure_constants_real_antisymmetric", bad.empty(), bad);
  }
  {
    const CartanInvolution rho(lie);
    std::string bad;
    for (int a = 0; a < n && bad.empty(); ++a) {
      if (rho.apply(rho.apply(ExactElement{{a, Surd(1)}})) != ExactElement{{a, Surd(1)}}) bad = "rho^2 at " + lie.basis_label(a);
      for (int b = 0; b < n && bad.empty(); ++b) {
        const ExactElement lhs = rho.apply(lie.bracket_basis(a, b));
        const ExactElement rhs = lie.bracket(rho.apply(ExactElement{{a, Surd(1)}}), rho.apply(ExactElement{{b, Surd(1)}}));
        if (lhs != rhs) bad = "automorphism at " + lie.basis_label(a) + "," + lie.basis_label(b);
      }
    }
    add_check("cartan_involution", bad.empty(), bad);
  }
  {
    // ad(w)^dagger = ad(-rho(w)). Both sides are conjugate-linear in w, so basis elements certify
    // it exactly: h([b_k, x], y) = h(x, [-rho(b_k), y]) on basis pairs.
    const CartanInvolution rho(lie);
    auto herm = [&](const ExactElement& x, const ExactElement& y) {
      return -lie.killing(x, rho.apply(y));  // real elements: h(x, y) = -B(x, rho y)
    };
    std::string bad;
    for (int k = 0; k < n && bad.empty(); ++k) {
      ExactElement minus_rho_bk = rho.apply(ExactElement{{k, Surd(1)}});
      for (auto& [i, v] : minus_rho_bk) v = -v;
      for (int x = 0; x < n && bad.empty(); ++x)
        for (int y = 0; y < n && bad.empty(); ++y) {
          const Surd lhs = herm(lie.bracket_basis(k, x), {{y, Surd(1)}});
          const Surd rhs = herm({{x, Surd(1)}}, lie.bracket(minus_rho_bk, {{y, Surd(1)}}));
          if (lhs != rhs) bad = lie.basis_label(k) + " on " + lie.basis_label(x) + "," + lie.basis_label(y);
        }
    }
    add_check("adjoint_identity_exact", bad.empty(), bad);

    std::mt19937_64 rng(seed);
    std::normal_distribution<double> nd;
    double worst = 0;
    for (int s = 0; s < samples; ++s) {
      GElement w(n);
      for (int k = 0; k < n; ++k) w[k] = {nd(rng), nd(rng)};
      const Eigen::MatrixXcd lhs = hermitian_adjoint(lie, lie.ad(w));
      const Eigen::MatrixXcd rhs = lie.ad(-rho.apply(w));
      worst = std::max(worst, (lhs - rhs).cwiseAbs().maxCoeff() / std::max(1.0, rhs.cwiseAbs().maxCoeff()));
    }
    add_check("adjoint_identity_float", worst <= 1e-12, "max rel err " + std::to_string(worst));
  }
  return rep;
}

} // namespace lietoda
