#pragma once

// sl2-triples (u_S, v_S, -rho(v_S)) attached to nonempty proper subsets S of
// Pi^Q = {alpha_1, ..., alpha_l, -psi}.

#include <Eigen/Dense>

#include <algorithm>
#include <cctype>
#include <complex>
#include <string>
#include <string_view>
#include <vector>

#include "chevalley.hpp"
#include "errors.hpp"
#include "exact.hpp"
#include "rootsys.hpp"

namespace lietoda {

/// Subset of Pi^Q by position: 0..l-1 are the simple roots, l is -psi. Sorted, no duplicates.
using RootSubset = std::vector<int>;

/// Parses one Pi^Q token: "alpha1", "alpha_1", "a1", "α1", "-psi".
inline int parse_pi_q_token(std::string_view tok, int rank) {
  std::string t;
  for (char c : tok)
    if (!std::isspace(static_cast<unsigned char>(c))) t += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  if (t == "-psi" || t == "-ψ") return rank;
  std::string_view digits;
  for (std::string_view prefix : {"alpha_", "alpha", "α_", "α", "a_", "a"})
    if (t.rfind(prefix, 0) == 0) {
      digits = std::string_view(t).substr(prefix.size());
      break;
    }
  if (digits.empty() || !std::all_of(digits.begin(), digits.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); }))
    throw InputError("bad root token '" + std::string(tok) + "'");
  const int i = std::stoi(std::string(digits));
  if (i < 1 || i > rank) throw InputError("simple root index out of range in '" + std::string(tok) + "'");
  return i - 1;
}

inline RootSubset parse_subset(std::string_view list, int rank) {
  RootSubset s;
  std::size_t pos = 0;
  while (pos <= list.size()) {
    const std::size_t comma = list.find(',', pos);
    const std::string_view tok = list.substr(pos, comma == std::string_view::npos ? std::string_view::npos : comma - pos);
    if (!tok.empty()) s.push_back(parse_pi_q_token(tok, rank));
    if (comma == std::string_view::npos) break;
    pos = comma + 1;
  }
  std::sort(s.begin(), s.end());
  if (std::adjacent_find(s.begin(), s.end()) != s.end()) throw InputError("duplicate root in subset");
  return s;
}

inline std::string pi_q_label(int index, int rank) {
  return index == rank ? "-psi" : "alpha_" + std::to_string(index + 1);
}

inline void check_proper_subset(const RootSubset& s, int rank) {
  if (s.empty()) throw InputError("subset S must be nonempty");
  if (static_cast<int>(s.size()) >= rank + 1) throw InputError("subset S must be a proper subset of Pi^Q");
  for (int i : s)
    if (i < 0 || i > rank) throw InputError("subset index out of range");
}

/// Every nonempty proper subset of Pi^Q.
inline std::vector<RootSubset> all_proper_subsets(int rank) {
  std::vector<RootSubset> out;
  const unsigned full = (1u << (rank + 1)) - 1;
  for (unsigned mask = 1; mask < full; ++mask) {
    RootSubset s;
    for (int i = 0; i <= rank; ++i)
      if (mask & (1u << i)) s.push_back(i);
    out.push_back(std::move(s));
  }
  return out;
}

/// u_S = sum_{phi in S} coeff[phi] phi^#, the unique element of span(S) with phi(u_S) = 1 for phi in S.
struct ToralSolution {
  RootSubset subset;
  RationalVector coeffs;  // over S
  RationalVector sharp;   // over alpha_i^#
  RationalVector eps;     // alpha_i(u_S)
};

inline ToralSolution compute_u_S(const RootSystem& rs, const RootSubset& s) {
  check_proper_subset(s, rs.rank());
  const auto pi_q = rs.weight_one_eigenroots();
  const std::size_t k = s.size();
  RationalMatrix gram = rational_matrix(k, k);
  for (std::size_t a = 0; a < k; ++a)
    for (std::size_t b = 0; b < k; ++b) gram[a][b] = rs.pairing(pi_q[s[a]], pi_q[s[b]]);
  ToralSolution u;
  u.subset = s;
  u.coeffs = solve(gram, RationalVector(k, Rational(1)));
  u.sharp.assign(rs.rank(), Rational(0));
  for (std::size_t a = 0; a < k; ++a)
    for (int i = 0; i < rs.rank(); ++i) u.sharp[i] += u.coeffs[a] * pi_q[s[a]][i];
  u.eps = multiply(rs.root_gram(), u.sharp);
  return u;
}

/// phi(x) for x given over the alpha_i^# basis.
inline Rational evaluate_sharp(const RootSystem& rs, const Root& phi, const RationalVector& sharp) {
  Rational v = 0;
  for (int i = 0; i < rs.rank(); ++i)
    for (int j = 0; j < rs.rank(); ++j) v += phi[i] * rs.root_gram()[i][j] * sharp[j];
  return v;
}

struct SL2Triple {
  ToralSolution u_S;
  RationalVector beta_sq;  // |beta_phi|^2 over S, exact
  std::vector<double> beta; // positive real square roots
  GElement u;               // u_S
  GElement v;               // v_S = sum beta_phi e_phi
  GElement v_bar;           // -rho(v_S)
};

struct SL2Certificate {
  double bracket_v_vbar = 0;  // |[v, -rho v] - 2u|
  double bracket_u_v = 0;     // |[u, v] - v|
  double bracket_u_vbar = 0;  // |[u, -rho v] + (-rho v)|
  Eigen::VectorXd span_eigenvalues;  // ad(u_S) on span{u, v, -rho v}, sorted
  bool all_positive = false;         // all |beta_phi|^2 > 0
  double max_residual() const { return std::max({bracket_v_vbar, bracket_u_v, bracket_u_vbar}); }
};

/// Solves sum_{phi in S} |beta_phi|^2 phi^# = 2 u_S exactly, picks beta_phi > 0 and assembles the triple.
/// A nonpositive |beta_phi|^2 is reported as a NumericError naming S.
inline SL2Triple compute_v_S(const LieAlgebra& lie, const RootSubset& s,
                             const std::vector<std::complex<double>>& phases = {}) {
  const RootSystem& rs = lie.root_system();
  SL2Triple t;
  t.u_S = compute_u_S(rs, s);
  const auto pi_q = rs.weight_one_eigenroots();
  std::string label;
  for (int i : s) label += (label.empty() ? "" : ",") + pi_q_label(i, rs.rank());
  // S is a basis of span(S), so the coefficients of 2 u_S over S are the |beta|^2.
  for (const Rational& c : t.u_S.coeffs) {
    t.beta_sq.push_back(2 * c);
    if (2 * c <= 0) throw NumericError("|beta_phi|^2 <= 0 for S = {" + label + "}");
    t.beta.push_back(std::sqrt(to_double(2 * c)));
  }
  const CartanInvolution rho(lie);
  t.u = GElement::Zero(lie.dim());
  for (int i = 0; i < rs.rank(); ++i) t.u[i] = to_double(t.u_S.sharp[i]);
  t.v = GElement::Zero(lie.dim());
  for (std::size_t a = 0; a < s.size(); ++a)
    t.v[lie.root_vector(pi_q[s[a]])] = t.beta[a] * (phases.empty() ? std::complex<double>(1.0) : phases[a]);
  t.v_bar = -rho.apply(t.v);
  return t;
}

inline SL2Certificate certify(const LieAlgebra& lie, const SL2Triple& t) {
  SL2Certificate c;
  c.bracket_v_vbar = (lie.bracket(t.v, t.v_bar) - 2.0 * t.u).cwiseAbs().maxCoeff();
  c.bracket_u_v = (lie.bracket(t.u, t.v) - t.v).cwiseAbs().maxCoeff();
  c.bracket_u_vbar = (lie.bracket(t.u, t.v_bar) + t.v_bar).cwiseAbs().maxCoeff();
  c.all_positive = std::all_of(t.beta_sq.begin(), t.beta_sq.end(), [](const Rational& q) { return q > 0; });

  Eigen::MatrixXcd basis(lie.dim(), 3);
  basis << t.u, t.v, t.v_bar;
  const Eigen::MatrixXcd image = lie.ad(t.u) * basis;
  const Eigen::MatrixXcd restricted = basis.colPivHouseholderQr().solve(image);
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(restricted, false);
  c.span_eigenvalues = es.eigenvalues().real();
  std::sort(c.span_eigenvalues.data(), c.span_eigenvalues.data() + c.span_eigenvalues.size());
  return c;
}

} // namespace lietoda
