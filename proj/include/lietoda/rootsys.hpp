#pragma once

// Root systems of simple complex Lie algebras with Bourbaki numbering, built by exact
// reflection closure, together with the Kostant grading data (x0, highest root, h) and the
// Killing form restricted to the real Cartan subspace.

#include <algorithm>
#include <cctype>
#include <map>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "errors.hpp"
#include "exact.hpp"

namespace lietoda {

enum class Family { A, B, C, D, E, F, G };

struct SimpleType {
  Family family = Family::A;
  int rank = 1;

  /// Parses strings such as "A2", "g2", "E6".
  static SimpleType parse(std::string_view text);

  std::string name() const { return std::string(1, "ABCDEFG"[static_cast<int>(family)]) + std::to_string(rank); }

  bool is_valid() const {
    switch (family) {
      case Family::A: return rank >= 1;
      case Family::B: return rank >= 2;
      case Family::C: return rank >= 3;
      case Family::D: return rank >= 4;
      case Family::E: return rank >= 6 && rank <= 8;
      case Family::F: return rank == 4;
      case Family::G: return rank == 2;
    }
    return false;
  }

  friend bool operator==(const SimpleType&, const SimpleType&) = default;
};

inline SimpleType SimpleType::parse(std::string_view text) {
  if (text.size() < 2) throw InputError("bad Lie type '" + std::string(text) + "'");
  const char f = static_cast<char>(std::toupper(static_cast<unsigned char>(text[0])));
  if (f < 'A' || f > 'G') throw InputError("unknown family in '" + std::string(text) + "'");
  int rank = 0;
  for (char c : text.substr(1)) {
    if (!std::isdigit(static_cast<unsigned char>(c))) throw InputError("bad rank in '" + std::string(text) + "'");
    rank = rank * 10 + (c - '0');
    if (rank > 64) throw InputError("rank too large in '" + std::string(text) + "'");
  }
  SimpleType t{static_cast<Family>(f - 'A'), rank};
  if (!t.is_valid()) throw InputError("invalid rank for family: " + std::string(text));
  return t;
}

/// Integer coefficients of a root over the simple roots.
using Root = std::vector<int>;

inline int height(const Root& r) {
  int h = 0;
  for (int c : r) h += c;
  return h;
}

inline Root negate(Root r) {
  for (int& c : r) c = -c;
  return r;
}

inline Root add(Root a, const Root& b) {
  for (std::size_t i = 0; i < a.size(); ++i) a[i] += b[i];
  return a;
}

inline Root subtract(Root a, const Root& b) {
  for (std::size_t i = 0; i < a.size(); ++i) a[i] -= b[i];
  return a;
}

inline bool is_positive(const Root& r) {
  return std::all_of(r.begin(), r.end(), [](int c) { return c >= 0; }) && height(r) > 0;
}

/// Bourbaki-normalized invariant form (alpha_i, alpha_j) on the simple roots, integer-valued
/// (short roots of B/F have squared length 1 and are doubled to keep everything integral).
inline std::vector<std::vector<int>> standard_form(const SimpleType& type) {
  const int n = type.rank;
  std::vector<std::vector<int>> f(n, std::vector<int>(n, 0));
  auto link = [&](int i, int j, int v) { f[i][j] = f[j][i] = v; };
  switch (type.family) {
    case Family::A:
      for (int i = 0; i < n; ++i) f[i][i] = 2;
      for (int i = 0; i + 1 < n; ++i) link(i, i + 1, -1);
      break;
    case Family::B:  // long roots length^2 4, short 2
      for (int i = 0; i < n; ++i) f[i][i] = 4;
      f[n - 1][n - 1] = 2;
      for (int i = 0; i + 1 < n; ++i) link(i, i + 1, -2);
      break;
    case Family::C:
      for (int i = 0; i < n; ++i) f[i][i] = 2;
      f[n - 1][n - 1] = 4;
      for (int i = 0; i + 2 < n; ++i) link(i, i + 1, -1);
      link(n - 2, n - 1, -2);
      break;
    case Family::D:
      for (int i = 0; i < n; ++i) f[i][i] = 2;
      for (int i = 0; i + 2 < n; ++i) link(i, i + 1, -1);
      link(n - 3, n - 1, -1);
      break;
    case Family::E:
      for (int i = 0; i < n; ++i) f[i][i] = 2;
      link(0, 2, -1);
      link(1, 3, -1);
      for (int i = 2; i + 1 < n; ++i) link(i, i + 1, -1);
      break;
    case Family::F:
      f[0][0] = f[1][1] = 4;
      f[2][2] = f[3][3] = 2;
      link(0, 1, -2);
      link(1, 2, -2);
      link(2, 3, -1);
      break;
    case Family::G:
      f[0][0] = 2;
      f[1][1] = 6;
      link(0, 1, -3);
      break;
  }
  return f;
}

/// Result of grading_piece: the roots of Kostant height j, plus the Cartan subalgebra when j = 0.
struct GradingPiece {
  bool includes_cartan = false;
  std::vector<Root> roots;
};

class RootSystem {
public:
  explicit RootSystem(const SimpleType& type);

  const SimpleType& type() const { return type_; }
  int rank() const { return type_.rank; }
  int dim() const { return rank() + 2 * static_cast<int>(positive_.size()); }

  /// cartan()[i][j] = <alpha_i, alpha_j^vee> = 2 (alpha_i, alpha_j) / (alpha_j, alpha_j).
  const std::vector<std::vector<int>>& cartan() const { return cartan_; }
  /// Simple roots as exact vectors in the l-dimensional weight space (fundamental-weight coordinates).
  const std::vector<RationalVector>& simple_roots() const { return simple_roots_; }

  /// Positive roots ordered by height, ties broken by descending lexicographic coefficients.
  const std::vector<Root>& positive_roots() const { return positive_; }
  /// All roots: positives in order, then their negatives in the same order.
  std::vector<Root> roots() const;
  bool is_root(const Root& r) const { return index_.count(r) > 0; }
  /// Index into roots(); -1 when r is not a root.
  int root_index(const Root& r) const {
    auto it = index_.find(r);
    return it == index_.end() ? -1 : it->second;
  }

  const Root& highest_root() const { return positive_.back(); }
  /// Height of the highest root, psi(x0).
  int h() const { return height(highest_root()); }

  /// Killing form on t in the coroot basis: B(alpha_i^vee, alpha_j^vee).
  const RationalMatrix& killing_gram() const { return killing_coroot_; }
  /// Killing form on t_R in the basis {alpha_i^#}: (alpha_i, alpha_j) = B(alpha_i^#, alpha_j^#).
  const RationalMatrix& root_gram() const { return root_gram_; }
  /// Inverse of root_gram(): B(eps_i, eps_j) for the dual basis alpha_i(eps_j) = delta_ij.
  const RationalMatrix& dual_gram() const { return dual_gram_; }

  /// Killing pairing of two roots (or any integer combinations of simple roots).
  Rational pairing(const Root& a, const Root& b) const {
    Rational s = 0;
    for (int i = 0; i < rank(); ++i)
      for (int j = 0; j < rank(); ++j)
        if (a[i] && b[j]) s += root_gram_[i][j] * a[i] * b[j];
    return s;
  }

  /// <beta, alpha_i^vee>.
  int coroot_pairing(const Root& beta, int i) const {
    int s = 0;
    for (int j = 0; j < rank(); ++j) s += beta[j] * cartan_[j][i];
    return s;
  }

  Root simple_root(int i) const {
    Root r(rank(), 0);
    r[i] = 1;
    return r;
  }

  Root reflect(const Root& beta, int i) const {
    Root r = beta;
    r[i] -= coroot_pairing(beta, i);
    return r;
  }

  GradingPiece grading_piece(int j) const;

  /// Pi^Q = {alpha_1, ..., alpha_l, -psi}, in that order.
  std::vector<Root> weight_one_eigenroots() const;

  /// Coefficients psi_i of the highest root.
  const Root& psi() const { return highest_root(); }

private:
  SimpleType type_;
  std::vector<std::vector<int>> form_;
  std::vector<std::vector<int>> cartan_;
  std::vector<RationalVector> simple_roots_;
  std::vector<Root> positive_;
  std::map<Root, int> index_;
  RationalMatrix killing_coroot_;
  RationalMatrix root_gram_;
  RationalMatrix dual_gram_;
};

/// Closure of a set of roots under all simple reflections.
inline std::set<Root> reflection_closure(const RootSystem& rs, std::set<Root> seed) {
  std::vector<Root> frontier(seed.begin(), seed.end());
  while (!frontier.empty()) {
    std::vector<Root> next;
    for (const Root& r : frontier)
      for (int i = 0; i < rs.rank(); ++i) {
        Root s = rs.reflect(r, i);
        if (seed.insert(s).second) next.push_back(std::move(s));
      }
    frontier = std::move(next);
  }
  return seed;
}

inline RootSystem::RootSystem(const SimpleType& type) : type_(type) {
  if (!type.is_valid()) throw InputError("invalid rank for family: " + type.name());
  const int n = type.rank;
  form_ = standard_form(type);
  cartan_.assign(n, std::vector<int>(n, 0));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) cartan_[i][j] = 2 * form_[i][j] / form_[j][j];
  for (int i = 0; i < n; ++i) {
    RationalVector v(n);
    for (int j = 0; j < n; ++j) v[j] = cartan_[i][j];
    simple_roots_.push_back(std::move(v));
  }

  std::set<Root> seed;
  for (int i = 0; i < n; ++i) seed.insert(simple_root(i));
  for (const Root& r : reflection_closure(*this, seed))
    if (is_positive(r)) positive_.push_back(r);
  std::sort(positive_.begin(), positive_.end(), [](const Root& a, const Root& b) {
    if (height(a) != height(b)) return height(a) < height(b);
    return a > b;
  });
  const int np = static_cast<int>(positive_.size());
  for (int k = 0; k < np; ++k) {
    index_[positive_[k]] = k;
    index_[negate(positive_[k])] = np + k;
  }
  if (height(positive_[np - 1]) == (np > 1 ? height(positive_[np - 2]) : 0))
    throw NumericError("highest root is not unique");

  // B(H_i, H_j) = sum over all roots of phi(H_i) phi(H_j).
  killing_coroot_ = rational_matrix(n, n);
  for (const Root& r : positive_)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) killing_coroot_[i][j] += 2 * coroot_pairing(r, i) * coroot_pairing(r, j);

  // alpha_i^# = sum_k c_ik H_k with B(alpha_i^#, H_j) = alpha_i(H_j); then
  // (alpha_i, alpha_j) = alpha_j(alpha_i^#), i.e. root_gram = A^T K^{-1} A with A_kj = alpha_j(H_k).
  RationalMatrix a = rational_matrix(n, n);
  for (int k = 0; k < n; ++k)
    for (int j = 0; j < n; ++j) a[k][j] = cartan_[j][k];
  root_gram_ = multiply(transpose(a), solve(killing_coroot_, a));
  dual_gram_ = inverse(root_gram_);
}

inline std::vector<Root> RootSystem::roots() const {
  std::vector<Root> all = positive_;
  for (const Root& r : positive_) all.push_back(negate(r));
  return all;
}

inline GradingPiece RootSystem::grading_piece(int j) const {
  GradingPiece piece;
  piece.includes_cartan = (j == 0);
  if (j == 0 || std::abs(j) > h()) return piece;
  for (const Root& r : positive_)
    if (height(r) == std::abs(j)) piece.roots.push_back(j > 0 ? r : negate(r));
  return piece;
}

inline std::vector<Root> RootSystem::weight_one_eigenroots() const {
  std::vector<Root> out;
  for (int i = 0; i < rank(); ++i) out.push_back(simple_root(i));
  out.push_back(negate(highest_root()));
  return out;
}

/// Dimension of the simple Lie algebra from the classification tables.
inline int classical_dimension(const SimpleType& t) {
  const int l = t.rank;
  switch (t.family) {
    case Family::A: return l * (l + 2);
    case Family::B:
    case Family::C: return l * (2 * l + 1);
    case Family::D: return l * (2 * l - 1);
    case Family::E: return l == 6 ? 78 : l == 7 ? 133 : 248;
    case Family::F: return 52;
    case Family::G: return 14;
  }
  return 0;
}

/// Formats a root as e.g. "alpha_1+2alpha_2" or "-psi"-free plain coefficient text.
inline std::string root_label(const Root& r) {
  std::string out;
  for (std::size_t i = 0; i < r.size(); ++i) {
    if (r[i] == 0) continue;
    if (r[i] < 0) out += '-';
    else if (!out.empty()) out += '+';
    if (std::abs(r[i]) != 1) out += std::to_string(std::abs(r[i]));
    out += "alpha_" + std::to_string(i + 1);
  }
  return out.empty() ? "0" : out;
}

} // namespace lietoda
