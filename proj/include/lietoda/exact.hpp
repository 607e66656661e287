#pragma once

// Exact scalars: rationals and finite sums of rational multiples of square roots.

#include <boost/multiprecision/cpp_int.hpp>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numeric>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "errors.hpp"

namespace lietoda {

using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

using RationalVector = std::vector<Rational>;
using RationalMatrix = std::vector<std::vector<Rational>>;

inline double to_double(const Rational& q) { return q.convert_to<double>(); }

inline std::string to_string(const Rational& q) {
  std::ostringstream os;
  os << boost::multiprecision::numerator(q);
  if (boost::multiprecision::denominator(q) != 1) os << '/' << boost::multiprecision::denominator(q);
  return os.str();
}

inline RationalMatrix rational_matrix(std::size_t rows, std::size_t cols) {
  return RationalMatrix(rows, RationalVector(cols, Rational(0)));
}

inline RationalMatrix transpose(const RationalMatrix& a) {
  if (a.empty()) return {};
  RationalMatrix t = rational_matrix(a[0].size(), a.size());
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < a[i].size(); ++j) t[j][i] = a[i][j];
  return t;
}

inline RationalMatrix multiply(const RationalMatrix& a, const RationalMatrix& b) {
  const std::size_t n = a.size(), m = b.empty() ? 0 : b[0].size(), k = b.size();
  RationalMatrix c = rational_matrix(n, m);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t l = 0; l < k; ++l) {
      if (a[i][l] == 0) continue;
      for (std::size_t j = 0; j < m; ++j) c[i][j] += a[i][l] * b[l][j];
    }
  return c;
}

inline RationalVector multiply(const RationalMatrix& a, const RationalVector& x) {
  RationalVector y(a.size(), Rational(0));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < x.size(); ++j) y[i] += a[i][j] * x[j];
  return y;
}

/// Gauss-Jordan solve of A X = B for square nonsingular A. Throws InputError when A is singular.
inline RationalMatrix solve(RationalMatrix a, RationalMatrix b) {
  const std::size_t n = a.size();
  const std::size_t m = b.empty() ? 0 : b[0].size();
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    while (piv < n && a[piv][col] == 0) ++piv;
    if (piv == n) throw InputError("singular rational system");
    std::swap(a[piv], a[col]);
    std::swap(b[piv], b[col]);
    const Rational inv = 1 / a[col][col];
    for (auto& v : a[col]) v *= inv;
    for (auto& v : b[col]) v *= inv;
    for (std::size_t r = 0; r < n; ++r) {
      if (r == col || a[r][col] == 0) continue;
      const Rational f = a[r][col];
      for (std::size_t j = 0; j < n; ++j) a[r][j] -= f * a[col][j];
      for (std::size_t j = 0; j < m; ++j) b[r][j] -= f * b[col][j];
    }
  }
  return b;
}

inline RationalVector solve(const RationalMatrix& a, const RationalVector& rhs) {
  RationalMatrix b = rational_matrix(rhs.size(), 1);
  for (std::size_t i = 0; i < rhs.size(); ++i) b[i][0] = rhs[i];
  const RationalMatrix x = solve(a, b);
  RationalVector out(rhs.size());
  for (std::size_t i = 0; i < rhs.size(); ++i) out[i] = x[i][0];
  return out;
}

inline RationalMatrix inverse(const RationalMatrix& a) {
  RationalMatrix id = rational_matrix(a.size(), a.size());
  for (std::size_t i = 0; i < a.size(); ++i) id[i][i] = 1;
  return solve(a, id);
}

/// Sylvester's criterion on leading principal minors, computed by exact elimination.
inline bool is_positive_definite(RationalMatrix a) {
  const std::size_t n = a.size();
  for (std::size_t col = 0; col < n; ++col) {
    if (a[col][col] <= 0) return false;
    for (std::size_t r = col + 1; r < n; ++r) {
      const Rational f = a[r][col] / a[col][col];
      for (std::size_t j = col; j < n; ++j) a[r][j] -= f * a[col][j];
    }
  }
  return true;
}

namespace detail {

inline std::int64_t to_int64(const BigInt& v) {
  if (v > std::numeric_limits<std::int64_t>::max() || v < std::numeric_limits<std::int64_t>::min())
    throw NumericError("integer too large for radical simplification");
  return v.convert_to<std::int64_t>();
}

/// Splits n > 0 as square * squarefree.
inline std::pair<std::int64_t, std::int64_t> split_square(std::int64_t n) {
  std::int64_t square_root = 1, free = 1;
  for (std::int64_t p = 2; p * p <= n; ++p) {
    int e = 0;
    while (n % p == 0) {
      n /= p;
      ++e;
    }
    for (int i = 0; i < e / 2; ++i) square_root *= p;
    if (e % 2) free *= p;
  }
  free *= n;
  return {square_root, free};
}

} // namespace detail

/// An element of the multiquadratic field Q(sqrt 2, sqrt 3, sqrt 5, ...): a finite sum
/// sum_k c_k sqrt(k) with rational c_k and distinct squarefree k >= 1. The square roots of
/// distinct squarefree integers are linearly independent over Q, so equality is decided
/// exactly by comparing the term lists.
class Surd {
public:
  Surd() = default;
  Surd(int v) : Surd(Rational(v)) {}
  Surd(const Rational& q) {
    if (q != 0) terms_.emplace_back(1, q);
  }

  /// sqrt(q) for rational q >= 0.
  static Surd sqrt(const Rational& q) {
    if (q < 0) throw InputError("square root of a negative rational");
    if (q == 0) return {};
    const std::int64_t num = detail::to_int64(boost::multiprecision::numerator(q));
    const std::int64_t den = detail::to_int64(boost::multiprecision::denominator(q));
    // sqrt(num/den) = sqrt(num*den)/den
    const auto [sq, free] = detail::split_square(num * den);
    Surd s;
    s.terms_.emplace_back(free, Rational(sq, den));
    return s;
  }

  bool is_zero() const { return terms_.empty(); }
  bool is_rational() const { return terms_.empty() || (terms_.size() == 1 && terms_[0].first == 1); }
  Rational rational_part() const {
    return (!terms_.empty() && terms_[0].first == 1) ? terms_[0].second : Rational(0);
  }
  const std::vector<std::pair<std::int64_t, Rational>>& terms() const { return terms_; }

  double to_double() const {
    double v = 0;
    for (const auto& [k, c] : terms_) v += lietoda::to_double(c) * std::sqrt(static_cast<double>(k));
    return v;
  }

  std::string to_string() const {
    if (terms_.empty()) return "0";
    std::string out;
    for (std::size_t i = 0; i < terms_.size(); ++i) {
      if (i) out += " + ";
      out += lietoda::to_string(terms_[i].second);
      if (terms_[i].first != 1) out += "*sqrt(" + std::to_string(terms_[i].first) + ")";
    }
    return out;
  }

  Surd operator-() const {
    Surd r = *this;
    for (auto& t : r.terms_) t.second = -t.second;
    return r;
  }

  Surd& operator+=(const Surd& o) {
    std::vector<std::pair<std::int64_t, Rational>> merged;
    merged.reserve(terms_.size() + o.terms_.size());
    auto a = terms_.cbegin();
    auto b = o.terms_.cbegin();
    while (a != terms_.cend() || b != o.terms_.cend()) {
      if (b == o.terms_.cend() || (a != terms_.cend() && a->first < b->first)) {
        merged.push_back(*a++);
      } else if (a == terms_.cend() || b->first < a->first) {
        merged.push_back(*b++);
      } else {
        Rational c = a->second + b->second;
        if (c != 0) merged.emplace_back(a->first, std::move(c));
        ++a;
        ++b;
      }
    }
    terms_ = std::move(merged);
    return *this;
  }
  Surd& operator-=(const Surd& o) { return *this += -o; }

  friend Surd operator+(Surd a, const Surd& b) { return a += b; }
  friend Surd operator-(Surd a, const Surd& b) { return a -= b; }

  friend Surd operator*(const Surd& a, const Surd& b) {
    Surd out;
    for (const auto& [ka, ca] : a.terms_)
      for (const auto& [kb, cb] : b.terms_) {
        const std::int64_t g = std::gcd(ka, kb);
        Surd t;
        t.terms_.emplace_back((ka / g) * (kb / g), ca * cb * g);
        out += t;
      }
    return out;
  }
  Surd& operator*=(const Surd& o) { return *this = *this * o; }

  friend bool operator==(const Surd& a, const Surd& b) { return a.terms_ == b.terms_; }
  friend bool operator!=(const Surd& a, const Surd& b) { return !(a == b); }

private:
  std::vector<std::pair<std::int64_t, Rational>> terms_;
};

} // namespace lietoda
