#pragma once

// Higgs fields theta = sum_{phi in Pi^Q} f_phi(z) e_phi dz with Laurent polynomial coefficients.

#include <complex>
#include <limits>
#include <optional>
#include <utility>
#include <vector>

#include "../errors.hpp"
#include "../rootsys.hpp"
#include "../split.hpp"

namespace lietoda {

struct LaurentTerm {
  int k = 0;
  std::complex<double> c;
};

/// f(z) = sum c_k z^k.
struct LaurentSeries {
  std::vector<LaurentTerm> terms;

  static LaurentSeries monomial(std::complex<double> c, int k) { return {{{k, c}}}; }
  static LaurentSeries constant(std::complex<double> c) { return monomial(c, 0); }

  bool is_zero() const {
    for (const auto& t : terms)
      if (t.c != 0.0) return false;
    return true;
  }
  bool is_monomial() const {
    int nonzero = 0;
    for (const auto& t : terms)
      if (t.c != 0.0) ++nonzero;
    return nonzero <= 1;
  }
  bool has_pole_at_zero() const {
    for (const auto& t : terms)
      if (t.c != 0.0 && t.k < 0) return true;
    return false;
  }
  /// Lowest exponent with nonzero coefficient; empty for f = 0.
  std::optional<int> order() const {
    std::optional<int> o;
    for (const auto& t : terms)
      if (t.c != 0.0 && (!o || t.k < *o)) o = t.k;
    return o;
  }
  std::complex<double> operator()(std::complex<double> z) const {
    std::complex<double> v = 0;
    for (const auto& t : terms)
      if (t.c != 0.0) v += t.c * std::pow(z, t.k);
    return v;
  }
};

/// One Laurent series per element of Pi^Q (alpha_1..alpha_l, -psi).
struct HiggsCoefficient {
  std::vector<LaurentSeries> f;

  static HiggsCoefficient constant(const CyclicElement& b) {
    HiggsCoefficient h;
    for (const auto& x : b.b) h.f.push_back(LaurentSeries::constant(x));
    return h;
  }

  /// theta = sum_i e_{alpha_i} dz/z + z^{h+1} e_{-psi} dz/z.
  static HiggsCoefficient homogeneous(const RootSystem& rs) {
    HiggsCoefficient h;
    for (int i = 0; i < rs.rank(); ++i) h.f.push_back(LaurentSeries::monomial(1.0, -1));
    h.f.push_back(LaurentSeries::monomial(1.0, rs.h()));
    return h;
  }

  void validate(const RootSystem& rs) const {
    if (static_cast<int>(f.size()) != rs.rank() + 1) throw InputError("higgs field needs one series per element of Pi^Q");
    bool any = false;
    for (const auto& s : f) any = any || !s.is_zero();
    if (!any) throw InputError("higgs field is identically zero");
  }

  bool is_monomial() const {
    for (const auto& s : f)
      if (!s.is_monomial()) return false;
    return true;
  }
  bool has_pole_at_zero() const {
    for (const auto& s : f)
      if (s.has_pole_at_zero()) return true;
    return false;
  }
};

/// ord_0 o(theta) = sum_i psi_i ord f_{alpha_i} + ord f_{-psi}; empty when some f_phi vanishes identically.
inline std::optional<int> o_order(const RootSystem& rs, const HiggsCoefficient& theta) {
  int m = 0;
  for (int i = 0; i <= rs.rank(); ++i) {
    const auto o = theta.f.at(i).order();
    if (!o) return std::nullopt;
    m += (i < rs.rank() ? rs.psi()[i] : 1) * *o;
  }
  return m;
}

} // namespace lietoda
