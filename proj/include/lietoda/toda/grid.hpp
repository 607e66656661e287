#pragma once

// Uniform grids: rectangles in z = x + iy, log-polar annuli in (s, theta) with z = e^{s + i theta},
// and the one-dimensional radial grid in s. Node index = i * n2 + j with i along the first axis.

#include <cmath>
#include <complex>
#include <numbers>
#include <string>
#include <variant>

#include "../errors.hpp"

namespace lietoda {

/// [x0, x1] x [y0, y1] with nx, ny intervals.
struct Rectangle {
  double x0 = -1, x1 = 1, y0 = -1, y1 = 1;
  int nx = 16, ny = 16;
};

/// log r in [s0, s1] with ns intervals; ntheta nodes around the circle (periodic).
struct LogPolarAnnulus {
  double s0 = -1, s1 = 0;
  int ns = 16, ntheta = 16;

  static LogPolarAnnulus from_radii(double r_min, double r_max, int ns, int ntheta) {
    if (!(r_min > 0) || !(r_max > r_min)) throw InputError("annulus needs 0 < r_min < r_max");
    return {std::log(r_min), std::log(r_max), ns, ntheta};
  }
};

/// log r in [s0, s1] with ns intervals, for S^1-invariant data.
struct Radial {
  double s0 = -1, s1 = 0;
  int ns = 64;
};

using Domain = std::variant<Rectangle, LogPolarAnnulus, Radial>;

class Grid {
public:
  explicit Grid(const Domain& d) : domain_(d) {
    if (const auto* r = std::get_if<Rectangle>(&d)) {
      if (r->nx < 2 || r->ny < 2) throw InputError("rectangle needs nx, ny >= 2");
      if (!(r->x1 > r->x0) || !(r->y1 > r->y0) || !std::isfinite(r->x1 - r->x0) || !std::isfinite(r->y1 - r->y0))
        throw InputError("rectangle ranges must be finite and increasing");
      n1_ = r->nx + 1;
      n2_ = r->ny + 1;
      a1_ = r->x0;
      a2_ = r->y0;
      h1_ = (r->x1 - r->x0) / r->nx;
      h2_ = (r->y1 - r->y0) / r->ny;
    } else if (const auto* a = std::get_if<LogPolarAnnulus>(&d)) {
      if (a->ns < 2 || a->ntheta < 3) throw InputError("annulus needs ns >= 2 and ntheta >= 3");
      if (!(a->s1 > a->s0) || !std::isfinite(a->s0) || !std::isfinite(a->s1))
        throw InputError("annulus s-range must be finite and increasing");
      n1_ = a->ns + 1;
      n2_ = a->ntheta;
      a1_ = a->s0;
      h1_ = (a->s1 - a->s0) / a->ns;
      h2_ = 2 * std::numbers::pi / a->ntheta;
      periodic_ = true;
      log_polar_ = true;
    } else {
      const auto& r = std::get<Radial>(d);
      if (r.ns < 2) throw InputError("radial grid needs ns >= 2");
      if (!(r.s1 > r.s0) || !std::isfinite(r.s0) || !std::isfinite(r.s1))
        throw InputError("radial s-range must be finite and increasing");
      n1_ = r.ns + 1;
      n2_ = 1;
      a1_ = r.s0;
      h1_ = (r.s1 - r.s0) / r.ns;
      log_polar_ = true;
      second_axis_ = false;
    }
  }

  const Domain& domain() const { return domain_; }
  int n1() const { return n1_; }
  int n2() const { return n2_; }
  int nodes() const { return n1_ * n2_; }
  double h1() const { return h1_; }
  double h2() const { return h2_; }
  bool periodic() const { return periodic_; }
  bool log_polar() const { return log_polar_; }
  bool has_second_axis() const { return second_axis_; }
  bool is_radial() const { return !second_axis_; }

  int index(int i, int j) const { return i * n2_ + j; }
  int i_of(int k) const { return k / n2_; }
  int j_of(int k) const { return k % n2_; }

  /// First and second node coordinate: (x, y) on rectangles, (s, theta) otherwise.
  double c1(int k) const { return a1_ + i_of(k) * h1_; }
  double c2(int k) const { return second_axis_ ? a2_ + j_of(k) * h2_ : 0.0; }

  std::complex<double> z(int k) const {
    if (!log_polar_) return {c1(k), c2(k)};
    return std::polar(std::exp(c1(k)), c2(k));
  }

  /// Conformal factor: Delta_z = omega^{-1} (d1^2 + d2^2); e^{2s} in log-polar coordinates.
  double omega(int k) const { return log_polar_ ? std::exp(2 * c1(k)) : 1.0; }

  bool is_boundary(int k) const {
    const int i = i_of(k), j = j_of(k);
    if (i == 0 || i == n1_ - 1) return true;
    if (!periodic_ && second_axis_ && (j == 0 || j == n2_ - 1)) return true;
    return false;
  }

  /// Neighbours (i +- 1, j), (i, j +- 1) of an interior node; -1 marks an absent second axis.
  struct Stencil {
    int e, w, n, s;
  };
  Stencil stencil(int k) const {
    const int i = i_of(k), j = j_of(k);
    Stencil st{index(i + 1, j), index(i - 1, j), -1, -1};
    if (second_axis_) {
      st.n = index(i, periodic_ ? (j + 1) % n2_ : j + 1);
      st.s = index(i, periodic_ ? (j + n2_ - 1) % n2_ : j - 1);
    }
    return st;
  }

  std::string kind() const {
    if (std::holds_alternative<Rectangle>(domain_)) return "rectangle";
    if (std::holds_alternative<LogPolarAnnulus>(domain_)) return "annulus";
    return "radial";
  }

private:
  Domain domain_;
  int n1_ = 0, n2_ = 0;
  double a1_ = 0, a2_ = 0, h1_ = 0, h2_ = 0;
  bool periodic_ = false, log_polar_ = false, second_axis_ = true;
};

} // namespace lietoda
