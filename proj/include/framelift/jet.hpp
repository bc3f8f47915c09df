#ifndef FRAMELIFT_JET_HPP
#define FRAMELIFT_JET_HPP

#include <array>
#include <cmath>
#include <cstring>

#include "framelift/errors.hpp"

namespace framelift {

// Truncated Taylor scalar: value plus partial derivatives up to third order
// with respect to the chart coordinates. Running a closed-form computation on
// Jet inputs yields exact derivatives of the output (no finite-difference
// truncation error), which is what the curvature and conservation checks need.
//
// Dimension is limited to kMaxDim. All scenes in the catalog are 2- or
// 4-dimensional; the epsilon machinery is 4-dimensional anyway.
class Jet {
 public:
  static constexpr int kMaxDim = 4;

  int dim = 0;    // number of chart coordinates
  int order = 0;  // 0..3: how many derivative levels are carried
  double v = 0.0;
  std::array<double, kMaxDim> d1{};
  std::array<double, kMaxDim * kMaxDim> d2{};
  std::array<double, kMaxDim * kMaxDim * kMaxDim> d3{};

  Jet() = default;
  Jet(int d, int ord, double value = 0.0) : dim(d), order(ord), v(value) {
    if (d < 1 || d > kMaxDim) throw DimensionError("jet dimension out of range");
  }

  // Seed for the coordinate x_i at value `value`: gradient is the unit vector.
  static Jet coordinate(int d, int ord, int i, double value) {
    Jet j(d, ord, value);
    if (ord >= 1) j.d1[i] = 1.0;
    return j;
  }

  static Jet constant(int d, int ord, double value) { return Jet(d, ord, value); }

  double& g1(int i) { return d1[i]; }
  double g1(int i) const { return d1[i]; }
  double& g2(int i, int j) { return d2[i * kMaxDim + j]; }
  double g2(int i, int j) const { return d2[i * kMaxDim + j]; }
  double& g3(int i, int j, int k) { return d3[(i * kMaxDim + j) * kMaxDim + k]; }
  double g3(int i, int j, int k) const { return d3[(i * kMaxDim + j) * kMaxDim + k]; }
};

namespace detail {
inline int common_order(const Jet& a, const Jet& b) {
  if (a.dim != b.dim) throw DimensionError("jet dimension mismatch");
  return a.order < b.order ? a.order : b.order;
}
}  // namespace detail

inline Jet operator-(const Jet& a) {
  Jet r = a;
  r.v = -r.v;
  for (double& x : r.d1) x = -x;
  for (double& x : r.d2) x = -x;
  for (double& x : r.d3) x = -x;
  return r;
}

inline Jet operator+(const Jet& a, const Jet& b) {
  int ord = detail::common_order(a, b);
  Jet r(a.dim, ord, a.v + b.v);
  const int n = a.dim;
  if (ord >= 1)
    for (int i = 0; i < n; ++i) r.g1(i) = a.g1(i) + b.g1(i);
  if (ord >= 2)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) r.g2(i, j) = a.g2(i, j) + b.g2(i, j);
  if (ord >= 3)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k) r.g3(i, j, k) = a.g3(i, j, k) + b.g3(i, j, k);
  return r;
}

inline Jet operator-(const Jet& a, const Jet& b) {
  int ord = detail::common_order(a, b);
  Jet r(a.dim, ord, a.v - b.v);
  const int n = a.dim;
  if (ord >= 1)
    for (int i = 0; i < n; ++i) r.g1(i) = a.g1(i) - b.g1(i);
  if (ord >= 2)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) r.g2(i, j) = a.g2(i, j) - b.g2(i, j);
  if (ord >= 3)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k) r.g3(i, j, k) = a.g3(i, j, k) - b.g3(i, j, k);
  return r;
}

inline Jet operator*(const Jet& a, const Jet& b) {
  int ord = detail::common_order(a, b);
  Jet r(a.dim, ord, a.v * b.v);
  const int n = a.dim;
  if (ord >= 1)
    for (int i = 0; i < n; ++i) r.g1(i) = a.g1(i) * b.v + a.v * b.g1(i);
  if (ord >= 2)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        r.g2(i, j) = a.g2(i, j) * b.v + a.g1(i) * b.g1(j) + a.g1(j) * b.g1(i) + a.v * b.g2(i, j);
  if (ord >= 3)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k)
          r.g3(i, j, k) = a.g3(i, j, k) * b.v + a.v * b.g3(i, j, k) +
                          a.g2(i, j) * b.g1(k) + a.g2(i, k) * b.g1(j) + a.g2(j, k) * b.g1(i) +
                          a.g1(i) * b.g2(j, k) + a.g1(j) * b.g2(i, k) + a.g1(k) * b.g2(i, j);
  return r;
}

// Composition with a scalar function given by its derivatives at a.v.
inline Jet jet_compose(const Jet& a, double f, double f1, double f2, double f3) {
  Jet r(a.dim, a.order, f);
  const int n = a.dim;
  if (a.order >= 1)
    for (int i = 0; i < n; ++i) r.g1(i) = f1 * a.g1(i);
  if (a.order >= 2)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) r.g2(i, j) = f2 * a.g1(i) * a.g1(j) + f1 * a.g2(i, j);
  if (a.order >= 3)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k)
          r.g3(i, j, k) = f3 * a.g1(i) * a.g1(j) * a.g1(k) +
                          f2 * (a.g2(i, j) * a.g1(k) + a.g2(i, k) * a.g1(j) + a.g2(j, k) * a.g1(i)) +
                          f1 * a.g3(i, j, k);
  return r;
}

inline Jet jet_recip(const Jet& a) {
  if (a.v == 0.0) throw DomainError("division by zero");
  double iv = 1.0 / a.v;
  return jet_compose(a, iv, -iv * iv, 2.0 * iv * iv * iv, -6.0 * iv * iv * iv * iv);
}

inline Jet operator/(const Jet& a, const Jet& b) { return a * jet_recip(b); }

inline Jet operator*(const Jet& a, double s) {
  Jet r = a;
  r.v *= s;
  for (double& x : r.d1) x *= s;
  for (double& x : r.d2) x *= s;
  for (double& x : r.d3) x *= s;
  return r;
}
inline Jet operator*(double s, const Jet& a) { return a * s; }
inline Jet operator/(const Jet& a, double s) { return a * (1.0 / s); }
inline Jet operator+(const Jet& a, double s) {
  Jet r = a;
  r.v += s;
  return r;
}
inline Jet operator+(double s, const Jet& a) { return a + s; }
inline Jet operator-(const Jet& a, double s) { return a + (-s); }
inline Jet operator-(double s, const Jet& a) { return (-a) + s; }

inline Jet& operator+=(Jet& a, const Jet& b) { return a = a + b; }
inline Jet& operator-=(Jet& a, const Jet& b) { return a = a - b; }

inline Jet sin(const Jet& a) {
  double s = std::sin(a.v), c = std::cos(a.v);
  return jet_compose(a, s, c, -s, -c);
}
inline Jet cos(const Jet& a) {
  double s = std::sin(a.v), c = std::cos(a.v);
  return jet_compose(a, c, -s, -c, s);
}
inline Jet tan(const Jet& a) {
  double t = std::tan(a.v);
  double s2 = 1.0 + t * t;  // sec^2
  return jet_compose(a, t, s2, 2.0 * t * s2, s2 * (2.0 * s2 + 4.0 * t * t));
}
inline Jet exp(const Jet& a) {
  double e = std::exp(a.v);
  return jet_compose(a, e, e, e, e);
}
inline Jet log(const Jet& a) {
  if (a.v <= 0.0) throw DomainError("log of non-positive argument");
  double iv = 1.0 / a.v;
  return jet_compose(a, std::log(a.v), iv, -iv * iv, 2.0 * iv * iv * iv);
}
inline Jet sqrt(const Jet& a) {
  if (a.v < 0.0) throw DomainError("sqrt of negative argument");
  if (a.v == 0.0 && a.order > 0) throw DomainError("sqrt not differentiable at zero");
  double s = std::sqrt(a.v);
  double i = 0.5 / s;
  return jet_compose(a, s, i, -0.5 * i / a.v, 0.75 * i / (a.v * a.v));
}
inline Jet abs(const Jet& a) {
  if (a.v == 0.0 && a.order > 0) throw DomainError("abs not differentiable at zero");
  return a.v < 0.0 ? -a : a;
}

inline Jet pow(const Jet& a, double c) {
  // Integer exponents keep negative bases legal, matching plain evaluation.
  if (c == std::floor(c) && std::fabs(c) < 1e9) {
    if (a.v == 0.0 && c < 0.0) throw DomainError("zero raised to negative power");
    double f = std::pow(a.v, c);
    double f1 = c == 0.0 ? 0.0 : c * std::pow(a.v, c - 1.0);
    double f2 = (c == 0.0 || c == 1.0) ? 0.0 : c * (c - 1.0) * std::pow(a.v, c - 2.0);
    double f3 = (c == 0.0 || c == 1.0 || c == 2.0) ? 0.0
                                                   : c * (c - 1.0) * (c - 2.0) * std::pow(a.v, c - 3.0);
    return jet_compose(a, f, f1, f2, f3);
  }
  if (a.v <= 0.0) throw DomainError("non-integer power of non-positive base");
  double f = std::pow(a.v, c);
  return jet_compose(a, f, c * f / a.v, c * (c - 1.0) * f / (a.v * a.v),
                     c * (c - 1.0) * (c - 2.0) * f / (a.v * a.v * a.v));
}

inline bool jet_is_constant(const Jet& b) {
  for (double x : b.d1)
    if (x != 0.0) return false;
  for (double x : b.d2)
    if (x != 0.0) return false;
  for (double x : b.d3)
    if (x != 0.0) return false;
  return true;
}

inline Jet pow(const Jet& a, const Jet& b) {
  if (b.order == 0 || jet_is_constant(b)) return pow(a, b.v);
  // General exponent: exp(b * log a), positive base required.
  return exp(b * log(a));
}

// Lower one derivative slot into a new jet: the returned jet represents
// d(a)/dx_k and carries one order less.
inline Jet jet_derivative(const Jet& a, int k) {
  if (a.order < 1) throw DimensionError("jet_derivative needs order >= 1");
  Jet r(a.dim, a.order - 1, a.g1(k));
  const int n = a.dim;
  if (r.order >= 1)
    for (int i = 0; i < n; ++i) r.g1(i) = a.g2(k, i);
  if (r.order >= 2)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) r.g2(i, j) = a.g3(k, i, j);
  return r;
}

}  // namespace framelift

#endif
