#ifndef FRAMELIFT_TENSORS_HPP
#define FRAMELIFT_TENSORS_HPP

#include <array>
#include <cmath>
#include <cstdlib>

namespace framelift {

// Fixed-capacity dense containers for per-point tensor components. The chart
// dimension is at most Jet::kMaxDim = 4; loops run over the live prefix m.
inline constexpr int kMaxDim = 4;

using Vec = std::array<double, kMaxDim>;
using Mat = std::array<std::array<double, kMaxDim>, kMaxDim>;
using Ten3 = std::array<Mat, kMaxDim>;
using Ten4 = std::array<Ten3, kMaxDim>;

inline Vec zero_vec() { return Vec{}; }
inline Mat zero_mat() { return Mat{}; }
inline Ten3 zero_ten3() { return Ten3{}; }
inline Ten4 zero_ten4() { return Ten4{}; }

// Flat indexing for std::vector-backed jet grids.
inline int ix2(int m, int a, int b) { return a * m + b; }
inline int ix3(int m, int a, int b, int c) { return (a * m + b) * m + c; }
inline int ix4(int m, int a, int b, int c, int d) { return ((a * m + b) * m + c) * m + d; }

inline double max_abs(const Vec& v, int m) {
  double r = 0;
  for (int i = 0; i < m; ++i) r = std::max(r, std::fabs(v[i]));
  return r;
}

inline double max_abs(const Mat& v, int m) {
  double r = 0;
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) r = std::max(r, std::fabs(v[i][j]));
  return r;
}

inline double max_abs(const Ten3& v, int m) {
  double r = 0;
  for (int i = 0; i < m; ++i) r = std::max(r, max_abs(v[i], m));
  return r;
}

inline double max_abs(const Ten4& v, int m) {
  double r = 0;
  for (int i = 0; i < m; ++i) r = std::max(r, max_abs(v[i], m));
  return r;
}

inline double max_abs_diff(const Mat& a, const Mat& b, int m) {
  double r = 0;
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) r = std::max(r, std::fabs(a[i][j] - b[i][j]));
  return r;
}

}  // namespace framelift

#endif
