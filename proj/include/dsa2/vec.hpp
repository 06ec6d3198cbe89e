#pragma once

#include <cmath>
#include <cstddef>
#include <span>
#include <vector>

namespace dsa2 {

// Row-major dense matrix. Rows index agents, columns index coordinates;
// kept deliberately dumb (no expression templates, no views beyond row()).
struct Mat {
  int rows = 0;
  int cols = 0;
  std::vector<double> a;

  Mat() = default;
  Mat(int r, int c, double fill = 0.0) : rows(r), cols(c), a(static_cast<size_t>(r) * c, fill) {}

  double& at(int i, int j) { return a[static_cast<size_t>(i) * cols + j]; }
  double at(int i, int j) const { return a[static_cast<size_t>(i) * cols + j]; }

  std::span<double> row(int i) { return {a.data() + static_cast<size_t>(i) * cols, static_cast<size_t>(cols)}; }
  std::span<const double> row(int i) const {
    return {a.data() + static_cast<size_t>(i) * cols, static_cast<size_t>(cols)};
  }
};

inline double dot(std::span<const double> x, std::span<const double> y) {
  double s = 0.0;
  for (size_t k = 0; k < x.size(); ++k) s += x[k] * y[k];
  return s;
}

inline double l1_norm(std::span<const double> x) {
  double s = 0.0;
  for (double v : x) s += std::fabs(v);
  return s;
}

inline double l2_norm(std::span<const double> x) {
  double s = 0.0;
  for (double v : x) s += v * v;
  return std::sqrt(s);
}

inline double linf_norm(std::span<const double> x) {
  double s = 0.0;
  for (double v : x)
    if (std::fabs(v) > s) s = std::fabs(v);
  return s;
}

inline double linf_dist(std::span<const double> x, std::span<const double> y) {
  double s = 0.0;
  for (size_t k = 0; k < x.size(); ++k) {
    double d = std::fabs(x[k] - y[k]);
    if (d > s) s = d;
  }
  return s;
}

}  // namespace dsa2
