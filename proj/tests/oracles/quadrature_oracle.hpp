#pragma once

// Tensor midpoint rule on [0,1]^2 with n x n points, evaluating the density on
// the exact (continuum) gradient.  Uses long double accumulation.

#include <functional>

namespace ghostlab::oracle {

inline double midpoint_quadrature(const std::function<double(double, double)>& g, int n) {
  long double sum = 0.0L;
  const double h = 1.0 / n;
  for (int j = 0; j < n; ++j) {
    long double row = 0.0L;
    for (int i = 0; i < n; ++i) row += g((i + 0.5) * h, (j + 0.5) * h);
    sum += row;
  }
  return static_cast<double>(sum * h * h);
}

}  // namespace ghostlab::oracle
