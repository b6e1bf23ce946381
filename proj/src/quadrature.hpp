#ifndef QGEO_QUADRATURE_HPP
#define QGEO_QUADRATURE_HPP

#include <cmath>
#include <cstdlib>
#include <span>
#include <vector>

#include "types.hpp"

namespace qgeo {

/// Composite Simpson when the interval count is even, trapezoid otherwise.
inline double integrate_uniform(std::span<const double> f, double h) {
  const std::size_t n = f.size();
  if (n < 2) fail(Status::invalid_argument, "quadrature needs >= 2 samples");
  const std::size_t intervals = n - 1;
  if (intervals % 2 == 0) {
    double odd = 0.0, even = 0.0;
    for (std::size_t k = 1; k < intervals; k += 2) odd += f[k];
    for (std::size_t k = 2; k < intervals; k += 2) even += f[k];
    return h / 3.0 * (f[0] + f[n - 1] + 4.0 * odd + 2.0 * even);
  }
  double sum = 0.5 * (f[0] + f[n - 1]);
  for (std::size_t k = 1; k < intervals; ++k) sum += f[k];
  return sum * h;
}

/// Running integral by cumulative trapezoid; out[0] = 0.
inline std::vector<double> cumulative_trapezoid(std::span<const double> f, double h) {
  std::vector<double> out(f.size(), 0.0);
  for (std::size_t k = 1; k < f.size(); ++k) {
    out[k] = out[k - 1] + 0.5 * h * (f[k - 1] + f[k]);
  }
  return out;
}

/// Richardson error estimate: integrate again on every second sample and
/// scale the difference by the method order. With an even sample count the
/// comparison runs on the largest odd-count prefix, which still probes the
/// h-scaling of the same integrand.
inline double quadrature_error_estimate(std::span<const double> f, double h) {
  std::size_t n = f.size();
  if (n % 2 == 0) --n;
  if (n < 5) return std::numeric_limits<double>::quiet_NaN();
  const std::span<const double> g = f.subspan(0, n);
  std::vector<double> coarse;
  coarse.reserve((n + 1) / 2);
  for (std::size_t k = 0; k < n; k += 2) coarse.push_back(g[k]);
  const double fine_val = integrate_uniform(g, h);
  const double coarse_val = integrate_uniform(coarse, 2.0 * h);
  const bool both_simpson = (n - 1) % 2 == 0 && (coarse.size() - 1) % 2 == 0;
  const double order_factor = both_simpson ? 15.0 : 3.0;
  double est = std::abs(fine_val - coarse_val) / order_factor;
  // Floor: a constant integrand is integrated exactly; report roundoff scale.
  double abs_sum = 0.0;
  for (double v : g) abs_sum += std::abs(v);
  est = std::max(est, 8.0 * std::numeric_limits<double>::epsilon() * abs_sum * h);
  return est;
}

}  // namespace qgeo

#endif  // QGEO_QUADRATURE_HPP
