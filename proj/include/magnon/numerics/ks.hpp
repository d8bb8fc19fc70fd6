#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <span>
#include <vector>

#include "magnon/error.hpp"

namespace magnon::numerics {

/// Two-sided Kolmogorov-Smirnov distance for an already sorted sample whose
/// model CDF values have been evaluated at each point.
inline double ks_statistic_sorted(std::span<const double> sorted, std::span<const double> cdf_values) {
  if (sorted.empty()) throw EmptySample("KS statistic of an empty sample");
  if (sorted.size() != cdf_values.size()) throw ShapeError("KS statistic: sample and CDF values differ in length");
  const double n = static_cast<double>(sorted.size());
  double d = 0.0;
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    const double f = cdf_values[i];
    d = std::max({d, static_cast<double>(i + 1) / n - f, f - static_cast<double>(i) / n});
  }
  return d;
}

/// sup_x |F_n(x) - F(x)| for the empirical CDF F_n of `sample`.
inline double ks_statistic(std::span<const double> sample, const std::function<double(double)>& cdf) {
  if (sample.empty()) throw EmptySample("KS statistic of an empty sample");
  std::vector<double> sorted(sample.begin(), sample.end());
  std::sort(sorted.begin(), sorted.end());
  std::vector<double> f(sorted.size());
  std::transform(sorted.begin(), sorted.end(), f.begin(), cdf);
  return ks_statistic_sorted(sorted, f);
}

} // namespace magnon::numerics
