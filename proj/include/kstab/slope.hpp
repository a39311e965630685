#pragma once

// Ordinary least-squares line fit over an s-window: extracts the log|t|^2
// coefficient of asymptotically linear quantities. Residuals are always
// reported alongside the slope.

#include <cmath>
#include <stdexcept>
#include <utility>
#include <vector>

namespace kstab {

struct SlopeFit {
  double slope = 0;
  double intercept = 0;
  double residual_rms = 0;
  double window_lo = 0, window_hi = 0;
  int sample_count = 0;
};

inline SlopeFit slope_fit(const std::vector<std::pair<double, double>>& samples, double window_lo,
                          double window_hi) {
  std::vector<std::pair<double, double>> in;
  for (const auto& [s, v] : samples)
    if (s >= window_lo && s <= window_hi && std::isfinite(v)) in.push_back({s, v});
  if (in.size() < 4) throw std::invalid_argument("slope fit needs at least 4 samples in the window");
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const double n = double(in.size());
  for (const auto& [x, y] : in) {
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  const double det = n * sxx - sx * sx;
  SlopeFit fit;
  fit.slope = (n * sxy - sx * sy) / det;
  fit.intercept = (sy - fit.slope * sx) / n;
  double r2 = 0;
  for (const auto& [x, y] : in) {
    const double r = y - (fit.slope * x + fit.intercept);
    r2 += r * r;
  }
  fit.residual_rms = std::sqrt(r2 / n);
  fit.window_lo = window_lo;
  fit.window_hi = window_hi;
  fit.sample_count = int(in.size());
  return fit;
}

}  // namespace kstab
