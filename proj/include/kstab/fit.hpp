#pragma once

// Exact polynomial interpolation with surplus-sample validation. The fit is
// taken through the first degree+1 samples; every remaining sample must lie
// on the interpolant exactly, otherwise the data was not yet polynomial
// ("insufficient regularity").

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "kstab/linalg.hpp"
#include "kstab/rational.hpp"
#include "kstab/unipoly.hpp"

namespace kstab {

struct FitError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

inline UniPolyQ vandermonde_fit(const std::vector<std::pair<long, Rational>>& samples, int degree) {
  if (degree < 0) throw std::invalid_argument("vandermonde_fit: negative degree");
  const size_t need = static_cast<size_t>(degree) + 1;
  if (samples.size() < need)
    throw std::invalid_argument("vandermonde_fit: fewer samples than coefficients");
  for (size_t i = 0; i < samples.size(); ++i)
    for (size_t j = i + 1; j < samples.size(); ++j)
      if (samples[i].first == samples[j].first)
        throw std::invalid_argument("vandermonde_fit: repeated sample point");

  QMatrix a(need, std::vector<Rational>(need));
  std::vector<Rational> b(need);
  for (size_t i = 0; i < need; ++i) {
    Rational p(1);
    const Rational x(samples[i].first);
    for (size_t j = 0; j < need; ++j) {
      a[i][j] = p;
      p *= x;
    }
    b[i] = samples[i].second;
  }
  UniPolyQ fit(qsolve(std::move(a), std::move(b)));

  for (size_t i = need; i < samples.size(); ++i) {
    if (fit.eval(Rational(samples[i].first)) != samples[i].second)
      throw FitError("insufficient regularity: surplus sample at m=" +
                     std::to_string(samples[i].first) + " off the degree-" +
                     std::to_string(degree) + " interpolant");
  }
  return fit;
}

}  // namespace kstab
