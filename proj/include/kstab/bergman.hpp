#pragma once

// Bergman potentials along a one-parameter subgroup: with t = e^{s/2},
//   phi_s(z) = log( sum_j e^{s m_j} |z_j|^2 / sum_j |z_j|^2 ),
// its s-derivative (a softmax average of the weights), and its holomorphic
// zeta-derivative along a lifted curve. All evaluated with max-exponent
// factoring so deep rays (s ~ -14 and beyond) stay in range.

#include <array>
#include <cmath>
#include <complex>
#include <limits>

#include "kstab/complexpoly.hpp"
#include "kstab/ideal.hpp"

namespace kstab {

namespace detail {

// log sum_j e^{s m_j} |z_j|^2, stable.
inline double lse_weighted(const OneParamSubgroup& lam, double s, const std::array<cdouble, 3>& z) {
  double amax = -std::numeric_limits<double>::infinity();
  std::array<double, 3> a{};
  for (int j = 0; j < 3; ++j) {
    const double n = std::norm(z[j]);
    a[j] = n > 0 ? s * lam.w[j] + std::log(n) : -std::numeric_limits<double>::infinity();
    amax = std::max(amax, a[j]);
  }
  double acc = 0;
  for (int j = 0; j < 3; ++j)
    if (a[j] > -std::numeric_limits<double>::infinity()) acc += std::exp(a[j] - amax);
  return amax + std::log(acc);
}

}  // namespace detail

inline double bergman_potential(const OneParamSubgroup& lam, double s, const std::array<cdouble, 3>& z) {
  return detail::lse_weighted(lam, s, z) - detail::lse_weighted(lam, 0.0, z);
}

// d/ds of the potential: softmax-weighted average of the weights m_j,
// always inside [min_j m_j, max_j m_j].
inline double bergman_potential_dot(const OneParamSubgroup& lam, double s, const std::array<cdouble, 3>& z) {
  double amax = -std::numeric_limits<double>::infinity();
  std::array<double, 3> a{};
  for (int j = 0; j < 3; ++j) {
    const double n = std::norm(z[j]);
    a[j] = n > 0 ? s * lam.w[j] + std::log(n) : -std::numeric_limits<double>::infinity();
    amax = std::max(amax, a[j]);
  }
  double num = 0, den = 0;
  for (int j = 0; j < 3; ++j) {
    if (a[j] == -std::numeric_limits<double>::infinity()) continue;
    const double e = std::exp(a[j] - amax);
    num += lam.w[j] * e;
    den += e;
  }
  return num / den;
}

// d(phi_s)/d(zeta) along a holomorphic lift Z(zeta):
//   <Q', Q>/||Q||^2 - <Z', Z>/||Z||^2 with Q_j = e^{s m_j / 2} Z_j.
inline cdouble bergman_potential_zeta(const OneParamSubgroup& lam, double s,
                                      const std::array<cdouble, 3>& z,
                                      const std::array<cdouble, 3>& zp) {
  // factor out the largest weight to keep e^{s m_j} in range
  double wmax = -std::numeric_limits<double>::infinity();
  for (int j = 0; j < 3; ++j) wmax = std::max(wmax, s * lam.w[j]);
  cdouble numw = 0.0, numu = 0.0;
  double denw = 0.0, denu = 0.0;
  for (int j = 0; j < 3; ++j) {
    const double qw = std::exp(s * lam.w[j] - wmax);
    numw += qw * zp[j] * std::conj(z[j]);
    denw += qw * std::norm(z[j]);
    numu += zp[j] * std::conj(z[j]);
    denu += std::norm(z[j]);
  }
  return numw / denw - numu / denu;
}

}  // namespace kstab
