#pragma once

// The discrepancy function Psi of a plane curve and its fiber integral:
//   Psi(f, z) = log( sum_i |df/dz_i(z)|^2 / ( |||f|||^2 ||z||^{2(d-1)} ) ),
// |||.||| the coefficient l2-norm. Psi is invariant under scaling of f and
// of z, so it descends to the family-of-curves picture. Psi_S(s) integrates
// Psi over the translated curve V(f o lambda(s)^{-1}) against the
// (unnormalized) restricted Fubini-Study form, each s with its own
// quadrature substrate.

#include <array>
#include <cmath>
#include <limits>
#include <string>

#include "kstab/complexpoly.hpp"
#include "kstab/curve.hpp"
#include "kstab/ideal.hpp"
#include "kstab/multipoly.hpp"

namespace kstab {

inline double psi_pointwise(const CPoly3& f, const std::array<cdouble, 3>& z) {
  const auto g = f.grad(z);
  const double sumg = std::norm(g[0]) + std::norm(g[1]) + std::norm(g[2]);
  const double n2 = std::norm(z[0]) + std::norm(z[1]) + std::norm(z[2]);
  const double l2 = f.coeff_l2();
  return std::log(sumg) - 2.0 * std::log(l2) - (f.degree() - 1) * std::log(n2);
}

inline double psi_pointwise(const MultiPoly& f, const std::array<cdouble, 3>& z) {
  return psi_pointwise(CPoly3::from_exact(f), z);
}

// Integral of Psi(f, .) over the substrate curve against omega_FS|_X
// (total mass d, not normalized).
inline double psi_fiber_integral(const CurveSampleSet& set, const CPoly3& f) {
  double acc = 0;
  for (const auto& pt : set.pts) acc += psi_pointwise(f, pt.z) * pt.density_fs * pt.area_zeta;
  return acc;
}

struct PsiResult {
  double value = std::numeric_limits<double>::quiet_NaN();
  bool ok = false;
  std::string flag;
};

inline PsiResult psi_s(const CPoly3& f, const OneParamSubgroup& lam, double s, GridSpec grid = {}) {
  PsiResult res;
  const CPoly3 ft = f.lambda_translate(lam, s);
  grid.allow_near_singular = true;  // deep translates approach the limit cycle
  CurveSampleSet sub;
  try {
    sub = curve_sample(ft, grid);
  } catch (const std::exception& e) {
    res.flag = std::string("fiber substrate failed: ") + e.what();
    return res;
  }
  if (sub.pts.empty()) {
    res.flag = "fiber carries no samples";
    return res;
  }
  if (sub.near_singular && sub.min_grad_ratio < 1e-12) {
    // the gradient only differs from zero at roundoff level (exactly
    // degenerate fibers measure ~1e-16; genuine deep translates stay above
    // ~1e-6, limited by the grid distance to the singular point), so the
    // value of Psi would reflect root-finder noise, not the fiber
    res.flag = "fiber too singular to sample";
    return res;
  }
  res.value = psi_fiber_integral(sub, ft);
  res.ok = std::isfinite(res.value);
  if (!res.ok) res.flag = "fiber too singular to sample";
  if (sub.near_singular && res.flag.empty()) res.flag = "near-singular fiber";
  return res;
}

inline PsiResult psi_s(const MultiPoly& f, const OneParamSubgroup& lam, double s, GridSpec grid = {}) {
  return psi_s(CPoly3::from_exact(f), lam, s, grid);
}

}  // namespace kstab
