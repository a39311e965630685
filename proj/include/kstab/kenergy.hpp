#pragma once

// Scalar curvature, the Aubin I/J functionals, oscillation, relative
// entropy, and the Mabuchi K-energy along a Bergman ray, all on the
// curve_sample substrate.
//
// Conventions (used consistently everywhere): omega_FS integrates to 1 on
// a line, so Vol(X) = d; on curves Scal := Ric/omega with
// Ric = -(i/2pi) ddbar log(density), so that  int Scal omega = chi(X) and
// mu = chi/d. In the local holomorphic coordinate zeta this reads
//   Scal = - Lap_zeta log D / (4 D),   D = pi * (stored density).
// The Laplacian is evaluated by 5-point differencing at steps h and h/2
// with Richardson extrapolation; |L(h/2)-L(h)|/3 is the error estimate.

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

#include "kstab/bergman.hpp"
#include "kstab/curve.hpp"
#include "kstab/ideal.hpp"
#include "kstab/parallel.hpp"
#include "kstab/psi.hpp"

namespace kstab {

inline int euler_characteristic(int degree) { return degree * (3 - degree); }

// Deepen the chart floor so it stays below every omega_s concentration ring
// of the ray down to s = depth: curve relations can trade a full weight
// spread into the chart radius, putting rings near rho = s * spread.
inline GridSpec deepen_for_ray(GridSpec g, const OneParamSubgroup& lam, double depth) {
  long wlo = 0, whi = 0;
  for (long w : lam.w) {
    wlo = std::min(wlo, w);
    whi = std::max(whi, w);
  }
  g.rho_floor = std::min(g.rho_floor, depth * double(whi - wlo) - 8.0);
  return g;
}

namespace detail {

inline std::array<double, 3> ray_weights(const CurveSampleSet& set, const OneParamSubgroup& lam,
                                         double s) {
  (void)set;
  double top = -std::numeric_limits<double>::infinity();
  for (int j = 0; j < 3; ++j) top = std::max(top, s * lam.w[j]);
  std::array<double, 3> q;
  for (int j = 0; j < 3; ++j) q[j] = std::exp(0.5 * (s * lam.w[j] - top));
  return q;
}

// Weighted density at the sample point itself.
inline double density_s_at(const CurveSampleSet& set, const SamplePoint& pt,
                           const std::array<double, 3>& q) {
  (void)set;
  return weighted_density(pt.z, pt.zp, q);
}

// Weighted density at stencil node k of the point.
inline double density_s_stencil(const CurveSampleSet& set, const SamplePoint& pt, int k,
                                const std::array<double, 3>& q) {
  const cdouble un = pt.u * std::exp(pt.fd_h * kStencilDirs[k]);
  auto w = chart_lift(set, pt.chart, un, pt.st_y[k]);
  auto wp = chart_lift_prime(set, pt.chart, un, pt.st_yp[k]);
  const auto z = apply_frame(set, w);
  const auto zp = apply_frame(set, wp);
  return weighted_density(z, zp, q);
}

}  // namespace detail

struct ScalResult {
  double scal = 0;
  double err = 0;
  bool ok = false;
};

// Scalar curvature of omega_s at sample point i (requires its stencil).
inline ScalResult curve_scal_at(const CurveSampleSet& set, size_t i, const OneParamSubgroup& lam,
                                double s) {
  ScalResult res;
  const SamplePoint& pt = set.pts[i];
  if (!pt.has_stencil) return res;
  const auto q = detail::ray_weights(set, lam, s);
  const double dc = detail::density_s_at(set, pt, q);
  if (!(dc > 0)) return res;
  const double lc = std::log(dc);
  std::array<double, 8> l;
  for (int k = 0; k < 8; ++k) {
    const double dk = detail::density_s_stencil(set, pt, k, q);
    if (!(dk > 0)) return res;
    l[k] = std::log(dk);
  }
  const double h = pt.fd_h;
  const double lap_h = (l[0] + l[1] + l[2] + l[3] - 4.0 * lc) / (h * h);
  const double lap_h2 = (l[4] + l[5] + l[6] + l[7] - 4.0 * lc) / (0.25 * h * h);
  const double lap = (4.0 * lap_h2 - lap_h) / 3.0;
  const double lap_err = std::abs(lap_h2 - lap_h) / 3.0;
  constexpr double kPi = 3.14159265358979323846;
  res.scal = -lap / (4.0 * kPi * dc);
  res.err = lap_err / (4.0 * kPi * dc);
  res.ok = true;
  return res;
}

struct MuAverage {
  double quad = 0;
  double topological = 0;
};

inline MuAverage mu_average(const CurveSampleSet& set, const OneParamSubgroup& lam, double s) {
  MuAverage mu;
  mu.topological = double(euler_characteristic(set.d)) / set.d;
  const auto q = detail::ray_weights(set, lam, s);
  std::vector<double> num(set.pts.size(), 0.0), den(set.pts.size(), 0.0);
  parallel_for(set.pts.size(), [&](size_t i) {
    const auto sc = curve_scal_at(set, i, lam, s);
    if (!sc.ok) return;
    const double m = detail::density_s_at(set, set.pts[i], q) * set.pts[i].area_zeta;
    num[i] = sc.scal * m;
    den[i] = m;
  });
  double n = 0, d = 0;
  for (size_t i = 0; i < num.size(); ++i) {
    n += num[i];
    d += den[i];
  }
  mu.quad = n / d;
  return mu;
}

struct IJ {
  double i_func = 0;
  double j_func = 0;
};

inline IJ i_j_functionals(const CurveSampleSet& set, const OneParamSubgroup& lam, double s) {
  const auto q = detail::ray_weights(set, lam, s);
  const double V = set.d;
  constexpr double kPi = 3.14159265358979323846;
  double iacc = 0, jacc = 0;
  for (const auto& pt : set.pts) {
    const double phi = bergman_potential(lam, s, pt.z);
    const double ds = detail::density_s_at(set, pt, q);
    iacc += phi * (pt.density_fs - ds) * pt.area_zeta;
    const cdouble pz = bergman_potential_zeta(lam, s, pt.z, pt.zp);
    jacc += std::norm(pz) / kPi * pt.area_zeta;
  }
  return {iacc / V, jacc / (2.0 * V)};
}

inline double osc(const CurveSampleSet& set, const OneParamSubgroup& lam, double s) {
  double lo = std::numeric_limits<double>::infinity(), hi = -lo;
  for (const auto& pt : set.pts) {
    const double phi = bergman_potential(lam, s, pt.z);
    lo = std::min(lo, phi);
    hi = std::max(hi, phi);
  }
  return hi - lo;
}

// (1/V) int log(omega_s / omega_0) omega_s  (relative entropy of the ray).
inline double entropy_rel(const CurveSampleSet& set, const OneParamSubgroup& lam, double s) {
  const auto q = detail::ray_weights(set, lam, s);
  double acc = 0;
  for (const auto& pt : set.pts) {
    const double ds = detail::density_s_at(set, pt, q);
    if (ds > 0 && pt.density_fs > 0) acc += std::log(ds / pt.density_fs) * ds * pt.area_zeta;
  }
  return acc / set.d;
}

// Quadrature mass of omega_s (should match V = d; the defect is reported).
inline double volume_s(const CurveSampleSet& set, const OneParamSubgroup& lam, double s) {
  const auto q = detail::ray_weights(set, lam, s);
  double acc = 0;
  for (const auto& pt : set.pts) acc += detail::density_s_at(set, pt, q) * pt.area_zeta;
  return acc;
}

struct SlopeEval {
  double value = 0;  // d(nu)/ds at s
  double err = 0;    // quadrature error estimate of the integrand
};

// dnu/ds = -(1/V) int phidot_s (Scal_s - mu) omega_s, mu = chi/d.
inline SlopeEval kenergy_slope(const CurveSampleSet& set, const OneParamSubgroup& lam, double s) {
  const double V = set.d;
  const double mu = double(euler_characteristic(set.d)) / set.d;
  const auto q = detail::ray_weights(set, lam, s);
  std::vector<double> val(set.pts.size(), 0.0), errv(set.pts.size(), 0.0), curvv(set.pts.size(), 0.0);
  parallel_for(set.pts.size(), [&](size_t i) {
    const auto& pt = set.pts[i];
    const auto sc = curve_scal_at(set, i, lam, s);
    if (!sc.ok) return;
    const double ds = detail::density_s_at(set, pt, q);
    const double pd = bergman_potential_dot(lam, s, pt.z);
    val[i] = pd * (sc.scal - mu) * ds * pt.area_zeta;
    errv[i] = std::abs(pd) * sc.err * ds * pt.area_zeta;
    curvv[i] = sc.scal * ds * pt.area_zeta;
  });
  double acc = 0, errq = 0, curv = 0;
  for (size_t i = 0; i < set.pts.size(); ++i) {
    acc += val[i];
    errq += errv[i];
    curv += curvv[i];
  }
  double wspread = 0;
  for (long w : lam.w) wspread = std::max(wspread, double(std::labs(w)));
  // Curvature-mass defect: int Scal omega_s must equal chi; a shortfall
  // signals concentration rings the grid failed to resolve, and those carry
  // the integrand in proportion to |phidot| <= wspread.
  const double curv_defect = std::abs(curv - double(euler_characteristic(set.d)));
  SlopeEval out;
  out.value = -acc / V;
  out.err = errq / V + wspread * curv_defect / V;
  return out;
}

namespace detail {

// Adaptive Simpson with a Richardson-corrected return value; err_accum
// collects the |S2 - S1|/15 estimates of accepted panels.
inline double adaptive_simpson(const std::function<double(double)>& g, double a, double b, double fa,
                               double fm, double fb, double tol, int depth, double& err_accum) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
  const double flm = g(lm), frm = g(rm);
  const double s1 = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  const double s2 = (b - a) / 12.0 * (fa + 4.0 * flm + 2.0 * fm + 4.0 * frm + fb);
  const double diff = s2 - s1;
  if (std::abs(diff) <= 15.0 * tol || depth >= 10) {
    err_accum += std::abs(diff) / 15.0;
    return s2 + diff / 15.0;
  }
  return adaptive_simpson(g, a, m, fa, flm, fm, tol / 2, depth + 1, err_accum) +
         adaptive_simpson(g, m, b, fm, frm, fb, tol / 2, depth + 1, err_accum);
}

}  // namespace detail

inline double adaptive_simpson(const std::function<double(double)>& g, double a, double b, double tol,
                               double& err_accum) {
  const double fa = g(a), fb = g(b), fm = g(0.5 * (a + b));
  return detail::adaptive_simpson(g, a, b, fa, fm, fb, tol, 0, err_accum);
}

struct RaySample {
  double s = 0;
  double nu = 0;
  double psi_s = std::numeric_limits<double>::quiet_NaN();
  double i_func = 0;
  double j_func = 0;
  double osc = 0;
  double error_est = 0;
  std::string flag;
};

struct RayOptions {
  GridSpec grid;
  double simpson_tol = 1e-6;  // per ladder interval
  bool with_psi = true;
  double flag_error_bound = 0.05;
};

// K-energy (and companions) along the ladder; nu(0) = 0 by construction,
// dnu/ds integrated with adaptive Simpson between ladder nodes.
inline std::vector<RaySample> kenergy_ray(const MultiPoly& f, const OneParamSubgroup& lam,
                                          const std::vector<double>& ladder,
                                          const RayOptions& opt = {}) {
  if (ladder.empty() || ladder.front() != 0.0)
    throw std::invalid_argument("s-ladder must start at 0");
  for (size_t i = 1; i < ladder.size(); ++i)
    if (!(ladder[i] < ladder[i - 1])) throw std::invalid_argument("s-ladder must be strictly decreasing");

  CurveSampleSet set = curve_sample(f, deepen_for_ray(opt.grid, lam, ladder.back()));
  augment_scal_stencils(set);
  const CPoly3 fc = CPoly3::from_exact(f);

  double nu = 0, nu_err = 0;
  std::vector<RaySample> out;
  double prev_s = 0;
  SlopeEval prev_g = kenergy_slope(set, lam, 0.0);
  const auto g = [&](double s) { return kenergy_slope(set, lam, s).value; };

  for (size_t i = 0; i < ladder.size(); ++i) {
    const double s = ladder[i];
    SlopeEval gs = (i == 0) ? prev_g : kenergy_slope(set, lam, s);
    if (i > 0) {
      double simpson_err = 0;
      const double fm = g(0.5 * (prev_s + s));
      nu += detail::adaptive_simpson(g, prev_s, s, prev_g.value, fm, gs.value, opt.simpson_tol, 0,
                                     simpson_err);
      nu_err += simpson_err + 0.5 * (prev_g.err + gs.err) * (prev_s - s);
    }
    RaySample r;
    r.s = s;
    r.nu = nu;
    const IJ ij = i_j_functionals(set, lam, s);
    r.i_func = ij.i_func;
    r.j_func = ij.j_func;
    r.osc = osc(set, lam, s);
    const double defect = std::abs(volume_s(set, lam, s) - set.d) / set.d;
    r.error_est = nu_err + defect;
    if (opt.with_psi) {
      const PsiResult pr = psi_s(fc, lam, s, opt.grid);
      r.psi_s = pr.value;
      if (!pr.flag.empty()) r.flag = pr.flag;
    }
    if (r.error_est > opt.flag_error_bound)
      r.flag = r.flag.empty() ? "error estimate above bound" : r.flag + "; error estimate above bound";
    out.push_back(std::move(r));
    prev_s = s;
    prev_g = gs;
  }
  return out;
}

}  // namespace kstab
