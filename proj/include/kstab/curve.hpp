#pragma once

// Quadrature substrate on a smooth plane curve X = V(f) in P^2.
//
// X is presented as a degree-d branched cover of a base P^1 by projecting
// away from a coordinate point e_k with f(e_k) != 0 (after a fixed unitary
// change of frame if no coordinate point works). The base is covered by two
// unit disks |u| <= 1; each disk carries a log-polar grid, uniform in
// zeta = log u, whose geometric shells resolve both the algebraic branching
// at the chart center and the concentration rings that Bergman weights
// e^{s m_j} produce at radii ~ e^{c s}.
//
// Each sample point stores a holomorphic local lift Z(zeta) of X and its
// zeta-derivative, from which every Fubini-Study-type density is evaluated
// in closed form: for weights q_j > 0,
//   D(zeta) = sum_{i<j} |Q_i' Q_j - Q_j' Q_i|^2 / ||Q||^4,   Q_j = q_j Z_j,
// is the density of (i/2pi) ddbar log||Q||^2 against dA_zeta / pi
// (Lagrange identity; no cancellation for nearly parallel Z, Z').
//
// Cells whose center is too close to a projection branch point (located
// once per substrate as roots of the interpolated fiber discriminant) are
// subdivided; below a floor they are excluded with certified area and
// estimated mass bookkeeping.

#include <array>
#include <cmath>
#include <complex>
#include <limits>
#include <random>
#include <stdexcept>
#include <vector>

#include "kstab/complexpoly.hpp"
#include "kstab/multipoly.hpp"
#include "kstab/parallel.hpp"
#include "kstab/roots.hpp"

namespace kstab {

struct GridSpec {
  int resolution = 64;        // angular cells per shell; shell count scales with it
  double rho_floor = -30.0;   // log-radius floor of each chart
  unsigned seed = 0;          // angular jitter of the grid; 0 = centered cells
  int max_subdiv = 16;        // branch-cell subdivision depth cap
  bool allow_near_singular = false;  // keep going when the gradient nearly vanishes
};

struct SamplePoint {
  int chart = 0;   // 0: base point (1, u); 1: base point (u, 1)
  int sheet = 0;
  cdouble u;       // base chart coordinate, u = e^zeta
  cdouble y;       // fiber coordinate (frame coords)
  cdouble yprime;  // dy/dzeta (frame coords)
  std::array<cdouble, 3> z;   // homogeneous lift, original frame, max-normalized
  std::array<cdouble, 3> zp;  // dZ/dzeta, same normalization
  double area_zeta = 0;       // quadrature cell area in the zeta plane
  double density_fs = 0;      // density of omega_FS|_X against dA_zeta
  // Scalar-curvature stencil (built on demand): fiber data at
  // zeta + {h, -h, ih, -ih, h/2, -h/2, ih/2, -ih/2}.
  double fd_h = 0;
  std::array<cdouble, 8> st_y{};
  std::array<cdouble, 8> st_yp{};
  bool has_stencil = false;
};

constexpr std::array<cdouble, 8> kStencilDirs = {
    cdouble(1, 0),   cdouble(-1, 0),  cdouble(0, 1),   cdouble(0, -1),
    cdouble(0.5, 0), cdouble(-0.5, 0), cdouble(0, 0.5), cdouble(0, -0.5)};

struct CurveSampleSet {
  CPoly3 fframe;  // the curve polynomial in working-frame coordinates
  std::array<std::array<cdouble, 3>, 3> U{};  // original z = U * frame w
  bool rotated = false;
  int axis = 0;        // projection slot (fiber variable)
  int bp = 1, bq = 2;  // base slots, ascending
  int d = 0;           // curve degree = fiber degree = quadrature volume
  GridSpec grid;
  std::vector<SamplePoint> pts;
  std::array<std::vector<cdouble>, 2> branch;  // branch points per chart

  double excluded_area_zeta = 0;
  double excluded_mass_est = 0;
  double exclusion_radius_zeta = 0;  // largest excluded-cell half-diagonal
  double scal_skipped_area = 0;      // cells whose stencil step underflowed
  long dropped_points = 0;
  double min_grad_ratio = std::numeric_limits<double>::infinity();
  bool near_singular = false;

  double volume_quad() const {
    double v = 0;
    for (const auto& p : pts) v += p.density_fs * p.area_zeta;
    return v;
  }
  double volume_defect() const { return std::abs(volume_quad() - d) / double(d); }
};

namespace detail {

// Frame-chart lift: W[axis] = y, base slots carry (1, u) or (u, 1).
inline std::array<cdouble, 3> chart_lift(const CurveSampleSet& s, int chart, cdouble u, cdouble y) {
  std::array<cdouble, 3> w;
  w[s.axis] = y;
  w[s.bp] = (chart == 0) ? cdouble(1.0) : u;
  w[s.bq] = (chart == 0) ? u : cdouble(1.0);
  return w;
}

inline std::array<cdouble, 3> chart_lift_prime(const CurveSampleSet& s, int chart, cdouble u,
                                               cdouble yprime) {
  std::array<cdouble, 3> w{cdouble(0.0), cdouble(0.0), cdouble(0.0)};
  w[s.axis] = yprime;
  if (chart == 0)
    w[s.bq] = u;
  else
    w[s.bp] = u;
  return w;
}

inline std::array<cdouble, 3> apply_frame(const CurveSampleSet& s, const std::array<cdouble, 3>& w) {
  if (!s.rotated) return w;
  std::array<cdouble, 3> z{cdouble(0.0), cdouble(0.0), cdouble(0.0)};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) z[i] += s.U[i][j] * w[j];
  return z;
}

// Density of (i/2pi) ddbar log sum q_j^2 |Z_j|^2 against dA_zeta, divided by
// pi so that density * cell-area sums directly to the form's total mass.
inline double weighted_density(const std::array<cdouble, 3>& z, const std::array<cdouble, 3>& zp,
                               const std::array<double, 3>& q) {
  std::array<cdouble, 3> a, ap;
  for (int i = 0; i < 3; ++i) {
    a[i] = q[i] * z[i];
    ap[i] = q[i] * zp[i];
  }
  double num = 0;
  for (int i = 0; i < 3; ++i)
    for (int j = i + 1; j < 3; ++j) num += std::norm(ap[i] * a[j] - ap[j] * a[i]);
  const double n2 = std::norm(a[0]) + std::norm(a[1]) + std::norm(a[2]);
  constexpr double kPi = 3.14159265358979323846;
  return num / (n2 * n2) / kPi;
}

inline double fs_density(const std::array<cdouble, 3>& z, const std::array<cdouble, 3>& zp) {
  return weighted_density(z, zp, {1.0, 1.0, 1.0});
}

// Fiber restriction machinery: f = sum_i y^i g_i(w_bp, w_bq) with g_i stored
// as dense coefficient rows A[i][j] of w_bp^{d-i-j} w_bq^j.
struct FiberPoly {
  int d = 0;
  std::vector<std::vector<cdouble>> rows;

  static FiberPoly build(const CPoly3& f, int axis, int bp, int bq) {
    FiberPoly fp;
    fp.d = f.degree();
    fp.rows.assign(fp.d + 1, {});
    for (int i = 0; i <= fp.d; ++i) fp.rows[i].assign(fp.d - i + 1, cdouble(0.0));
    for (const auto& t : f.terms()) {
      const int i = t.e[axis], j = t.e[bq];
      fp.rows[i][j] += t.c;
    }
    (void)bp;
    return fp;
  }

  // Coefficients of the univariate fiber polynomial at base point
  // (1, u) for chart 0, (u, 1) for chart 1.
  std::vector<cdouble> at(int chart, cdouble u) const {
    std::vector<cdouble> c(d + 1, cdouble(0.0));
    for (int i = 0; i <= d; ++i) {
      const auto& row = rows[i];
      cdouble acc = 0.0;
      if (chart == 0) {
        for (size_t j = row.size(); j-- > 0;) acc = acc * u + row[j];
      } else {
        for (size_t j = 0; j < row.size(); ++j) acc = acc * u + row[j];
      }
      c[i] = acc;
    }
    return c;
  }
};

inline double fiber_scale(const std::vector<cdouble>& c, double ay) {
  double s = 0, p = 1;
  const double b = std::max(1.0, ay);
  for (const auto& ci : c) {
    s += std::abs(ci) * p;
    p *= b;
  }
  return s;
}

// Branch points of the projection in one chart: roots of the fiber
// discriminant, whose coefficients are interpolated from point values
// lc^{2d-2} prod_{j<k} (y_j - y_k)^2 (lc is u-independent here).
inline std::vector<cdouble> chart_branch_points(const FiberPoly& fp, int chart) {
  const int d = fp.d;
  if (d <= 1) return {};
  const int D = d * (d - 1);
  const int M = D + 1;
  constexpr double kPi = 3.14159265358979323846;
  std::vector<std::vector<cdouble>> vand(M, std::vector<cdouble>(M));
  std::vector<cdouble> vals(M);
  for (int t = 0; t < M; ++t) {
    const cdouble ut = std::polar(0.83, 2.0 * kPi * t / M + 0.37);
    cdouble pw = 1.0;
    for (int j = 0; j < M; ++j) {
      vand[t][j] = pw;
      pw *= ut;
    }
    const auto roots = poly_roots(fp.at(chart, ut));
    cdouble prod = 1.0;
    for (size_t a = 0; a < roots.size(); ++a)
      for (size_t b = a + 1; b < roots.size(); ++b) {
        const cdouble diff = roots[a] - roots[b];
        prod *= diff * diff;
      }
    vals[t] = prod;
  }
  std::vector<cdouble> coeffs = csolve(std::move(vand), std::move(vals));
  double cmax = 0;
  for (const auto& c : coeffs) cmax = std::max(cmax, std::abs(c));
  if (cmax == 0.0) return {};  // identically degenerate: handled by the grid itself
  while (coeffs.size() > 1 && std::abs(coeffs.back()) < 1e-9 * cmax) coeffs.pop_back();
  std::vector<cdouble> out;
  for (const auto& r : poly_roots(coeffs))
    if (std::abs(r) > 1e-12) out.push_back(r);  // chart-center branching is native to the grid
  return out;
}

inline double wrap_angle(double a) {
  constexpr double kPi = 3.14159265358979323846;
  a = std::fmod(a + kPi, 2.0 * kPi);
  if (a < 0) a += 2.0 * kPi;
  return a - kPi;
}

inline double branch_dist_zeta(const std::vector<cdouble>& branch, double rho, double th) {
  double best = std::numeric_limits<double>::infinity();
  for (const auto& b : branch) {
    const double dr = rho - std::log(std::abs(b));
    const double dt = wrap_angle(th - std::arg(b));
    best = std::min(best, std::hypot(dr, dt));
  }
  return best;
}

}  // namespace detail

inline CurveSampleSet curve_sample(const CPoly3& fin, const GridSpec& grid = {}) {
  if (fin.empty() || fin.degree() < 1) throw std::invalid_argument("expected a nonconstant curve polynomial");
  CurveSampleSet set;
  set.grid = grid;
  set.d = fin.degree();

  // Frame and projection-center choice: the fiber-leading coefficient
  // f(e_k) must be solidly nonzero so every fiber has exact degree d.
  const std::array<std::array<cdouble, 3>, 3> kIdentity = {
      {{cdouble(1), cdouble(0), cdouble(0)},
       {cdouble(0), cdouble(1), cdouble(0)},
       {cdouble(0), cdouble(0), cdouble(1)}}};
  // Fallback rotations, fixed once: a generic SO(3) element and its square.
  const double c1 = std::cos(0.7), s1 = std::sin(0.7), c2 = std::cos(0.4), s2 = std::sin(0.4);
  const std::array<std::array<cdouble, 3>, 3> kRot1 = {
      {{cdouble(c1), cdouble(-s1), cdouble(0)},
       {cdouble(s1 * c2), cdouble(c1 * c2), cdouble(-s2)},
       {cdouble(s1 * s2), cdouble(c1 * s2), cdouble(c2)}}};
  const std::array<std::array<cdouble, 3>, 3> kRot2 = {
      {{cdouble(c2), cdouble(0), cdouble(-s2)},
       {cdouble(-s1 * s2), cdouble(c1), cdouble(-s1 * c2)},
       {cdouble(c1 * s2), cdouble(s1), cdouble(c1 * c2)}}};

  bool framed = false;
  for (int attempt = 0; attempt < 3 && !framed; ++attempt) {
    const auto& U = attempt == 0 ? kIdentity : (attempt == 1 ? kRot1 : kRot2);
    CPoly3 fw = attempt == 0 ? fin : fin.substituted(U);
    const double scale = fw.coeff_max();
    int best = -1;
    double bestscore = 0;
    for (int k = 0; k < 3; ++k) {
      const double sc = std::abs(fw.pure_power_coeff(k)) / scale;
      if (sc > bestscore) {
        bestscore = sc;
        best = k;
      }
    }
    if (best >= 0 && bestscore >= 1e-3) {
      set.fframe = std::move(fw);
      set.U = U;
      set.rotated = attempt != 0;
      set.axis = best;
      set.bp = best == 0 ? 1 : 0;
      set.bq = best == 2 ? 1 : 2;
      framed = true;
    }
  }
  if (!framed) throw std::domain_error("no valid projection center: every candidate lies on or near the curve");

  const auto fiber = detail::FiberPoly::build(set.fframe, set.axis, set.bp, set.bq);
  const double l2 = set.fframe.coeff_l2();
  for (int chart = 0; chart < 2; ++chart) set.branch[chart] = detail::chart_branch_points(fiber, chart);

  // Grid: shells uniform in rho = log r down to rho_floor, resolution cells
  // per shell in theta; optional seeded angular jitter per shell.
  const int ntheta = std::max(8, grid.resolution);
  const int nshell = std::max(8, (int)std::ceil(-grid.rho_floor * grid.resolution / 9.6));
  const double drho = -grid.rho_floor / nshell;
  constexpr double kPi = 3.14159265358979323846;
  const double dth = 2.0 * kPi / ntheta;

  std::mt19937 rng(grid.seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);

  struct Cell {
    double rho, th, drho, dth;  // center and extents
    int depth;
  };

  for (int chart = 0; chart < 2; ++chart) {
    const auto& branch = set.branch[chart];
    for (int is = 0; is < nshell; ++is) {
      const double rho_c = -(is + 0.5) * drho;
      const double offset = grid.seed == 0 ? 0.5 : unit(rng);
      for (int it = 0; it < ntheta; ++it) {
        std::vector<Cell> stack{{rho_c, (it + offset) * dth, drho, dth, 0}};
        while (!stack.empty()) {
          const Cell cell = stack.back();
          stack.pop_back();
          const double diag = std::hypot(cell.drho, cell.dth);
          const double delta = detail::branch_dist_zeta(branch, cell.rho, cell.th);
          if (delta < 3.2 * diag && cell.depth < grid.max_subdiv) {
            for (int a = -1; a <= 1; a += 2)
              for (int b = -1; b <= 1; b += 2)
                stack.push_back({cell.rho + a * cell.drho / 4, cell.th + b * cell.dth / 4,
                                 cell.drho / 2, cell.dth / 2, cell.depth + 1});
            continue;
          }
          const double area = cell.drho * cell.dth;
          const cdouble u = std::exp(cdouble(cell.rho, cell.th));
          const auto coeffs = fiber.at(chart, u);
          const auto roots = poly_roots(coeffs);

          if (delta < 0.8 * diag || (int)roots.size() < set.d) {
            set.excluded_area_zeta += area;
            set.exclusion_radius_zeta = std::max(set.exclusion_radius_zeta, 0.8 * diag);
            double dens = 0;
            for (int sheet = 0; sheet < (int)roots.size(); ++sheet) {
              const auto w = detail::chart_lift(set, chart, u, roots[sheet]);
              const auto g = set.fframe.grad(w);
              if (std::abs(g[set.axis]) == 0.0) continue;
              const cdouble yp = -g[chart == 0 ? set.bq : set.bp] * u / g[set.axis];
              dens += detail::fs_density(w, detail::chart_lift_prime(set, chart, u, yp));
            }
            set.excluded_mass_est += dens * area;
            continue;
          }

          for (int sheet = 0; sheet < set.d; ++sheet) {
            const cdouble y = roots[sheet];
            const auto [pv, pd] = horner2(coeffs, y);
            (void)pd;
            if (std::abs(pv) > 1e-10 * detail::fiber_scale(coeffs, std::abs(y))) {
              ++set.dropped_points;
              continue;
            }
            auto w = detail::chart_lift(set, chart, u, y);
            const auto g = set.fframe.grad(w);
            const double wn = std::sqrt(std::norm(w[0]) + std::norm(w[1]) + std::norm(w[2]));
            double wpow = 1;
            for (int i = 0; i < set.d - 1; ++i) wpow *= wn;
            const double gn = std::sqrt(std::norm(g[0]) + std::norm(g[1]) + std::norm(g[2]));
            set.min_grad_ratio = std::min(set.min_grad_ratio, gn / (l2 * wpow));
            if (std::abs(g[set.axis]) == 0.0) {
              ++set.dropped_points;
              continue;
            }
            const cdouble yp = -g[chart == 0 ? set.bq : set.bp] * u / g[set.axis];
            auto wp = detail::chart_lift_prime(set, chart, u, yp);

            SamplePoint pt;
            pt.chart = chart;
            pt.sheet = sheet;
            pt.u = u;
            pt.y = y;
            pt.yprime = yp;
            pt.density_fs = detail::fs_density(w, wp);
            pt.area_zeta = area;
            auto z = detail::apply_frame(set, w);
            auto zp = detail::apply_frame(set, wp);
            double nrm = 0;
            for (int i = 0; i < 3; ++i) nrm = std::max(nrm, std::abs(z[i]));
            for (int i = 0; i < 3; ++i) {
              z[i] /= nrm;
              zp[i] /= nrm;
            }
            pt.z = z;
            pt.zp = zp;
            set.pts.push_back(pt);
          }
        }
      }
    }
  }

  // A vanishing gradient at a sample, a sample-starved set, or wholesale
  // sheet drops all indicate a singular (or non-reduced) curve.
  if (set.min_grad_ratio < 1e-9 || set.pts.empty() ||
      set.dropped_points > (long)set.pts.size() / 8) {
    set.near_singular = true;
    if (!grid.allow_near_singular)
      throw std::domain_error("singular curve: the gradient of f vanishes on V(f) at a sample point");
  }
  return set;
}

inline CurveSampleSet curve_sample(const MultiPoly& f, const GridSpec& grid = {}) {
  if (!f.is_homogeneous()) throw std::invalid_argument("curve polynomial must be homogeneous");
  return curve_sample(CPoly3::from_exact(f), grid);
}

// Attach the finite-difference stencils used by scalar-curvature evaluation:
// fiber solves at zeta + h*dir, first-order-continuation seeds, Newton
// polish. The step shrinks near branch points and respects a floor, below
// which the point is skipped (its area is book-kept).
inline void augment_scal_stencils(CurveSampleSet& set, double base_h = 0.06) {
  const auto fiber = detail::FiberPoly::build(set.fframe, set.axis, set.bp, set.bq);
  parallel_for(set.pts.size(), [&](size_t i) {
    SamplePoint& pt = set.pts[i];
    const double rho = std::log(std::abs(pt.u)), th = std::arg(pt.u);
    const double delta = detail::branch_dist_zeta(set.branch[pt.chart], rho, th);
    // Keep the step small against the branch distance: log-density varies on
    // scale delta, and the density there is large enough to damp roundoff.
    double h = std::min(base_h, 0.05 * delta);
    if (h < 1e-6) return;  // too close to a branch point for stable differencing
    pt.fd_h = h;
    bool ok = true;
    for (int k = 0; k < 8 && ok; ++k) {
      const cdouble dz = h * kStencilDirs[k];
      const cdouble un = pt.u * std::exp(dz);
      const auto coeffs = fiber.at(pt.chart, un);
      const cdouble seed = pt.y + pt.yprime * dz;
      cdouble yn = newton_polish(coeffs, seed);
      if (std::abs(horner2(coeffs, yn).first) > 1e-9 * detail::fiber_scale(coeffs, std::abs(yn))) {
        // fall back to the full solve, keeping the sheet nearest the seed
        const auto roots = poly_roots(coeffs);
        double best = std::numeric_limits<double>::infinity();
        for (const auto& r : roots)
          if (std::abs(r - seed) < best) {
            best = std::abs(r - seed);
            yn = r;
          }
        if (std::abs(horner2(coeffs, yn).first) > 1e-8 * detail::fiber_scale(coeffs, std::abs(yn)))
          ok = false;
      }
      const auto w = detail::chart_lift(set, pt.chart, un, yn);
      const auto g = set.fframe.grad(w);
      if (std::abs(g[set.axis]) == 0.0) {
        ok = false;
        break;
      }
      pt.st_y[k] = yn;
      pt.st_yp[k] = -g[pt.chart == 0 ? set.bq : set.bp] * un / g[set.axis];
    }
    pt.has_stencil = ok;
  });
  for (const auto& pt : set.pts)
    if (!pt.has_stencil) set.scal_skipped_area += pt.area_zeta;
}

}  // namespace kstab
