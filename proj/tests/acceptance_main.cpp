// Acceptance gate: eight pinned criteria, one PASS/FAIL line each, exit 0
// iff all pass. Tolerances and time budgets are fixed here on purpose —
// loosening them is a code change, not a flag.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <random>
#include <string>
#include <vector>

#include "kstab/futaki.hpp"
#include "kstab/identities.hpp"
#include "kstab/kenergy.hpp"
#include "kstab/parse.hpp"
#include "kstab/report.hpp"
#include "kstab/verify.hpp"

using namespace kstab;

namespace {

using Clock = std::chrono::steady_clock;

double secs(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

int g_failures = 0;

void line(int k, const char* name, bool ok, const std::string& detail) {
  if (!ok) ++g_failures;
  std::printf("[%s] %d. %s%s%s\n", ok ? "PASS" : "FAIL", k, name,
              detail.empty() ? "" : " — ", detail.c_str());
  std::fflush(stdout);
}

std::string fmt(const char* f, double a, double b = 0, double c = 0) {
  char buf[160];
  std::snprintf(buf, sizeof buf, f, a, b, c);
  return buf;
}

OneParamSubgroup random_zero_sum(std::mt19937& rng, int nv) {
  std::uniform_int_distribution<long> d(-5, 5);
  std::vector<long> w(nv);
  long s = 0;
  for (int i = 0; i + 1 < nv; ++i) {
    w[i] = d(rng);
    s += w[i];
  }
  w[nv - 1] = -s;
  return OneParamSubgroup(w);
}

// 1. Alternating binomial moments: zero below the pivot and at n+2,
//    (n+1)! 2^(n+1) at the pivot i = n+1. Exact, under one second.
void criterion_identity() {
  const auto t0 = Clock::now();
  bool ok = true;
  long bad_n = -1, bad_i = -1;
  for (long n = 0; n <= 8 && ok; ++n) {
    BigInt pivot(1);
    for (long k = 2; k <= n + 1; ++k) pivot *= k;
    pivot *= ipow(BigInt(2), n + 1);
    for (long i = 0; i <= n + 2 && ok; ++i) {
      const BigInt want = (i == n + 1) ? pivot : BigInt(0);
      if (binom_identity(n, i) != want) {
        ok = false;
        bad_n = n;
        bad_i = i;
      }
    }
  }
  const double t = secs(t0);
  if (ok && t >= 1.0) ok = false;
  line(1, "binomial moment identity, n <= 8",
       ok, ok ? fmt("exact, %.3f s", t) : fmt("first mismatch at n=%.0f i=%.0f", double(bad_n), double(bad_i)));
}

// 2. Exact Futaki invariants on the conic and on the zero ideal.
void criterion_futaki() {
  const auto t0 = Clock::now();
  std::string why;
  bool ok = true;
  const Ideal conic(3, {parse_poly("x*z - y^2", 3)});

  {
    const auto r = donaldson_futaki(conic, OneParamSubgroup(std::vector<long>{-2, 1, 1}));
    const auto j = report_json(r);
    if (j["limit_generators"] != std::vector<std::string>{"y^2"}) { ok = false; why = "limit of (-2,1,1) is not (y^2)"; }
    else if (r.hilbert.hilbert_poly.coeff(1) != Rational(2) || r.hilbert.hilbert_poly.coeff(0) != Rational(1) ||
             r.hilbert.hilbert_poly.degree() != 1) { ok = false; why = "P(m) != 2m+1"; }
    else if (r.weight.w.coeff(2) != Rational(1) || r.weight.w.coeff(1) != Rational(-1) ||
             r.weight.w.coeff(0) != Rational(0)) { ok = false; why = "w(m) != m^2 - m"; }
    else if (r.F0 != Rational(1, 2)) { ok = false; why = "F0 != 1/2"; }
    else if (r.F1 != Rational(-3, 4)) { ok = false; why = "F1 != -3/4"; }
  }
  if (ok) {
    const auto r = donaldson_futaki(conic, OneParamSubgroup(std::vector<long>{2, -1, -1}));
    const auto j = report_json(r);
    if (j["limit_generators"] != std::vector<std::string>{"x*z"}) { ok = false; why = "limit of (2,-1,-1) is not (x*z)"; }
    else if (r.weight.w.coeff(2) != Rational(1, 2) || r.weight.w.coeff(1) != Rational(-1, 2)) { ok = false; why = "w(m) != (m^2 - m)/2"; }
    else if (r.F1 != Rational(-3, 8)) { ok = false; why = "F1 != -3/8"; }
  }
  if (ok) {
    const auto r = donaldson_futaki(conic, OneParamSubgroup(std::vector<long>{0, 0, 0}));
    if (r.F1 != Rational(0)) { ok = false; why = "trivial lambda gave F1 != 0"; }
  }
  if (ok) {
    std::mt19937 rng(271828);
    for (int N = 1; N <= 4 && ok; ++N) {
      for (int rep = 0; rep < 3 && ok; ++rep) {
        const auto lam = random_zero_sum(rng, N + 1);
        const auto r = donaldson_futaki(Ideal(N + 1, {}), lam);
        if (r.F1 != Rational(0)) { ok = false; why = fmt("zero ideal in P^%.0f gave F1 != 0", double(N)); }
      }
    }
  }
  const double t = secs(t0);
  if (ok && t >= 10.0) { ok = false; why = fmt("too slow: %.1f s", t); }
  line(2, "exact Futaki suite (conic limits, trivial and zero-ideal cases)",
       ok, ok ? fmt("exact, %.2f s", t) : why);
}

// 3. Flatness: the initial ideal has the same Hilbert function, m <= 8.
void criterion_flatness() {
  const auto t0 = Clock::now();
  bool ok = true;
  std::string why;
  const auto check = [&](const Ideal& I, const OneParamSubgroup& lam, const char* label) {
    const Ideal J = initial_ideal(I, lam);
    for (long m = 0; m <= 8; ++m)
      if (hilbert_function(J, m) != hilbert_function(I, m)) {
        ok = false;
        why = std::string(label) + fmt(" at m=%.0f", double(m));
        return;
      }
  };
  const Ideal conic(3, {parse_poly("x*z - y^2", 3)});
  check(conic, OneParamSubgroup(std::vector<long>{-2, 1, 1}), "conic (-2,1,1)");
  if (ok) check(conic, OneParamSubgroup(std::vector<long>{2, -1, -1}), "conic (2,-1,-1)");
  if (ok) {
    const Ideal two(3, {parse_poly("x^2 - y*z", 3), parse_poly("x*y", 3)});
    std::mt19937 rng(5772156);
    for (int rep = 0; rep < 3 && ok; ++rep)
      check(two, random_zero_sum(rng, 3), fmt("(x^2-yz, xy) rep %.0f", double(rep)).c_str());
  }
  line(3, "flat limits preserve the Hilbert function, m <= 8",
       ok, ok ? fmt("exact, %.2f s", secs(t0)) : why);
}

// 4. Fubini-Study geometry at s = 0 on the default grid.
void criterion_geometry() {
  bool ok = true;
  std::string why;
  const OneParamSubgroup triv(std::vector<long>{0, 0, 0});
  const char* eqs[3] = {"x", "x*z - y^2", "x^3 + y^3 + z^3"};
  double worst_vol = 0, gb2 = 0, gb3 = 0, mu = 0, tmax = 0;

  std::vector<CurveSampleSet> sets;
  for (int d = 1; d <= 3 && ok; ++d) {
    const auto t0 = Clock::now();
    auto set = curve_sample(parse_poly(eqs[d - 1], 3), GridSpec{});
    augment_scal_stencils(set);
    const double rel = std::abs(set.volume_quad() - d) / d;
    worst_vol = std::max(worst_vol, rel);
    if (rel > 0.005) { ok = false; why = fmt("volume of degree %.0f off by %.3f%%", double(d), 100 * rel); }
    const double t = secs(t0);
    tmax = std::max(tmax, t);
    if (t >= 60.0) { ok = false; why = fmt("degree %.0f took %.0f s", double(d), t); }
    sets.push_back(std::move(set));
  }
  if (ok) {
    const auto total = [&](const CurveSampleSet& set) {
      double acc = 0;
      for (size_t i = 0; i < set.pts.size(); ++i) {
        const auto sc = curve_scal_at(set, i, triv, 0.0);
        if (sc.ok) acc += sc.scal * set.pts[i].density_fs * set.pts[i].area_zeta;
      }
      return acc;
    };
    gb2 = total(sets[1]);
    gb3 = total(sets[2]);
    mu = mu_average(sets[1], triv, 0.0).quad;
    if (std::abs(gb2 - 2.0) > 0.04) { ok = false; why = fmt("conic total curvature %.4f != 2 +/- 2%%", gb2); }
    else if (std::abs(gb3) > 0.02) { ok = false; why = fmt("cubic total curvature %.4f != 0 +/- 0.02", gb3); }
    else if (std::abs(mu - 1.0) > 0.02) { ok = false; why = fmt("conic mean curvature %.4f != 1 +/- 2%%", mu); }
  }
  line(4, "volumes, total curvature, mean curvature at s = 0",
       ok, ok ? fmt("max volume defect %.3f%%, curvature 2%+.4f", 100 * worst_vol, gb2 - 2.0) : why);
}

// 5. J(s) = I(s)/2 on the conic, both rays, s in {0, -2, -6, -10}.
void criterion_ij() {
  const auto t0 = Clock::now();
  bool ok = true;
  std::string why;
  double worst = -1e300;
  const auto f = parse_poly("x*z - y^2", 3);
  for (const auto& w : {std::vector<long>{2, -1, -1}, std::vector<long>{-2, 1, 1}}) {
    if (!ok) break;
    const OneParamSubgroup lam(w);
    const auto ladder = kenergy_ray(f, lam, make_ladder(-10.0, 0.5), RayOptions{});
    for (const int idx : {0, 4, 12, 20}) {
      const auto& r = ladder[idx];
      const double tol = 1e-3 * std::abs(r.i_func) / 2 + r.error_est + 1e-9;
      const double defect = std::abs(r.j_func - r.i_func / 2);
      worst = std::max(worst, defect - tol);
      if (defect > tol) {
        ok = false;
        why = fmt("at s=%.0f: |J - I/2| = %.2e > tol %.2e", r.s, defect, tol);
      }
    }
  }
  line(5, "J = I/2 within 0.1% + quadrature error on both conic rays",
       ok, ok ? fmt("worst margin %+.2e, %.1f s", worst, secs(t0)) : why);
}

struct RayCase {
  VerifyReport report;
  double seconds = 0;
};

RayCase run_verify(const std::vector<long>& w) {
  VerifyConfig cfg;
  cfg.window_lo = -14.0;
  cfg.window_hi = -9.0;
  const auto t0 = Clock::now();
  RayCase rc;
  rc.report = verify_asymptotics(parse_poly("x*z - y^2", 3), OneParamSubgroup(w), cfg);
  rc.seconds = secs(t0);
  return rc;
}

// 6. Slope combination matches F1 within 10% on s in [-14,-9]; the Psi_S
//    slope distinguishes reduced from non-reduced limits.
void criterion_slopes(const RayCase& red, const RayCase& nonred) {
  bool ok = true;
  std::string why;
  if (std::abs(red.report.combination + 0.375) > 0.0375)
    { ok = false; why = fmt("reduced combination %.4f != -3/8 +/- 10%%", red.report.combination); }
  else if (std::abs(red.report.psi_slope) > 0.02)
    { ok = false; why = fmt("reduced |psi slope| = %.4f > 0.02", std::abs(red.report.psi_slope)); }
  else if (std::abs(nonred.report.combination + 0.75) > 0.075)
    { ok = false; why = fmt("non-reduced combination %.4f != -3/4 +/- 10%%", nonred.report.combination); }
  else if (nonred.report.psi_slope <= 0.05)
    { ok = false; why = fmt("non-reduced psi slope = %.4f <= 0.05", nonred.report.psi_slope); }
  else if (red.seconds >= 600 || nonred.seconds >= 600)
    { ok = false; why = fmt("too slow: %.0f s / %.0f s", red.seconds, nonred.seconds); }
  else if (red.report.verdict != "pass" || nonred.report.verdict != "pass")
    { ok = false; why = "verify verdict is not pass: " + red.report.verdict + " / " + nonred.report.verdict; }
  line(6, "slope combination = F1 and the psi dichotomy on [-14,-9]",
       ok, ok ? fmt("combinations %.4f / %.4f, %.0f s total",
                    red.report.combination, nonred.report.combination,
                    red.seconds + nonred.seconds)
              : why);
}

// 7. Oscillation: nonnegative, nondecreasing in |s|, slope >= 0.9 * spread/2.
void criterion_osc(const RayCase& red, const RayCase& nonred) {
  bool ok = true;
  std::string why;
  for (const auto* rc : {&red, &nonred}) {
    const auto& lad = rc->report.ladder;
    for (size_t k = 0; k < lad.size() && ok; ++k) {
      if (lad[k].osc < -1e-12) { ok = false; why = fmt("negative oscillation at s=%.1f", lad[k].s); }
      else if (k > 0 && lad[k].osc < lad[k - 1].osc - 1e-9)
        { ok = false; why = fmt("oscillation drops at s=%.1f", lad[k].s); }
    }
    if (ok && rc->report.fit_osc.slope < 0.5 * 3 * 0.9)
      { ok = false; why = fmt("oscillation growth rate %.3f < 1.35", rc->report.fit_osc.slope); }
  }
  line(7, "oscillation nonnegative, nondecreasing, growth rate >= 1.35",
       ok, ok ? fmt("rates %.3f / %.3f", red.report.fit_osc.slope, nonred.report.fit_osc.slope) : why);
}

// 8. Fixed seed => byte-identical reports.
void criterion_determinism(const RayCase& red) {
  const auto t0 = Clock::now();
  const auto again = run_verify({2, -1, -1});
  const bool ok = dump_json(report_json(again.report)) == dump_json(report_json(red.report)) &&
                  ray_csv(again.report.ladder) == ray_csv(red.report.ladder);
  line(8, "repeated verify runs are byte-identical",
       ok, ok ? fmt("%.0f s", secs(t0)) : "reports differ between runs");
}

}  // namespace

int main() {
  criterion_identity();
  criterion_futaki();
  criterion_flatness();
  criterion_geometry();
  criterion_ij();
  const auto red = run_verify({2, -1, -1});
  const auto nonred = run_verify({-2, 1, 1});
  criterion_slopes(red, nonred);
  criterion_osc(red, nonred);
  criterion_determinism(red);
  std::printf("acceptance: %d/8 criteria pass\n", 8 - g_failures);
  return g_failures == 0 ? 0 : 1;
}
