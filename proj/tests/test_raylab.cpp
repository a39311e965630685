// Ray laboratory: slope fitting, K-energy ladders, the entropy identity,
// and asymptotic Psi_S behaviour along Bergman rays.

#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <vector>

#include "kstab/kenergy.hpp"
#include "kstab/parse.hpp"
#include "kstab/slope.hpp"
#include "kstab/verify.hpp"

using namespace kstab;

namespace {

std::vector<std::pair<double, double>> graph(double lo, double hi, double step,
                                             double (*fn)(double)) {
  std::vector<std::pair<double, double>> v;
  for (double s = lo; s <= hi + 1e-12; s += step) v.push_back({s, fn(s)});
  return v;
}

const std::vector<RaySample>& conic_ladder() {
  static const std::vector<RaySample> samples = [] {
    RayOptions opt;
    opt.grid.resolution = 48;
    const OneParamSubgroup lam(std::vector<long>{2, -1, -1});
    return kenergy_ray(parse_poly("x*z - y^2", 3), lam, make_ladder(-14.0, 0.5), opt);
  }();
  return samples;
}

}  // namespace

TEST_CASE("slope_fit recovers exact lines") {
  const auto line = graph(-14, 0, 0.5, [](double s) { return 3.0 * s + 1.0; });
  const auto fit = slope_fit(line, -14, -9);
  CHECK(fit.slope == Catch::Approx(3.0).margin(1e-12));
  CHECK(fit.intercept == Catch::Approx(1.0).margin(1e-11));
  CHECK(fit.residual_rms < 1e-12);
  CHECK(fit.sample_count == 11);

  const auto flat = slope_fit(graph(-14, 0, 0.5, [](double) { return 0.25; }), -14, -9);
  CHECK(flat.slope == Catch::Approx(0.0).margin(1e-14));
}

TEST_CASE("slope_fit tolerates bounded oscillation") {
  const auto wavy = graph(-20, -1, 0.25, [](double s) { return 2.0 * s + std::sin(s) / std::abs(s); });
  const auto fit = slope_fit(wavy, -20, -10);
  CHECK(fit.slope == Catch::Approx(2.0).margin(0.02));
  CHECK(fit.residual_rms < 0.1);
}

TEST_CASE("slope_fit input validation") {
  const auto line = graph(-14, 0, 0.5, [](double s) { return s; });
  CHECK_THROWS_AS(slope_fit(line, -1.2, -0.1), std::invalid_argument);  // 3 samples only
  CHECK_THROWS_AS(slope_fit({}, -10, -5), std::invalid_argument);
  // NaN values are excluded from the window count
  std::vector<std::pair<double, double>> withnan = line;
  for (auto& [s, v] : withnan)
    if (s < -9) v = std::numeric_limits<double>::quiet_NaN();
  CHECK_THROWS_AS(slope_fit(withnan, -14, -9.5), std::invalid_argument);
}

TEST_CASE("ladder construction") {
  const auto l = make_ladder(-5.0, 0.7);
  REQUIRE(l.front() == 0.0);
  for (size_t i = 1; i < l.size(); ++i) CHECK(l[i] < l[i - 1]);
  CHECK(l.back() == -5.0);  // clamped to the requested depth
  CHECK_THROWS_AS(make_ladder(3.0, 0.5), std::invalid_argument);
  CHECK_THROWS_AS(make_ladder(-3.0, -0.5), std::invalid_argument);
}

TEST_CASE("kenergy_ray validates its ladder") {
  const auto f = parse_poly("x*z - y^2", 3);
  const OneParamSubgroup lam(std::vector<long>{2, -1, -1});
  RayOptions opt;
  opt.grid.resolution = 16;
  CHECK_THROWS_AS(kenergy_ray(f, lam, {-1.0, -2.0}, opt), std::invalid_argument);
  CHECK_THROWS_AS(kenergy_ray(f, lam, {0.0, -1.0, -0.5}, opt), std::invalid_argument);
}

TEST_CASE("the trivial subgroup gives the zero ray") {
  const OneParamSubgroup lam(std::vector<long>{0, 0, 0});
  RayOptions opt;
  opt.grid.resolution = 24;
  const auto samples = kenergy_ray(parse_poly("x*z - y^2", 3), lam, make_ladder(-6.0, 1.0), opt);
  const double psi0 = samples.front().psi_s;
  for (const auto& r : samples) {
    CHECK(r.nu == 0.0);  // phidot vanishes identically, exactly
    CHECK(r.osc == 0.0);
    CHECK(r.i_func == 0.0);
    CHECK(r.j_func == 0.0);
    CHECK(r.psi_s == psi0);  // the fiber never moves
  }
}

TEST_CASE("K-energy is independent of the ladder step") {
  const auto f = parse_poly("x*z - y^2", 3);
  const OneParamSubgroup lam(std::vector<long>{-2, 1, 1});
  RayOptions opt;
  opt.grid.resolution = 32;
  opt.with_psi = false;
  const auto coarse = kenergy_ray(f, lam, make_ladder(-4.0, 1.0), opt);
  const auto fine = kenergy_ray(f, lam, make_ladder(-4.0, 0.25), opt);
  // adaptive Simpson between nodes makes nu(-4) step-independent
  CHECK(coarse.back().nu == Catch::Approx(fine.back().nu).margin(1e-5));
}

TEST_CASE("entropy identity on the Kahler-Einstein conic") {
  // With a KE base metric, nu(s) = entropy(s) - mu (I - J)(s) exactly;
  // each side is computed by independent quadratures.
  const auto f = parse_poly("2*x*z - y^2", 3);
  const OneParamSubgroup lam(std::vector<long>{2, -1, -1});
  RayOptions opt;
  opt.grid.resolution = 48;
  opt.with_psi = false;
  const auto ladder = make_ladder(-5.0, 0.5);
  const auto samples = kenergy_ray(f, lam, ladder, opt);

  auto set = curve_sample(f, deepen_for_ray(opt.grid, lam, -5.0));
  augment_scal_stencils(set);
  const double mu = double(euler_characteristic(set.d)) / set.d;
  for (const auto& r : samples) {
    const IJ ij = i_j_functionals(set, lam, r.s);
    const double rhs = entropy_rel(set, lam, r.s) - mu * (ij.i_func - ij.j_func);
    CHECK(r.nu == Catch::Approx(rhs).margin(0.02));
  }
}

TEST_CASE("entropy comparison stays bounded on the skew conic") {
  // Off the KE metric the difference is only bounded, not zero.
  const auto f = parse_poly("x*z - y^2", 3);
  const OneParamSubgroup lam(std::vector<long>{2, -1, -1});
  RayOptions opt;
  opt.grid.resolution = 32;
  opt.with_psi = false;
  const auto samples = kenergy_ray(f, lam, make_ladder(-6.0, 1.0), opt);
  auto set = curve_sample(f, deepen_for_ray(opt.grid, lam, -6.0));
  augment_scal_stencils(set);
  const double mu = double(euler_characteristic(set.d)) / set.d;
  for (const auto& r : samples) {
    const IJ ij = i_j_functionals(set, lam, r.s);
    const double rhs = entropy_rel(set, lam, r.s) - mu * (ij.i_func - ij.j_func);
    CHECK(std::abs(r.nu - rhs) <= 2.0);
  }
}

TEST_CASE("deep conic ladder: slopes, windows, and flags") {
  const auto& samples = conic_ladder();
  REQUIRE(samples.size() == 29);

  SECTION("no sample is flagged") {
    for (const auto& r : samples) CHECK(r.flag.empty());
  }

  SECTION("fitted slopes settle and are window-robust") {
    std::vector<std::pair<double, double>> vnu, vpsi;
    for (const auto& r : samples) {
      vnu.push_back({r.s, r.nu});
      vpsi.push_back({r.s, r.psi_s});
    }
    const auto nu_a = slope_fit(vnu, -14, -9);
    const auto nu_b = slope_fit(vnu, -13.5, -8.5);
    CHECK(nu_a.slope == Catch::Approx(-0.75).epsilon(0.02));
    CHECK(std::abs(nu_b.slope / nu_a.slope - 1.0) < 0.05);
    const auto psi_a = slope_fit(vpsi, -14, -9);
    CHECK(std::abs(psi_a.slope) < 0.01);
  }

  SECTION("I grows, J tracks I/2, osc grows linearly") {
    for (size_t i = 1; i < samples.size(); ++i) {
      CHECK(samples[i].i_func > samples[i - 1].i_func);
      CHECK(samples[i].osc >= samples[i - 1].osc);
    }
    for (const auto& r : samples)
      if (r.s < 0) CHECK(r.j_func == Catch::Approx(r.i_func / 2).epsilon(2e-3));
    // osc(phi_s) = |s| (max_j m_j - min_j m_j) once both extremes lie on X
    const auto& deep = samples.back();
    CHECK(deep.osc == Catch::Approx(3.0 * 14.0).epsilon(1e-3));
  }
}

TEST_CASE("Psi_S slope is positive on the non-reduced ray") {
  const auto f = parse_poly("x*z - y^2", 3);
  const OneParamSubgroup lam(std::vector<long>{-2, 1, 1});
  GridSpec grid;
  grid.resolution = 48;
  const auto a = psi_s(f, lam, -8.0, grid);
  const auto b = psi_s(f, lam, -10.0, grid);
  REQUIRE(a.ok);
  REQUIRE(b.ok);
  // the weight gap of the non-reduced limit cycle y^2 drives psi = 3
  CHECK((b.value - a.value) / -2.0 == Catch::Approx(3.0).margin(0.01));
}
