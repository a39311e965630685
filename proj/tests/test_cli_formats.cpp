// Job files, JSON report shapes, CSV ladders, and byte-level determinism.

#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <sstream>
#include <string>
#include <vector>

#include "kstab/jobconfig.hpp"
#include "kstab/parse.hpp"
#include "kstab/report.hpp"
#include "kstab/verify.hpp"

using namespace kstab;

TEST_CASE("job files round-trip") {
  JobConfig jc;
  jc.command = "ray";
  jc.nv = 3;
  jc.gens = {"x*z - y^2", "x*y"};
  jc.lambda = {2, -1, -1};
  jc.ladder_depth = -7.25;
  jc.ladder_step = 0.125;
  jc.grid = 48;
  jc.seed = 1234;
  jc.weight_sign = "function";
  jc.invert_lambda = true;
  jc.identity_n = 5;
  jc.window_lo = -7.0;
  jc.window_hi = -4.5;
  jc.format = "csv";
  jc.out = "ladder.csv";
  CHECK(parse_jobfile(emit_jobfile(jc)) == jc);

  const JobConfig defaults;
  CHECK(parse_jobfile(emit_jobfile(defaults)) == defaults);
}

TEST_CASE("job file syntax") {
  const auto jc = parse_jobfile(
      "# a comment\r\n"
      "  command = futaki  \r\n"
      "\n"
      "gen= x*z - y^2\n"
      "lambda =2,-1,-1\n");
  CHECK(jc.command == "futaki");
  CHECK(jc.gens == std::vector<std::string>{"x*z - y^2"});
  CHECK(jc.lambda == std::vector<long>{2, -1, -1});
}

TEST_CASE("job file validation") {
  CHECK_THROWS_WITH(parse_jobfile("lambda=1,1,1\n"), Catch::Matchers::ContainsSubstring("sum"));
  CHECK_THROWS_WITH(parse_jobfile("weight_sign=both\n"),
                    Catch::Matchers::ContainsSubstring("weight_sign"));
  CHECK_THROWS_WITH(parse_jobfile("invert_lambda=yes\n"),
                    Catch::Matchers::ContainsSubstring("invert_lambda"));
  CHECK_THROWS_WITH(parse_jobfile("colour=red\n"), Catch::Matchers::ContainsSubstring("unknown key"));
  CHECK_THROWS_WITH(parse_jobfile("just a line\n"), Catch::Matchers::ContainsSubstring("key=value"));
  CHECK_THROWS_WITH(parse_jobfile("format=yaml\n"), Catch::Matchers::ContainsSubstring("format"));
}

TEST_CASE("Futaki reports serialize rationals as strings") {
  const auto f = parse_poly("x*z - y^2", 3);
  const OneParamSubgroup lam(std::vector<long>{-2, 1, 1});
  const auto j = report_json(donaldson_futaki(Ideal(3, {f}), lam));
  CHECK(j["F0"] == "1/2");
  CHECK(j["F1"] == "-3/4");
  CHECK(j["limit_generators"] == std::vector<std::string>{"y^2"});
  CHECK(j["limit_reduced"] == false);
  CHECK(j["hilbert"]["hilbert_poly"] == "2*m + 1");
  CHECK(j["hilbert"]["coefficients"] == std::vector<std::string>{"1", "2"});
  CHECK(j["weight_poly"] == "m^2 - m");
  CHECK(j["weight_sign"] == "dual");
}

TEST_CASE("NaN serializes as null, never as a bare token") {
  RaySample r;
  r.s = -1.0;  // psi_s defaults to NaN
  const auto j = report_json(r);
  CHECK(j["psi_s"].is_null());
  const std::string text = dump_json(j);
  CHECK(text.find("nan") == std::string::npos);
  CHECK(text.back() == '\n');
}

TEST_CASE("CSV ladders are CRLF with a fixed header") {
  std::vector<RaySample> ladder(3);
  for (int i = 0; i < 3; ++i) {
    ladder[i].s = -0.5 * i;
    ladder[i].nu = 0.125 * i;
    ladder[i].psi_s = -0.25 * i;
    ladder[i].i_func = i;
    ladder[i].j_func = 0.5 * i;
    ladder[i].osc = 1.5 * i;
    ladder[i].error_est = 1e-6;
  }
  const std::string csv = ray_csv(ladder);
  CHECK(csv.rfind("s,nu,psi_s,I,J,osc,err\r\n", 0) == 0);
  CHECK(csv.substr(csv.size() - 2) == "\r\n");
  CHECK(csv.find("\n") != std::string::npos);
  // every newline is preceded by a carriage return
  for (size_t p = csv.find('\n'); p != std::string::npos; p = csv.find('\n', p + 1))
    CHECK(csv[p - 1] == '\r');
  const size_t rows = std::count(csv.begin(), csv.end(), '\n');
  CHECK(rows == 4);  // header + 3 samples
}

TEST_CASE("CSV numbers re-fit to the same slope") {
  // synthetic ladder with a known slope, serialized and re-parsed
  std::vector<RaySample> ladder;
  for (int i = 0; i <= 28; ++i) {
    RaySample r;
    r.s = -0.5 * i;
    r.nu = -0.75 * r.s + 0.3 * std::sin(3.7 * i);
    r.psi_s = 0.0;
    ladder.push_back(r);
  }
  std::vector<std::pair<double, double>> direct;
  for (const auto& r : ladder) direct.push_back({r.s, r.nu});
  const auto want = slope_fit(direct, -14, -9);

  std::istringstream is(ray_csv(ladder));
  std::string line;
  std::getline(is, line);  // header
  std::vector<std::pair<double, double>> parsed;
  while (std::getline(is, line)) {
    const size_t c1 = line.find(',');
    const size_t c2 = line.find(',', c1 + 1);
    parsed.push_back({std::stod(line.substr(0, c1)), std::stod(line.substr(c1 + 1, c2 - c1 - 1))});
  }
  const auto got = slope_fit(parsed, -14, -9);
  CHECK(got.slope == Catch::Approx(want.slope).margin(1e-9));
  CHECK(got.residual_rms == Catch::Approx(want.residual_rms).margin(1e-9));
}

TEST_CASE("repeated runs are byte-identical") {
  const auto f = parse_poly("x*z - y^2", 3);
  const OneParamSubgroup lam(std::vector<long>{2, -1, -1});

  SECTION("ray ladders") {
    RayOptions opt;
    opt.grid.resolution = 24;
    const auto a = kenergy_ray(f, lam, make_ladder(-3.0, 0.5), opt);
    const auto b = kenergy_ray(f, lam, make_ladder(-3.0, 0.5), opt);
    CHECK(ray_csv(a) == ray_csv(b));
  }

  SECTION("verify reports, including with a nonzero jitter seed") {
    VerifyConfig cfg;
    cfg.ladder_depth = -6.0;
    cfg.ladder_step = 0.5;
    cfg.grid.resolution = 20;
    cfg.grid.seed = 7;
    const auto a = verify_asymptotics(f, lam, cfg);
    const auto b = verify_asymptotics(f, lam, cfg);
    CHECK(dump_json(report_json(a)) == dump_json(report_json(b)));
    CHECK(ray_csv(a.ladder) == ray_csv(b.ladder));
    CHECK(a.verdict == "pass");
  }
}

TEST_CASE("seeds move the grid but not the physics") {
  const auto f = parse_poly("x*z - y^2", 3);
  GridSpec g0, g1;
  g0.resolution = g1.resolution = 32;
  g1.seed = 42;
  const auto a = curve_sample(f, g0);
  const auto b = curve_sample(f, g1);
  CHECK(a.pts[10].u != b.pts[10].u);
  CHECK(std::abs(a.volume_quad() - b.volume_quad()) < 1e-9);
}
