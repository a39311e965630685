// kstab: exact Futaki invariants of flat limits, Hilbert data, initial
// ideals, K-energy / Psi_S ladders along Bergman rays, and the asymptotic
// slope-identity verification, from one command-line tool.
//
// Exit codes: 0 pass, 1 verdict fail, 2 input error, 3 numerical inconclusive.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "kstab/kstab.hpp"

namespace {

using kstab::JobConfig;
using kstab::ojson;

constexpr const char* kUsage = R"(usage: kstab <command> [flags]

commands:
  futaki     exact generalized Futaki invariant F0, F1 of the flat limit
  hilbert    Hilbert polynomial data of the ideal
  limit      initial ideal (flat limit cycle) under lambda
  ray        K-energy / Psi_S / I / J / Osc ladder along the Bergman ray (CSV)
  verify     slope identity: slope(4nu) - slope(2Psi_S) vs exact F1 (JSON + CSV)
  identity   the alternating binomial identity table up to a bound

flags:
  --job FILE           load a key=value job file (flags below override it)
  --gen POLY           ideal generator, repeatable (e.g. --gen "x*z - y^2")
  --lambda W0,W1,..    integer weights, must sum to zero
  --nv N               ambient variable count (default 3)
  --ladder-depth S     most negative s of the ladder (default -14)
  --ladder-step H      ladder spacing (default 0.5)
  --grid N             quadrature resolution (default 64)
  --seed N             angular jitter seed; 0 = centered grid (default)
  --weight-sign S      dual | function (default dual)
  --invert-lambda B    0 | 1: negate the weights first (default 0)
  --window LO,HI       slope-fit window (default: deepest third of the ladder)
  --n N                identity table bound (default 8)
  --json | --csv       output format (defaults: ray csv, others json)
  --out FILE, -o FILE  write the report there instead of stdout;
                       verify also writes the CSV ladder next to it (.csv)
)";

struct CliError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw CliError("cannot read file: " + path);
  std::string s((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  return s;
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw CliError("cannot write file: " + path);
  out << content;
}

JobConfig parse_args(int argc, char** argv, int first) {
  JobConfig jc;
  auto need = [&](int& i) -> std::string {
    if (i + 1 >= argc) throw CliError(std::string("flag ") + argv[i] + " needs a value");
    return argv[++i];
  };
  // First pass: an optional job file provides the base configuration.
  for (int i = first; i < argc; ++i)
    if (std::string(argv[i]) == "--job") {
      jc = kstab::parse_jobfile(read_file(need(i)));
      break;
    }
  for (int i = first; i < argc; ++i) {
    std::string a = argv[i];
    std::string inlined;
    const size_t eq = a.find('=');
    if (a.rfind("--", 0) == 0 && eq != std::string::npos) {
      inlined = a.substr(eq + 1);
      a = a.substr(0, eq);
    }
    auto val = [&]() { return inlined.empty() ? need(i) : inlined; };
    if (a == "--job") {
      if (inlined.empty()) ++i;  // already handled
    } else if (a == "--gen") {
      jc.gens.push_back(val());
    } else if (a == "--lambda") {
      jc.lambda = kstab::parse_lambda(val());
    } else if (a == "--nv") {
      jc.nv = std::stoi(val());
    } else if (a == "--ladder-depth") {
      jc.ladder_depth = std::stod(val());
    } else if (a == "--ladder-step") {
      jc.ladder_step = std::stod(val());
    } else if (a == "--grid") {
      jc.grid = std::stoi(val());
    } else if (a == "--seed") {
      jc.seed = static_cast<unsigned>(std::stoul(val()));
    } else if (a == "--weight-sign") {
      jc.weight_sign = val();
      if (jc.weight_sign != "dual" && jc.weight_sign != "function")
        throw CliError("--weight-sign must be dual or function");
    } else if (a == "--invert-lambda") {
      const std::string v = val();
      if (v != "0" && v != "1") throw CliError("--invert-lambda must be 0 or 1");
      jc.invert_lambda = v == "1";
    } else if (a == "--window") {
      const std::string v = val();
      const size_t comma = v.find(',');
      if (comma == std::string::npos) throw CliError("--window needs LO,HI");
      jc.window_lo = std::stod(v.substr(0, comma));
      jc.window_hi = std::stod(v.substr(comma + 1));
    } else if (a == "--n") {
      jc.identity_n = std::stoi(val());
    } else if (a == "--json") {
      jc.format = "json";
    } else if (a == "--csv") {
      jc.format = "csv";
    } else if (a == "--out" || a == "-o") {
      jc.out = val();
    } else if (a == "--help" || a == "-h") {
      std::cout << kUsage;
      std::exit(0);
    } else {
      throw CliError("unknown flag: " + a);
    }
  }
  return jc;
}

kstab::Ideal build_ideal(const JobConfig& jc) {
  std::vector<kstab::MultiPoly> gens;
  for (const auto& g : jc.gens) gens.push_back(kstab::parse_poly(g, jc.nv));
  return kstab::Ideal(jc.nv, std::move(gens));
}

kstab::OneParamSubgroup build_lambda(const JobConfig& jc) {
  if (jc.lambda.empty()) throw CliError("--lambda is required for this command");
  if ((int)jc.lambda.size() != jc.nv)
    throw CliError("lambda has " + std::to_string(jc.lambda.size()) + " weights but nv = " +
                   std::to_string(jc.nv));
  kstab::OneParamSubgroup lam(jc.lambda);
  return jc.invert_lambda ? lam.negated() : lam;
}

kstab::WeightSign build_sign(const JobConfig& jc) {
  return jc.weight_sign == "function" ? kstab::WeightSign::function : kstab::WeightSign::dual;
}

void emit(const JobConfig& jc, const std::string& content) {
  if (jc.out.empty())
    std::cout << content;
  else
    write_file(jc.out, content);
}

std::string csv_sidecar_path(const std::string& out) {
  if (out.size() > 5 && out.substr(out.size() - 5) == ".json")
    return out.substr(0, out.size() - 5) + ".csv";
  return out + ".csv";
}

int cmd_identity(const JobConfig& jc) {
  if (jc.identity_n < 0) throw CliError("--n must be nonnegative");
  if (jc.format == "csv") {
    std::string out = "n,i,value\r\n";
    for (int n = 0; n <= jc.identity_n; ++n)
      for (int i = 0; i <= n + 2; ++i)
        out += std::to_string(n) + "," + std::to_string(i) + "," +
               kstab::binom_identity(n, i).get_str() + "\r\n";
    emit(jc, out);
    return 0;
  }
  ojson j;
  j["job"] = kstab::report_json(jc);
  ojson rows = ojson::array();
  for (int n = 0; n <= jc.identity_n; ++n)
    for (int i = 0; i <= n + 2; ++i) {
      ojson row;
      row["n"] = n;
      row["i"] = i;
      row["value"] = kstab::binom_identity(n, i).get_str();
      rows.push_back(row);
    }
  j["rows"] = rows;
  emit(jc, kstab::dump_json(j));
  return 0;
}

int cmd_futaki(const JobConfig& jc) {
  const auto report = kstab::donaldson_futaki(build_ideal(jc), build_lambda(jc), build_sign(jc));
  ojson j;
  j["job"] = kstab::report_json(jc);
  const ojson rj = kstab::report_json(report);
  for (const auto& [k, v] : rj.items()) j[k] = v;
  emit(jc, kstab::dump_json(j));
  return 0;
}

int cmd_hilbert(const JobConfig& jc) {
  const auto data = kstab::hilbert_data(build_ideal(jc));
  ojson j;
  j["job"] = kstab::report_json(jc);
  j["hilbert"] = kstab::report_json(data);
  emit(jc, kstab::dump_json(j));
  return 0;
}

int cmd_limit(const JobConfig& jc) {
  const auto lam = build_lambda(jc);
  const auto limit = kstab::initial_ideal(build_ideal(jc), lam);
  ojson j;
  j["job"] = kstab::report_json(jc);
  j["limit_generators"] = limit.generator_strings();
  const auto reduced = kstab::monomial_ideal_reduced(limit);
  j["limit_reduced"] = reduced.has_value() ? ojson(*reduced) : ojson(nullptr);
  emit(jc, kstab::dump_json(j));
  return 0;
}

kstab::GridSpec build_grid(const JobConfig& jc) {
  kstab::GridSpec grid;
  grid.resolution = jc.grid;
  grid.seed = jc.seed;
  return grid;
}

int cmd_ray(const JobConfig& jc) {
  if (jc.gens.size() != 1) throw CliError("ray needs exactly one --gen (a plane curve)");
  const auto lam = build_lambda(jc);
  const auto f = kstab::parse_poly(jc.gens[0], jc.nv);
  kstab::RayOptions opt;
  opt.grid = build_grid(jc);
  const auto ladder = kstab::make_ladder(jc.ladder_depth, jc.ladder_step);
  const auto samples = kstab::kenergy_ray(f, lam, ladder, opt);
  if (jc.format == "json") {
    ojson j;
    j["job"] = kstab::report_json(jc);
    ojson arr = ojson::array();
    for (const auto& s : samples) arr.push_back(kstab::report_json(s));
    j["samples"] = arr;
    emit(jc, kstab::dump_json(j));
  } else {
    emit(jc, kstab::ray_csv(samples));
  }
  for (const auto& s : samples)
    if (!s.flag.empty()) return 3;
  return 0;
}

int cmd_verify(const JobConfig& jc) {
  if (jc.gens.size() != 1) throw CliError("verify needs exactly one --gen (a plane curve)");
  const auto lam = build_lambda(jc);
  const auto f = kstab::parse_poly(jc.gens[0], jc.nv);
  kstab::VerifyConfig cfg;
  cfg.ladder_depth = jc.ladder_depth;
  cfg.ladder_step = jc.ladder_step;
  if (jc.window_lo && jc.window_hi) {
    cfg.window_lo = *jc.window_lo;
    cfg.window_hi = *jc.window_hi;
  }
  cfg.grid = build_grid(jc);
  cfg.sign = build_sign(jc);
  const auto report = kstab::verify_asymptotics(f, lam, cfg);

  const std::string csv = kstab::ray_csv(report.ladder);
  if (jc.format == "csv") {
    emit(jc, csv);
  } else {
    ojson j;
    j["job"] = kstab::report_json(jc);
    const ojson rj = kstab::report_json(report);
    for (const auto& [k, v] : rj.items()) j[k] = v;
    emit(jc, kstab::dump_json(j));
    if (!jc.out.empty()) write_file(csv_sidecar_path(jc.out), csv);
  }
  if (report.verdict == "pass") return 0;
  if (report.verdict == "fail") return 1;
  return 3;
}

}  // namespace

int main(int argc, char** argv) {
  if (argc < 2) {
    std::cerr << kUsage;
    return 2;
  }
  const std::string first = argv[1];
  if (first == "--help" || first == "-h" || first == "help") {
    std::cout << kUsage;
    return 0;
  }
  try {
    // The command is the leading positional; with only flags (e.g. a bare
    // `--job FILE`) it comes from the job file instead.
    const bool positional = first.rfind("-", 0) != 0;
    JobConfig jc = parse_args(argc, argv, positional ? 2 : 1);
    if (positional) jc.command = first;
    if (jc.command.empty()) throw CliError("no command given (on the command line or in the job file)");
    if (jc.command == "identity") return cmd_identity(jc);
    if (jc.command == "futaki") return cmd_futaki(jc);
    if (jc.command == "hilbert") return cmd_hilbert(jc);
    if (jc.command == "limit") return cmd_limit(jc);
    if (jc.command == "ray") return cmd_ray(jc);
    if (jc.command == "verify") return cmd_verify(jc);
    std::cerr << "unknown command: " << jc.command << "\n" << kUsage;
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "kstab: " << e.what() << "\n";
    return 2;
  }
}
