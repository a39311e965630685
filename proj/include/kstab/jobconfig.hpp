#pragma once

// Job files: a flat key=value text format describing one CLI invocation
// (one `gen=` line per ideal generator). Emission and parsing round-trip
// to an identical JobConfig; the lambda zero-sum invariant is enforced at
// parse time.

#include <cmath>
#include <cstdio>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "kstab/ideal.hpp"
#include "kstab/parse.hpp"

namespace kstab {

struct JobConfig {
  std::string command = "verify";
  int nv = 3;
  std::vector<std::string> gens;
  std::vector<long> lambda;
  double ladder_depth = -14.0;
  double ladder_step = 0.5;
  int grid = 64;
  unsigned seed = 0;
  std::string weight_sign = "dual";
  bool invert_lambda = false;
  int identity_n = 8;
  std::optional<double> window_lo;
  std::optional<double> window_hi;
  std::string format;  // "", "json" or "csv"
  std::string out;     // output path; empty = stdout

  bool operator==(const JobConfig&) const = default;
};

namespace detail {

inline std::string fmt_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace detail

inline std::string emit_jobfile(const JobConfig& jc) {
  std::ostringstream os;
  os << "command=" << jc.command << "\n";
  os << "nv=" << jc.nv << "\n";
  if (!jc.lambda.empty()) {
    os << "lambda=";
    for (size_t i = 0; i < jc.lambda.size(); ++i) os << (i ? "," : "") << jc.lambda[i];
    os << "\n";
  }
  for (const auto& g : jc.gens) os << "gen=" << g << "\n";
  os << "ladder_depth=" << detail::fmt_double(jc.ladder_depth) << "\n";
  os << "ladder_step=" << detail::fmt_double(jc.ladder_step) << "\n";
  os << "grid=" << jc.grid << "\n";
  os << "seed=" << jc.seed << "\n";
  os << "weight_sign=" << jc.weight_sign << "\n";
  os << "invert_lambda=" << (jc.invert_lambda ? 1 : 0) << "\n";
  os << "identity_n=" << jc.identity_n << "\n";
  if (jc.window_lo && jc.window_hi)
    os << "window=" << detail::fmt_double(*jc.window_lo) << "," << detail::fmt_double(*jc.window_hi)
       << "\n";
  if (!jc.format.empty()) os << "format=" << jc.format << "\n";
  if (!jc.out.empty()) os << "out=" << jc.out << "\n";
  return os.str();
}

inline JobConfig parse_jobfile(const std::string& text) {
  JobConfig jc;
  jc.lambda.clear();
  std::istringstream is(text);
  std::string line;
  int lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    // strip leading whitespace; allow blank and comment lines
    size_t b = line.find_first_not_of(" \t");
    if (b == std::string::npos) continue;
    line = line.substr(b);
    if (line[0] == '#') continue;
    const size_t eq = line.find('=');
    if (eq == std::string::npos)
      throw std::invalid_argument("job file line " + std::to_string(lineno) + ": expected key=value");
    auto trim = [](std::string s) {
      const size_t a = s.find_first_not_of(" \t");
      if (a == std::string::npos) return std::string();
      const size_t z = s.find_last_not_of(" \t");
      return s.substr(a, z - a + 1);
    };
    const std::string key = trim(line.substr(0, eq));
    const std::string val = trim(line.substr(eq + 1));
    try {
      if (key == "command") {
        jc.command = val;
      } else if (key == "nv") {
        jc.nv = std::stoi(val);
      } else if (key == "lambda") {
        jc.lambda = parse_lambda(val);
      } else if (key == "gen") {
        jc.gens.push_back(val);
      } else if (key == "ladder_depth") {
        jc.ladder_depth = std::stod(val);
      } else if (key == "ladder_step") {
        jc.ladder_step = std::stod(val);
      } else if (key == "grid") {
        jc.grid = std::stoi(val);
      } else if (key == "seed") {
        jc.seed = static_cast<unsigned>(std::stoul(val));
      } else if (key == "weight_sign") {
        if (val != "dual" && val != "function")
          throw std::invalid_argument("weight_sign must be dual or function");
        jc.weight_sign = val;
      } else if (key == "invert_lambda") {
        if (val != "0" && val != "1") throw std::invalid_argument("invert_lambda must be 0 or 1");
        jc.invert_lambda = val == "1";
      } else if (key == "identity_n") {
        jc.identity_n = std::stoi(val);
      } else if (key == "window") {
        const size_t comma = val.find(',');
        if (comma == std::string::npos) throw std::invalid_argument("window needs two values");
        jc.window_lo = std::stod(val.substr(0, comma));
        jc.window_hi = std::stod(val.substr(comma + 1));
      } else if (key == "format") {
        if (val != "json" && val != "csv") throw std::invalid_argument("format must be json or csv");
        jc.format = val;
      } else if (key == "out") {
        jc.out = val;
      } else {
        throw std::invalid_argument("unknown key '" + key + "'");
      }
    } catch (const std::invalid_argument& e) {
      throw std::invalid_argument("job file line " + std::to_string(lineno) + ": " + e.what());
    }
  }
  if (!jc.lambda.empty()) OneParamSubgroup(jc.lambda);  // enforce the zero-sum invariant
  return jc;
}

}  // namespace kstab
