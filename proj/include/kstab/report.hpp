#pragma once

// Report serialization: UTF-8 JSON (exact rationals as "p/q" strings,
// floats as JSON numbers with explicit error fields alongside) and
// RFC-4180 CSV ladders with CRLF line endings. Serialization is
// deterministic: fixed key order, fixed float formatting.

#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "kstab/futaki.hpp"
#include "kstab/hilbert.hpp"
#include "kstab/jobconfig.hpp"
#include "kstab/kenergy.hpp"
#include "kstab/slope.hpp"
#include "kstab/verify.hpp"

namespace kstab {

using ojson = nlohmann::ordered_json;

inline std::string csv_num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

inline ojson rational_coeff_list(const UniPolyQ& p) {
  ojson arr = ojson::array();
  for (const auto& c : p.coeffs()) arr.push_back(rational_to_string(c));
  return arr;
}

inline ojson report_json(const HilbertData& h) {
  ojson j;
  j["hilbert_poly"] = h.hilbert_poly.to_string();
  j["coefficients"] = rational_coeff_list(h.hilbert_poly);
  j["dimension"] = h.n;
  j["degree"] = h.d;
  j["mu"] = rational_to_string(h.mu);
  j["regularity_start"] = h.regularity_start;
  return j;
}

inline ojson report_json(const FutakiReport& r) {
  ojson j;
  j["input_hash"] = r.input_hash;
  j["lambda"] = r.lambda;
  j["limit_generators"] = r.limit.generator_strings();
  j["limit_reduced"] = r.limit_reduced.has_value() ? ojson(*r.limit_reduced) : ojson(nullptr);
  j["hilbert"] = report_json(r.hilbert);
  j["weight_poly"] = r.weight.w.to_string();
  j["weight_coefficients"] = rational_coeff_list(r.weight.w);
  j["weight_sign"] = weight_sign_name(r.weight.sign);
  j["weight_regularity_start"] = r.weight.regularity_start;
  j["F0"] = rational_to_string(r.F0);
  j["F1"] = rational_to_string(r.F1);
  return j;
}

inline ojson report_json(const SlopeFit& f) {
  ojson j;
  j["slope"] = f.slope;
  j["intercept"] = f.intercept;
  j["residual_rms"] = f.residual_rms;
  j["window"] = ojson::array({f.window_lo, f.window_hi});
  j["sample_count"] = f.sample_count;
  return j;
}

inline ojson report_json(const RaySample& r) {
  ojson j;
  j["s"] = r.s;
  j["nu"] = r.nu;
  if (std::isnan(r.psi_s))
    j["psi_s"] = nullptr;  // explicit null rather than a NaN number node
  else
    j["psi_s"] = r.psi_s;
  j["I"] = r.i_func;
  j["J"] = r.j_func;
  j["osc"] = r.osc;
  j["error_est"] = r.error_est;
  if (!r.flag.empty()) j["flag"] = r.flag;
  return j;
}

inline ojson report_json(const JobConfig& jc) {
  ojson j;
  j["command"] = jc.command;
  j["nv"] = jc.nv;
  j["generators"] = jc.gens;
  j["lambda"] = jc.lambda;
  j["ladder_depth"] = jc.ladder_depth;
  j["ladder_step"] = jc.ladder_step;
  j["grid"] = jc.grid;
  j["seed"] = jc.seed;
  j["weight_sign"] = jc.weight_sign;
  j["invert_lambda"] = jc.invert_lambda;
  j["identity_n"] = jc.identity_n;
  if (jc.window_lo && jc.window_hi)
    j["window"] = ojson::array({*jc.window_lo, *jc.window_hi});
  j["format"] = jc.format.empty() ? "default" : jc.format;
  return j;
}

inline ojson report_json(const VerifyReport& r) {
  ojson j;
  j["futaki"] = report_json(r.futaki);
  j["convention_factor"] = r.convention_factor;
  j["fit_4nu"] = report_json(r.fit_4nu);
  j["fit_2psi"] = report_json(r.fit_2psi);
  j["fit_combination"] = report_json(r.fit_combo);
  j["fit_osc_vs_abs_s"] = report_json(r.fit_osc);
  j["combination"] = r.combination;
  j["match_ratio"] = r.match_ratio;  // NaN -> null when F1 = 0
  j["psi_slope"] = r.psi_slope;
  j["psi_note"] = r.psi_note;
  j["reduced_note"] = r.reduced_note;
  j["verdict"] = r.verdict;
  j["flags"] = r.flags;
  ojson ladder = ojson::array();
  for (const auto& s : r.ladder) ladder.push_back(report_json(s));
  j["ladder"] = ladder;
  return j;
}

// RFC-4180 ladder table; numbers at 12 significant digits re-fit to the
// same slopes within printing precision.
inline std::string ray_csv(const std::vector<RaySample>& ladder) {
  std::string out = "s,nu,psi_s,I,J,osc,err\r\n";
  for (const auto& r : ladder) {
    out += csv_num(r.s);
    out += ",";
    out += csv_num(r.nu);
    out += ",";
    out += csv_num(r.psi_s);
    out += ",";
    out += csv_num(r.i_func);
    out += ",";
    out += csv_num(r.j_func);
    out += ",";
    out += csv_num(r.osc);
    out += ",";
    out += csv_num(r.error_est);
    out += "\r\n";
  }
  return out;
}

inline std::string dump_json(const ojson& j) { return j.dump(2) + "\n"; }

}  // namespace kstab
