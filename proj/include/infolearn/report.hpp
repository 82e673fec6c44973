//
// Copyright 2026 The infolearn Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
//

#ifndef INFOLEARN_REPORT_HPP_
#define INFOLEARN_REPORT_HPP_

// JSON views of the analysis and adversary reports, plus CSV helpers.
// Requires nlohmann/json on the include path.

#include <cmath>
#include <cstdio>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "infolearn/adversary.hpp"
#include "infolearn/analysis.hpp"

namespace infolearn {

using nlohmann::ordered_json;

// %.17g, which round-trips every double. Non-finite values print as
// "inf", "-inf" or "nan".
inline std::string format_number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

// RFC 4180: quote when the field holds a comma, quote, CR or LF; double
// embedded quotes.
inline std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

inline std::string csv_line(const std::vector<std::string>& fields) {
  std::string out;
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (i > 0) out += ',';
    out += csv_field(fields[i]);
  }
  out += "\r\n";
  return out;
}

inline ordered_json to_json(const FiniteDistribution& d) {
  ordered_json atoms = ordered_json::array();
  ordered_json probs = ordered_json::array();
  for (std::size_t i = 0; i < d.size(); ++i) {
    atoms.push_back(d.atoms()[i]);
    probs.push_back(d.probs()[i]);
  }
  return {{"atoms", atoms}, {"probs", probs}};
}

inline ordered_json to_json(const InfoReport& r) {
  ordered_json j{{"method", method_name(r.method)},
                 {"mi", r.mi},
                 {"mi_stderr", r.mi_stderr},
                 {"output_entropy", r.output_entropy},
                 {"domain_size", r.domain_size},
                 {"sample_size", r.sample_size},
                 {"seed", r.seed},
                 {"trials", r.trials},
                 {"classes", r.classes}};
  return j;
}

inline ordered_json to_json(const Certificate& c) {
  return {{"n", c.n},
          {"m", c.m},
          {"orientation", orientation_name(c.orientation)},
          {"r", c.r},
          {"positions", c.positions},
          {"Pr_E", c.pr_e},
          {"floor_bits", c.floor_bits},
          {"exact_mi_bits", c.exact_mi_bits},
          {"Pr_E_floor", c.pr_e_floor},
          {"deterministic", c.deterministic},
          {"conditional_term", c.conditional_term},
          {"channel_mi", c.channel_mi},
          {"channel_floor_bits", c.channel_floor_bits},
          {"anchor_merged", c.anchor_merged},
          {"dropped", c.dropped},
          {"vacuous", c.vacuous},
          {"permutation_invariant", c.permutation_invariant},
          {"holds", c.holds}};
}

inline ordered_json to_json(const GeneralizationReport& r) {
  return {{"eps", r.eps},
          {"d", r.d},
          {"d_method", method_name(r.d_method)},
          {"frequency", r.frequency},
          {"frequency_stderr", r.frequency_stderr},
          {"bound", r.bound},
          {"realizable_value", r.realizable_value},
          {"mean_gap", r.mean_gap},
          {"holds", r.holds}};
}

inline ordered_json to_json(const StabilityReport& r) {
  return {{"m", r.sample_size},
          {"d", r.d},
          {"coordinate_mi", r.coordinate_mi},
          {"tv_term", r.tv_term},
          {"average_sqrt_mi", r.average_sqrt_mi},
          {"sqrt_d_over_m", r.sqrt_d_over_m},
          {"gap", r.gap},
          {"average_holds", r.average_holds},
          {"coordinate_holds", r.coordinate_holds},
          {"gap_holds", r.gap_holds}};
}

inline ordered_json to_json(const PacBayesReport& r) {
  return {{"m", r.sample_size},
          {"delta", r.delta},
          {"eps", r.eps},
          {"trials", r.trials},
          {"seed", r.seed},
          {"d", r.d},
          {"d_method", method_name(r.d_method)},
          {"violation_frequency", r.violation_frequency},
          {"violation_stderr", r.violation_stderr},
          {"violation_frequency_bits", r.violation_frequency_bits},
          {"mean_kl_bits", r.mean_kl_bits},
          {"mean_gap", r.mean_gap},
          {"kl_bound_holds", r.kl_bound_holds},
          {"required_m", r.required_m},
          {"tail_applicable", r.tail_applicable},
          {"tail_frequency", r.tail_frequency},
          {"tail_stderr", r.tail_stderr},
          {"tail_bound", r.tail_bound},
          {"tail_holds", r.tail_holds}};
}

inline ordered_json to_json(const FarOptimalReport& r) {
  return {{"N", r.domain_size},
          {"m", r.sample_size},
          {"generic_mi", r.generic_mi},
          {"generic_floor", r.generic_floor},
          {"erm_mi", r.erm_mi},
          {"erm_ceiling", r.erm_ceiling},
          {"in_regime", r.in_regime},
          {"generic_holds", r.generic_holds},
          {"erm_holds", r.erm_holds}};
}

inline ordered_json to_json(const NetLearnerReport& r) {
  return {{"m", r.sample_size},
          {"vc_dim", r.vc_dim},
          {"level_sizes", r.level_sizes},
          {"level_eps", r.level_eps},
          {"entropy", r.entropy},
          {"entropy_bound", r.entropy_bound},
          {"trials", r.trials},
          {"seed", r.seed},
          {"level_exact", r.level_exact},
          {"level_frequency", r.level_frequency},
          {"level_stderr", r.level_stderr},
          {"level_bound", r.level_bound},
          {"entropy_holds", r.entropy_holds},
          {"exact_levels_hold", r.exact_levels_hold},
          {"sampled_levels_hold", r.sampled_levels_hold}};
}

inline ordered_json to_json(const SharpnessReport& r) {
  return {{"n", r.n},
          {"m", r.m},
          {"sets", r.sets},
          {"set_size", r.set_size},
          {"measure_estimate", r.measure_estimate},
          {"measure_stderr", r.measure_stderr},
          {"trials", r.trials},
          {"seed", r.seed},
          {"high_error_frequency", r.high_error_frequency},
          {"high_error_stderr", r.high_error_stderr},
          {"frequency_floor", r.frequency_floor},
          {"entropy", r.entropy},
          {"entropy_stderr", r.entropy_stderr},
          {"entropy_cap", r.entropy_cap}};
}

}  // namespace infolearn

#endif  // INFOLEARN_REPORT_HPP_
