// Copyright 2026 The ffm Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

/**
 * @file report.hpp
 * @brief JSON and CSV renderings of the reports. Every JSON document carries
 *        schema_version; every CSV starts with a header row. Floats in CSV
 *        use 17 significant digits.
 */

#pragma once

#include <cstdio>
#include <ostream>
#include <string>
#include <vector>

#include "ffm/charsums.hpp"
#include "ffm/lfunction.hpp"
#include "ffm/moments.hpp"
#include "ffm/verify.hpp"
#include "json.hpp"

namespace ffm {

inline constexpr int kSchemaVersion = 1;

inline std::string format_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

/// RFC 4180 quoting for fields with commas, quotes or newlines.
inline std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + '"';
}

class CsvWriter {
 public:
  CsvWriter(std::ostream& out, const std::vector<std::string>& header) : out_(out), width_(header.size()) {
    write(header);
  }
  void row(const std::vector<std::string>& cells) {
    if (cells.size() != width_) throw ConfigError("CSV row width does not match header");
    write(cells);
  }

 private:
  void write(const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) out_ << (i ? "," : "") << csv_field(cells[i]);
    out_ << "\n";
  }
  std::ostream& out_;
  std::size_t width_;
};

inline nlohmann::json envelope(const std::string& kind) {
  return {{"schema_version", kSchemaVersion}, {"kind", kind}};
}

inline nlohmann::json to_json(const MomentSpec& s) {
  return {{"q", s.q}, {"g", s.g}, {"a", s.a}, {"theta", s.theta}};
}

inline nlohmann::json to_json(const MomentReport& r) {
  auto j = envelope("moments");
  j["spec"] = to_json(r.spec);
  j["empirical"] = r.empirical;
  j["bound_zeta"] = r.bound_zeta;
  j["bound_min"] = r.bound_min;
  j["ratio_zeta"] = r.ratio_zeta;
  j["ratio_min"] = r.ratio_min;
  j["family_size"] = r.family_size;
  j["zeros_detected"] = r.zeros_detected;
  return j;
}

inline nlohmann::json to_json(const CharSumReport& r) {
  auto j = envelope("charsums");
  j["spec"] = {{"q", r.spec.q}, {"g", r.spec.g}, {"m", r.spec.m}, {"logq_y", r.spec.N}};
  j["value"] = r.value;
  j["exact"] = r.exact ? nlohmann::json(*r.exact) : nlohmann::json(nullptr);
  j["bound"] = r.bound;
  j["ratio"] = r.ratio;
  j["family_size"] = r.family_size;
  auto h = nlohmann::json::array();
  for (const auto& [k, v] : r.histogram) h.push_back({{"abs_prefix_sum", k}, {"count", v}});
  j["histogram"] = h;
  j["warnings"] = r.warnings;
  return j;
}

inline nlohmann::json to_json(const CircleReport& r) {
  auto j = envelope("circle-moment");
  j["spec"] = {{"q", r.q}, {"g", r.g}, {"m", r.m}, {"points", r.points},
               {"rule", r.rule == CircleRule::gauss ? "gauss" : "trapezoid"}};
  j["value"] = r.value;
  j["bound"] = r.bound;
  j["ratio"] = r.ratio;
  j["family_size"] = r.family_size;
  return j;
}

inline nlohmann::json to_json(const MertensReport& r) {
  auto j = envelope("mertens-log");
  j["q"] = r.q;
  j["n"] = r.n;
  j["sum"] = r.sum;
  j["main"] = r.main;
  j["residual"] = r.residual;
  j["b_estimate"] = r.b_estimate;
  return j;
}

inline nlohmann::json to_json(const MertensCosReport& r) {
  auto j = envelope("mertens-cos");
  j["q"] = r.q;
  j["n"] = r.n;
  j["alpha"] = r.alpha;
  j["sum"] = r.sum;
  j["zeta_term"] = r.zeta_term;
  j["min_term"] = r.min_term;
  j["residual_zeta"] = r.residual_zeta;
  j["residual_min"] = r.residual_min;
  return j;
}

inline nlohmann::json to_json(const CharAvgReport& r) {
  auto j = envelope("charavg");
  j["q"] = r.q;
  j["g"] = r.g;
  j["f"] = r.f;
  j["lhs"] = r.lhs;
  j["main"] = r.main;
  j["residual"] = r.residual;
  j["normalized"] = r.normalized;
  j["truncation"] = r.truncation;
  return j;
}

inline nlohmann::json to_json(const Prop31Grid& r) {
  auto j = envelope("prop31");
  j["checked"] = r.checked;
  j["violations"] = r.violations;
  j["zeros"] = r.zeros;
  j["min_slack"] = r.min_slack;
  j["argmin"] = r.argmin;
  return j;
}

inline nlohmann::json to_json(const Prop32Report& r) {
  auto j = envelope("prop32");
  j["q"] = r.q;
  j["g"] = r.g;
  j["logq_x"] = r.n;
  j["sigma"] = r.sigma;
  j["max_delta"] = r.max_delta;
  j["mean_delta"] = r.mean_delta;
  j["argmax"] = r.argmax;
  j["zeros"] = r.zeros;
  j["family_size"] = r.family_size;
  return j;
}

inline nlohmann::json to_json(const TailReport& r) {
  auto j = envelope("tail");
  j["tail_checks"] = r.tail_checks;
  j["tail_nonzero"] = r.tail_nonzero;
  j["prefix_checks"] = r.prefix_checks;
  j["prefix_mismatches"] = r.prefix_mismatches;
  return j;
}

inline nlohmann::json to_json(const LPolynomial& L) {
  auto j = envelope("lfun");
  j["q"] = L.q;
  j["g"] = L.g;
  j["D"] = to_string(L.D);
  j["coeffs"] = L.coeffs;
  return j;
}

}  // namespace ffm
