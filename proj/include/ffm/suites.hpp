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
 * @file suites.hpp
 * @brief The frozen constants of each verifier suite, keyed for the
 *        baseline file. Shared by the command-line tool and the acceptance
 *        run so both freeze and compare the same numbers.
 */

#pragma once

#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include "ffm/baselines.hpp"
#include "ffm/charsums.hpp"
#include "ffm/moments.hpp"
#include "ffm/verify.hpp"

namespace ffm {

struct BaselineEntry {
  std::string key;
  double value = 0;
};
using BaselineSet = std::vector<BaselineEntry>;

inline std::string qg_key(const std::string& suite, std::uint32_t q, int g) {
  return suite + "/q" + std::to_string(q) + "/g" + std::to_string(g);
}

inline constexpr int kMertensMaxDegree = 8;
inline constexpr int kCharAvgMaxDegree = 4;
inline constexpr int kProp32LogX = 3;
inline constexpr int kCirclePoints = 256;

/// C1 = max |residual| of the log sum, C2 = max |residual| of the cosine
/// sum over the alpha grid, both over 1 <= n <= max_n.
inline BaselineSet mertens_baselines(std::uint32_t q, int max_n = kMertensMaxDegree) {
  double c1 = 0, c2z = 0, c2m = 0;
  for (int n = 1; n <= max_n; ++n) {
    c1 = std::max(c1, std::fabs(mertens_log(q, n).residual));
    for (double al : mertens_alpha_grid(q)) {
      auto c = mertens_cos(q, n, al);
      c2z = std::max(c2z, std::fabs(c.residual_zeta));
      c2m = std::max(c2m, std::fabs(c.residual_min));
    }
  }
  const std::string p = "mertens/q" + std::to_string(q);
  return {{p + "/C1", c1}, {p + "/C2_zeta", c2z}, {p + "/C2_min", c2m}};
}

inline BaselineSet charavg_baselines(std::uint32_t q, int g) {
  return {{qg_key("charavg", q, g) + "/C3", charavg_sweep(q, g, kCharAvgMaxDegree).max_normalized}};
}

/// a = (1), theta = (0), sigma = 1/2, x = q^3 (or X when that is smaller).
inline Prop32Report prop32_default(const LFamily& fam, std::size_t workers) {
  return prop32_residual(fam, std::min(kProp32LogX, 2 * fam.g() + 1), {1.0}, {0.0}, 0.5, workers);
}

inline BaselineSet prop32_baselines(const LFamily& fam, std::size_t workers) {
  return {{qg_key("prop32", fam.q(), fam.g()) + "/max_delta", prop32_default(fam, workers).max_delta}};
}

/// The two tracked shift configurations.
inline std::vector<std::pair<std::string, MomentSpec>> tracked_moment_specs(std::uint32_t q, int g) {
  MomentSpec single;
  single.q = q;
  single.g = g;
  MomentSpec pair = single;
  pair.a = {1.0, 1.0};
  pair.theta = {0.0, std::numbers::pi / 2};
  return {{"single", single}, {"pair", pair}};
}

inline BaselineSet moment_baselines(const LFamily& fam, std::size_t workers) {
  BaselineSet out;
  SweepOptions so;
  so.workers = workers;
  for (auto [label, spec] : tracked_moment_specs(fam.q(), fam.g())) {
    spec.validate();
    const double emp = shifted_moment(fam, spec, so).value;
    const std::string p = qg_key("moments", fam.q(), fam.g()) + "/" + label;
    out.push_back({p + "/ratio_zeta", emp / theorem1_bound(spec, BoundVariant::zeta)});
    out.push_back({p + "/ratio_min", emp / theorem1_bound(spec, BoundVariant::min)});
  }
  return out;
}

/// m = 3/2 with Y = q^g, and the circle-integral analogue.
inline BaselineSet charsum_baselines(const LFamily& fam, std::size_t workers) {
  SweepOptions so;
  so.workers = workers;
  CharSumSpec spec{fam.q(), fam.g(), 1.5, fam.g()};
  const auto s = s_m_moment(fam, spec, so);
  const auto c = circle_integral_moment(fam, 1.5, kCirclePoints, CircleRule::gauss, so);
  return {{qg_key("charsums", fam.q(), fam.g()) + "/ratio", s.ratio}, {qg_key("circle", fam.q(), fam.g()) + "/ratio", c.ratio}};
}

inline std::vector<BaselineCheck> compare_all(const Baselines& b, const BaselineSet& set) {
  std::vector<BaselineCheck> out;
  for (const auto& e : set) out.push_back(b.compare(e.key, e.value));
  return out;
}

}  // namespace ffm
