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
 * @file baselines.hpp
 * @brief Frozen regression constants: a JSON map from key to value, written
 *        once by an audited run and compared against on every later run.
 */

#pragma once

#include <cmath>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <string>

#include "ffm/errors.hpp"
#include "json.hpp"

namespace ffm {

inline constexpr double kBaselineTolerance = 1e-9;

struct BaselineCheck {
  std::string key;
  bool present = false;
  bool match = false;
  double frozen = 0;
  double value = 0;
  double rel_error = 0;
};

class Baselines {
 public:
  /// A missing file is an empty map.
  static Baselines load(const std::filesystem::path& path) {
    Baselines b;
    if (!std::filesystem::exists(path)) return b;
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot read baseline file " + path.string());
    nlohmann::json j;
    try {
      in >> j;
      if (j.at("schema_version").get<int>() != 1) throw ConfigError("unsupported baseline schema in " + path.string());
      for (const auto& [k, v] : j.at("values").items()) b.values_[k] = v.get<double>();
    } catch (const nlohmann::json::exception& e) {
      throw ConfigError("malformed baseline file " + path.string() + ": " + e.what());
    }
    return b;
  }

  void save(const std::filesystem::path& path) const {
    nlohmann::json j;
    j["schema_version"] = 1;
    j["values"] = nlohmann::json::object();
    for (const auto& [k, v] : values_) j["values"][k] = v;
    if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
    const auto tmp = path.string() + ".tmp";
    {
      std::ofstream out(tmp);
      if (!out) throw ConfigError("cannot write baseline file " + tmp);
      out << j.dump(2) << "\n";
    }
    std::filesystem::rename(tmp, path);
  }

  std::optional<double> get(const std::string& key) const {
    auto it = values_.find(key);
    if (it == values_.end()) return std::nullopt;
    return it->second;
  }

  void set(const std::string& key, double value) {
    if (!std::isfinite(value)) throw ConfigError("baseline " + key + " is not finite");
    values_[key] = value;
  }

  /// Relative comparison with an absolute floor of 1e-15 for frozen zeros.
  BaselineCheck compare(const std::string& key, double value, double tol = kBaselineTolerance) const {
    BaselineCheck c;
    c.key = key;
    c.value = value;
    auto f = get(key);
    if (!f) return c;
    c.present = true;
    c.frozen = *f;
    const double err = std::fabs(value - *f);
    c.rel_error = *f != 0 ? err / std::fabs(*f) : err;
    c.match = err <= tol * std::fabs(*f) + 1e-15;
    return c;
  }

  const std::map<std::string, double>& values() const noexcept { return values_; }

 private:
  std::map<std::string, double> values_;
};

}  // namespace ffm
