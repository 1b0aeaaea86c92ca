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
 * @file sweep.hpp
 * @brief Deterministic sharded sweeps over an index range.
 *
 * A sweep splits [0, n) into contiguous shards, runs one worker per shard,
 * and merges the per-shard results in shard order. The merge order depends
 * only on the shard count, so results are bit-stable for a fixed count.
 */

#pragma once

#include <cstdint>
#include <cstdlib>
#include <exception>
#include <filesystem>
#include <fstream>
#include <functional>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "json.hpp"

#include "ffm/errors.hpp"
#include "ffm/summation.hpp"

namespace ffm {

struct IndexRange {
  std::size_t begin = 0;
  std::size_t end = 0;
  std::size_t size() const noexcept { return end - begin; }
  friend bool operator==(const IndexRange&, const IndexRange&) = default;
};

/// Balanced contiguous split; the first n % workers shards get one extra index.
inline std::vector<IndexRange> shard_plan(std::size_t n, std::size_t workers) {
  if (workers < 1) throw ConfigError("shard_plan needs at least one worker");
  std::vector<IndexRange> plan;
  plan.reserve(workers);
  const std::size_t base = n / workers, extra = n % workers;
  std::size_t at = 0;
  for (std::size_t w = 0; w < workers; ++w) {
    std::size_t len = base + (w < extra ? 1 : 0);
    plan.push_back({at, at + len});
    at += len;
  }
  return plan;
}

/// Worker count from FFM_THREADS if set, else the hardware concurrency.
inline std::size_t default_workers() {
  if (const char* env = std::getenv("FFM_THREADS"); env && *env) {
    char* end = nullptr;
    long v = std::strtol(env, &end, 10);
    if (*end != '\0' || v < 1) throw ConfigError(std::string("FFM_THREADS must be a positive integer, got ") + env);
    return static_cast<std::size_t>(v);
  }
  unsigned hc = std::thread::hardware_concurrency();
  return hc ? hc : 1;
}

/// Per-shard accumulators: compensated floating sums and exact integers.
struct ShardResult {
  std::vector<KahanSum> sums;
  std::vector<std::int64_t> ints;

  ShardResult() = default;
  ShardResult(std::size_t n_sums, std::size_t n_ints) : sums(n_sums), ints(n_ints, 0) {}

  void merge(const ShardResult& other) {
    if (sums.empty() && ints.empty()) {
      *this = other;
      return;
    }
    if (other.sums.size() != sums.size() || other.ints.size() != ints.size()) {
      throw NumericalError("shard results have mismatched shapes");
    }
    for (std::size_t i = 0; i < sums.size(); ++i) sums[i].merge(other.sums[i]);
    for (std::size_t i = 0; i < ints.size(); ++i) ints[i] += other.ints[i];
  }
};

inline void to_json(nlohmann::json& j, const ShardResult& r) {
  nlohmann::json sums = nlohmann::json::array();
  for (const auto& s : r.sums) sums.push_back({s.raw_sum(), s.compensation()});
  j = {{"sums", sums}, {"ints", r.ints}};
}

inline void from_json(const nlohmann::json& j, ShardResult& r) {
  r.sums.clear();
  for (const auto& s : j.at("sums")) r.sums.emplace_back(s.at(0).get<double>(), s.at(1).get<double>());
  r.ints = j.at("ints").get<std::vector<std::int64_t>>();
}

/// Runs fn(range, shard) on every shard, one thread per shard, and returns
/// the results in shard order. The first exception thrown by any worker is
/// rethrown after all workers have joined.
template <class Result>
std::vector<Result> run_shards(const std::vector<IndexRange>& plan,
                               const std::function<Result(IndexRange, std::size_t)>& fn) {
  std::vector<Result> out(plan.size());
  std::vector<std::exception_ptr> errors(plan.size());
  if (plan.size() == 1) {
    out[0] = fn(plan[0], 0);
    return out;
  }
  {
    std::vector<std::jthread> threads;
    threads.reserve(plan.size());
    for (std::size_t s = 0; s < plan.size(); ++s) {
      threads.emplace_back([&, s] {
        try {
          out[s] = fn(plan[s], s);
        } catch (...) {
          errors[s] = std::current_exception();
        }
      });
    }
  }
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return out;
}

/// Completed shards of an interrupted sweep, keyed by a configuration hash.
struct SweepCheckpoint {
  std::string config_hash;
  std::size_t shard_count = 0;
  std::vector<std::optional<ShardResult>> shards;

  static SweepCheckpoint load(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot read checkpoint " + path.string());
    nlohmann::json j;
    try {
      in >> j;
    } catch (const nlohmann::json::exception& e) {
      throw ConfigError("malformed checkpoint " + path.string() + ": " + e.what());
    }
    SweepCheckpoint c;
    c.config_hash = j.at("config_hash").get<std::string>();
    c.shard_count = j.at("shard_count").get<std::size_t>();
    c.shards.resize(c.shard_count);
    for (const auto& item : j.at("completed")) {
      auto idx = item.at("shard").get<std::size_t>();
      if (idx >= c.shard_count) throw ConfigError("checkpoint shard index out of range");
      c.shards[idx] = item.at("result").get<ShardResult>();
    }
    return c;
  }

  void save(const std::filesystem::path& path) const {
    nlohmann::json completed = nlohmann::json::array();
    for (std::size_t i = 0; i < shards.size(); ++i) {
      if (shards[i]) completed.push_back({{"shard", i}, {"result", *shards[i]}});
    }
    nlohmann::json j = {{"schema_version", 1},
                        {"config_hash", config_hash},
                        {"shard_count", shard_count},
                        {"completed", completed}};
    auto tmp = path;
    tmp += ".tmp";
    {
      std::ofstream out(tmp);
      if (!out) throw ConfigError("cannot write checkpoint " + tmp.string());
      out << j.dump(1) << "\n";
    }
    std::filesystem::rename(tmp, path);
  }
};

struct SweepOptions {
  std::size_t workers = 1;
  std::optional<std::filesystem::path> checkpoint;
  std::string config_hash;
  /// Stop after this many newly computed shards (simulates an interruption).
  std::optional<std::size_t> stop_after;
};

/// Sharded sweep of [0, n) with ShardResult accumulators and optional
/// checkpointing. With a checkpoint, shards run one after another so each
/// completed shard is persisted before the next begins. Returns nullopt if
/// the run was stopped early.
inline std::optional<ShardResult> sweep(std::size_t n, const SweepOptions& opt,
                                        const std::function<ShardResult(IndexRange)>& fn) {
  auto plan = shard_plan(n, opt.workers);
  if (!opt.checkpoint) {
    auto parts = run_shards<ShardResult>(plan, [&](IndexRange r, std::size_t) { return fn(r); });
    ShardResult total;
    for (const auto& p : parts) total.merge(p);
    return total;
  }
  SweepCheckpoint cp;
  if (std::filesystem::exists(*opt.checkpoint)) {
    cp = SweepCheckpoint::load(*opt.checkpoint);
    if (cp.config_hash != opt.config_hash || cp.shard_count != plan.size()) {
      throw ConfigError("checkpoint " + opt.checkpoint->string() + " belongs to a different configuration");
    }
  } else {
    cp.config_hash = opt.config_hash;
    cp.shard_count = plan.size();
    cp.shards.resize(plan.size());
  }
  std::size_t fresh = 0;
  for (std::size_t s = 0; s < plan.size(); ++s) {
    if (cp.shards[s]) continue;
    if (opt.stop_after && fresh >= *opt.stop_after) return std::nullopt;
    cp.shards[s] = fn(plan[s]);
    cp.save(*opt.checkpoint);
    ++fresh;
  }
  ShardResult total;
  for (const auto& p : cp.shards) total.merge(*p);
  return total;
}

/// Stable FNV-1a hash of a configuration string, as hex.
inline std::string config_hash(const std::string& text) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : text) {
    h ^= c;
    h *= 1099511628211ull;
  }
  static const char* digits = "0123456789abcdef";
  std::string out(16, '0');
  for (int i = 15; i >= 0; --i) {
    out[static_cast<std::size_t>(i)] = digits[h & 15];
    h >>= 4;
  }
  return out;
}

}  // namespace ffm
