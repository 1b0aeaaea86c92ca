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

// Command-line front end. Exit status: 0 success, 1 a checked property or
// baseline failed, 2 bad configuration.

#include <fmt/core.h>
#include <fmt/ostream.h>

#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "ffm/ffm.hpp"
#include "json.hpp"

namespace {

using nlohmann::json;

constexpr int kExitOk = 0;
constexpr int kExitFailed = 1;
constexpr int kExitConfig = 2;

const std::vector<std::string> kGlobalOptions = {"threads", "cache-dir", "out", "format", "budget", "baselines"};

// JSON config: top-level scalars go to the global options or, failing that,
// to the subcommand being run; nested objects address a subcommand by name.
class JsonConfig : public CLI::Config {
 public:
  explicit JsonConfig(std::string subcommand) : subcommand_(std::move(subcommand)) {}

  std::string to_config(const CLI::App*, bool, bool, std::string) const override { return "{}"; }

  std::vector<CLI::ConfigItem> from_config(std::istream& in) const override {
    json j;
    try {
      in >> j;
    } catch (const json::exception& e) {
      throw CLI::ConfigError(std::string("malformed JSON config: ") + e.what());
    }
    if (!j.is_object()) throw CLI::ConfigError("JSON config must be an object");
    std::vector<CLI::ConfigItem> items;
    for (const auto& [k, v] : j.items()) {
      if (v.is_object()) {
        for (const auto& [k2, v2] : v.items()) items.push_back(item({k}, k2, v2));
      } else {
        const bool global = std::find(kGlobalOptions.begin(), kGlobalOptions.end(), k) != kGlobalOptions.end();
        items.push_back(item(global || subcommand_.empty() ? std::vector<std::string>{} : std::vector{subcommand_}, k, v));
      }
    }
    return items;
  }

 private:
  static std::string scalar(const json& v) { return v.is_string() ? v.get<std::string>() : v.dump(); }

  static CLI::ConfigItem item(std::vector<std::string> parents, const std::string& name, const json& v) {
    CLI::ConfigItem it;
    it.parents = std::move(parents);
    it.name = name;
    if (v.is_array()) {
      std::string joined;
      for (const auto& x : v) joined += (joined.empty() ? "" : ",") + scalar(x);
      it.inputs = {joined};
    } else {
      it.inputs = {scalar(v)};
    }
    return it;
  }

  std::string subcommand_;
};

struct Globals {
  std::optional<std::size_t> threads;
  std::string cache_dir;
  std::string out;
  std::string format = "json";
  double budget = 1e7;
  std::string baselines = "baselines/baselines.json";

  std::size_t workers() const { return threads ? *threads : ffm::default_workers(); }

  ffm::ComputeOptions compute() const {
    ffm::ComputeOptions o;
    o.workers = workers();
    if (!cache_dir.empty()) o.cache_dir = cache_dir;
    o.budget = budget;
    return o;
  }

  std::optional<std::filesystem::path> cache() const {
    if (cache_dir.empty()) return std::nullopt;
    return std::filesystem::path(cache_dir);
  }

  void check() const {
    if (format != "json" && format != "csv") throw ffm::ConfigError("--format must be json or csv");
    if (threads && *threads < 1) throw ffm::ConfigError("--threads must be at least 1");
    if (!(budget > 0)) throw ffm::ConfigError("--budget must be positive");
  }
};

// Writes to --out when given, else stdout.
class Sink {
 public:
  explicit Sink(const std::string& path) {
    if (!path.empty()) {
      file_.open(path);
      if (!file_) throw ffm::ConfigError("cannot write " + path);
    }
  }
  std::ostream& stream() { return file_.is_open() ? static_cast<std::ostream&>(file_) : std::cout; }

 private:
  std::ofstream file_;
};

void emit_json(const Globals& g, const json& j) {
  Sink s(g.out);
  s.stream() << j.dump(2) << "\n";
  if (!g.out.empty()) fmt::print("wrote {}\n", g.out);
}

std::vector<double> parse_list(const std::string& text, const char* what) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stod(tok, &used));
      if (used != tok.size()) throw std::invalid_argument(tok);
    } catch (const std::exception&) {
      throw ffm::ConfigError(std::string("cannot parse ") + what + " entry '" + tok + "'");
    }
  }
  if (out.empty()) throw ffm::ConfigError(std::string("empty ") + what + " list");
  return out;
}

ffm::Poly parse_arg_poly(const std::string& text, std::uint32_t q) {
  ffm::Poly p = [&] {
    try {
      return ffm::parse_poly(text);
    } catch (const ffm::DomainError& e) {
      throw ffm::ConfigError(e.what());
    }
  }();
  if (p.q() != q) throw ffm::ConfigError("polynomial " + text + " is not over F_" + std::to_string(q));
  return p;
}

json checks_to_json(const std::vector<ffm::BaselineCheck>& checks) {
  auto a = json::array();
  for (const auto& c : checks) {
    json e{{"key", c.key}, {"value", c.value}, {"present", c.present}};
    if (c.present) {
      e["frozen"] = c.frozen;
      e["rel_error"] = c.rel_error;
      e["match"] = c.match;
    }
    a.push_back(e);
  }
  return a;
}

// ---------------------------------------------------------------------------

struct PrimesArgs {
  std::uint32_t q = 3;
  int max_deg = 4;
};

int run_primes(const Globals& g, const PrimesArgs& a) {
  auto table = ffm::PrimeTable::build(ffm::field_for(a.q), a.max_deg);
  Sink s(g.out);
  table.write(s.stream());
  return kExitOk;
}

struct SymbolArgs {
  std::uint32_t q = 3;
  std::string c, d;
};

int run_symbol(const Globals&, const SymbolArgs& a) {
  auto C = parse_arg_poly(a.c, a.q), D = parse_arg_poly(a.d, a.q);
  if (!D.is_monic()) throw ffm::ConfigError("--d must be monic");
  // (C/D) for non-monic C: pull out the unit, whose symbol is its square class to the deg D
  const int unit = C.is_zero() ? 1 : (D.degree() % 2 ? C.F().quadratic_character(C.lead()) : 1);
  if (C.is_zero()) {
    fmt::print("{}\n", D.degree() == 0 ? 1 : 0);
    return kExitOk;
  }
  auto tr = ffm::jacobi_trace(C.monic(), D);
  fmt::print("{}\n", unit * tr.value);
  if (unit != 1) fmt::print("  leading unit {} contributes {}\n", C.lead(), unit);
  for (const auto& s : tr.steps) fmt::print("  {}\n", s);
  return kExitOk;
}

struct LfunArgs {
  std::uint32_t q = 3;
  int g = 1;
  std::string d;
  bool all = false;
};

int run_lfun(const Globals& g, const LfunArgs& a) {
  if (!a.d.empty()) {
    auto D = parse_arg_poly(a.d, a.q);
    auto table = ffm::prime_table_for(D.field(), std::max(1, D.degree() - 1), g.cache());
    auto L = ffm::lpoly_euler(D, table);
    if (g.format == "csv") {
      Sink s(g.out);
      std::vector<std::string> head{"D"};
      for (std::size_t n = 0; n < L.coeffs.size(); ++n) head.push_back("c_" + std::to_string(n));
      ffm::CsvWriter w(s.stream(), head);
      std::vector<std::string> row{ffm::to_string(L.D)};
      for (auto c : L.coeffs) row.push_back(std::to_string(c));
      w.row(row);
    } else {
      emit_json(g, ffm::to_json(L));
    }
    return kExitOk;
  }
  if (!a.all) throw ffm::ConfigError("lfun needs --d POLY or --all");
  auto fam = ffm::lfamily_for(a.q, a.g, g.compute());
  if (g.format == "json") {
    auto j = ffm::envelope("lfun-family");
    j["q"] = a.q;
    j["g"] = a.g;
    auto rows = json::array();
    for (std::size_t i = 0; i < fam->size(); ++i) {
      auto c = fam->coeffs(i);
      rows.push_back({{"D", ffm::to_string(fam->family()[i])}, {"coeffs", std::vector<std::int64_t>(c.begin(), c.end())}});
    }
    j["family"] = rows;
    emit_json(g, j);
  } else {
    Sink s(g.out);
    fam->write_csv(s.stream());
  }
  return kExitOk;
}

struct RhArgs {
  std::uint32_t q = 3;
  int g = 1;
  double tol = 1e-8;
};

int run_rh(const Globals& g, const RhArgs& a) {
  auto fam = ffm::lfamily_for(a.q, a.g, g.compute());
  auto r = ffm::rh_family(*fam, a.tol, g.workers());
  auto j = ffm::envelope("rh-check");
  j["q"] = a.q;
  j["g"] = a.g;
  j["tol"] = a.tol;
  j["family_size"] = r.family_size;
  j["max_deviation"] = r.max_deviation;
  j["worst"] = r.worst;
  j["failures"] = r.failures;
  emit_json(g, j);
  fmt::print(stderr, "max deviation {:.17g} over {} discriminants\n", r.max_deviation, r.family_size);
  return r.failures ? kExitFailed : kExitOk;
}

struct MomentsArgs {
  std::uint32_t q = 3;
  int g = 1;
  std::optional<int> g_max;
  std::string a = "1";
  std::string theta;
  std::string t;
  std::string variant = "both";
  std::string checkpoint;
};

int run_moments(const Globals& g, const MomentsArgs& a) {
  if (a.variant != "zeta" && a.variant != "min" && a.variant != "both") {
    throw ffm::ConfigError("--variant must be zeta, min or both");
  }
  if (!a.theta.empty() && !a.t.empty()) throw ffm::ConfigError("give --theta or --t, not both");
  ffm::MomentSpec spec;
  spec.q = a.q;
  spec.g = a.g;
  spec.a = parse_list(a.a, "--a");
  if (!a.t.empty()) {
    spec.theta.clear();
    for (double t : parse_list(a.t, "--t")) spec.theta.push_back(ffm::SpectralPoint::from_t(t, a.q).theta());
  } else {
    spec.theta = a.theta.empty() ? std::vector<double>(spec.a.size(), 0.0) : parse_list(a.theta, "--theta");
  }
  spec.validate();
  const int g_hi = a.g_max.value_or(a.g);
  for (int gg = a.g; gg <= g_hi; ++gg) ffm::check_budget(a.q, gg, g.budget);

  auto filter = [&](json j) {
    if (a.variant == "zeta") {
      j.erase("bound_min");
      j.erase("ratio_min");
    } else if (a.variant == "min") {
      j.erase("bound_zeta");
      j.erase("ratio_zeta");
    }
    return j;
  };
  std::vector<ffm::MomentReport> reports;
  for (int gg = a.g; gg <= g_hi; ++gg) {
    ffm::MomentSpec s = spec;
    s.g = gg;
    auto fam = ffm::lfamily_for(a.q, gg, g.compute());
    ffm::SweepOptions so;
    so.workers = g.workers();
    if (!a.checkpoint.empty()) {
      so.checkpoint = a.checkpoint + (g_hi > a.g ? ".g" + std::to_string(gg) : "");
      so.config_hash = ffm::config_hash(ffm::to_json(s).dump() + "/" + std::to_string(so.workers));
    }
    auto m = ffm::shifted_moment(*fam, s, so);
    ffm::MomentReport r;
    r.spec = s;
    r.empirical = m.value;
    r.zeros_detected = m.zeros_detected;
    r.family_size = fam->size();
    r.bound_zeta = ffm::theorem1_bound(s, ffm::BoundVariant::zeta);
    r.bound_min = ffm::theorem1_bound(s, ffm::BoundVariant::min);
    r.ratio_zeta = r.empirical / r.bound_zeta;
    r.ratio_min = r.empirical / r.bound_min;
    reports.push_back(r);
  }
  if (g.format == "csv") {
    Sink s(g.out);
    ffm::CsvWriter w(s.stream(), {"q", "g", "empirical", "bound_zeta", "bound_min", "ratio_zeta", "ratio_min",
                                  "family_size", "zeros_detected"});
    for (const auto& r : reports) {
      w.row({std::to_string(r.spec.q), std::to_string(r.spec.g), ffm::format_double(r.empirical),
             ffm::format_double(r.bound_zeta), ffm::format_double(r.bound_min), ffm::format_double(r.ratio_zeta),
             ffm::format_double(r.ratio_min), std::to_string(r.family_size), std::to_string(r.zeros_detected)});
    }
    return kExitOk;
  }
  if (reports.size() == 1) {
    emit_json(g, filter(ffm::to_json(reports[0])));
    return kExitOk;
  }
  auto j = ffm::envelope("moments-sweep");
  auto arr = json::array();
  std::vector<double> rz;
  for (const auto& r : reports) {
    arr.push_back(filter(ffm::to_json(r)));
    rz.push_back(r.ratio_zeta);
  }
  j["reports"] = arr;
  const double growth = ffm::max_ratio_growth(rz);
  j["max_ratio_growth"] = growth;
  if (growth > 2) j["warning"] = "ratio grows by more than a factor 2 per unit genus";
  emit_json(g, j);
  return kExitOk;
}

struct CharsumArgs {
  std::uint32_t q = 3;
  int g = 1;
  double m = 1.5;
  int logq_y = 0;
  bool allow_small_m = false;
  std::string checkpoint;
};

int run_charsums(const Globals& g, const CharsumArgs& a) {
  ffm::CharSumSpec spec{a.q, a.g, a.m, a.logq_y, a.allow_small_m};
  spec.validate();
  auto fam = ffm::lfamily_for(a.q, a.g, g.compute());
  if (g.format == "csv") {
    Sink s(g.out);
    ffm::CsvWriter w(s.stream(), {"D", "prefix_sum", "contribution"});
    for (std::size_t i = 0; i < fam->size(); ++i) {
      const auto p = ffm::char_prefix_sum(fam->coeffs(i), a.logq_y);
      w.row({ffm::to_string(fam->family()[i]), std::to_string(p),
             ffm::format_double(std::pow(std::fabs(static_cast<double>(p)), 2 * a.m))});
    }
    return kExitOk;
  }
  ffm::SweepOptions so;
  so.workers = g.workers();
  if (!a.checkpoint.empty()) {
    so.checkpoint = a.checkpoint;
    so.config_hash = ffm::config_hash(fmt::format("charsums/{}/{}/{:.17g}/{}/{}", a.q, a.g, a.m, a.logq_y, so.workers));
  }
  emit_json(g, ffm::to_json(ffm::s_m_moment(*fam, spec, so)));
  return kExitOk;
}

struct CircleArgs {
  std::uint32_t q = 3;
  int g = 1;
  double m = 1.5;
  int points = 256;
  std::string rule = "gauss";
};

int run_circle(const Globals& g, const CircleArgs& a) {
  if (a.rule != "gauss" && a.rule != "trapezoid") throw ffm::ConfigError("--rule must be gauss or trapezoid");
  if (!std::isfinite(a.m) || a.m < 0) throw ffm::ConfigError("m must be a nonnegative real");
  const auto rule = a.rule == "gauss" ? ffm::CircleRule::gauss : ffm::CircleRule::trapezoid;
  auto fam = ffm::lfamily_for(a.q, a.g, g.compute());
  if (g.format == "csv") {
    Sink s(g.out);
    ffm::CsvWriter w(s.stream(), {"D", "circle_integral", "contribution"});
    for (std::size_t i = 0; i < fam->size(); ++i) {
      const double v = ffm::circle_integral(fam->coeffs(i), a.q, a.points, rule);
      w.row({ffm::to_string(fam->family()[i]), ffm::format_double(v), ffm::format_double(std::pow(v, 2 * a.m))});
    }
    return kExitOk;
  }
  ffm::SweepOptions so;
  so.workers = g.workers();
  emit_json(g, ffm::to_json(ffm::circle_integral_moment(*fam, a.m, a.points, rule, so)));
  return kExitOk;
}

struct VerifyArgs {
  std::string suite;
  std::uint32_t q = 3;
  int g = 1;
  bool update = false;
  std::string h;
  std::string theta;
  std::string a;
  double sigma = 0.5;
  std::optional<int> logq_x;
};

int run_verify(const Globals& g, const VerifyArgs& a) {
  auto j = ffm::envelope("verify");
  j["suite"] = a.suite;
  j["q"] = a.q;
  j["g"] = a.g;
  bool failed = false;
  ffm::BaselineSet frozen;
  const std::size_t workers = g.workers();

  if (a.suite == "mertens") {
    auto rows = json::array();
    for (int n = 1; n <= ffm::kMertensMaxDegree; ++n) rows.push_back(ffm::to_json(ffm::mertens_log(a.q, n, g.cache())));
    j["log"] = rows;
    frozen = ffm::mertens_baselines(a.q);
  } else if (a.suite == "charavg") {
    auto s = ffm::charavg_sweep(a.q, a.g, ffm::kCharAvgMaxDegree);
    j["count"] = s.count;
    j["max_normalized"] = s.max_normalized;
    j["argmax"] = s.argmax;
    frozen = ffm::charavg_baselines(a.q, a.g);
  } else if (a.suite == "prop31") {
    auto fam = ffm::lfamily_for(a.q, a.g, g.compute());
    std::vector<int> hs;
    if (a.h.empty()) {
      for (int h = 1; h <= 2 * a.g + 1; ++h) hs.push_back(h);
    } else {
      for (double h : parse_list(a.h, "--trunc")) hs.push_back(static_cast<int>(h));
    }
    auto thetas = a.theta.empty() ? ffm::eighth_turns() : parse_list(a.theta, "--theta");
    auto r = ffm::prop31_grid(*fam, hs, thetas, workers);
    j["result"] = ffm::to_json(r);
    failed = r.violations > 0;
  } else if (a.suite == "prop32") {
    auto fam = ffm::lfamily_for(a.q, a.g, g.compute());
    const bool custom = !a.a.empty() || !a.theta.empty() || a.sigma != 0.5 || a.logq_x;
    if (custom) {
      auto av = a.a.empty() ? std::vector<double>{1.0} : parse_list(a.a, "--a");
      auto th = a.theta.empty() ? std::vector<double>(av.size(), 0.0) : parse_list(a.theta, "--theta");
      j["result"] = ffm::to_json(
          ffm::prop32_residual(*fam, a.logq_x.value_or(std::min(ffm::kProp32LogX, 2 * a.g + 1)), av, th, a.sigma, workers));
    } else {
      j["result"] = ffm::to_json(ffm::prop32_default(*fam, workers));
      auto probe = json::array();
      for (int n = 1; n <= 2 * a.g + 1; ++n) {
        probe.push_back({{"logq_x", n}, {"max_delta", ffm::prop32_residual(*fam, n, {1.0}, {0.0}, 0.5, workers).max_delta}});
      }
      j["x_probe"] = probe;
      frozen = ffm::prop32_baselines(*fam, workers);
    }
  } else if (a.suite == "tail") {
    auto fam = ffm::lfamily_for(a.q, a.g, g.compute());
    auto r = ffm::tail_check(*fam, workers);
    j["result"] = ffm::to_json(r);
    failed = r.tail_nonzero > 0 || r.prefix_mismatches > 0;
  } else if (a.suite == "ratios") {
    auto fam = ffm::lfamily_for(a.q, a.g, g.compute());
    frozen = ffm::moment_baselines(*fam, workers);
    for (auto& e : ffm::charsum_baselines(*fam, workers)) frozen.push_back(e);
  } else {
    throw ffm::ConfigError("unknown suite " + a.suite);
  }

  if (!frozen.empty()) {
    if (a.update) {
      auto b = ffm::Baselines::load(g.baselines);
      for (const auto& e : frozen) b.set(e.key, e.value);
      b.save(g.baselines);
      j["baselines_updated"] = g.baselines;
      auto arr = json::array();
      for (const auto& e : frozen) arr.push_back({{"key", e.key}, {"value", e.value}});
      j["baselines"] = arr;
    } else {
      auto checks = ffm::compare_all(ffm::Baselines::load(g.baselines), frozen);
      j["baselines"] = checks_to_json(checks);
      for (const auto& c : checks) failed = failed || (c.present && !c.match);
    }
  }
  j["passed"] = !failed;
  emit_json(g, j);
  return failed ? kExitFailed : kExitOk;
}

std::string active_subcommand(int argc, char** argv, const std::vector<std::string>& names) {
  for (int i = 1; i < argc; ++i) {
    if (std::find(names.begin(), names.end(), argv[i]) != names.end()) return argv[i];
  }
  return {};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact computations with quadratic Dirichlet L-functions over F_q[T]"};
  app.require_subcommand(1);
  Globals g;
  app.add_option("--threads", g.threads, "worker threads (default: FFM_THREADS or hardware concurrency)");
  app.add_option("--cache-dir", g.cache_dir, "directory for prime-table and L-coefficient caches");
  app.add_option("--out", g.out, "output file (default stdout)");
  app.add_option("--format", g.format, "json or csv");
  app.add_option("--budget", g.budget, "largest family size to enumerate");
  app.add_option("--baselines", g.baselines, "frozen baseline file");

  PrimesArgs pa;
  auto* primes = app.add_subcommand("primes", "monic irreducibles up to a degree");
  primes->add_option("--q", pa.q)->required();
  primes->add_option("--max-deg", pa.max_deg)->required();

  SymbolArgs sa;
  auto* symbol = app.add_subcommand("symbol", "quadratic residue symbol (C/D) with its reciprocity trace");
  symbol->add_option("--q", sa.q)->required();
  symbol->add_option("--c", sa.c)->required();
  symbol->add_option("--d", sa.d)->required();

  LfunArgs la;
  auto* lfun = app.add_subcommand("lfun", "L-polynomial coefficients");
  lfun->add_option("--q", la.q)->required();
  lfun->add_option("--g", la.g);
  lfun->add_option("--d", la.d, "single discriminant");
  lfun->add_flag("--all", la.all, "the whole family H_{2g+1,q}");

  RhArgs ra;
  auto* rh = app.add_subcommand("rh-check", "roots of every L-polynomial lie on |u| = q^{-1/2}");
  rh->add_option("--q", ra.q)->required();
  rh->add_option("--g", ra.g)->required();
  rh->add_option("--tol", ra.tol);

  MomentsArgs ma;
  auto* moments = app.add_subcommand("moments", "shifted moments and the bound ratios");
  moments->add_option("--q", ma.q)->required();
  moments->add_option("--g", ma.g)->required();
  moments->add_option("--g-max", ma.g_max, "sweep genus from --g to --g-max");
  moments->add_option("--a", ma.a, "exponents a_j, comma separated");
  moments->add_option("--theta", ma.theta, "angles theta_j = t_j ln q, comma separated");
  moments->add_option("--t", ma.t, "shifts t_j, comma separated");
  moments->add_option("--variant", ma.variant, "zeta, min or both");
  moments->add_option("--checkpoint", ma.checkpoint, "resumable sweep state");

  CharsumArgs ca;
  auto* charsums = app.add_subcommand("charsums", "moments of quadratic character sums");
  charsums->add_option("--q", ca.q)->required();
  charsums->add_option("--g", ca.g)->required();
  charsums->add_option("--m", ca.m);
  charsums->add_option("--logq-y", ca.logq_y, "N with Y = q^N");
  charsums->add_flag("--allow-small-m", ca.allow_small_m, "permit m < 3/2");
  charsums->add_option("--checkpoint", ca.checkpoint, "resumable sweep state");

  CircleArgs cia;
  auto* circle = app.add_subcommand("circle-moment", "moments of the circle integral of |L|");
  circle->add_option("--q", cia.q)->required();
  circle->add_option("--g", cia.g)->required();
  circle->add_option("--m", cia.m);
  circle->add_option("--points", cia.points);
  circle->add_option("--rule", cia.rule, "gauss (split at zeros) or trapezoid");

  VerifyArgs va;
  auto* verify = app.add_subcommand("verify", "verifier suites and frozen baselines");
  verify->add_option("--suite", va.suite, "mertens, charavg, prop31, prop32, tail or ratios")->required();
  verify->add_option("--q", va.q)->required();
  verify->add_option("--g", va.g);
  verify->add_flag("--update-baselines", va.update);
  verify->add_option("--trunc", va.h, "prop31 truncation lengths h, comma separated");
  verify->add_option("--theta", va.theta, "angles, comma separated");
  verify->add_option("--a", va.a, "prop32 exponents");
  verify->add_option("--sigma", va.sigma, "prop32 real part");
  verify->add_option("--logq-x", va.logq_x, "prop32 cutoff x = q^N");

  std::vector<std::string> names;
  for (auto* sub : app.get_subcommands([](CLI::App*) { return true; })) {
    sub->fallthrough();
    names.push_back(sub->get_name());
  }
  app.config_formatter(std::make_shared<JsonConfig>(active_subcommand(argc, argv, names)));
  app.set_config("--config", "", "JSON file supplying any flag; command-line flags win");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitConfig;
  }

  try {
    g.check();
    if (primes->parsed()) return run_primes(g, pa);
    if (symbol->parsed()) return run_symbol(g, sa);
    if (lfun->parsed()) return run_lfun(g, la);
    if (rh->parsed()) return run_rh(g, ra);
    if (moments->parsed()) return run_moments(g, ma);
    if (charsums->parsed()) return run_charsums(g, ca);
    if (circle->parsed()) return run_circle(g, cia);
    if (verify->parsed()) return run_verify(g, va);
  } catch (const ffm::ConfigError& e) {
    fmt::print(stderr, "configuration error: {}\n", e.what());
    return kExitConfig;
  } catch (const ffm::DomainError& e) {
    fmt::print(stderr, "invalid input: {}\n", e.what());
    return kExitConfig;
  } catch (const std::exception& e) {
    fmt::print(stderr, "error: {}\n", e.what());
    return kExitFailed;
  }
  return kExitConfig;
}
