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

#ifndef INFOLEARN_CLI_HPP_
#define INFOLEARN_CLI_HPP_

// Experiment runner behind the infolearn tool: config parsing and
// validation, the grid over (N, m, eps, delta), and report assembly.
//
// Config format, one entry per line:
//   key = value
// Repeated keys build lists (grid axes, marginal weights); '#' starts a
// comment; blank lines are ignored.

#include <algorithm>
#include <bit>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <tuple>
#include <vector>

#include "infolearn/adversary.hpp"
#include "infolearn/analysis.hpp"
#include "infolearn/learners.hpp"
#include "infolearn/parallel.hpp"
#include "infolearn/report.hpp"

namespace infolearn::cli {

// Validation failure; key() names the offending config key.
class ConfigError : public Error {
 public:
  ConfigError(std::string key, const std::string& message)
      : Error(key + ": " + message), key_(std::move(key)) {}
  const std::string& key() const { return key_; }

 private:
  std::string key_;
};

enum class Kind {
  kMiExact,
  kMiEstimate,
  kPriorBound,
  kGenGap,
  kStability,
  kPacBayes,
  kLowerBound,
  kSharpness,
  kNetLearner,
  kBoost,
  kFarOptimal,
};

struct KindSchema {
  Kind kind;
  const char* name;
  std::vector<std::string> required;
  std::vector<std::string> optional;
};

inline const std::vector<KindSchema>& kind_schemas() {
  static const std::vector<std::string> problem = {"class", "learner", "marginal", "weight", "member", "target"};
  auto with = [](std::vector<std::string> a, const std::vector<std::string>& b) {
    a.insert(a.end(), b.begin(), b.end());
    return a;
  };
  static const std::vector<KindSchema> schemas = {
      {Kind::kMiExact, "mi-exact", {"N", "m"}, with(problem, {"seed", "budget", "method"})},
      {Kind::kMiEstimate, "mi-estimate", {"N", "m", "seed"}, with(problem, {"trials"})},
      {Kind::kPriorBound, "prior-bound", {"N", "m"}, with(problem, {"seed", "budget"})},
      {Kind::kGenGap, "gen-gap", {"N", "m", "eps", "seed"}, with(problem, {"trials", "budget"})},
      {Kind::kStability, "stability", {"N", "m"}, with(problem, {"seed", "budget"})},
      {Kind::kPacBayes, "pac-bayes", {"N", "m", "eps", "delta", "seed"}, with(problem, {"trials", "budget"})},
      {Kind::kLowerBound, "lower-bound", {"N", "m"}, {"learner", "budget"}},
      {Kind::kSharpness, "sharpness", {"N", "m", "seed"}, {"trials"}},
      {Kind::kNetLearner,
       "net-learner",
       {"N", "m", "seed"},
       {"class", "marginal", "weight", "member", "target", "trials", "budget"}},
      {Kind::kBoost, "boost", {"N", "m", "eps", "delta"}, with(problem, {"seed", "budget"})},
      {Kind::kFarOptimal, "far-optimal", {"N", "m"}, {"budget"}},
  };
  return schemas;
}

inline const KindSchema& schema_of(Kind k) {
  for (const auto& s : kind_schemas()) {
    if (s.kind == k) return s;
  }
  throw Error("unknown experiment kind");
}

inline Kind parse_kind(std::string_view name) {
  for (const auto& s : kind_schemas()) {
    if (name == s.name) return s.kind;
  }
  throw ConfigError("kind", "unknown experiment kind '" + std::string(name) + "'");
}

inline std::string kind_name(Kind k) { return schema_of(k).name; }

struct Config {
  Kind kind = Kind::kMiExact;
  std::string class_name = "thresholds";
  std::string learner = "generic";
  std::string marginal = "uniform";
  std::vector<double> weights;
  std::uint64_t member = 0;
  std::optional<std::size_t> target;  // 1-based index into the class
  std::vector<std::size_t> n;
  std::vector<std::size_t> m;
  std::vector<double> eps;
  std::vector<double> delta;
  std::optional<std::uint64_t> seed;
  std::size_t trials = 100'000;
  std::uint64_t budget = kDefaultEnumerationBudget;
  std::string method = "auto";
  std::uint64_t hash = 0;  // FNV-1a over the canonical key = value listing
};

namespace detail {

inline std::string_view trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

template <class T>
T parse_number(const std::string& key, std::string_view text) {
  T value{};
  const auto* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc() || ptr != end || text.empty()) {
    throw ConfigError(key, "cannot parse '" + std::string(text) + "' as a number");
  }
  return value;
}

inline std::size_t parse_count(const std::string& key, std::string_view text) {
  if (!text.empty() && text.front() == '-') throw ConfigError(key, "value must be positive");
  const auto v = parse_number<std::uint64_t>(key, text);
  if (v == 0) throw ConfigError(key, "value must be positive");
  return static_cast<std::size_t>(v);
}

inline double parse_positive(const std::string& key, std::string_view text) {
  const auto v = parse_number<double>(key, text);
  if (!(v > 0.0) || !std::isfinite(v)) throw ConfigError(key, "value must be positive and finite");
  return v;
}

inline std::uint64_t fnv1a(std::string_view s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

inline const std::set<std::string>& list_keys() {
  static const std::set<std::string> keys = {"N", "m", "eps", "delta", "weight"};
  return keys;
}

}  // namespace detail

inline std::string hash_hex(std::uint64_t h) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

// Parses and validates a config for the given kind. The budget can be
// overridden afterwards (see apply_budget_override); the hash covers the
// config text only.
inline Config parse_config(std::string_view text, Kind kind) {
  const KindSchema& schema = schema_of(kind);
  std::set<std::string> allowed(schema.required.begin(), schema.required.end());
  allowed.insert(schema.optional.begin(), schema.optional.end());

  std::map<std::string, std::vector<std::string>> entries;
  std::istringstream in{std::string(text)};
  std::string raw;
  std::size_t line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    std::string_view line = raw;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = detail::trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw ConfigError("line " + std::to_string(line_no), "expected 'key = value'");
    }
    const std::string key(detail::trim(line.substr(0, eq)));
    const std::string value(detail::trim(line.substr(eq + 1)));
    if (key.empty()) throw ConfigError("line " + std::to_string(line_no), "missing key");
    if (!allowed.contains(key)) {
      throw ConfigError(key, "not a recognised key for " + std::string(schema.name));
    }
    if (value.empty()) {
      throw ConfigError(key, detail::list_keys().contains(key) ? "empty axis" : "empty value");
    }
    auto& slot = entries[key];
    if (!slot.empty() && !detail::list_keys().contains(key)) throw ConfigError(key, "given more than once");
    slot.push_back(value);
  }
  for (const auto& key : schema.required) {
    if (!entries.contains(key)) {
      throw ConfigError(key, "required for " + std::string(schema.name) +
                                 (key == "seed" ? " (stochastic experiments need an explicit seed)" : ""));
    }
  }

  Config c;
  c.kind = kind;
  auto scalar = [&](const std::string& key) -> std::optional<std::string> {
    auto it = entries.find(key);
    if (it == entries.end()) return std::nullopt;
    return it->second.front();
  };
  for (const auto& v : entries["N"]) c.n.push_back(detail::parse_count("N", v));
  for (const auto& v : entries["m"]) c.m.push_back(detail::parse_count("m", v));
  for (const auto& v : entries["eps"]) c.eps.push_back(detail::parse_positive("eps", v));
  for (const auto& v : entries["delta"]) {
    const double d = detail::parse_positive("delta", v);
    if (d >= 1.0) throw ConfigError("delta", "value must lie in (0,1)");
    c.delta.push_back(d);
  }
  for (const auto& v : entries["weight"]) {
    const double w = detail::parse_number<double>("weight", v);
    if (!(w >= 0.0) || !std::isfinite(w)) throw ConfigError("weight", "weights must be non-negative and finite");
    c.weights.push_back(w);
  }
  if (auto v = scalar("class")) {
    if (*v != "thresholds" && *v != "points" && *v != "far-optimal" && *v != "cube") {
      throw ConfigError("class", "expected thresholds, points, far-optimal or cube");
    }
    c.class_name = *v;
  }
  if (auto v = scalar("learner")) {
    static const std::set<std::string> known = {"generic", "min-erm", "far-optimal-erm", "net"};
    if (!known.contains(*v)) throw ConfigError("learner", "expected generic, min-erm, far-optimal-erm or net");
    c.learner = *v;
  }
  if (kind == Kind::kLowerBound && c.learner != "generic" && c.learner != "min-erm") {
    throw ConfigError("learner", "lower-bound supports generic and min-erm");
  }
  if (kind == Kind::kLowerBound) c.class_name = "thresholds";
  if (kind == Kind::kNetLearner) c.learner = "net";
  if (c.learner == "min-erm" && c.class_name != "thresholds") {
    throw ConfigError("learner", "min-erm needs class = thresholds");
  }
  if (c.learner == "far-optimal-erm" && c.class_name != "far-optimal") {
    throw ConfigError("learner", "far-optimal-erm needs class = far-optimal");
  }
  if (auto v = scalar("marginal")) {
    if (*v != "uniform" && *v != "inverse" && *v != "random" && *v != "weights") {
      throw ConfigError("marginal", "expected uniform, inverse, random or weights");
    }
    c.marginal = *v;
  }
  if (c.marginal == "weights" && c.weights.empty()) throw ConfigError("weight", "required for marginal = weights");
  if (c.marginal != "weights" && !c.weights.empty()) throw ConfigError("weight", "only used with marginal = weights");
  if (auto v = scalar("member")) c.member = detail::parse_number<std::uint64_t>("member", *v);
  if (auto v = scalar("target")) c.target = detail::parse_count("target", *v);
  if (auto v = scalar("seed")) c.seed = detail::parse_number<std::uint64_t>("seed", *v);
  if (c.marginal == "random" && !c.seed) throw ConfigError("seed", "required for marginal = random");
  if (auto v = scalar("trials")) c.trials = detail::parse_count("trials", *v);
  if (auto v = scalar("budget")) c.budget = detail::parse_count("budget", *v);
  if (auto v = scalar("method")) {
    if (*v != "auto" && *v != "exact" && *v != "signature" && *v != "prior-bound") {
      throw ConfigError("method", "expected auto, exact, signature or prior-bound");
    }
    c.method = *v;
  }

  // Canonical listing: kind first, then keys in sorted order with list
  // values in the order given.
  std::string canonical = "kind=" + std::string(schema.name) + "\n";
  for (const auto& [key, values] : entries) {
    for (const auto& v : values) canonical += key + "=" + v + "\n";
  }
  c.hash = detail::fnv1a(canonical);
  return c;
}

inline Config load_config(const std::filesystem::path& path, Kind kind) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw ConfigError("config", "cannot read " + path.string());
  std::ostringstream s;
  s << f.rdbuf();
  return parse_config(s.str(), kind);
}

// Applies INFOLEARN_BUDGET when set.
inline void apply_budget_override(Config& c, const char* value) {
  if (value == nullptr) return;
  c.budget = detail::parse_count("INFOLEARN_BUDGET", value);
}

struct GridKey {
  std::size_t n = 0;
  std::size_t m = 0;
  std::optional<double> eps;
  std::optional<double> delta;
  auto tie() const { return std::tie(n, m, eps, delta); }
  bool operator<(const GridKey& o) const { return tie() < o.tie(); }
};

struct Row {
  GridKey key;
  std::optional<double> mi;
  std::optional<double> bound;
  std::optional<double> frequency;
  std::optional<double> stderr_value;
  std::string method;
  std::string status = "ok";
  ordered_json detail = ordered_json::object();
};

inline const std::vector<std::string>& csv_header() {
  static const std::vector<std::string> h = {"N",         "m",      "eps",    "delta", "mi",     "bound",
                                             "frequency", "stderr", "method", "seed",  "status", "config_hash"};
  return h;
}

inline std::vector<GridKey> grid(const Config& c) {
  std::vector<std::optional<double>> eps(c.eps.begin(), c.eps.end());
  std::vector<std::optional<double>> delta(c.delta.begin(), c.delta.end());
  if (eps.empty()) eps.push_back(std::nullopt);
  if (delta.empty()) delta.push_back(std::nullopt);
  std::vector<GridKey> out;
  for (auto n : c.n) {
    for (auto m : c.m) {
      for (const auto& e : eps) {
        for (const auto& d : delta) out.push_back({n, m, e, d});
      }
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end(), [](const GridKey& a, const GridKey& b) { return a.tie() == b.tie(); }),
            out.end());
  return out;
}

namespace detail {

struct Problem {
  std::shared_ptr<const ConceptClass> cls;
  std::shared_ptr<const Learner> learner;
  RealizableDistribution dist;
};

inline FiniteDistribution make_marginal(const Config& c, std::size_t n) {
  if (c.marginal == "uniform") return uniform_marginal(n);
  if (c.marginal == "random") return random_marginal(n, *c.seed, c.member);
  std::vector<Atom> atoms(n);
  std::vector<double> w(n);
  for (std::size_t x = 1; x <= n; ++x) atoms[x - 1] = x;
  if (c.marginal == "inverse") {
    for (std::size_t x = 1; x <= n; ++x) w[x - 1] = 1.0 / static_cast<double>(x);
  } else {
    if (c.weights.size() != n) {
      throw ConfigError("weight", "expected " + std::to_string(n) + " weights, got " + std::to_string(c.weights.size()));
    }
    w = c.weights;
  }
  return FiniteDistribution::from_weights(std::move(atoms), std::move(w));
}

inline std::shared_ptr<const ConceptClass> make_class(const Config& c, std::size_t n) {
  if (c.class_name == "thresholds") return std::make_shared<const ThresholdClass>(n);
  if (c.class_name == "points") return std::make_shared<const PointClass>(n);
  if (c.class_name == "far-optimal") return std::make_shared<const FarOptimalClass>(n);
  return std::make_shared<const CubeClass>(n);
}

inline Problem make_problem(const Config& c, std::size_t n, std::size_t m) {
  auto cls = make_class(c, n);
  auto marginal = make_marginal(c, n);
  const std::size_t target = c.target.value_or((cls->size() + 1) / 2);
  if (target > cls->size()) {
    throw ConfigError("target", "index " + std::to_string(target) + " exceeds class size " +
                                    std::to_string(cls->size()));
  }
  std::shared_ptr<const Learner> learner;
  if (c.learner == "generic") {
    learner = std::make_shared<GenericLearner>(cls);
  } else if (c.learner == "min-erm") {
    learner = std::make_shared<MinThresholdErm>(n);
  } else if (c.learner == "far-optimal-erm") {
    learner = std::make_shared<FarOptimalErm>(n);
  } else {
    learner = std::make_shared<NetLearner>(cls, marginal, m);
  }
  RealizableDistribution d(n, std::move(marginal), cls->hypothesis(target - 1));
  return {std::move(cls), std::move(learner), std::move(d)};
}

inline FiniteDistribution default_prior(const Config& c, const ConceptClass& cls) {
  const std::size_t n = cls.domain_size();
  const std::size_t target = c.target.value_or((cls.size() + 1) / 2);
  if (c.class_name == "thresholds") return threshold_prior(n, target);
  if (c.class_name == "points") return point_prior(n, target);
  return FiniteDistribution::uniform_range(cls.size());
}

// Exact MI when enumeration fits the budget, else the prior bound.
inline InfoReport information(const Config& c, const Problem& p, std::size_t m) {
  try {
    return exact_or_signature_mi(*p.learner, p.dist, m, c.budget);
  } catch (const BudgetExceededError&) {
    InfoReport r;
    r.method = MiMethod::kPriorBound;
    r.mi = prior_bound(*p.learner, p.dist, m, default_prior(c, *p.cls), c.budget);
    r.domain_size = p.dist.domain_size();
    r.sample_size = m;
    return r;
  }
}

inline std::string violated(bool holds) { return holds ? "ok" : "violated"; }

inline Row run_cell(const Config& c, const GridKey& key, std::size_t workers) {
  Row row;
  row.key = key;
  const std::size_t n = key.n;
  const std::size_t m = key.m;
  const std::uint64_t seed = c.seed.value_or(0);
  switch (c.kind) {
    case Kind::kMiExact: {
      const auto p = make_problem(c, n, m);
      InfoReport r;
      if (c.method == "exact") {
        r = exact_mi(*p.learner, p.dist, m, c.budget);
      } else if (c.method == "signature") {
        r = signature_mi(*p.learner, p.dist, m, c.budget);
      } else if (c.method == "prior-bound") {
        r.method = MiMethod::kPriorBound;
        r.mi = prior_bound(*p.learner, p.dist, m, default_prior(c, *p.cls), c.budget);
        r.domain_size = n;
        r.sample_size = m;
      } else {
        r = exact_or_signature_mi(*p.learner, p.dist, m, c.budget);
      }
      row.mi = r.mi;
      row.method = method_name(r.method);
      row.detail = to_json(r);
      break;
    }
    case Kind::kMiEstimate: {
      const auto p = make_problem(c, n, m);
      const auto r = mc_mi(*p.learner, p.dist, m, c.trials, seed, workers);
      row.mi = r.mi;
      row.stderr_value = r.mi_stderr;
      row.method = method_name(r.method);
      row.detail = to_json(r);
      break;
    }
    case Kind::kPriorBound: {
      const auto p = make_problem(c, n, m);
      const auto q = default_prior(c, *p.cls);
      const Bits bound = prior_bound(*p.learner, p.dist, m, q, c.budget);
      const auto r = exact_or_signature_mi(*p.learner, p.dist, m, c.budget);
      row.mi = r.mi;
      row.bound = bound;
      row.method = method_name(r.method);
      row.status = violated(r.mi <= bound + kInfoTolerance);
      row.detail = {{"info", to_json(r)}, {"prior_bound", bound}, {"prior", to_json(q)}};
      break;
    }
    case Kind::kGenGap: {
      const auto p = make_problem(c, n, m);
      const auto info = information(c, p, m);
      const auto r = generalization_experiment(*p.learner, p.dist, m, *key.eps, c.trials, seed, info, workers);
      row.mi = r.d;
      row.bound = r.bound;
      row.frequency = r.frequency;
      row.stderr_value = r.frequency_stderr;
      row.method = method_name(r.d_method);
      row.status = violated(r.holds);
      row.detail = to_json(r);
      break;
    }
    case Kind::kStability: {
      const auto p = make_problem(c, n, m);
      const auto r = stability_profile(*p.learner, p.dist, m, c.budget);
      row.mi = r.d;
      row.bound = r.sqrt_d_over_m;
      row.method = method_name(MiMethod::kExact);
      row.status = violated(r.holds());
      row.detail = to_json(r);
      break;
    }
    case Kind::kPacBayes: {
      const auto p = make_problem(c, n, m);
      const auto r = pac_bayes_check(*p.learner, p.dist, m, *key.delta, *key.eps, c.trials, seed, workers, c.budget);
      row.mi = r.d;
      row.bound = r.delta;
      row.frequency = r.violation_frequency;
      row.stderr_value = r.violation_stderr;
      row.method = method_name(r.d_method);
      row.status = violated(r.holds());
      row.detail = to_json(r);
      break;
    }
    case Kind::kLowerBound: {
      if (n < 2 || (n & (n - 1)) != 0) throw ConfigError("N", "lower-bound needs N to be a power of two");
      const auto bits = static_cast<std::size_t>(std::countr_zero(n));
      std::shared_ptr<const Learner> l;
      if (c.learner == "min-erm") {
        l = std::make_shared<MinThresholdErm>(n);
      } else {
        l = std::make_shared<GenericLearner>(std::make_shared<const ThresholdClass>(n));
      }
      const auto cert = certify_lower_bound(l, bits, m, c.budget);
      row.mi = cert.exact_mi_bits;
      row.bound = cert.floor_bits;
      row.method = method_name(has_signature(*l) ? MiMethod::kSignature : MiMethod::kExact);
      row.status = violated(cert.holds);
      row.detail = to_json(cert);
      break;
    }
    case Kind::kSharpness: {
      const auto r = sharpness_experiment(n, m, seed, c.trials, workers);
      row.mi = r.entropy;
      row.bound = r.frequency_floor;
      row.frequency = r.high_error_frequency;
      row.stderr_value = r.high_error_stderr;
      row.method = method_name(MiMethod::kMonteCarlo);
      row.status = violated(r.holds());
      row.detail = to_json(r);
      break;
    }
    case Kind::kNetLearner: {
      const auto p = make_problem(c, n, m);
      const auto r = net_learner_profile(p.cls, p.dist, m, c.trials, seed, workers, c.budget);
      row.mi = r.entropy;
      row.bound = r.entropy_bound;
      row.method = method_name(MiMethod::kExact);
      row.status = violated(r.holds());
      row.detail = to_json(r);
      break;
    }
    case Kind::kBoost: {
      const auto p = make_problem(c, n, m);
      const auto base = exact_or_signature_mi(*p.learner, p.dist, m, c.budget);
      const auto b = BoostedLearner::from_confidence(p.learner, m, *key.delta, *key.eps);
      const auto r = boosted_mi(b, p.dist, c.budget, workers);
      const auto k = static_cast<double>(b.rounds());
      const double bound = base.mi * k + std::log2(k);
      row.mi = r.mi;
      row.bound = bound;
      row.method = method_name(r.method);
      row.status = violated(r.mi <= bound + kInfoTolerance);
      row.detail = {{"base", to_json(base)},
                    {"boosted", to_json(r)},
                    {"rounds", b.rounds()},
                    {"validation_size", b.validation_size()},
                    {"statement_validation_size", BoostedLearner::statement_validation_size(*key.delta, *key.eps)},
                    {"bound", bound}};
      break;
    }
    case Kind::kFarOptimal: {
      const auto r = far_optimal_comparison(n, m, c.budget);
      row.mi = r.generic_mi;
      row.bound = r.generic_floor;
      row.method = method_name(MiMethod::kSignature);
      row.status = violated(r.holds());
      row.detail = to_json(r);
      break;
    }
  }
  return row;
}

inline std::string optional_number(const std::optional<double>& v) { return v ? format_number(*v) : ""; }

}  // namespace detail

struct RunResult {
  std::vector<Row> rows;
  std::string json;
  std::string csv;
  bool all_ok() const {
    return std::all_of(rows.begin(), rows.end(), [](const Row& r) { return r.status == "ok"; });
  }
};

// Runs every grid cell; a failing cell records its error in the status
// column and the others still run.
inline RunResult run(const Config& c, std::size_t workers = default_workers()) {
  const auto keys = grid(c);
  if (keys.empty()) throw ConfigError("N", "empty grid");
  std::vector<Row> rows(keys.size());
  const std::size_t outer = std::clamp<std::size_t>(workers, 1, keys.size());
  const std::size_t inner = std::max<std::size_t>(1, workers / outer);
  for_each_chunk(
      keys.size(), outer,
      [&](std::size_t, std::size_t begin, std::size_t end) {
        for (std::size_t i = begin; i < end; ++i) {
          try {
            rows[i] = detail::run_cell(c, keys[i], inner);
          } catch (const std::exception& e) {
            rows[i] = Row{};
            rows[i].key = keys[i];
            rows[i].status = std::string("error: ") + e.what();
          }
        }
      },
      1);

  RunResult out;
  const std::string hash = hash_hex(c.hash);
  const std::string seed = c.seed ? std::to_string(*c.seed) : "";
  out.csv = csv_line(csv_header());
  ordered_json json_rows = ordered_json::array();
  for (const auto& r : rows) {
    out.csv += csv_line({std::to_string(r.key.n), std::to_string(r.key.m), detail::optional_number(r.key.eps),
                         detail::optional_number(r.key.delta), detail::optional_number(r.mi),
                         detail::optional_number(r.bound), detail::optional_number(r.frequency),
                         detail::optional_number(r.stderr_value), r.method, seed, r.status, hash});
    ordered_json j{{"N", r.key.n}, {"m", r.key.m}};
    j["eps"] = r.key.eps ? ordered_json(*r.key.eps) : ordered_json();
    j["delta"] = r.key.delta ? ordered_json(*r.key.delta) : ordered_json();
    j["mi"] = r.mi ? ordered_json(*r.mi) : ordered_json();
    j["bound"] = r.bound ? ordered_json(*r.bound) : ordered_json();
    j["frequency"] = r.frequency ? ordered_json(*r.frequency) : ordered_json();
    j["stderr"] = r.stderr_value ? ordered_json(*r.stderr_value) : ordered_json();
    j["method"] = r.method;
    j["status"] = r.status;
    j["config_hash"] = hash;
    j["detail"] = r.detail;
    json_rows.push_back(std::move(j));
  }
  ordered_json report{{"kind", kind_name(c.kind)}, {"config_hash", hash}};
  report["seed"] = c.seed ? ordered_json(*c.seed) : ordered_json();
  report["budget"] = c.budget;
  report["rows"] = std::move(json_rows);
  out.json = report.dump(2) + "\n";
  out.rows = std::move(rows);
  return out;
}

inline void write_outputs(const RunResult& r, const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  auto write = [](const std::filesystem::path& p, const std::string& text) {
    std::ofstream f(p, std::ios::binary | std::ios::trunc);
    if (!f) throw Error("cannot write " + p.string());
    f << text;
  };
  write(dir / "report.json", r.json);
  write(dir / "grid.csv", r.csv);
}

}  // namespace infolearn::cli

#endif  // INFOLEARN_CLI_HPP_
