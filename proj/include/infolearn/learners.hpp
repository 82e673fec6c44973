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

#ifndef INFOLEARN_LEARNERS_HPP_
#define INFOLEARN_LEARNERS_HPP_

// Learners as explicit kernels: every learner exposes the exact conditional
// distribution of its output given the sample, over hypothesis indices of its
// class, and a seeded sampler drawing from that distribution.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <numbers>
#include <string>
#include <utility>
#include <vector>

#include "infolearn/concepts.hpp"
#include "infolearn/error.hpp"
#include "infolearn/info_core.hpp"
#include "infolearn/random.hpp"

namespace infolearn {

class Learner {
 public:
  virtual ~Learner() = default;

  virtual std::string name() const = 0;
  virtual const ConceptClass& hypothesis_class() const = 0;

  // P_{h|S} over indices of hypothesis_class().
  virtual FiniteDistribution kernel(const Sample& s) const = 0;

  // One draw from kernel(s) using only `seed` for randomness.
  virtual std::size_t sample(const Sample& s, std::uint64_t seed) const {
    const auto k = kernel(s);
    if (k.size() == 1) return k.atoms()[0];
    Rng rng(seed);
    double u = rng.uniform();
    for (std::size_t i = 0; i < k.size(); ++i) {
      u -= k.probs()[i];
      if (u < 0.0) return k.atoms()[i];
    }
    return k.atoms().back();
  }

  virtual bool is_deterministic() const { return false; }

  // True when kernel(s) depends on s only through the consistent set of s in
  // hypothesis_class(). Exact information computations then collapse samples
  // with equal consistent sets.
  virtual bool factors_through_consistent_set() const { return false; }
};

// Uniform over the hypotheses consistent with the sample.
class GenericLearner final : public Learner {
 public:
  explicit GenericLearner(std::shared_ptr<const ConceptClass> cls) : cls_(std::move(cls)) {}

  std::string name() const override { return "generic(" + cls_->name() + ")"; }
  const ConceptClass& hypothesis_class() const override { return *cls_; }

  FiniteDistribution kernel(const Sample& s) const override {
    auto cs = cls_->consistent_set(s);
    if (cs.empty()) throw NonRealizableError("generic learner: no consistent hypothesis");
    return FiniteDistribution::uniform(std::move(cs));
  }

  std::size_t sample(const Sample& s, std::uint64_t seed) const override {
    const auto cs = cls_->consistent_set(s);
    if (cs.empty()) throw NonRealizableError("generic learner: no consistent hypothesis");
    if (cs.size() == 1) return cs[0];
    Rng rng(seed);
    return cs[rng.below(cs.size())];
  }

  bool factors_through_consistent_set() const override { return true; }

 private:
  std::shared_ptr<const ConceptClass> cls_;
};

// Deterministic threshold ERM: f_t with t one past the largest zero-labeled
// point (t = 1 when there is none).
class MinThresholdErm final : public Learner {
 public:
  explicit MinThresholdErm(std::size_t n) : cls_(std::make_shared<const ThresholdClass>(n)) {}

  std::string name() const override { return "min-threshold-erm"; }
  const ConceptClass& hypothesis_class() const override { return *cls_; }

  FiniteDistribution kernel(const Sample& s) const override {
    return FiniteDistribution::point_mass(output(s));
  }
  std::size_t sample(const Sample& s, std::uint64_t) const override { return output(s); }

  bool is_deterministic() const override { return true; }
  bool factors_through_consistent_set() const override { return true; }

 private:
  std::size_t output(const Sample& s) const {
    cls_->check_sample(s);
    const auto [a, b] = threshold_interval(s, cls_->domain_size());
    if (a >= std::min(b, cls_->domain_size())) {
      throw NonRealizableError("min-threshold-erm: sample is not realizable by thresholds");
    }
    return a;  // index of f_{a+1}
  }

  std::shared_ptr<const ThresholdClass> cls_;
};

// Deterministic ERM over the far-optimal class: 1[x > 1] whenever the sample is
// consistent with it, otherwise the point function at the smallest consistent
// point.
class FarOptimalErm final : public Learner {
 public:
  explicit FarOptimalErm(std::size_t n) : cls_(std::make_shared<const FarOptimalClass>(n)) {}

  std::string name() const override { return "far-optimal-erm"; }
  const ConceptClass& hypothesis_class() const override { return *cls_; }

  FiniteDistribution kernel(const Sample& s) const override {
    return FiniteDistribution::point_mass(output(s));
  }
  std::size_t sample(const Sample& s, std::uint64_t) const override { return output(s); }

  bool is_deterministic() const override { return true; }
  bool factors_through_consistent_set() const override { return true; }

 private:
  std::size_t output(const Sample& s) const {
    const auto cs = cls_->consistent_set(s);
    if (cs.empty()) throw NonRealizableError("far-optimal-erm: sample is not realizable");
    if (cs.back() == cls_->above_one_index()) return cs.back();
    return cs.front();
  }

  std::shared_ptr<const FarOptimalClass> cls_;
};

// Random subsets T_1..T_M of [n], each of size floor(n/2), whose m-fold union
// T = U_i T_i^m has measure between 1/m and 4/m under the uniform distribution.
struct CoverSets {
  std::size_t n = 0;
  std::size_t m = 0;
  std::size_t k = 0;  // |T_i|
  std::vector<std::vector<std::uint8_t>> member;  // member[i][x - 1]
  double measure_estimate = 0.0;
  double measure_stderr = 0.0;
  std::size_t measure_draws = 0;
  std::size_t attempts = 0;

  std::size_t count() const { return member.size(); }

  bool inside(std::size_t set, const Sample& s) const {
    const auto& t = member[set];
    for (const auto& ex : s) {
      if (t[ex.x - 1] == 0) return false;
    }
    return true;
  }
};

// floor(4 n^m / (m k^m)) with k = floor(n/2).
inline std::size_t cover_set_count(std::size_t n, std::size_t m) {
  const auto k = static_cast<long double>(n / 2);
  const long double ratio = static_cast<long double>(n) / k;
  const long double count = 4.0L / static_cast<long double>(m) * std::pow(ratio, static_cast<long double>(m));
  return std::max<std::size_t>(1, static_cast<std::size_t>(std::floor(count)));
}

inline CoverSets build_cover(std::size_t n, std::size_t m, std::uint64_t seed,
                             std::size_t measure_draws = 1'000'000, std::size_t retry_limit = 20) {
  if (m < 1 || n < 2 * m) throw PreconditionError("build_cover: need n >= 2m and m >= 1");
  CoverSets cover;
  cover.n = n;
  cover.m = m;
  cover.k = n / 2;
  const std::size_t count = cover_set_count(n, m);
  const double lo = 1.0 / static_cast<double>(m);
  const double hi = 4.0 / static_cast<double>(m);
  std::vector<std::size_t> perm(n);
  for (std::size_t attempt = 0; attempt < retry_limit; ++attempt) {
    cover.member.assign(count, std::vector<std::uint8_t>(n, 0));
    Rng rng(seed, stream::kCover, attempt);
    for (std::size_t i = 0; i < count; ++i) {
      for (std::size_t x = 0; x < n; ++x) perm[x] = x;
      for (std::size_t j = 0; j < cover.k; ++j) {
        const std::size_t pick = j + rng.below(n - j);
        std::swap(perm[j], perm[pick]);
        cover.member[i][perm[j]] = 1;
      }
    }
    Rng probe(seed, stream::kCover, 0x10000 + attempt);
    std::size_t hits = 0;
    Sample s(m, Example{1, 1});
    for (std::size_t t = 0; t < measure_draws; ++t) {
      for (auto& ex : s) ex.x = 1 + probe.below(n);
      for (std::size_t i = 0; i < count; ++i) {
        if (cover.inside(i, s)) {
          ++hits;
          break;
        }
      }
    }
    const double p = static_cast<double>(hits) / static_cast<double>(measure_draws);
    cover.measure_estimate = p;
    cover.measure_stderr = std::sqrt(p * (1.0 - p) / static_cast<double>(measure_draws));
    cover.measure_draws = measure_draws;
    cover.attempts = attempt + 1;
    if (p >= lo && p <= hi) return cover;
  }
  throw Error("build_cover: union measure " + std::to_string(cover.measure_estimate) +
              " outside [1/m, 4/m] after " + std::to_string(retry_limit) + " draws");
}

// Deterministic learner on all-ones samples: the indicator of the first T_i
// containing every sample point, or the all-ones function when none does.
// Index i < M is the indicator of T_{i+1}; index M is all-ones.
class SharpnessLearner final : public Learner {
 public:
  explicit SharpnessLearner(CoverSets cover) : cover_(std::move(cover)) {
    std::vector<Hypothesis> hyps;
    for (const auto& t : cover_.member) {
      std::vector<bool> bits(cover_.n);
      for (std::size_t x = 0; x < cover_.n; ++x) bits[x] = t[x] != 0;
      hyps.push_back(Hypothesis::explicit_bits(std::move(bits)));
    }
    hyps.push_back(Hypothesis::all_ones());
    cls_ = std::make_shared<const ExplicitClass>("cover-indicators", cover_.n, std::move(hyps));
  }

  std::string name() const override { return "sharpness"; }
  const ConceptClass& hypothesis_class() const override { return *cls_; }
  const CoverSets& cover() const { return cover_; }
  std::size_t all_ones_index() const { return cover_.count(); }

  FiniteDistribution kernel(const Sample& s) const override {
    return FiniteDistribution::point_mass(output(s));
  }
  std::size_t sample(const Sample& s, std::uint64_t) const override { return output(s); }

  bool is_deterministic() const override { return true; }
  bool factors_through_consistent_set() const override { return true; }

  // Disagreement mass with the all-ones target under the uniform marginal.
  double true_error_of(std::size_t index) const {
    if (index == all_ones_index()) return 0.0;
    return static_cast<double>(cover_.n - cover_.k) / static_cast<double>(cover_.n);
  }

 private:
  std::size_t output(const Sample& s) const {
    for (const auto& ex : s) {
      if (ex.y != 1 || ex.x < 1 || ex.x > cover_.n) {
        throw PreconditionError("sharpness learner accepts only (x, 1) examples over [n]");
      }
    }
    for (std::size_t i = 0; i < cover_.count(); ++i) {
      if (cover_.inside(i, s)) return i;
    }
    return all_ones_index();
  }

  CoverSets cover_;
  std::shared_ptr<const ExplicitClass> cls_;
};

// Nested eps-nets N_1, N_2, ... of a class under a known marginal, with
// eps_k = (m+1)^-k. The last level is the whole class.
struct NetHierarchy {
  std::vector<std::vector<std::size_t>> levels;  // ascending indices per level
  std::vector<double> eps;                       // 0 for the final full level
  std::vector<double> size_bound;                // (4e^2/eps_k)^d; +inf for the full level
  std::size_t vc_dim = 0;
};

namespace detail {

// Pairwise disagreement mass under `marginal` (atoms are domain points).
inline std::vector<double> disagreement_matrix(const ConceptClass& c, const FiniteDistribution& marginal) {
  const std::size_t h = c.size();
  const auto& xs = marginal.atoms();
  std::vector<std::uint8_t> labels(h * xs.size());
  for (std::size_t i = 0; i < h; ++i) {
    for (std::size_t j = 0; j < xs.size(); ++j) labels[i * xs.size() + j] = static_cast<std::uint8_t>(c.label(i, xs[j]));
  }
  std::vector<double> dist(h * h, 0.0);
  for (std::size_t a = 0; a < h; ++a) {
    for (std::size_t b = a + 1; b < h; ++b) {
      double d = 0.0;
      for (std::size_t j = 0; j < xs.size(); ++j) {
        if (labels[a * xs.size() + j] != labels[b * xs.size() + j]) d += marginal.probs()[j];
      }
      dist[a * h + b] = d;
      dist[b * h + a] = d;
    }
  }
  return dist;
}

inline std::vector<std::size_t> greedy_net(const std::vector<double>& dist, std::size_t h, double eps) {
  const double tol = eps + 1e-15;
  std::vector<bool> covered(h, false);
  std::size_t remaining = h;
  std::vector<std::size_t> net;
  while (remaining > 0) {
    std::size_t best = 0;
    std::size_t best_gain = 0;
    for (std::size_t f = 0; f < h; ++f) {
      std::size_t gain = 0;
      for (std::size_t g = 0; g < h; ++g) {
        if (!covered[g] && dist[f * h + g] <= tol) ++gain;
      }
      if (gain > best_gain) {
        best_gain = gain;
        best = f;
      }
    }
    net.push_back(best);
    for (std::size_t g = 0; g < h; ++g) {
      if (!covered[g] && dist[best * h + g] <= tol) {
        covered[g] = true;
        --remaining;
      }
    }
  }
  std::sort(net.begin(), net.end());
  return net;
}

// Smallest net by exhaustive search over subsets in increasing size; small
// classes only.
inline std::vector<std::size_t> minimal_net(const std::vector<double>& dist, std::size_t h, double eps) {
  const double tol = eps + 1e-15;
  for (std::size_t size = 1; size <= h; ++size) {
    std::vector<std::size_t> pick(size);
    for (std::size_t i = 0; i < size; ++i) pick[i] = i;
    while (true) {
      bool ok = true;
      for (std::size_t g = 0; g < h && ok; ++g) {
        bool hit = false;
        for (std::size_t f : pick) {
          if (dist[f * h + g] <= tol) {
            hit = true;
            break;
          }
        }
        ok = hit;
      }
      if (ok) return pick;
      std::size_t i = size;
      while (i > 0 && pick[i - 1] == h - size + i - 1) --i;
      if (i == 0) break;
      ++pick[i - 1];
      for (std::size_t j = i; j < size; ++j) pick[j] = pick[j - 1] + 1;
    }
  }
  return {};
}

}  // namespace detail

inline NetHierarchy build_net_hierarchy(const ConceptClass& c, const FiniteDistribution& marginal,
                                        std::size_t m, std::size_t vc_dim) {
  if (m < 1) throw PreconditionError("net hierarchy: m must be at least 1");
  constexpr std::size_t kExhaustiveLimit = 20;
  constexpr std::size_t kMaxLevels = 64;
  const std::size_t h = c.size();
  const auto dist = detail::disagreement_matrix(c, marginal);
  double min_positive = 2.0;
  for (double d : dist) {
    if (d > 1e-15) min_positive = std::min(min_positive, d);
  }
  NetHierarchy out;
  out.vc_dim = vc_dim;
  const double base = 1.0 / static_cast<double>(m + 1);
  double eps = 1.0;
  for (std::size_t level = 1; level <= kMaxLevels; ++level) {
    eps *= base;
    auto net = detail::greedy_net(dist, h, eps);
    const double bound = std::pow(4.0 * std::numbers::e * std::numbers::e / eps, static_cast<double>(vc_dim));
    if (static_cast<double>(net.size()) > bound && h <= kExhaustiveLimit) {
      net = detail::minimal_net(dist, h, eps);
    }
    if (static_cast<double>(net.size()) > bound) {
      throw Error("net hierarchy: level " + std::to_string(level) + " has " +
                  std::to_string(net.size()) + " members, above the size bound");
    }
    out.levels.push_back(std::move(net));
    out.eps.push_back(eps);
    out.size_bound.push_back(bound);
    if (eps < min_positive) break;  // further levels would repeat this one
  }
  std::vector<std::size_t> all(h);
  for (std::size_t i = 0; i < h; ++i) all[i] = i;
  out.levels.push_back(std::move(all));
  out.eps.push_back(0.0);
  out.size_bound.push_back(std::numeric_limits<double>::infinity());
  return out;
}

// Deterministic learner that knows the marginal: scans N_1, N_2, ... in order
// and returns the first consistent member.
class NetLearner final : public Learner {
 public:
  NetLearner(std::shared_ptr<const ConceptClass> cls, const FiniteDistribution& marginal, std::size_t m)
      : NetLearner(cls, marginal, m, vc_dimension(*cls)) {}

  NetLearner(std::shared_ptr<const ConceptClass> cls, const FiniteDistribution& marginal, std::size_t m,
             std::size_t vc_dim)
      : cls_(std::move(cls)), m_(m), nets_(build_net_hierarchy(*cls_, marginal, m, vc_dim)) {}

  std::string name() const override { return "net(" + cls_->name() + ")"; }
  const ConceptClass& hypothesis_class() const override { return *cls_; }
  const NetHierarchy& nets() const { return nets_; }
  std::size_t sample_size() const { return m_; }

  FiniteDistribution kernel(const Sample& s) const override {
    return FiniteDistribution::point_mass(search(s).first);
  }
  std::size_t sample(const Sample& s, std::uint64_t) const override { return search(s).first; }

  // 1-based level at which the search stops.
  std::size_t stopping_level(const Sample& s) const { return search(s).second; }

  bool is_deterministic() const override { return true; }
  bool factors_through_consistent_set() const override { return true; }

 private:
  std::pair<std::size_t, std::size_t> search(const Sample& s) const {
    const auto cs = cls_->consistent_set(s);
    if (cs.empty()) throw NonRealizableError("net learner: sample is not realizable");
    for (std::size_t level = 0; level < nets_.levels.size(); ++level) {
      for (std::size_t h : nets_.levels[level]) {
        if (std::binary_search(cs.begin(), cs.end(), h)) return {h, level + 1};
      }
    }
    throw Error("net learner: final level must contain every hypothesis");
  }

  std::shared_ptr<const ConceptClass> cls_;
  std::size_t m_;
  NetHierarchy nets_;
};

// Confidence amplification: runs the base learner independently on k disjoint
// subsamples of size m0 and returns the candidate with the fewest errors on a
// trailing validation segment; ties go to the lowest subsample index.
class BoostedLearner final : public Learner {
 public:
  BoostedLearner(std::shared_ptr<const Learner> base, std::size_t m0, std::size_t k,
                 std::size_t validation_size)
      : base_(std::move(base)), m0_(m0), k_(k), validation_(validation_size) {
    if (m0_ == 0 || k_ == 0 || validation_ == 0) {
      throw PreconditionError("boosted learner: m0, k and validation size must be positive");
    }
  }

  // k = ceil(log2(2/delta)) subsamples.
  static std::size_t rounds_for(double delta) {
    if (!(delta > 0.0 && delta < 1.0)) throw PreconditionError("boosted learner: delta must lie in (0,1)");
    return static_cast<std::size_t>(std::ceil(std::log2(2.0 / delta) - 1e-12));
  }
  // Validation size used in the amplification proof: 2 ln(4 log2(2/delta)/delta) / eps^2.
  static double proof_validation_size(double delta, double eps) {
    return 2.0 * std::log(4.0 * std::log2(2.0 / delta) / delta) / (eps * eps);
  }
  // The size in the headline guarantee, a factor of 4 below the one above.
  static double statement_validation_size(double delta, double eps) {
    return proof_validation_size(delta, eps) / 4.0;
  }

  static BoostedLearner from_confidence(std::shared_ptr<const Learner> base, std::size_t m0, double delta,
                                        double eps) {
    if (!(eps > 0.0)) throw PreconditionError("boosted learner: eps must be positive");
    const auto v = static_cast<std::size_t>(std::ceil(proof_validation_size(delta, eps) - 1e-12));
    return BoostedLearner(std::move(base), m0, rounds_for(delta), v);
  }

  std::string name() const override { return "boosted(" + base_->name() + ")"; }
  const ConceptClass& hypothesis_class() const override { return base_->hypothesis_class(); }
  const Learner& base() const { return *base_; }
  std::size_t rounds() const { return k_; }
  std::size_t subsample_size() const { return m0_; }
  std::size_t validation_size() const { return validation_; }
  std::size_t required_length() const { return k_ * m0_ + validation_; }

  FiniteDistribution kernel(const Sample& s) const override {
    check_length(s);
    std::vector<FiniteDistribution> runs;
    runs.reserve(k_);
    for (std::size_t i = 0; i < k_; ++i) runs.push_back(base_->kernel(subsample(s, i)));
    return select(runs, validation_errors(s));
  }

  std::size_t sample(const Sample& s, std::uint64_t seed) const override {
    check_length(s);
    const auto errors = validation_errors(s);
    std::size_t best = 0;
    std::size_t best_err = SIZE_MAX;
    for (std::size_t i = 0; i < k_; ++i) {
      const std::size_t h = base_->sample(subsample(s, i), derive_seed(seed, stream::kLearner, i));
      const std::size_t e = errors(h);
      if (e < best_err) {
        best_err = e;
        best = h;
      }
    }
    return best;
  }

  bool is_deterministic() const override { return base_->is_deterministic(); }

  // Output distribution given the k base kernels and a validation error count
  // per hypothesis: P(h* = h) sums over the winning round i.
  template <class ErrorOf>
  static FiniteDistribution select(const std::vector<FiniteDistribution>& runs, ErrorOf&& error_of) {
    const std::size_t k = runs.size();
    std::vector<std::vector<std::size_t>> errs(k);
    for (std::size_t i = 0; i < k; ++i) {
      for (Atom h : runs[i].atoms()) errs[i].push_back(error_of(h));
    }
    // P(err(h_j) > e) and P(err(h_j) >= e).
    auto tail = [&](std::size_t j, std::size_t e, bool strict) {
      double p = 0.0;
      for (std::size_t a = 0; a < runs[j].size(); ++a) {
        if (strict ? errs[j][a] > e : errs[j][a] >= e) p += runs[j].probs()[a];
      }
      return p;
    };
    std::vector<std::pair<Atom, double>> acc;
    for (std::size_t i = 0; i < k; ++i) {
      for (std::size_t a = 0; a < runs[i].size(); ++a) {
        double p = runs[i].probs()[a];
        if (p <= 0.0) continue;
        const std::size_t e = errs[i][a];
        for (std::size_t j = 0; j < k && p > 0.0; ++j) {
          if (j != i) p *= tail(j, e, j < i);
        }
        if (p > 0.0) acc.emplace_back(runs[i].atoms()[a], p);
      }
    }
    std::sort(acc.begin(), acc.end());
    std::vector<Atom> atoms;
    std::vector<double> probs;
    for (const auto& [h, p] : acc) {
      if (!atoms.empty() && atoms.back() == h) {
        probs.back() += p;
      } else {
        atoms.push_back(h);
        probs.push_back(p);
      }
    }
    return FiniteDistribution::from_weights(std::move(atoms), std::move(probs));
  }

 private:
  void check_length(const Sample& s) const {
    if (s.size() < required_length()) {
      throw PreconditionError("boosted learner: sample of length " + std::to_string(s.size()) +
                              " is shorter than the required " + std::to_string(required_length()));
    }
  }
  Sample subsample(const Sample& s, std::size_t i) const {
    return Sample(s.begin() + static_cast<std::ptrdiff_t>(i * m0_),
                  s.begin() + static_cast<std::ptrdiff_t>((i + 1) * m0_));
  }
  // Error count of a hypothesis index on the validation segment.
  struct ValidationErrors {
    const ConceptClass* cls;
    Sample::const_iterator first;
    Sample::const_iterator last;
    std::size_t operator()(std::size_t h) const {
      std::size_t e = 0;
      for (auto it = first; it != last; ++it) e += (cls->label(h, it->x) != it->y) ? 1 : 0;
      return e;
    }
  };
  ValidationErrors validation_errors(const Sample& s) const {
    const auto first = s.begin() + static_cast<std::ptrdiff_t>(k_ * m0_);
    return {&base_->hypothesis_class(), first, first + static_cast<std::ptrdiff_t>(validation_)};
  }

  std::shared_ptr<const Learner> base_;
  std::size_t m0_;
  std::size_t k_;
  std::size_t validation_;
};

}  // namespace infolearn

#endif  // INFOLEARN_LEARNERS_HPP_
