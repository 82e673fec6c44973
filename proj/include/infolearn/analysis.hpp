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

#ifndef INFOLEARN_ANALYSIS_HPP_
#define INFOLEARN_ANALYSIS_HPP_

// Mutual information between a learner's input sample and its output, computed
// exactly (full enumeration or aggregated signature classes) or estimated by
// Monte Carlo, plus the experiments that compare generalization, stability and
// PAC-Bayes quantities against information-based bounds.

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <limits>
#include <map>
#include <memory>
#include <numbers>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "infolearn/concepts.hpp"
#include "infolearn/error.hpp"
#include "infolearn/info_core.hpp"
#include "infolearn/learners.hpp"
#include "infolearn/parallel.hpp"
#include "infolearn/random.hpp"

namespace infolearn {

enum class MiMethod { kExact, kSignature, kMonteCarlo, kPriorBound };

inline std::string method_name(MiMethod m) {
  switch (m) {
    case MiMethod::kExact:
      return "exact";
    case MiMethod::kSignature:
      return "signature";
    case MiMethod::kMonteCarlo:
      return "monte-carlo";
    case MiMethod::kPriorBound:
      return "prior-bound";
  }
  return "unknown";
}

struct InfoReport {
  MiMethod method = MiMethod::kExact;
  Bits mi = 0.0;
  double mi_stderr = 0.0;  // bootstrap standard error; 0 for exact methods
  Bits output_entropy = 0.0;
  std::size_t domain_size = 0;
  std::size_t sample_size = 0;
  std::uint64_t seed = 0;
  std::size_t trials = 0;
  // Samples enumerated, signature classes aggregated, or distinct keys seen.
  std::size_t classes = 0;
  // P_h over hypothesis indices; absent for Monte Carlo estimates.
  std::optional<FiniteDistribution> output_distribution;
};

// A set of samples on which the learner's kernel is constant, with its total
// probability under D^m and one member.
struct SignatureClass {
  Sample representative;
  double mass = 0.0;
};

inline constexpr std::size_t kMaxSubsetSupport = 20;
inline constexpr std::size_t kBootstrapResamples = 200;

namespace detail {

class NeumaierSum {
 public:
  void add(double v) {
    const double t = sum_ + v;
    if (std::abs(sum_) >= std::abs(v)) {
      comp_ += (sum_ - t) + v;
    } else {
      comp_ += (v - t) + sum_;
    }
    sum_ = t;
  }
  void add(const NeumaierSum& other) {
    add(other.sum_);
    add(other.comp_);
  }
  double value() const { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

inline Sample padded(Sample s, std::size_t m) {
  const Example first = s.front();
  while (s.size() < m) s.push_back(first);
  return s;
}

inline std::uint64_t fnv1a(const std::vector<std::size_t>& v) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  auto mix = [&](std::uint64_t x) {
    for (int b = 0; b < 8; ++b) {
      h ^= (x >> (8 * b)) & 0xffU;
      h *= 0x100000001b3ULL;
    }
  };
  mix(v.size());
  for (auto x : v) mix(x);
  return h;
}

// Classes keyed by (index of max zero-labeled point, index of min one-labeled
// point). Returns nothing when the target's labels on the support are not a
// threshold pattern.
inline std::optional<std::vector<SignatureClass>> threshold_signatures(const RealizableDistribution& d,
                                                                       std::size_t m) {
  std::vector<Atom> zeros;
  std::vector<Atom> ones;
  for (Atom x : d.support()) {
    if (d.target()(x) == 0) {
      if (!ones.empty() || x == d.domain_size()) return std::nullopt;
      zeros.push_back(x);
    } else {
      ones.push_back(x);
    }
  }
  const std::size_t p = zeros.size();
  const std::size_t q = ones.size();
  std::vector<double> a(p + 1, 0.0);
  for (std::size_t i = 1; i <= p; ++i) a[i] = a[i - 1] + d.prob(zeros[i - 1]);
  std::vector<double> b(q + 2, 0.0);
  for (std::size_t j = q; j >= 1; --j) b[j] = b[j + 1] + d.prob(ones[j - 1]);
  const auto md = static_cast<double>(m);
  auto g = [&](std::size_t i, std::size_t j) { return std::pow(std::min(a[i] + b[j], 1.0), md); };

  std::vector<SignatureClass> out;
  for (std::size_t i = 0; i <= p; ++i) {
    for (std::size_t j = 1; j <= q + 1; ++j) {
      const std::size_t len = (i > 0 ? 1 : 0) + (j <= q ? 1 : 0);
      if (len == 0 || len > m) continue;
      double mass = g(i, j);
      if (i > 0) mass -= g(i - 1, j);
      if (j <= q) mass -= g(i, j + 1);
      if (i > 0 && j <= q) mass += g(i - 1, j + 1);
      Sample rep;
      if (i > 0) rep.push_back({zeros[i - 1], 0});
      if (j <= q) rep.push_back({ones[j - 1], 1});
      out.push_back({padded(std::move(rep), m), std::max(mass, 0.0)});
    }
  }
  return out;
}

// Far-optimal class under the target 1[x > 1]: the consistent set depends only
// on whether zero, one, or several distinct points above 1 were drawn.
inline std::optional<std::vector<SignatureClass>> far_optimal_signatures(const RealizableDistribution& d,
                                                                         std::size_t m) {
  std::vector<Atom> ones;
  for (Atom x : d.support()) {
    if (d.target()(x) != (x > 1 ? 1 : 0)) return std::nullopt;
    if (x > 1) ones.push_back(x);
  }
  const auto md = static_cast<double>(m);
  const double p1 = d.prob(1);
  const double none = std::pow(p1, md);
  std::vector<SignatureClass> out;
  NeumaierSum covered;
  if (p1 > 0.0) {
    out.push_back({Sample(m, Example{1, 0}), none});
    covered.add(none);
  }
  for (Atom x : ones) {
    const double mass = std::max(std::pow(p1 + d.prob(x), md) - none, 0.0);
    out.push_back({Sample(m, Example{x, 1}), mass});
    covered.add(mass);
  }
  if (m >= 2 && ones.size() >= 2) {
    out.push_back({padded({{ones[0], 1}, {ones[1], 1}}, m), std::max(1.0 - covered.value(), 0.0)});
  }
  return out;
}

// Samples grouped by their set of distinct points; masses by Moebius inversion
// of P(all points in V)^m over subsets V of the support.
inline std::vector<SignatureClass> subset_signatures(const ConceptClass& c, const RealizableDistribution& d,
                                                     std::size_t m) {
  const auto& support = d.support();
  const std::size_t s = support.size();
  const std::size_t full = std::size_t{1} << s;
  std::vector<double> f(full, 0.0);
  std::vector<double> pv(full, 0.0);
  const auto md = static_cast<double>(m);
  for (std::size_t mask = 1; mask < full; ++mask) {
    const auto low = static_cast<std::size_t>(std::countr_zero(mask));
    pv[mask] = pv[mask & (mask - 1)] + d.prob(support[low]);
    f[mask] = std::pow(std::min(pv[mask], 1.0), md);
  }
  for (std::size_t bit = 0; bit < s; ++bit) {
    for (std::size_t mask = 0; mask < full; ++mask) {
      if (mask & (std::size_t{1} << bit)) f[mask] -= f[mask ^ (std::size_t{1} << bit)];
    }
  }
  std::map<std::vector<std::size_t>, std::size_t> index;
  std::vector<SignatureClass> out;
  for (std::size_t mask = 1; mask < full; ++mask) {
    if (static_cast<std::size_t>(std::popcount(mask)) > m) continue;
    Sample rep;
    for (std::size_t b = 0; b < s; ++b) {
      if (mask & (std::size_t{1} << b)) rep.push_back(d.example(support[b]));
    }
    rep = padded(std::move(rep), m);
    const double mass = std::max(f[mask], 0.0);
    auto [it, fresh] = index.try_emplace(c.consistent_set(rep), out.size());
    if (fresh) {
      out.push_back({std::move(rep), mass});
    } else {
      out[it->second].mass += mass;
    }
  }
  return out;
}

template <class KeyOf>
std::vector<SignatureClass> enumerated_signatures(const RealizableDistribution& d, std::size_t m,
                                                  std::uint64_t budget, KeyOf&& key_of) {
  using Key = std::decay_t<decltype(key_of(std::declval<const Sample&>()))>;
  std::map<Key, std::size_t> index;
  std::vector<SignatureClass> out;
  std::vector<NeumaierSum> mass;
  enumerate_samples(d, m, budget, [&](const Sample& s, double p) {
    auto [it, fresh] = index.try_emplace(key_of(s), out.size());
    if (fresh) {
      out.push_back({s, 0.0});
      mass.emplace_back();
    }
    mass[it->second].add(p);
  });
  for (std::size_t i = 0; i < out.size(); ++i) out[i].mass = mass[i].value();
  return out;
}

inline FiniteDistribution dense_to_distribution(const std::vector<double>& dense) {
  std::vector<Atom> atoms;
  std::vector<double> probs;
  for (std::size_t h = 0; h < dense.size(); ++h) {
    if (dense[h] > 0.0) {
      atoms.push_back(h);
      probs.push_back(dense[h]);
    }
  }
  return FiniteDistribution::from_weights(std::move(atoms), std::move(probs));
}

struct Mixture {
  Bits mi = 0.0;
  Bits output_entropy = 0.0;
  FiniteDistribution output = FiniteDistribution::point_mass(0);
};

// I(S; A(S)) = H(P_h) - sum_c mass_c H(kernel_c) over signature classes.
inline Mixture mixture_mi(const Learner& l, const std::vector<SignatureClass>& classes) {
  std::vector<double> ph(l.hypothesis_class().size(), 0.0);
  NeumaierSum conditional;
  for (const auto& c : classes) {
    if (c.mass <= 0.0) continue;
    const auto k = l.kernel(c.representative);
    for (std::size_t a = 0; a < k.size(); ++a) ph[k.atoms()[a]] += c.mass * k.probs()[a];
    conditional.add(c.mass * entropy(k));
  }
  Mixture out;
  out.output = dense_to_distribution(ph);
  out.output_entropy = entropy(out.output);
  out.mi = std::max(out.output_entropy - conditional.value(), 0.0);
  return out;
}

struct Cell {
  std::size_t x;
  std::size_t y;
  std::uint64_t count;
};

// Plug-in mutual information of a contingency table.
inline Bits plugin_mi(const std::vector<Cell>& cells, std::size_t xs, std::size_t ys) {
  std::vector<double> nx(xs, 0.0);
  std::vector<double> ny(ys, 0.0);
  double n = 0.0;
  for (const auto& c : cells) {
    const auto v = static_cast<double>(c.count);
    nx[c.x] += v;
    ny[c.y] += v;
    n += v;
  }
  if (n <= 0.0) return 0.0;
  NeumaierSum mi;
  for (const auto& c : cells) {
    if (c.count == 0) continue;
    const auto v = static_cast<double>(c.count);
    mi.add(v / n * std::log2(v * n / (nx[c.x] * ny[c.y])));
  }
  return std::max(mi.value(), 0.0);
}

// One multinomial resample of the table, drawn cell by cell as conditional
// binomials.
inline std::vector<Cell> resample(const std::vector<Cell>& cells, Rng& rng) {
  std::uint64_t remaining = 0;
  for (const auto& c : cells) remaining += c.count;
  const double total = static_cast<double>(remaining);
  double mass_left = 1.0;
  std::vector<Cell> out = cells;
  for (std::size_t i = 0; i < out.size(); ++i) {
    const double p = static_cast<double>(cells[i].count) / total;
    std::uint64_t draw = remaining;
    if (i + 1 < out.size() && remaining > 0) {
      const double q = std::clamp(p / mass_left, 0.0, 1.0);
      std::binomial_distribution<std::uint64_t> binom(remaining, q);
      draw = binom(rng);
    }
    out[i].count = draw;
    remaining -= draw;
    mass_left -= p;
    if (mass_left <= 0.0) mass_left = std::numeric_limits<double>::min();
  }
  return out;
}

template <class Statistic>
double bootstrap_stderr(const std::vector<Cell>& cells, std::uint64_t seed, Statistic&& stat) {
  std::vector<double> values(kBootstrapResamples);
  for (std::size_t b = 0; b < kBootstrapResamples; ++b) {
    Rng rng(seed, stream::kBootstrap, b);
    values[b] = stat(resample(cells, rng));
  }
  double mean = 0.0;
  for (double v : values) mean += v;
  mean /= static_cast<double>(values.size());
  double var = 0.0;
  for (double v : values) var += (v - mean) * (v - mean);
  return std::sqrt(var / static_cast<double>(values.size() - 1));
}

inline Bits plugin_entropy(const std::vector<Cell>& cells) {
  double n = 0.0;
  for (const auto& c : cells) n += static_cast<double>(c.count);
  NeumaierSum h;
  for (const auto& c : cells) {
    if (c.count > 0) h.add(detail::neg_plog2p(static_cast<double>(c.count) / n));
  }
  return std::max(h.value(), 0.0);
}

inline double bernoulli_stderr(double frequency, std::size_t trials) {
  if (trials == 0) return 0.0;
  return std::sqrt(frequency * (1.0 - frequency) / static_cast<double>(trials));
}

inline void check_domain(const Learner& l, const RealizableDistribution& d) {
  if (l.hypothesis_class().domain_size() != d.domain_size()) {
    throw PreconditionError("learner class domain " + std::to_string(l.hypothesis_class().domain_size()) +
                            " differs from distribution domain " + std::to_string(d.domain_size()));
  }
}

}  // namespace detail

// True error of every hypothesis index in the learner's class.
inline std::vector<double> true_errors(const ConceptClass& c, const RealizableDistribution& d) {
  std::vector<double> err(c.size(), 0.0);
  for (std::size_t h = 0; h < c.size(); ++h) {
    detail::NeumaierSum e;
    for (Atom x : d.support()) {
      if (c.label(h, x) != d.target()(x)) e.add(d.prob(x));
    }
    err[h] = std::min(e.value(), 1.0);
  }
  return err;
}

inline double empirical_error_of(const ConceptClass& c, std::size_t h, const Sample& s) {
  std::size_t wrong = 0;
  for (const auto& ex : s) wrong += c.label(h, ex.x) != ex.y ? 1 : 0;
  return static_cast<double>(wrong) / static_cast<double>(s.size());
}

inline bool has_signature(const Learner& l) {
  return l.factors_through_consistent_set() || l.is_deterministic();
}

// Partition of supp(D^m) into classes on which the learner's kernel is
// constant. Learners whose kernel factors through the consistent set use an
// analytic model for thresholds and the far-optimal class, subset inversion for
// supports of at most 20 points, and enumeration otherwise; other
// deterministic learners are grouped by output.
inline std::vector<SignatureClass> signature_classes(const Learner& l, const RealizableDistribution& d,
                                                     std::size_t m,
                                                     std::uint64_t budget = kDefaultEnumerationBudget) {
  if (m == 0) throw PreconditionError("sample size must be at least 1");
  detail::check_domain(l, d);
  const ConceptClass& c = l.hypothesis_class();
  if (l.factors_through_consistent_set()) {
    if (dynamic_cast<const ThresholdClass*>(&c) != nullptr) {
      if (auto r = detail::threshold_signatures(d, m)) return *r;
    }
    if (dynamic_cast<const FarOptimalClass*>(&c) != nullptr) {
      if (auto r = detail::far_optimal_signatures(d, m)) return *r;
    }
    if (d.support().size() <= kMaxSubsetSupport) return detail::subset_signatures(c, d, m);
    return detail::enumerated_signatures(d, m, budget, [&](const Sample& s) { return c.consistent_set(s); });
  }
  if (l.is_deterministic()) {
    return detail::enumerated_signatures(d, m, budget, [&](const Sample& s) { return l.sample(s, 0); });
  }
  throw Error("learner " + l.name() + " declares no signature; use exact_mi or mc_mi");
}

// I(S; A(S)) by full enumeration of supp(D^m), as the expectation of
// KL(P_{h|S} || P_h).
inline InfoReport exact_mi(const Learner& l, const RealizableDistribution& d, std::size_t m,
                           std::uint64_t budget = kDefaultEnumerationBudget) {
  detail::check_domain(l, d);
  std::vector<detail::NeumaierSum> ph(l.hypothesis_class().size());
  std::size_t count = 0;
  enumerate_samples(d, m, budget, [&](const Sample& s, double p) {
    const auto k = l.kernel(s);
    for (std::size_t a = 0; a < k.size(); ++a) ph[k.atoms()[a]].add(p * k.probs()[a]);
    ++count;
  });
  std::vector<double> dense(ph.size());
  for (std::size_t h = 0; h < ph.size(); ++h) dense[h] = ph[h].value();
  auto output = detail::dense_to_distribution(dense);
  detail::NeumaierSum mi;
  enumerate_samples(d, m, budget, [&](const Sample& s, double p) { mi.add(p * kl(l.kernel(s), output)); });
  InfoReport r;
  r.method = MiMethod::kExact;
  r.mi = std::max(mi.value(), 0.0);
  r.output_entropy = entropy(output);
  r.domain_size = d.domain_size();
  r.sample_size = m;
  r.classes = count;
  r.output_distribution = std::move(output);
  return r;
}

inline InfoReport signature_mi(const Learner& l, const RealizableDistribution& d, std::size_t m,
                               std::uint64_t budget = kDefaultEnumerationBudget) {
  const auto classes = signature_classes(l, d, m, budget);
  auto mix = detail::mixture_mi(l, classes);
  InfoReport r;
  r.method = MiMethod::kSignature;
  r.mi = mix.mi;
  r.output_entropy = mix.output_entropy;
  r.domain_size = d.domain_size();
  r.sample_size = m;
  r.classes = classes.size();
  r.output_distribution = std::move(mix.output);
  return r;
}

// Signature aggregation when the learner declares one, full enumeration
// otherwise.
inline InfoReport exact_or_signature_mi(const Learner& l, const RealizableDistribution& d, std::size_t m,
                                        std::uint64_t budget = kDefaultEnumerationBudget) {
  return has_signature(l) ? signature_mi(l, d, m, budget) : exact_mi(l, d, m, budget);
}

// Monte Carlo estimate from sampled signatures. The signature of a sample is
// the output for deterministic learners, a hash of the consistent set for
// learners that factor through it, and a hash of the sample otherwise. With
// empirical signature frequencies c_k / n and kernels K_k, the estimate is
// H(sum_k c_k K_k / n) - sum_k (c_k / n) H(K_k); it equals the plug-in
// estimate over sampled (signature, hypothesis) pairs in expectation over the
// learner's coins and has far lower bias when signatures rarely repeat. The
// standard error bootstraps the signature counts.
inline InfoReport mc_mi(const Learner& l, const RealizableDistribution& d, std::size_t m, std::size_t trials,
                        std::uint64_t seed, std::size_t workers = default_workers()) {
  if (trials == 0) throw PreconditionError("Monte Carlo estimate needs at least one trial");
  detail::check_domain(l, d);
  const ConceptClass& c = l.hypothesis_class();
  auto key_of = [&](const Sample& s) -> std::uint64_t {
    if (l.is_deterministic()) return l.sample(s, 0);
    if (l.factors_through_consistent_set()) return detail::fnv1a(c.consistent_set(s));
    std::vector<std::size_t> code;
    for (const auto& ex : s) code.push_back(2 * ex.x + static_cast<std::size_t>(ex.y));
    return detail::fnv1a(code);
  };
  struct Seen {
    std::uint64_t count = 0;
    Sample representative;
  };
  std::vector<std::map<std::uint64_t, Seen>> chunks(chunk_count(trials));
  for_each_chunk(trials, workers, [&](std::size_t ci, std::size_t begin, std::size_t end) {
    auto& out = chunks[ci];
    for (std::size_t t = begin; t < end; ++t) {
      Rng rng(seed, stream::kSample, t);
      Sample s = d.draw(m, rng);
      auto [it, fresh] = out.try_emplace(key_of(s));
      if (fresh) it->second.representative = std::move(s);
      ++it->second.count;
    }
  });
  // Merge in chunk order so representatives do not depend on the worker count.
  std::map<std::uint64_t, Seen> seen;
  for (auto& chunk : chunks) {
    for (auto& [key, v] : chunk) {
      auto [it, fresh] = seen.try_emplace(key);
      if (fresh) it->second.representative = std::move(v.representative);
      it->second.count += v.count;
    }
  }
  std::vector<FiniteDistribution> kernels;
  std::vector<Bits> kernel_entropy;
  std::vector<detail::Cell> cells;
  for (const auto& [key, v] : seen) {
    kernels.push_back(l.kernel(v.representative));
    kernel_entropy.push_back(entropy(kernels.back()));
    cells.push_back({cells.size(), 0, v.count});
  }
  const std::size_t hs = c.size();
  Bits output_entropy = 0.0;
  auto estimate = [&](const std::vector<detail::Cell>& cs) {
    double n = 0.0;
    for (const auto& cell : cs) n += static_cast<double>(cell.count);
    std::vector<double> ph(hs, 0.0);
    detail::NeumaierSum conditional;
    for (const auto& cell : cs) {
      if (cell.count == 0) continue;
      const double w = static_cast<double>(cell.count) / n;
      const auto& k = kernels[cell.x];
      for (std::size_t a = 0; a < k.size(); ++a) ph[k.atoms()[a]] += w * k.probs()[a];
      conditional.add(w * kernel_entropy[cell.x]);
    }
    detail::NeumaierSum h;
    for (double p : ph) h.add(detail::neg_plog2p(p));
    output_entropy = std::max(h.value(), 0.0);
    return std::max(output_entropy - conditional.value(), 0.0);
  };
  InfoReport r;
  r.method = MiMethod::kMonteCarlo;
  r.mi_stderr = detail::bootstrap_stderr(cells, seed, estimate);
  r.mi = estimate(cells);
  r.output_entropy = output_entropy;
  r.domain_size = d.domain_size();
  r.sample_size = m;
  r.seed = seed;
  r.trials = trials;
  r.classes = cells.size();
  return r;
}

// Exact I(S; B(S)) for the confidence-amplified learner. The k subsamples are
// aggregated through the base learner's signature classes and the validation
// segment through its vector of per-point counts, grouped by the induced
// validation error of every candidate hypothesis.
inline InfoReport boosted_mi(const BoostedLearner& b, const RealizableDistribution& d,
                             std::uint64_t budget = kDefaultEnumerationBudget,
                             std::size_t workers = default_workers()) {
  detail::check_domain(b, d);
  const Learner& base = b.base();
  const ConceptClass& c = b.hypothesis_class();
  const std::size_t k = b.rounds();
  std::vector<FiniteDistribution> kernels;
  std::vector<double> masses;
  for (const auto& sc : signature_classes(base, d, b.subsample_size(), budget)) {
    if (sc.mass <= 0.0) continue;
    kernels.push_back(base.kernel(sc.representative));
    masses.push_back(sc.mass);
  }
  // Hypotheses any round can return.
  std::vector<std::size_t> candidates;
  for (const auto& kern : kernels) candidates.insert(candidates.end(), kern.atoms().begin(), kern.atoms().end());
  std::sort(candidates.begin(), candidates.end());
  candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());
  std::vector<std::size_t> position(c.size(), SIZE_MAX);
  for (std::size_t i = 0; i < candidates.size(); ++i) position[candidates[i]] = i;

  // Validation count vectors, grouped by candidate error vector.
  const auto& support = d.support();
  const std::size_t s = support.size();
  const std::size_t v = b.validation_size();
  std::vector<std::vector<int>> wrong(candidates.size(), std::vector<int>(s));
  for (std::size_t i = 0; i < candidates.size(); ++i) {
    for (std::size_t x = 0; x < s; ++x) {
      wrong[i][x] = c.label(candidates[i], support[x]) != d.target()(support[x]) ? 1 : 0;
    }
  }
  std::map<std::vector<std::size_t>, detail::NeumaierSum> by_errors;
  std::vector<std::size_t> counts(s, 0);
  std::uint64_t visited = 0;
  const double log_vfact = std::lgamma(static_cast<double>(v) + 1.0);
  auto visit = [&](auto&& self, std::size_t pos, std::size_t left) -> void {
    if (pos + 1 == s) {
      counts[pos] = left;
      if (++visited > budget) throw BudgetExceededError(visited, budget);
      double logp = log_vfact;
      for (std::size_t x = 0; x < s; ++x) {
        const auto cx = static_cast<double>(counts[x]);
        logp += cx * std::log(d.prob(support[x])) - std::lgamma(cx + 1.0);
      }
      std::vector<std::size_t> errs(candidates.size(), 0);
      for (std::size_t i = 0; i < candidates.size(); ++i) {
        for (std::size_t x = 0; x < s; ++x) errs[i] += wrong[i][x] * counts[x];
      }
      by_errors[errs].add(std::exp(logp));
      return;
    }
    for (std::size_t cnt = 0; cnt <= left; ++cnt) {
      counts[pos] = cnt;
      self(self, pos + 1, left - cnt);
    }
  };
  visit(visit, 0, v);
  std::vector<std::vector<std::size_t>> error_vectors;
  std::vector<double> error_mass;
  for (const auto& [e, p] : by_errors) {
    error_vectors.push_back(e);
    error_mass.push_back(p.value());
  }

  const std::size_t nk = kernels.size();
  const std::uint64_t tuples = saturating_power(nk, k);
  const std::uint64_t combos =
      tuples > UINT64_MAX / error_vectors.size() ? UINT64_MAX : tuples * error_vectors.size();
  if (combos > budget) throw BudgetExceededError(combos, budget);

  struct Partial {
    std::vector<double> ph;
    detail::NeumaierSum conditional;
  };
  const auto total = static_cast<std::size_t>(combos);
  std::vector<Partial> partials(chunk_count(total));
  for_each_chunk(total, workers, [&](std::size_t ci, std::size_t begin, std::size_t end) {
    Partial& part = partials[ci];
    part.ph.assign(c.size(), 0.0);
    std::vector<FiniteDistribution> runs;
    for (std::size_t idx = begin; idx < end; ++idx) {
      std::size_t rest = idx;
      const std::size_t ev = rest % error_vectors.size();
      rest /= error_vectors.size();
      runs.clear();
      double w = error_mass[ev];
      for (std::size_t r = 0; r < k; ++r) {
        const std::size_t cls = rest % nk;
        rest /= nk;
        runs.push_back(kernels[cls]);
        w *= masses[cls];
      }
      if (w <= 0.0) continue;
      const auto& errs = error_vectors[ev];
      const auto out = BoostedLearner::select(runs, [&](std::size_t h) { return errs[position[h]]; });
      for (std::size_t a = 0; a < out.size(); ++a) part.ph[out.atoms()[a]] += w * out.probs()[a];
      part.conditional.add(w * entropy(out));
    }
  });
  std::vector<double> ph(c.size(), 0.0);
  detail::NeumaierSum conditional;
  for (const auto& part : partials) {
    for (std::size_t h = 0; h < ph.size(); ++h) ph[h] += part.ph[h];
    conditional.add(part.conditional);
  }
  auto output = detail::dense_to_distribution(ph);
  InfoReport r;
  r.method = MiMethod::kSignature;
  r.output_entropy = entropy(output);
  r.mi = std::max(r.output_entropy - conditional.value(), 0.0);
  r.domain_size = d.domain_size();
  r.sample_size = b.required_length();
  r.classes = total;
  r.output_distribution = std::move(output);
  return r;
}

// ---------------------------------------------------------------------------
// Prior upper bound: I(S; A(S)) <= max over S in supp(D^m) of KL(P_{h|S} || Q).

inline Bits prior_bound_over_signatures(const Learner& l, const RealizableDistribution& d, std::size_t m,
                                        const FiniteDistribution& q,
                                        std::uint64_t budget = kDefaultEnumerationBudget) {
  Bits worst = 0.0;
  for (const auto& sc : signature_classes(l, d, m, budget)) {
    worst = std::max(worst, kl(l.kernel(sc.representative), q));
  }
  return worst;
}

namespace detail {

// Generic threshold learner: the kernel is uniform on an interval I, so
// KL(U_I || Q) = -log2 |I| + mean over I of log2(1/Q(t)), read off prefix sums.
inline std::optional<Bits> generic_threshold_prior_bound(const RealizableDistribution& d, std::size_t m,
                                                         const FiniteDistribution& q) {
  const std::size_t n = d.domain_size();
  std::vector<Atom> zeros;
  std::vector<Atom> ones;
  for (Atom x : d.support()) {
    if (d.target()(x) == 0) {
      if (!ones.empty() || x == n) return std::nullopt;
      zeros.push_back(x);
    } else {
      ones.push_back(x);
    }
  }
  std::vector<double> prefix(n + 1, 0.0);
  std::vector<std::size_t> missing(n + 1, 0);
  for (std::size_t t = 0; t < n; ++t) {
    const double p = q.prob(t);
    prefix[t + 1] = prefix[t] + (p > 0.0 ? -std::log2(p) : 0.0);
    missing[t + 1] = missing[t] + (p > 0.0 ? 0 : 1);
  }
  Bits worst = 0.0;
  for (std::size_t i = 0; i <= zeros.size(); ++i) {
    for (std::size_t j = 1; j <= ones.size() + 1; ++j) {
      const std::size_t len = (i > 0 ? 1 : 0) + (j <= ones.size() ? 1 : 0);
      if (len == 0 || len > m) continue;
      const std::size_t a = i > 0 ? zeros[i - 1] : 0;  // consistent indices a..b-1
      const std::size_t b = j <= ones.size() ? ones[j - 1] : n;
      if (missing[b] != missing[a]) return kInfiniteBits;
      const auto size = static_cast<double>(b - a);
      worst = std::max(worst, -std::log2(size) + (prefix[b] - prefix[a]) / size);
    }
  }
  return worst;
}

}  // namespace detail

inline Bits prior_bound(const Learner& l, const RealizableDistribution& d, std::size_t m,
                        const FiniteDistribution& q, std::uint64_t budget = kDefaultEnumerationBudget) {
  if (m == 0) throw PreconditionError("sample size must be at least 1");
  detail::check_domain(l, d);
  if (dynamic_cast<const GenericLearner*>(&l) != nullptr &&
      dynamic_cast<const ThresholdClass*>(&l.hypothesis_class()) != nullptr) {
    if (auto fast = detail::generic_threshold_prior_bound(d, m, q)) return *fast;
  }
  return prior_bound_over_signatures(l, d, m, q, budget);
}

// Normalizer c of Q(t) = c / ((1 + |k - t|) log2 N) over t in [N].
inline double threshold_prior_normalizer(std::size_t n, std::size_t k) {
  if (n < 2 || k < 1 || k > n) throw PreconditionError("threshold prior: need N >= 2 and 1 <= k <= N");
  const double log_n = std::log2(static_cast<double>(n));
  detail::NeumaierSum total;
  for (std::size_t t = 1; t <= n; ++t) {
    const double gap = t > k ? static_cast<double>(t - k) : static_cast<double>(k - t);
    total.add(1.0 / ((1.0 + gap) * log_n));
  }
  return 1.0 / total.value();
}

// Prior over threshold indices (index t-1 for f_t) concentrated near f_k.
inline FiniteDistribution threshold_prior(std::size_t n, std::size_t k) {
  const double c = threshold_prior_normalizer(n, k);
  if (c < 0.5) throw Error("threshold prior: normalizer " + std::to_string(c) + " is below 1/2");
  const double log_n = std::log2(static_cast<double>(n));
  std::vector<Atom> atoms(n);
  std::vector<double> weights(n);
  for (std::size_t t = 1; t <= n; ++t) {
    const double gap = t > k ? static_cast<double>(t - k) : static_cast<double>(k - t);
    atoms[t - 1] = t - 1;
    weights[t - 1] = c / ((1.0 + gap) * log_n);
  }
  return FiniteDistribution::from_weights(std::move(atoms), std::move(weights));
}

// Prior over point-function indices: 1/2 on the target point, the rest spread
// evenly.
inline FiniteDistribution point_prior(std::size_t n, std::size_t target_point) {
  if (n < 2 || target_point < 1 || target_point > n) {
    throw PreconditionError("point prior: need N >= 2 and a target point in [1, N]");
  }
  std::vector<Atom> atoms(n);
  std::vector<double> probs(n, 1.0 / (2.0 * static_cast<double>(n - 1)));
  for (std::size_t i = 0; i < n; ++i) atoms[i] = i;
  probs[target_point - 1] = 0.5;
  return FiniteDistribution::from_weights(std::move(atoms), std::move(probs));
}

// Seeded family of marginals on [n]: member f draws Exp(1) weights and zeroes
// each point with probability 1/4, keeping at least one point.
inline FiniteDistribution random_marginal(std::size_t n, std::uint64_t seed, std::uint64_t member) {
  if (n == 0) throw PreconditionError("random marginal: empty domain");
  Rng rng(seed, stream::kFamily, member);
  std::vector<Atom> atoms;
  std::vector<double> weights;
  for (std::size_t x = 1; x <= n; ++x) {
    const bool dropped = rng.below(4) == 0;
    const double w = -std::log(1.0 - rng.uniform());
    if (dropped || w <= 0.0) continue;
    atoms.push_back(x);
    weights.push_back(w);
  }
  if (atoms.empty()) {
    atoms.push_back(1 + rng.below(n));
    weights.push_back(1.0);
  }
  return FiniteDistribution::from_weights(std::move(atoms), std::move(weights));
}

// ---------------------------------------------------------------------------
// Generalization: frequency of |empirical error - true error| > eps.

struct GeneralizationReport {
  std::size_t sample_size = 0;
  double eps = 0.0;
  std::size_t trials = 0;
  std::uint64_t seed = 0;
  Bits d = 0.0;
  MiMethod d_method = MiMethod::kExact;
  double frequency = 0.0;
  double frequency_stderr = 0.0;
  double bound = 0.0;             // (d + 1) / (2 m eps^2 - 1)
  double realizable_value = 0.0;  // (d + 1) / (m eps - 1), reported only
  double mean_gap = 0.0;          // E[err - empirical err]
  bool holds = false;             // frequency <= bound + 3 stderr
};

inline GeneralizationReport generalization_experiment(const Learner& l, const RealizableDistribution& d,
                                                      std::size_t m, double eps, std::size_t trials,
                                                      std::uint64_t seed, const InfoReport& info,
                                                      std::size_t workers = default_workers()) {
  const double md = static_cast<double>(m);
  if (!(2.0 * md * eps * eps > 1.0)) throw PreconditionError("generalization bound needs 2 m eps^2 > 1");
  if (trials == 0) throw PreconditionError("generalization experiment needs at least one trial");
  detail::check_domain(l, d);
  const ConceptClass& c = l.hypothesis_class();
  const auto err = true_errors(c, d);
  struct Partial {
    std::uint64_t violations = 0;
    detail::NeumaierSum gap;
  };
  std::vector<Partial> partials(chunk_count(trials));
  for_each_chunk(trials, workers, [&](std::size_t ci, std::size_t begin, std::size_t end) {
    for (std::size_t t = begin; t < end; ++t) {
      Rng rng(seed, stream::kSample, t);
      const Sample s = d.draw(m, rng);
      const std::size_t h = l.sample(s, derive_seed(seed, stream::kLearner, t));
      const double emp = empirical_error_of(c, h, s);
      if (std::abs(emp - err[h]) > eps) ++partials[ci].violations;
      partials[ci].gap.add(err[h] - emp);
    }
  });
  GeneralizationReport r;
  r.sample_size = m;
  r.eps = eps;
  r.trials = trials;
  r.seed = seed;
  r.d = info.mi;
  r.d_method = info.method;
  std::uint64_t violations = 0;
  detail::NeumaierSum gap;
  for (const auto& p : partials) {
    violations += p.violations;
    gap.add(p.gap);
  }
  r.frequency = static_cast<double>(violations) / static_cast<double>(trials);
  r.frequency_stderr = detail::bernoulli_stderr(r.frequency, trials);
  r.bound = (info.mi + 1.0) / (2.0 * md * eps * eps - 1.0);
  r.realizable_value = md * eps > 1.0 ? (info.mi + 1.0) / (md * eps - 1.0) : kInfiniteBits;
  r.mean_gap = gap.value() / static_cast<double>(trials);
  r.holds = r.frequency <= r.bound + 3.0 * r.frequency_stderr;
  return r;
}

// ---------------------------------------------------------------------------
// Stability quantities, exact over supp(D^m).

struct StabilityReport {
  std::size_t sample_size = 0;
  Bits d = 0.0;
  std::vector<Bits> coordinate_mi;  // I(A(S); S_i)
  std::vector<double> tv_term;      // E_z dTV(A(S^(i,z)), A(S))
  double average_sqrt_mi = 0.0;     // (1/m) sum_i sqrt(I(A(S); S_i))
  double sqrt_d_over_m = 0.0;
  double gap = 0.0;                 // E[err(A(S)) - empirical err]
  bool average_holds = false;       // average_sqrt_mi <= sqrt(d/m)
  bool coordinate_holds = false;    // sqrt(I_i) >= tv_term[i] for every i
  bool gap_holds = false;           // gap <= sqrt(d/m)
  bool holds() const { return average_holds && coordinate_holds && gap_holds; }
};

inline StabilityReport stability_profile(const Learner& l, const RealizableDistribution& d, std::size_t m,
                                         std::uint64_t budget = kDefaultEnumerationBudget) {
  detail::check_domain(l, d);
  const ConceptClass& c = l.hypothesis_class();
  const auto& support = d.support();
  const std::size_t s = support.size();
  const std::size_t hs = c.size();
  const auto err = true_errors(c, d);
  std::vector<std::size_t> slot(d.domain_size() + 1, 0);
  for (std::size_t i = 0; i < s; ++i) slot[support[i]] = i;

  std::vector<double> joint(m * s * hs, 0.0);  // [i][z][h]
  std::vector<double> ph(hs, 0.0);
  detail::NeumaierSum conditional;
  detail::NeumaierSum gap;
  enumerate_samples(d, m, budget, [&](const Sample& sample, double p) {
    const auto k = l.kernel(sample);
    conditional.add(p * entropy(k));
    for (std::size_t a = 0; a < k.size(); ++a) {
      const std::size_t h = k.atoms()[a];
      const double w = p * k.probs()[a];
      ph[h] += w;
      gap.add(w * (err[h] - empirical_error_of(c, h, sample)));
      for (std::size_t i = 0; i < m; ++i) joint[(i * s + slot[sample[i].x]) * hs + h] += w;
    }
  });
  StabilityReport r;
  r.sample_size = m;
  const auto output = detail::dense_to_distribution(ph);
  r.d = std::max(entropy(output) - conditional.value(), 0.0);
  r.gap = gap.value();
  const double md = static_cast<double>(m);
  r.sqrt_d_over_m = std::sqrt(r.d / md);
  double sqrt_sum = 0.0;
  r.coordinate_holds = true;
  for (std::size_t i = 0; i < m; ++i) {
    std::vector<double> cell(joint.begin() + static_cast<std::ptrdiff_t>(i * s * hs),
                             joint.begin() + static_cast<std::ptrdiff_t>((i + 1) * s * hs));
    const double total = detail::stable_sum(cell);
    for (double& v : cell) v /= total;
    const JointDistribution j(s, hs, cell);
    const Bits mi = mutual_information(j);
    // Sum over z of |P(z, h) - P(z) P_h(h)| / 2.
    double tv = 0.0;
    for (std::size_t z = 0; z < s; ++z) {
      const double pz = d.prob(support[z]);
      for (std::size_t h = 0; h < hs; ++h) tv += std::abs(cell[z * hs + h] - pz * ph[h]);
    }
    tv *= 0.5;
    r.coordinate_mi.push_back(mi);
    r.tv_term.push_back(tv);
    sqrt_sum += std::sqrt(mi);
    if (std::sqrt(mi) < tv - kInfoTolerance) r.coordinate_holds = false;
  }
  r.average_sqrt_mi = sqrt_sum / md;
  r.average_holds = r.average_sqrt_mi <= r.sqrt_d_over_m + kInfoTolerance;
  r.gap_holds = r.gap <= r.sqrt_d_over_m + kInfoTolerance;
  return r;
}

// ---------------------------------------------------------------------------
// PAC-Bayes with prior P_h and posterior P_{h|S}.

struct PacBayesReport {
  std::size_t sample_size = 0;
  double delta = 0.0;
  double eps = 0.0;
  std::size_t trials = 0;
  std::uint64_t seed = 0;
  Bits d = 0.0;
  MiMethod d_method = MiMethod::kExact;
  // Gap above sqrt((KL_nats + ln(m/delta)) / m).
  double violation_frequency = 0.0;
  double violation_stderr = 0.0;
  // Same event with KL measured in bits.
  double violation_frequency_bits = 0.0;
  double mean_kl_bits = 0.0;
  double mean_gap = 0.0;
  bool kl_bound_holds = false;  // violation_frequency <= delta + 3 stderr
  // Frequency of E_A[err - empirical err] > eps against (d + 1) / (m eps^2).
  double required_m = 0.0;      // 5 (d + 1) / eps^2 ln((d + 1) / eps)
  bool tail_applicable = false;
  double tail_frequency = 0.0;
  double tail_stderr = 0.0;
  double tail_bound = 0.0;
  bool tail_holds = false;      // true when not applicable
  bool holds() const { return kl_bound_holds && tail_holds; }
};

inline PacBayesReport pac_bayes_check(const Learner& l, const RealizableDistribution& d, std::size_t m,
                                      double delta, double eps, std::size_t trials, std::uint64_t seed,
                                      std::size_t workers = default_workers(),
                                      std::uint64_t budget = kDefaultEnumerationBudget) {
  if (!(delta > 0.0 && delta < 1.0)) throw PreconditionError("PAC-Bayes check: delta must lie in (0,1)");
  if (!(eps > 0.0)) throw PreconditionError("PAC-Bayes check: eps must be positive");
  if (trials == 0) throw PreconditionError("PAC-Bayes check needs at least one trial");
  const auto info = exact_or_signature_mi(l, d, m, budget);
  const FiniteDistribution& prior = *info.output_distribution;
  const ConceptClass& c = l.hypothesis_class();
  const auto err = true_errors(c, d);
  const double md = static_cast<double>(m);
  const double log_term = std::log(md / delta);
  struct Partial {
    std::uint64_t violations = 0;
    std::uint64_t violations_bits = 0;
    std::uint64_t tail = 0;
    detail::NeumaierSum kl_bits;
    detail::NeumaierSum gap;
  };
  std::vector<Partial> partials(chunk_count(trials));
  for_each_chunk(trials, workers, [&](std::size_t ci, std::size_t begin, std::size_t end) {
    Partial& part = partials[ci];
    for (std::size_t t = begin; t < end; ++t) {
      Rng rng(seed, stream::kSample, t);
      const Sample s = d.draw(m, rng);
      const auto post = l.kernel(s);
      double e = 0.0;
      double emp = 0.0;
      for (std::size_t a = 0; a < post.size(); ++a) {
        e += post.probs()[a] * err[post.atoms()[a]];
        emp += post.probs()[a] * empirical_error_of(c, post.atoms()[a], s);
      }
      const double gap = e - emp;
      const Bits kl_bits = kl(post, prior);
      const double kl_nats = kl_bits * std::numbers::ln2;
      if (gap > std::sqrt((kl_nats + log_term) / md)) ++part.violations;
      if (gap > std::sqrt((kl_bits + log_term) / md)) ++part.violations_bits;
      if (gap > eps) ++part.tail;
      part.kl_bits.add(kl_bits);
      part.gap.add(gap);
    }
  });
  PacBayesReport r;
  r.sample_size = m;
  r.delta = delta;
  r.eps = eps;
  r.trials = trials;
  r.seed = seed;
  r.d = info.mi;
  r.d_method = info.method;
  std::uint64_t v = 0;
  std::uint64_t vb = 0;
  std::uint64_t tail = 0;
  detail::NeumaierSum klsum;
  detail::NeumaierSum gapsum;
  for (const auto& p : partials) {
    v += p.violations;
    vb += p.violations_bits;
    tail += p.tail;
    klsum.add(p.kl_bits);
    gapsum.add(p.gap);
  }
  const auto n = static_cast<double>(trials);
  r.violation_frequency = static_cast<double>(v) / n;
  r.violation_stderr = detail::bernoulli_stderr(r.violation_frequency, trials);
  r.violation_frequency_bits = static_cast<double>(vb) / n;
  r.mean_kl_bits = klsum.value() / n;
  r.mean_gap = gapsum.value() / n;
  r.kl_bound_holds = r.violation_frequency <= delta + 3.0 * r.violation_stderr;
  const double d1 = info.mi + 1.0;
  r.required_m = 5.0 * d1 / (eps * eps) * std::log(d1 / eps);
  r.tail_applicable = md >= r.required_m;
  r.tail_frequency = static_cast<double>(tail) / n;
  r.tail_stderr = detail::bernoulli_stderr(r.tail_frequency, trials);
  r.tail_bound = d1 / (md * eps * eps);
  r.tail_holds = !r.tail_applicable || r.tail_frequency <= r.tail_bound + 3.0 * r.tail_stderr;
  return r;
}

// ---------------------------------------------------------------------------
// Far-optimal class: P(1) = 1 - 1/m, the rest spread evenly, target 1[x > 1].

inline RealizableDistribution far_optimal_distribution(std::size_t n, std::size_t m) {
  if (n < 2 || m < 1) throw PreconditionError("far-optimal distribution: need N >= 2 and m >= 1");
  const double md = static_cast<double>(m);
  std::vector<Atom> atoms(n);
  std::vector<double> probs(n, 1.0 / (md * static_cast<double>(n - 1)));
  for (std::size_t x = 1; x <= n; ++x) atoms[x - 1] = x;
  probs[0] = 1.0 - 1.0 / md;
  const FarOptimalClass cls(n);
  return {n, FiniteDistribution::from_weights(std::move(atoms), std::move(probs)),
          cls.hypothesis(cls.above_one_index())};
}

struct FarOptimalReport {
  std::size_t domain_size = 0;
  std::size_t sample_size = 0;
  Bits generic_mi = 0.0;
  Bits erm_mi = 0.0;
  double generic_floor = 0.0;  // log2(N)/(2e) - 1
  double erm_ceiling = 0.0;    // 1 + log2(m + 2)
  // The floor is informative only once it is positive.
  bool in_regime = false;
  bool generic_holds = false;
  bool erm_holds = false;
  bool holds() const { return !in_regime || (generic_holds && erm_holds); }
};

inline FarOptimalReport far_optimal_comparison(std::size_t n, std::size_t m,
                                               std::uint64_t budget = kDefaultEnumerationBudget) {
  const auto d = far_optimal_distribution(n, m);
  const GenericLearner generic(std::make_shared<const FarOptimalClass>(n));
  const FarOptimalErm erm(n);
  FarOptimalReport r;
  r.domain_size = n;
  r.sample_size = m;
  r.generic_mi = signature_mi(generic, d, m, budget).mi;
  r.erm_mi = signature_mi(erm, d, m, budget).mi;
  r.generic_floor = std::log2(static_cast<double>(n)) / (2.0 * std::numbers::e) - 1.0;
  r.erm_ceiling = 1.0 + std::log2(static_cast<double>(m) + 2.0);
  r.in_regime = r.generic_floor > 0.0;
  r.generic_holds = r.generic_mi > r.generic_floor;
  r.erm_holds = r.erm_mi <= r.erm_ceiling + kInfoTolerance;
  return r;
}

// ---------------------------------------------------------------------------
// Net learner: output entropy and the law of the stopping level K.

struct NetLearnerReport {
  std::size_t sample_size = 0;
  std::size_t vc_dim = 0;
  std::vector<std::size_t> level_sizes;
  std::vector<double> level_eps;
  Bits entropy = 0.0;           // H(A(S)), exact
  double entropy_bound = 0.0;   // 4 d log2(m + 1) + 4
  std::size_t trials = 0;
  std::uint64_t seed = 0;
  // Indexed by K - 1.
  std::vector<double> level_exact;
  std::vector<double> level_frequency;
  std::vector<double> level_stderr;
  std::vector<double> level_bound;  // (m + 1)^-(K - 2) for K >= 2, 1 for K = 1
  bool entropy_holds = false;
  bool exact_levels_hold = false;
  bool sampled_levels_hold = false;
  bool holds() const { return entropy_holds && exact_levels_hold && sampled_levels_hold; }
};

inline NetLearnerReport net_learner_profile(std::shared_ptr<const ConceptClass> cls,
                                            const RealizableDistribution& d, std::size_t m, std::size_t trials,
                                            std::uint64_t seed, std::size_t workers = default_workers(),
                                            std::uint64_t budget = kDefaultEnumerationBudget) {
  const std::size_t vc = vc_dimension(*cls);
  const NetLearner l(cls, d.marginal(), m, vc);
  const auto& nets = l.nets();
  const std::size_t levels = nets.levels.size();
  NetLearnerReport r;
  r.sample_size = m;
  r.vc_dim = vc;
  for (std::size_t k = 0; k < levels; ++k) {
    r.level_sizes.push_back(nets.levels[k].size());
    r.level_eps.push_back(nets.eps[k]);
  }
  const auto classes = signature_classes(l, d, m, budget);
  r.entropy = detail::mixture_mi(l, classes).mi;
  r.entropy_bound = 4.0 * static_cast<double>(vc) * std::log2(static_cast<double>(m) + 1.0) + 4.0;
  r.entropy_holds = r.entropy <= r.entropy_bound + kInfoTolerance;

  r.level_exact.assign(levels, 0.0);
  for (const auto& sc : classes) {
    if (sc.mass > 0.0) r.level_exact[l.stopping_level(sc.representative) - 1] += sc.mass;
  }
  std::vector<std::vector<std::uint64_t>> partials(chunk_count(trials), std::vector<std::uint64_t>(levels, 0));
  for_each_chunk(trials, workers, [&](std::size_t ci, std::size_t begin, std::size_t end) {
    for (std::size_t t = begin; t < end; ++t) {
      Rng rng(seed, stream::kSample, t);
      ++partials[ci][l.stopping_level(d.draw(m, rng)) - 1];
    }
  });
  std::vector<std::uint64_t> counts(levels, 0);
  for (const auto& p : partials) {
    for (std::size_t k = 0; k < levels; ++k) counts[k] += p[k];
  }
  r.trials = trials;
  r.seed = seed;
  r.exact_levels_hold = true;
  r.sampled_levels_hold = true;
  const double base = 1.0 / (static_cast<double>(m) + 1.0);
  for (std::size_t k = 0; k < levels; ++k) {
    const double f = trials > 0 ? static_cast<double>(counts[k]) / static_cast<double>(trials) : 0.0;
    const double bound = k == 0 ? 1.0 : std::pow(base, static_cast<double>(k - 1));
    r.level_frequency.push_back(f);
    r.level_stderr.push_back(detail::bernoulli_stderr(f, trials));
    r.level_bound.push_back(bound);
    if (r.level_exact[k] > bound + kInfoTolerance) r.exact_levels_hold = false;
    if (f > bound + 3.0 * r.level_stderr.back()) r.sampled_levels_hold = false;
  }
  return r;
}

// ---------------------------------------------------------------------------
// Sharpness learner on [n] with all labels 1.

struct SharpnessReport {
  std::size_t n = 0;
  std::size_t m = 0;
  std::size_t sets = 0;
  std::size_t set_size = 0;
  double measure_estimate = 0.0;
  double measure_stderr = 0.0;
  std::size_t trials = 0;
  std::uint64_t seed = 0;
  double high_error_frequency = 0.0;  // Pr[err >= 1/2]
  double high_error_stderr = 0.0;
  double frequency_floor = 0.0;       // 1/(2m)
  Bits entropy = 0.0;                 // plug-in H(A(S)), equal to the MI
  double entropy_stderr = 0.0;
  double entropy_cap = 5.0;
  bool holds() const { return high_error_frequency >= frequency_floor && entropy <= entropy_cap; }
};

inline SharpnessReport sharpness_experiment(std::size_t n, std::size_t m, std::uint64_t seed, std::size_t trials,
                                            std::size_t workers = default_workers(),
                                            std::size_t measure_draws = 1'000'000) {
  if (trials == 0) throw PreconditionError("sharpness experiment needs at least one trial");
  const SharpnessLearner l(build_cover(n, m, seed, measure_draws));
  const auto d = RealizableDistribution::uniform(n, Hypothesis::all_ones());
  const std::size_t outputs = l.hypothesis_class().size();
  std::vector<std::vector<std::uint64_t>> partials(chunk_count(trials), std::vector<std::uint64_t>(outputs, 0));
  for_each_chunk(trials, workers, [&](std::size_t ci, std::size_t begin, std::size_t end) {
    for (std::size_t t = begin; t < end; ++t) {
      Rng rng(seed, stream::kSample, t);
      ++partials[ci][l.sample(d.draw(m, rng), 0)];
    }
  });
  std::vector<detail::Cell> cells;
  for (std::size_t h = 0; h < outputs; ++h) cells.push_back({0, h, 0});
  for (const auto& p : partials) {
    for (std::size_t h = 0; h < outputs; ++h) cells[h].count += p[h];
  }
  std::uint64_t high = 0;
  for (std::size_t h = 0; h < outputs; ++h) {
    if (l.true_error_of(h) >= 0.5) high += cells[h].count;
  }
  SharpnessReport r;
  r.n = n;
  r.m = m;
  r.sets = l.cover().count();
  r.set_size = l.cover().k;
  r.measure_estimate = l.cover().measure_estimate;
  r.measure_stderr = l.cover().measure_stderr;
  r.trials = trials;
  r.seed = seed;
  r.high_error_frequency = static_cast<double>(high) / static_cast<double>(trials);
  r.high_error_stderr = detail::bernoulli_stderr(r.high_error_frequency, trials);
  r.frequency_floor = 1.0 / (2.0 * static_cast<double>(m));
  r.entropy = detail::plugin_entropy(cells);
  r.entropy_stderr = detail::bootstrap_stderr(cells, seed, [](const auto& cs) { return detail::plugin_entropy(cs); });
  return r;
}

}  // namespace infolearn

#endif  // INFOLEARN_ANALYSIS_HPP_
