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

#ifndef INFOLEARN_CONCEPTS_HPP_
#define INFOLEARN_CONCEPTS_HPP_

// Finite domains [N] = {1..N}, labeled samples, hypothesis classes and
// realizable distributions.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "infolearn/error.hpp"
#include "infolearn/info_core.hpp"
#include "infolearn/random.hpp"

namespace infolearn {

inline constexpr std::uint64_t kDefaultEnumerationBudget = 10'000'000;

struct Example {
  std::size_t x;  // domain point in [N]
  int y;          // label in {0, 1}
  bool operator==(const Example&) const = default;
  auto operator<=>(const Example&) const = default;
};

// Ordered: D^m is a product over positions.
using Sample = std::vector<Example>;

class Hypothesis {
 public:
  struct Threshold {
    std::size_t k;  // 1 iff x >= k
    bool operator==(const Threshold&) const = default;
  };
  struct Point {
    std::size_t i;  // 1 iff x == i
    bool operator==(const Point&) const = default;
  };
  struct AllOnes {
    bool operator==(const AllOnes&) const = default;
  };
  struct AllZeros {
    bool operator==(const AllZeros&) const = default;
  };
  struct Explicit {
    std::shared_ptr<const std::vector<bool>> bits;  // bits[x - 1]
    bool operator==(const Explicit& o) const { return *bits == *o.bits; }
  };
  using Encoding = std::variant<Threshold, Point, AllOnes, AllZeros, Explicit>;

  static Hypothesis threshold(std::size_t k) { return Hypothesis(Threshold{k}); }
  static Hypothesis point(std::size_t i) { return Hypothesis(Point{i}); }
  static Hypothesis all_ones() { return Hypothesis(AllOnes{}); }
  static Hypothesis all_zeros() { return Hypothesis(AllZeros{}); }
  static Hypothesis explicit_bits(std::vector<bool> bits) {
    return Hypothesis(Explicit{std::make_shared<const std::vector<bool>>(std::move(bits))});
  }

  int operator()(std::size_t x) const {
    return std::visit(
        [x](const auto& e) -> int {
          using T = std::decay_t<decltype(e)>;
          if constexpr (std::is_same_v<T, Threshold>) {
            return x >= e.k ? 1 : 0;
          } else if constexpr (std::is_same_v<T, Point>) {
            return x == e.i ? 1 : 0;
          } else if constexpr (std::is_same_v<T, AllOnes>) {
            return 1;
          } else if constexpr (std::is_same_v<T, AllZeros>) {
            return 0;
          } else {
            return (x >= 1 && x <= e.bits->size() && (*e.bits)[x - 1]) ? 1 : 0;
          }
        },
        encoding_);
  }

  const Encoding& encoding() const { return encoding_; }

  std::string describe() const {
    return std::visit(
        [](const auto& e) -> std::string {
          using T = std::decay_t<decltype(e)>;
          if constexpr (std::is_same_v<T, Threshold>) {
            return "1[x>=" + std::to_string(e.k) + "]";
          } else if constexpr (std::is_same_v<T, Point>) {
            return "1[x==" + std::to_string(e.i) + "]";
          } else if constexpr (std::is_same_v<T, AllOnes>) {
            return "ones";
          } else if constexpr (std::is_same_v<T, AllZeros>) {
            return "zeros";
          } else {
            std::string s = "bits:";
            for (bool b : *e.bits) s.push_back(b ? '1' : '0');
            return s;
          }
        },
        encoding_);
  }

  bool operator==(const Hypothesis&) const = default;

 private:
  explicit Hypothesis(Encoding e) : encoding_(std::move(e)) {}
  Encoding encoding_;
};

inline double empirical_error(const Hypothesis& h, const Sample& s) {
  if (s.empty()) throw PreconditionError("empirical error of an empty sample");
  std::size_t wrong = 0;
  for (const auto& ex : s) wrong += (h(ex.x) != ex.y) ? 1 : 0;
  return static_cast<double>(wrong) / static_cast<double>(s.size());
}

// A finite hypothesis class over [N] with hypotheses addressed by dense index.
class ConceptClass {
 public:
  virtual ~ConceptClass() = default;

  virtual std::string name() const = 0;
  virtual std::size_t domain_size() const = 0;
  virtual std::size_t size() const = 0;
  virtual Hypothesis hypothesis(std::size_t index) const = 0;

  virtual int label(std::size_t index, std::size_t x) const { return hypothesis(index)(x); }

  // Indices h with empirical_error(h, s) == 0, ascending. The default scans
  // the whole class; built-in classes override with direct constructions.
  virtual std::vector<std::size_t> consistent_set(const Sample& s) const {
    check_sample(s);
    std::vector<std::size_t> out;
    for (std::size_t h = 0; h < size(); ++h) {
      bool ok = true;
      for (const auto& ex : s) {
        if (label(h, ex.x) != ex.y) {
          ok = false;
          break;
        }
      }
      if (ok) out.push_back(h);
    }
    return out;
  }

  virtual std::optional<std::size_t> index_of(const Hypothesis& h) const {
    for (std::size_t i = 0; i < size(); ++i) {
      if (hypothesis(i) == h) return i;
    }
    return std::nullopt;
  }

  std::vector<Hypothesis> enumerate() const {
    std::vector<Hypothesis> out;
    out.reserve(size());
    for (std::size_t i = 0; i < size(); ++i) out.push_back(hypothesis(i));
    return out;
  }

  void check_sample(const Sample& s) const {
    for (const auto& ex : s) {
      if (ex.x < 1 || ex.x > domain_size() || (ex.y != 0 && ex.y != 1)) {
        throw PreconditionError("sample example (" + std::to_string(ex.x) + "," +
                                std::to_string(ex.y) + ") outside the domain of " + name());
      }
    }
  }
};

// Largest zero-labeled point a (0 when none) and smallest one-labeled point b
// (N + 1 when none). Thresholds consistent with the sample are f_t, a < t <= b.
inline std::pair<std::size_t, std::size_t> threshold_interval(const Sample& s, std::size_t n) {
  std::size_t a = 0;
  std::size_t b = n + 1;
  for (const auto& ex : s) {
    if (ex.y == 0) {
      a = std::max(a, ex.x);
    } else {
      b = std::min(b, ex.x);
    }
  }
  return {a, b};
}

// f_k = 1[x >= k] for k in [N]; index k - 1. No all-zeros function.
class ThresholdClass final : public ConceptClass {
 public:
  explicit ThresholdClass(std::size_t n) : n_(n) {
    if (n == 0) throw PreconditionError("threshold class needs N >= 1");
  }
  std::string name() const override { return "thresholds"; }
  std::size_t domain_size() const override { return n_; }
  std::size_t size() const override { return n_; }
  Hypothesis hypothesis(std::size_t index) const override { return Hypothesis::threshold(index + 1); }
  int label(std::size_t index, std::size_t x) const override { return x >= index + 1 ? 1 : 0; }

  std::vector<std::size_t> consistent_set(const Sample& s) const override {
    check_sample(s);
    const auto [a, b] = threshold_interval(s, n_);
    std::vector<std::size_t> out;
    for (std::size_t t = a + 1; t <= std::min(b, n_); ++t) out.push_back(t - 1);
    return out;
  }

  std::optional<std::size_t> index_of(const Hypothesis& h) const override {
    if (const auto* t = std::get_if<Hypothesis::Threshold>(&h.encoding())) {
      if (t->k >= 1 && t->k <= n_) return t->k - 1;
    }
    return std::nullopt;
  }

 private:
  std::size_t n_;
};

// 1[x == i] for i in [N]; index i - 1.
class PointClass final : public ConceptClass {
 public:
  explicit PointClass(std::size_t n) : n_(n) {
    if (n == 0) throw PreconditionError("point class needs N >= 1");
  }
  std::string name() const override { return "points"; }
  std::size_t domain_size() const override { return n_; }
  std::size_t size() const override { return n_; }
  Hypothesis hypothesis(std::size_t index) const override { return Hypothesis::point(index + 1); }
  int label(std::size_t index, std::size_t x) const override { return x == index + 1 ? 1 : 0; }

  std::vector<std::size_t> consistent_set(const Sample& s) const override {
    check_sample(s);
    std::vector<bool> zero(n_ + 1, false);
    std::size_t one = 0;
    for (const auto& ex : s) {
      if (ex.y == 0) {
        zero[ex.x] = true;
      } else if (one == 0 || one == ex.x) {
        one = ex.x;
      } else {
        return {};
      }
    }
    std::vector<std::size_t> out;
    if (one != 0) {
      if (!zero[one]) out.push_back(one - 1);
      return out;
    }
    for (std::size_t i = 1; i <= n_; ++i) {
      if (!zero[i]) out.push_back(i - 1);
    }
    return out;
  }

  std::optional<std::size_t> index_of(const Hypothesis& h) const override {
    if (const auto* p = std::get_if<Hypothesis::Point>(&h.encoding())) {
      if (p->i >= 1 && p->i <= n_) return p->i - 1;
    }
    return std::nullopt;
  }

 private:
  std::size_t n_;
};

// {1[x == i] : 1 < i <= N} together with 1[x > 1]. Index i - 2 addresses the
// point at i; index N - 1 is 1[x > 1] (encoded as the threshold at 2).
class FarOptimalClass final : public ConceptClass {
 public:
  explicit FarOptimalClass(std::size_t n) : n_(n) {
    if (n < 2) throw PreconditionError("far-optimal class needs N >= 2");
  }
  std::string name() const override { return "far-optimal"; }
  std::size_t domain_size() const override { return n_; }
  std::size_t size() const override { return n_; }
  std::size_t above_one_index() const { return n_ - 1; }

  Hypothesis hypothesis(std::size_t index) const override {
    return index == n_ - 1 ? Hypothesis::threshold(2) : Hypothesis::point(index + 2);
  }
  int label(std::size_t index, std::size_t x) const override {
    return index == n_ - 1 ? (x > 1 ? 1 : 0) : (x == index + 2 ? 1 : 0);
  }

  std::vector<std::size_t> consistent_set(const Sample& s) const override {
    check_sample(s);
    std::vector<bool> zero(n_ + 1, false);
    std::size_t one = 0;
    bool several_ones = false;
    bool above_one_ok = true;
    for (const auto& ex : s) {
      if ((ex.x > 1 ? 1 : 0) != ex.y) above_one_ok = false;
      if (ex.y == 0) {
        zero[ex.x] = true;
      } else if (one == 0 || one == ex.x) {
        one = ex.x;
      } else {
        several_ones = true;
      }
    }
    std::vector<std::size_t> out;
    if (!several_ones) {
      if (one != 0) {
        if (one >= 2 && !zero[one]) out.push_back(one - 2);
      } else {
        for (std::size_t i = 2; i <= n_; ++i) {
          if (!zero[i]) out.push_back(i - 2);
        }
      }
    }
    if (above_one_ok) out.push_back(n_ - 1);
    return out;
  }

  std::optional<std::size_t> index_of(const Hypothesis& h) const override {
    if (h == Hypothesis::threshold(2)) return n_ - 1;
    if (const auto* p = std::get_if<Hypothesis::Point>(&h.encoding())) {
      if (p->i >= 2 && p->i <= n_) return p->i - 2;
    }
    return std::nullopt;
  }

 private:
  std::size_t n_;
};

// All of {0,1}^[N]; index bit x - 1 is h(x).
class CubeClass final : public ConceptClass {
 public:
  static constexpr std::size_t kMaxDomain = 20;

  explicit CubeClass(std::size_t n) : n_(n) {
    if (n == 0 || n > kMaxDomain) throw PreconditionError("cube class needs 1 <= N <= 20");
  }
  std::string name() const override { return "cube"; }
  std::size_t domain_size() const override { return n_; }
  std::size_t size() const override { return std::size_t{1} << n_; }
  Hypothesis hypothesis(std::size_t index) const override {
    std::vector<bool> bits(n_);
    for (std::size_t x = 0; x < n_; ++x) bits[x] = ((index >> x) & 1U) != 0;
    return Hypothesis::explicit_bits(std::move(bits));
  }
  int label(std::size_t index, std::size_t x) const override {
    return static_cast<int>((index >> (x - 1)) & 1U);
  }

  std::vector<std::size_t> consistent_set(const Sample& s) const override {
    check_sample(s);
    std::size_t fixed = 0;
    std::size_t value = 0;
    for (const auto& ex : s) {
      const std::size_t bit = std::size_t{1} << (ex.x - 1);
      const std::size_t v = ex.y != 0 ? bit : 0;
      if ((fixed & bit) != 0 && (value & bit) != v) return {};
      fixed |= bit;
      value |= v;
    }
    std::vector<std::size_t> out;
    const std::size_t free = (size() - 1) & ~fixed;
    // Enumerate submasks of `free` in ascending order of the combined index.
    for (std::size_t sub = 0;; sub = (sub - free) & free) {
      out.push_back(value | sub);
      if (sub == free) break;
    }
    std::sort(out.begin(), out.end());
    return out;
  }

 private:
  std::size_t n_;
};

// A class given by an explicit hypothesis list.
class ExplicitClass final : public ConceptClass {
 public:
  ExplicitClass(std::string name, std::size_t n, std::vector<Hypothesis> hypotheses)
      : name_(std::move(name)), n_(n), hypotheses_(std::move(hypotheses)) {
    if (hypotheses_.empty()) throw PreconditionError("explicit class is empty");
  }
  std::string name() const override { return name_; }
  std::size_t domain_size() const override { return n_; }
  std::size_t size() const override { return hypotheses_.size(); }
  Hypothesis hypothesis(std::size_t index) const override { return hypotheses_.at(index); }
  int label(std::size_t index, std::size_t x) const override { return hypotheses_[index](x); }

 private:
  std::string name_;
  std::size_t n_;
  std::vector<Hypothesis> hypotheses_;
};

// Uniform distribution over the domain points 1..n.
inline FiniteDistribution uniform_marginal(std::size_t n) {
  std::vector<Atom> atoms(n);
  for (std::size_t i = 0; i < n; ++i) atoms[i] = i + 1;
  return FiniteDistribution::uniform(std::move(atoms));
}

// Marginal over [N] plus a labeling target. Examples are (x, target(x)).
class RealizableDistribution {
 public:
  RealizableDistribution(std::size_t domain_size, FiniteDistribution marginal, Hypothesis target)
      : n_(domain_size), marginal_(std::move(marginal)), target_(std::move(target)) {
    for (Atom x : marginal_.atoms()) {
      if (x < 1 || x > n_) {
        throw PreconditionError("marginal atom " + std::to_string(x) + " outside [1, N]");
      }
    }
    support_ = marginal_.support();
    cumulative_.reserve(support_.size());
    double acc = 0.0;
    for (Atom x : support_) {
      acc += marginal_.prob(x);
      cumulative_.push_back(acc);
    }
  }

  static RealizableDistribution uniform(std::size_t n, Hypothesis target) {
    return {n, uniform_marginal(n), std::move(target)};
  }

  std::size_t domain_size() const { return n_; }
  const FiniteDistribution& marginal() const { return marginal_; }
  const Hypothesis& target() const { return target_; }
  // Domain points with positive mass, ascending.
  const std::vector<Atom>& support() const { return support_; }
  double prob(std::size_t x) const { return marginal_.prob(x); }
  Example example(std::size_t x) const { return {x, target_(x)}; }

  Sample draw(std::size_t m, Rng& rng) const {
    Sample s;
    s.reserve(m);
    for (std::size_t i = 0; i < m; ++i) {
      const double u = rng.uniform() * cumulative_.back();
      auto it = std::upper_bound(cumulative_.begin(), cumulative_.end(), u);
      if (it == cumulative_.end()) --it;
      s.push_back(example(support_[static_cast<std::size_t>(it - cumulative_.begin())]));
    }
    return s;
  }

 private:
  std::size_t n_;
  FiniteDistribution marginal_;
  Hypothesis target_;
  std::vector<Atom> support_;
  std::vector<double> cumulative_;
};

inline double true_error(const Hypothesis& h, const RealizableDistribution& d) {
  double err = 0.0;
  const auto& m = d.marginal();
  for (std::size_t i = 0; i < m.size(); ++i) {
    const Atom x = m.atoms()[i];
    if (h(x) != d.target()(x)) err += m.probs()[i];
  }
  return std::min(err, 1.0);
}

// base^exp, saturating at UINT64_MAX.
inline std::uint64_t saturating_power(std::uint64_t base, std::size_t exp) {
  std::uint64_t out = 1;
  for (std::size_t i = 0; i < exp; ++i) {
    if (base != 0 && out > UINT64_MAX / base) return UINT64_MAX;
    out *= base;
  }
  return out;
}

// Visits every sample in supp(D^m) with its probability.
template <class Visitor>
void enumerate_samples(const RealizableDistribution& d, std::size_t m, std::uint64_t budget,
                       Visitor&& visit) {
  if (m == 0) throw PreconditionError("sample size must be at least 1");
  const auto& support = d.support();
  const std::uint64_t required = saturating_power(support.size(), m);
  if (required > budget) throw BudgetExceededError(required, budget);
  std::vector<double> p(support.size());
  for (std::size_t i = 0; i < support.size(); ++i) p[i] = d.prob(support[i]);
  std::vector<std::size_t> digit(m, 0);
  Sample s(m, d.example(support[0]));
  while (true) {
    double prob = 1.0;
    for (std::size_t i = 0; i < m; ++i) prob *= p[digit[i]];
    visit(static_cast<const Sample&>(s), prob);
    std::size_t pos = m;
    while (pos > 0) {
      --pos;
      if (++digit[pos] < support.size()) {
        s[pos] = d.example(support[digit[pos]]);
        break;
      }
      digit[pos] = 0;
      s[pos] = d.example(support[0]);
      if (pos == 0) return;
    }
  }
}

// Largest d such that some d points of [N] are shattered; brute force.
inline std::size_t vc_dimension(const ConceptClass& c) {
  const std::size_t n = c.domain_size();
  std::size_t best = 0;
  for (std::size_t d = 1; d <= n && d < 63; ++d) {
    bool found = false;
    std::vector<std::size_t> pick(d);
    for (std::size_t i = 0; i < d; ++i) pick[i] = i + 1;
    while (!found) {
      std::vector<bool> seen(std::size_t{1} << d, false);
      std::size_t distinct = 0;
      for (std::size_t h = 0; h < c.size() && distinct < seen.size(); ++h) {
        std::size_t pattern = 0;
        for (std::size_t i = 0; i < d; ++i) pattern |= static_cast<std::size_t>(c.label(h, pick[i])) << i;
        if (!seen[pattern]) {
          seen[pattern] = true;
          ++distinct;
        }
      }
      if (distinct == seen.size()) {
        found = true;
        break;
      }
      // Next combination of d points from [n].
      std::size_t i = d;
      while (i > 0 && pick[i - 1] == n - d + i) --i;
      if (i == 0) break;
      ++pick[i - 1];
      for (std::size_t j = i; j < d; ++j) pick[j] = pick[j - 1] + 1;
    }
    if (!found) break;
    best = d;
  }
  return best;
}

struct BuiltinClasses {
  std::shared_ptr<const ThresholdClass> thresholds;
  std::shared_ptr<const PointClass> points;
  std::shared_ptr<const FarOptimalClass> far_optimal;  // null when N < 2
  std::shared_ptr<const CubeClass> cube;               // null when N > 16
};

inline BuiltinClasses builtin_classes(std::size_t n) {
  BuiltinClasses out;
  out.thresholds = std::make_shared<const ThresholdClass>(n);
  out.points = std::make_shared<const PointClass>(n);
  if (n >= 2) out.far_optimal = std::make_shared<const FarOptimalClass>(n);
  if (n <= 16) out.cube = std::make_shared<const CubeClass>(n);
  return out;
}

}  // namespace infolearn

#endif  // INFOLEARN_CONCEPTS_HPP_
