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

#ifndef INFOLEARN_ADVERSARY_HPP_
#define INFOLEARN_ADVERSARY_HPP_

// Lower-bound construction against consistent proper threshold learners on
// [2^n]. The decision matrix records the learner's output on the samples
// ((1,0) x (m-2), (i,0), (j,1)); a recursive split of the matrix finds a line
// (row or column) with many entries that put half their mass on pairwise
// disjoint sets, and a distribution concentrated on that line forces the
// learner to reveal which entry it saw.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "infolearn/analysis.hpp"
#include "infolearn/concepts.hpp"
#include "infolearn/error.hpp"
#include "infolearn/info_core.hpp"
#include "infolearn/learners.hpp"
#include "infolearn/parallel.hpp"

namespace infolearn {

// A matrix entry with mass outside (i, j]: the learner is not consistent and
// proper on the sample behind entry (i, j).
class SupportViolationError : public Error {
 public:
  SupportViolationError(std::size_t i, std::size_t j)
      : Error("decision matrix entry (" + std::to_string(i) + "," + std::to_string(j) +
              ") has mass outside (i, j]; the learner is not consistent and proper"),
        i_(i),
        j_(j) {}
  std::size_t i() const { return i_; }
  std::size_t j() const { return j_; }

 private:
  std::size_t i_;
  std::size_t j_;
};

// Entries are distributions over threshold values k (the output f_k), not
// class indices. Entry (i, j) for i < j is the learner's kernel on the sample
// above; the diagonal is a point mass at i and (j, i) mirrors (i, j).
class DecisionMatrix {
 public:
  DecisionMatrix(std::shared_ptr<const Learner> learner, std::size_t n, std::size_t m)
      : learner_(std::move(learner)), n_(n), m_(m) {
    if (n_ < 1 || n_ > 30) throw PreconditionError("decision matrix: n must lie in [1, 30]");
    if (m_ < 3) throw PreconditionError("decision matrix: m must be at least 3");
    const auto* cls = dynamic_cast<const ThresholdClass*>(&learner_->hypothesis_class());
    if (cls == nullptr || cls->size() != size()) {
      throw PreconditionError("decision matrix: learner must be proper for thresholds on [2^n]");
    }
  }

  std::size_t n() const { return n_; }
  std::size_t m() const { return m_; }
  std::size_t size() const { return std::size_t{1} << n_; }
  const Learner& learner() const { return *learner_; }

  // ((1,0) x (m-2), (i,0), (j,1)) for 1 <= i < j <= 2^n.
  Sample sample(std::size_t i, std::size_t j) const {
    check_pair(i, j);
    Sample s(m_ - 2, Example{1, 0});
    s.push_back({i, 0});
    s.push_back({j, 1});
    return s;
  }

  FiniteDistribution entry(std::size_t i, std::size_t j) const {
    if (i == j) {
      check_index(i);
      return FiniteDistribution::point_mass(i);
    }
    if (i > j) std::swap(i, j);
    const std::uint64_t key = (static_cast<std::uint64_t>(i) << 32) | j;
    {
      std::lock_guard<std::mutex> lock(mutex_);
      auto it = cache_.find(key);
      if (it != cache_.end()) return it->second;
    }
    auto e = compute(i, j);
    std::lock_guard<std::mutex> lock(mutex_);
    return cache_.try_emplace(key, std::move(e)).first->second;
  }

  // Number of distinct off-diagonal entries evaluated so far.
  std::size_t evaluated() const {
    std::lock_guard<std::mutex> lock(mutex_);
    return cache_.size();
  }

  // Checks the support property on every entry without caching; throws on the
  // first violation in row-major order.
  void verify_all(std::size_t workers = default_workers()) const {
    const std::size_t rows = size();
    std::vector<std::optional<std::pair<std::size_t, std::size_t>>> first(rows);
    for_each_chunk(
        rows, workers,
        [&](std::size_t, std::size_t begin, std::size_t end) {
          for (std::size_t r = begin; r < end; ++r) {
            const std::size_t i = r + 1;
            for (std::size_t j = i + 1; j <= rows; ++j) {
              if (!supported(i, j, to_values(learner_->kernel(sample(i, j))))) {
                first[r] = std::make_pair(i, j);
                break;
              }
            }
          }
        },
        1);
    for (const auto& f : first) {
      if (f) throw SupportViolationError(f->first, f->second);
    }
  }

 private:
  void check_index(std::size_t i) const {
    if (i < 1 || i > size()) throw PreconditionError("decision matrix: index outside [1, 2^n]");
  }
  void check_pair(std::size_t i, std::size_t j) const {
    check_index(i);
    check_index(j);
    if (i >= j) throw PreconditionError("decision matrix: sample needs i < j");
  }
  static FiniteDistribution to_values(const FiniteDistribution& k) {
    std::vector<Atom> atoms(k.atoms());
    for (auto& a : atoms) a += 1;
    return {std::move(atoms), k.probs()};
  }
  static bool supported(std::size_t i, std::size_t j, const FiniteDistribution& e) {
    for (std::size_t a = 0; a < e.size(); ++a) {
      if (e.probs()[a] > 0.0 && (e.atoms()[a] <= i || e.atoms()[a] > j)) return false;
    }
    return true;
  }
  FiniteDistribution compute(std::size_t i, std::size_t j) const {
    auto e = to_values(learner_->kernel(sample(i, j)));
    if (!supported(i, j, e)) throw SupportViolationError(i, j);
    return e;
  }

  std::shared_ptr<const Learner> learner_;
  std::size_t n_;
  std::size_t m_;
  mutable std::mutex mutex_;
  mutable std::map<std::uint64_t, FiniteDistribution> cache_;
};

enum class Orientation { kRow, kColumn };

inline std::string orientation_name(Orientation o) { return o == Orientation::kRow ? "row" : "column"; }

// Closed interval [lo, hi] of threshold values.
struct ValueSet {
  std::size_t lo = 0;
  std::size_t hi = 0;
  std::vector<Atom> atoms() const {
    std::vector<Atom> out;
    for (std::size_t v = lo; v <= hi; ++v) out.push_back(v);
    return out;
  }
  bool operator==(const ValueSet&) const = default;
};

// The n+1 cells of one line of the symmetric matrix, diagonal included, each
// carrying at least half its mass on its own set.
struct RichLine {
  std::size_t r = 0;
  std::vector<std::size_t> positions;
  std::vector<ValueSet> sets;
};

// Off-diagonal cells of a rich line on one side of the diagonal. Row: the
// samples carry (r,0) and (k_i,1) with k_i > r. Column: (k_i,0) and (r,1) with
// k_i < r.
struct RichStructure {
  Orientation orientation = Orientation::kRow;
  std::size_t r = 0;
  std::vector<std::size_t> positions;
  std::vector<ValueSet> sets;
  std::vector<FiniteDistribution> entries;
  bool deterministic = false;  // every entry is a point mass
  RichLine line;
  std::size_t t() const { return positions.size(); }
};

inline constexpr double kHalfMassTolerance = 1e-12;

namespace detail {

inline RichLine rich_line(const DecisionMatrix& q, std::size_t lo, std::size_t hi) {
  if (lo == hi) return {lo, {lo}, {{lo, lo}}};
  const std::size_t mid = lo + (hi - lo + 1) / 2 - 1;
  RichLine a = rich_line(q, lo, mid);
  RichLine b = rich_line(q, mid + 1, hi);
  const auto pivot = q.entry(a.r, b.r);
  const double lower = pivot.mass_if([&](Atom v) { return v >= lo && v <= mid; });
  if (lower < 0.5 - kHalfMassTolerance) {
    // The upper half carries more than 1/2: the pivot extends line a.r.
    a.positions.push_back(b.r);
    a.sets.push_back({mid + 1, hi});
    return a;
  }
  // Lower half at least 1/2, ties included: the pivot extends line b.r.
  b.positions.push_back(a.r);
  b.sets.push_back({lo, mid});
  return b;
}

}  // namespace detail

// Runs the recursive block decomposition over the whole matrix and keeps the
// larger side of the resulting line (row side on ties).
inline RichStructure find_rich_row(const DecisionMatrix& q) {
  RichLine line = detail::rich_line(q, 1, q.size());
  RichStructure rs;
  rs.r = line.r;
  std::vector<std::size_t> above;
  std::vector<std::size_t> below;
  for (std::size_t i = 0; i < line.positions.size(); ++i) {
    if (line.positions[i] > line.r) above.push_back(i);
    if (line.positions[i] < line.r) below.push_back(i);
  }
  const bool row = above.size() >= below.size();
  rs.orientation = row ? Orientation::kRow : Orientation::kColumn;
  auto chosen = row ? above : below;
  std::sort(chosen.begin(), chosen.end(),
            [&](std::size_t x, std::size_t y) { return line.positions[x] < line.positions[y]; });
  rs.deterministic = true;
  for (std::size_t i : chosen) {
    rs.positions.push_back(line.positions[i]);
    rs.sets.push_back(line.sets[i]);
    rs.entries.push_back(q.entry(line.r, line.positions[i]));
    if (rs.entries.back().size() != 1) rs.deterministic = false;
  }
  // Structural checks: disjoint sets, half mass on each, distinct values for
  // point masses, and at least n/2 cells.
  for (std::size_t i = 0; i < rs.t(); ++i) {
    if (rs.entries[i].mass_if([&](Atom v) { return v >= rs.sets[i].lo && v <= rs.sets[i].hi; }) <
        0.5 - kHalfMassTolerance) {
      throw Error("rich line: cell " + std::to_string(rs.positions[i]) + " has less than half its mass on its set");
    }
    for (std::size_t j = 0; j < i; ++j) {
      if (!(rs.sets[i].hi < rs.sets[j].lo || rs.sets[j].hi < rs.sets[i].lo)) {
        throw Error("rich line: overlapping target sets");
      }
    }
  }
  if (2 * rs.t() < q.n()) throw Error("rich line: fewer than n/2 cells on the chosen side");
  rs.line = std::move(line);
  return rs;
}

// Marginal on the anchor 1, the line index r and the cells k_i: the anchor
// gets 1 - 1/(m-2), r gets 1/(2(m-2)) and the cells share the rest evenly.
// When r = 1 (row side) the anchor and r masses merge; a column cell equal to
// the anchor is dropped.
struct AdversarialSetup {
  RealizableDistribution distribution;
  Orientation orientation;
  std::size_t r;
  std::vector<std::size_t> positions;  // cells kept
  std::vector<std::size_t> kept;       // their indices into the structure
  bool anchor_merged = false;
  std::size_t dropped = 0;
};

inline AdversarialSetup adversarial_distribution(const RichStructure& rs, std::size_t n_domain, std::size_t m) {
  if (m < 4) throw PreconditionError("adversarial distribution: m must be at least 4");
  const double slot = 1.0 / (2.0 * static_cast<double>(m - 2));
  std::vector<std::size_t> kept;
  std::size_t dropped = 0;
  for (std::size_t i = 0; i < rs.t(); ++i) {
    if (rs.positions[i] == 1) {
      ++dropped;
      continue;
    }
    kept.push_back(i);
  }
  if (kept.empty()) throw Error("adversarial distribution: every cell collides with the anchor point");
  if (rs.r == 1 && rs.orientation == Orientation::kColumn) {
    throw Error("adversarial distribution: column line at the anchor point");
  }
  std::map<Atom, double> mass;
  mass[1] += 1.0 - 2.0 * slot;
  mass[rs.r] += slot;
  const double share = slot / static_cast<double>(kept.size());
  std::vector<std::size_t> positions;
  for (std::size_t i : kept) {
    mass[rs.positions[i]] += share;
    positions.push_back(rs.positions[i]);
  }
  std::vector<Atom> atoms;
  std::vector<double> probs;
  for (const auto& [x, p] : mass) {
    atoms.push_back(x);
    probs.push_back(p);
  }
  const std::size_t target = rs.orientation == Orientation::kRow ? rs.r + 1 : rs.r;
  return {RealizableDistribution(n_domain, FiniteDistribution::from_weights(std::move(atoms), std::move(probs)),
                                 Hypothesis::threshold(target)),
          rs.orientation,
          rs.r,
          std::move(positions),
          std::move(kept),
          rs.r == 1,
          dropped};
}

struct Certificate {
  std::size_t n = 0;
  std::size_t m = 0;
  Orientation orientation = Orientation::kRow;
  std::size_t r = 0;
  std::vector<std::size_t> positions;
  bool anchor_merged = false;
  std::size_t dropped = 0;
  bool deterministic = false;
  double pr_e = 0.0;             // Pr[E = 1] over i.i.d. draws, any order
  double pr_e_floor = 0.0;       // (1 - 1/(m-2))^(m-2) (1/(2(m-2)))^2
  bool pr_e_holds = false;
  double conditional_term = 0.0; // log2 t, or (1/2) log2(t/2) - 1 for randomized learners
  Bits channel_mi = 0.0;         // I(cell; output | E = 1), exact
  double floor_bits = 0.0;       // pr_e * conditional_term
  double channel_floor_bits = 0.0;  // pr_e * channel_mi
  double shape_floor = 0.0;      // pr_e_floor * log2(n/2), deterministic learners
  Bits exact_mi_bits = 0.0;
  bool vacuous = false;          // floor_bits <= 0
  bool permutation_invariant = false;
  bool holds = false;
};

// Pr[E = 1] for the event "m-2 anchors, one r example and one cell example in
// any order" (or "m-1 anchors and one cell" when the anchor absorbed r).
inline double event_probability(const AdversarialSetup& setup, std::size_t m) {
  const auto& d = setup.distribution;
  const auto md = static_cast<double>(m);
  double cells = 0.0;
  for (std::size_t k : setup.positions) cells += d.prob(k);
  if (setup.anchor_merged) return md * std::pow(d.prob(1), md - 1.0) * cells;
  return md * (md - 1.0) * std::pow(d.prob(1), md - 2.0) * d.prob(setup.r) * cells;
}

inline double event_probability_floor(std::size_t m) {
  const double k = static_cast<double>(m - 2);
  return std::pow(1.0 - 1.0 / k, k) * std::pow(1.0 / (2.0 * k), 2.0);
}

// The event sample for cell k with the two special examples at slots a != b.
inline Sample event_sample(const AdversarialSetup& setup, std::size_t m, std::size_t k, std::size_t a,
                           std::size_t b) {
  Sample s(m, Example{1, 0});
  if (setup.orientation == Orientation::kRow) {
    s[a] = {setup.r, 0};
    s[b] = {k, 1};
  } else {
    s[a] = {k, 0};
    s[b] = {setup.r, 1};
  }
  return s;
}

inline Certificate certify_lower_bound(const DecisionMatrix& q, const RichStructure& rs,
                                       const AdversarialSetup& setup,
                                       std::uint64_t budget = kDefaultEnumerationBudget) {
  const Learner& l = q.learner();
  const std::size_t m = q.m();
  Certificate c;
  c.n = q.n();
  c.m = m;
  c.orientation = setup.orientation;
  c.r = setup.r;
  c.positions = setup.positions;
  c.anchor_merged = setup.anchor_merged;
  c.dropped = setup.dropped;
  c.deterministic = rs.deterministic;

  c.pr_e = event_probability(setup, m);
  c.pr_e_floor = event_probability_floor(m);
  c.pr_e_holds = c.pr_e >= c.pr_e_floor;

  // Conditional on E the cell is uniform over the kept positions and the
  // output follows the corresponding entry in every arrangement.
  std::vector<FiniteDistribution> entries;
  std::vector<std::vector<Atom>> sets;
  for (std::size_t i : setup.kept) {
    entries.push_back(rs.entries[i]);
    sets.push_back(rs.sets[i].atoms());
  }
  c.permutation_invariant = true;
  for (std::size_t idx = 0; idx < setup.positions.size(); ++idx) {
    const std::size_t k = setup.positions[idx];
    for (std::size_t a = 0; a < m && c.permutation_invariant; ++a) {
      for (std::size_t b = 0; b < m; ++b) {
        if (a == b) continue;
        if (setup.anchor_merged && a != 0) continue;  // r coincides with the anchor
        auto out = l.kernel(event_sample(setup, m, k, a, b));
        std::vector<Atom> atoms(out.atoms());
        for (auto& v : atoms) v += 1;
        const FiniteDistribution values(std::move(atoms), out.probs());
        if (tv_distance(values, entries[idx]) > kProbabilityTolerance) {
          c.permutation_invariant = false;
          break;
        }
      }
    }
  }
  const auto channel = channel_mi_lower_check(entries, sets);
  c.channel_mi = channel.mi;
  const auto t = static_cast<double>(entries.size());
  c.conditional_term = rs.deterministic ? std::log2(t) : channel.lower;
  c.floor_bits = c.pr_e * c.conditional_term;
  c.channel_floor_bits = c.pr_e * c.channel_mi;
  c.shape_floor = c.pr_e_floor * std::log2(static_cast<double>(c.n) / 2.0);
  c.vacuous = c.floor_bits <= 0.0;
  c.exact_mi_bits = exact_or_signature_mi(l, setup.distribution, m, budget).mi;
  c.holds = c.pr_e_holds && c.permutation_invariant && c.exact_mi_bits >= c.floor_bits - kInfoTolerance &&
            c.exact_mi_bits >= c.channel_floor_bits - kInfoTolerance &&
            (!rs.deterministic || c.floor_bits >= c.shape_floor - kInfoTolerance);
  return c;
}

// Matrix, rich line, distribution and certificate in one call.
inline Certificate certify_lower_bound(std::shared_ptr<const Learner> learner, std::size_t n, std::size_t m,
                                       std::uint64_t budget = kDefaultEnumerationBudget) {
  const DecisionMatrix q(std::move(learner), n, m);
  const auto rs = find_rich_row(q);
  const auto setup = adversarial_distribution(rs, q.size(), m);
  return certify_lower_bound(q, rs, setup, budget);
}

}  // namespace infolearn

#endif  // INFOLEARN_ADVERSARY_HPP_
