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

#ifndef INFOLEARN_INFO_CORE_HPP_
#define INFOLEARN_INFO_CORE_HPP_

// Information-theoretic primitives over finite distributions, plus executable
// forms of the inequalities that tie divergence to event probabilities.
//
// All logarithms are base 2. Distributions are immutable once built.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <numeric>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "infolearn/error.hpp"

namespace infolearn {

// Information measured in bits. Entropies and mutual informations are finite
// and nonnegative; a KL divergence may be +infinity.
using Bits = double;

// Opaque atom identifier. Samples and hypotheses are interned to dense indices
// before any information computation.
using Atom = std::size_t;

inline constexpr double kProbabilityTolerance = 1e-12;
inline constexpr double kInfoTolerance = 1e-9;
inline constexpr Bits kInfiniteBits = std::numeric_limits<double>::infinity();

namespace detail {

// Neumaier summation; keeps the construction-time sum check meaningful for
// supports of 10^5 atoms and more.
template <class Range>
double stable_sum(const Range& values) {
  double sum = 0.0;
  double compensation = 0.0;
  for (double v : values) {
    const double t = sum + v;
    if (std::abs(sum) >= std::abs(v)) {
      compensation += (sum - t) + v;
    } else {
      compensation += (v - t) + sum;
    }
    sum = t;
  }
  return sum + compensation;
}

inline double neg_plog2p(double p) { return p > 0.0 ? -p * std::log2(p) : 0.0; }

}  // namespace detail

// Probability vector over an explicit finite list of atoms. Atoms are kept
// sorted ascending so that two distributions over the same universe can be
// merged in linear time; an atom absent from the list has probability 0.
class FiniteDistribution {
 public:
  FiniteDistribution(std::vector<Atom> atoms, std::vector<double> probs) {
    if (atoms.size() != probs.size()) {
      throw PreconditionError("distribution: atoms and probabilities differ in length");
    }
    if (atoms.empty()) throw PreconditionError("distribution: empty support");
    std::vector<std::size_t> order(atoms.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    if (!std::is_sorted(atoms.begin(), atoms.end())) {
      std::sort(order.begin(), order.end(),
                [&](std::size_t a, std::size_t b) { return atoms[a] < atoms[b]; });
    }
    atoms_.reserve(atoms.size());
    probs_.reserve(atoms.size());
    for (std::size_t i : order) {
      if (!atoms_.empty() && atoms_.back() == atoms[i]) {
        throw PreconditionError("distribution: duplicate atom " + std::to_string(atoms[i]));
      }
      if (!(probs[i] >= 0.0) || !std::isfinite(probs[i])) {
        throw PreconditionError("distribution: negative or non-finite probability");
      }
      atoms_.push_back(atoms[i]);
      probs_.push_back(probs[i]);
    }
    const double total = detail::stable_sum(probs_);
    if (std::abs(total - 1.0) > kProbabilityTolerance) {
      throw PreconditionError("distribution: probabilities sum to " + std::to_string(total));
    }
  }

  static FiniteDistribution point_mass(Atom atom) { return {{atom}, {1.0}}; }

  static FiniteDistribution uniform(std::vector<Atom> atoms) {
    const std::size_t n = atoms.size();
    if (n == 0) throw PreconditionError("distribution: empty support");
    return {std::move(atoms), std::vector<double>(n, 1.0 / static_cast<double>(n))};
  }

  // Uniform over atoms 0..n-1.
  static FiniteDistribution uniform_range(std::size_t n) {
    std::vector<Atom> atoms(n);
    std::iota(atoms.begin(), atoms.end(), Atom{0});
    return uniform(std::move(atoms));
  }

  // Normalizes nonnegative weights.
  static FiniteDistribution from_weights(std::vector<Atom> atoms, std::vector<double> weights) {
    const double total = detail::stable_sum(weights);
    if (!(total > 0.0)) throw PreconditionError("distribution: weights sum to zero");
    for (double& w : weights) w /= total;
    // Renormalize once more so the compensated sum lands within tolerance.
    const double again = detail::stable_sum(weights);
    for (double& w : weights) w /= again;
    return {std::move(atoms), std::move(weights)};
  }

  // Dense vector indexed by atom; zero entries are kept as atoms.
  static FiniteDistribution from_dense(std::vector<double> probs) {
    std::vector<Atom> atoms(probs.size());
    std::iota(atoms.begin(), atoms.end(), Atom{0});
    return {std::move(atoms), std::move(probs)};
  }

  std::size_t size() const { return atoms_.size(); }
  const std::vector<Atom>& atoms() const { return atoms_; }
  const std::vector<double>& probs() const { return probs_; }

  double prob(Atom atom) const {
    auto it = std::lower_bound(atoms_.begin(), atoms_.end(), atom);
    if (it == atoms_.end() || *it != atom) return 0.0;
    return probs_[static_cast<std::size_t>(it - atoms_.begin())];
  }

  double mass(std::span<const Atom> event) const {
    std::vector<Atom> sorted(event.begin(), event.end());
    std::sort(sorted.begin(), sorted.end());
    sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
    double total = 0.0;
    for (Atom a : sorted) total += prob(a);
    return total;
  }

  template <class Pred>
  double mass_if(Pred pred) const {
    double total = 0.0;
    for (std::size_t i = 0; i < atoms_.size(); ++i) {
      if (pred(atoms_[i])) total += probs_[i];
    }
    return total;
  }

  // Atoms carrying positive probability.
  std::vector<Atom> support() const {
    std::vector<Atom> out;
    for (std::size_t i = 0; i < atoms_.size(); ++i) {
      if (probs_[i] > 0.0) out.push_back(atoms_[i]);
    }
    return out;
  }

  bool operator==(const FiniteDistribution&) const = default;

 private:
  std::vector<Atom> atoms_;
  std::vector<double> probs_;
};

// Joint mass p(x, y) over row atoms x and column atoms y, stored row-major.
class JointDistribution {
 public:
  JointDistribution(std::vector<Atom> row_atoms, std::vector<Atom> col_atoms,
                    std::vector<double> mass)
      : row_atoms_(std::move(row_atoms)),
        col_atoms_(std::move(col_atoms)),
        mass_(std::move(mass)) {
    if (row_atoms_.empty() || col_atoms_.empty()) {
      throw PreconditionError("joint: empty row or column set");
    }
    if (mass_.size() != row_atoms_.size() * col_atoms_.size()) {
      throw PreconditionError("joint: mass matrix has the wrong shape");
    }
    for (double v : mass_) {
      if (!(v >= 0.0) || !std::isfinite(v)) throw PreconditionError("joint: negative mass");
    }
    const double total = detail::stable_sum(mass_);
    if (std::abs(total - 1.0) > kProbabilityTolerance) {
      throw PreconditionError("joint: total mass " + std::to_string(total));
    }
  }

  JointDistribution(std::size_t rows, std::size_t cols, std::vector<double> mass)
      : JointDistribution(iota(rows), iota(cols), std::move(mass)) {}

  static JointDistribution product(const FiniteDistribution& rows,
                                   const FiniteDistribution& cols) {
    std::vector<double> mass;
    mass.reserve(rows.size() * cols.size());
    for (double p : rows.probs()) {
      for (double q : cols.probs()) mass.push_back(p * q);
    }
    return {rows.atoms(), cols.atoms(), std::move(mass)};
  }

  // Row x is drawn from `input`, then column y from kernels[i] where i is the
  // position of x in input.atoms(). Columns are the union of kernel atoms.
  static JointDistribution from_channel(const FiniteDistribution& input,
                                        std::span<const FiniteDistribution> kernels) {
    if (kernels.size() != input.size()) {
      throw PreconditionError("joint: one kernel per input atom required");
    }
    std::vector<Atom> cols;
    for (const auto& k : kernels) cols.insert(cols.end(), k.atoms().begin(), k.atoms().end());
    std::sort(cols.begin(), cols.end());
    cols.erase(std::unique(cols.begin(), cols.end()), cols.end());
    std::vector<double> mass(input.size() * cols.size(), 0.0);
    for (std::size_t r = 0; r < input.size(); ++r) {
      const auto& k = kernels[r];
      for (std::size_t i = 0; i < k.size(); ++i) {
        const auto c = static_cast<std::size_t>(
            std::lower_bound(cols.begin(), cols.end(), k.atoms()[i]) - cols.begin());
        mass[r * cols.size() + c] = input.probs()[r] * k.probs()[i];
      }
    }
    return {input.atoms(), std::move(cols), std::move(mass)};
  }

  std::size_t rows() const { return row_atoms_.size(); }
  std::size_t cols() const { return col_atoms_.size(); }
  const std::vector<Atom>& row_atoms() const { return row_atoms_; }
  const std::vector<Atom>& col_atoms() const { return col_atoms_; }
  const std::vector<double>& mass() const { return mass_; }
  double at(std::size_t r, std::size_t c) const { return mass_[r * cols() + c]; }

  FiniteDistribution row_marginal() const {
    std::vector<double> m(rows(), 0.0);
    for (std::size_t r = 0; r < rows(); ++r) {
      m[r] = detail::stable_sum(std::span<const double>(mass_.data() + r * cols(), cols()));
    }
    return {row_atoms_, renormalized(std::move(m))};
  }

  FiniteDistribution col_marginal() const {
    std::vector<double> m(cols(), 0.0);
    for (std::size_t r = 0; r < rows(); ++r) {
      for (std::size_t c = 0; c < cols(); ++c) m[c] += at(r, c);
    }
    return {col_atoms_, renormalized(std::move(m))};
  }

  // The joint as a distribution over flattened cells r * cols() + c.
  FiniteDistribution flattened() const { return FiniteDistribution::from_dense(mass_); }

  // Product of the marginals over the same flattened cells.
  FiniteDistribution marginal_product() const {
    const auto pr = row_marginal();
    const auto pc = col_marginal();
    std::vector<double> m(mass_.size());
    for (std::size_t r = 0; r < rows(); ++r) {
      for (std::size_t c = 0; c < cols(); ++c) m[r * cols() + c] = pr.probs()[r] * pc.probs()[c];
    }
    return FiniteDistribution::from_dense(renormalized(std::move(m)));
  }

 private:
  static std::vector<Atom> iota(std::size_t n) {
    std::vector<Atom> v(n);
    std::iota(v.begin(), v.end(), Atom{0});
    return v;
  }
  static std::vector<double> renormalized(std::vector<double> v) {
    const double total = detail::stable_sum(v);
    for (double& x : v) x /= total;
    return v;
  }

  std::vector<Atom> row_atoms_;
  std::vector<Atom> col_atoms_;
  std::vector<double> mass_;
};

inline Bits entropy(const FiniteDistribution& p) {
  double h = 0.0;
  for (double q : p.probs()) h += detail::neg_plog2p(q);
  return std::max(h, 0.0);
}

// KL(mu || nu); +infinity when mu puts mass where nu has none.
inline Bits kl(const FiniteDistribution& mu, const FiniteDistribution& nu) {
  const auto& ma = mu.atoms();
  const auto& na = nu.atoms();
  double total = 0.0;
  std::size_t j = 0;
  for (std::size_t i = 0; i < ma.size(); ++i) {
    const double p = mu.probs()[i];
    if (p <= 0.0) continue;
    while (j < na.size() && na[j] < ma[i]) ++j;
    if (j == na.size() || na[j] != ma[i] || nu.probs()[j] <= 0.0) return kInfiniteBits;
    total += p * std::log2(p / nu.probs()[j]);
  }
  return std::max(total, 0.0);
}

inline double tv_distance(const FiniteDistribution& p, const FiniteDistribution& q) {
  const auto& pa = p.atoms();
  const auto& qa = q.atoms();
  double total = 0.0;
  std::size_t i = 0;
  std::size_t j = 0;
  while (i < pa.size() || j < qa.size()) {
    if (j == qa.size() || (i < pa.size() && pa[i] < qa[j])) {
      total += p.probs()[i++];
    } else if (i == pa.size() || qa[j] < pa[i]) {
      total += q.probs()[j++];
    } else {
      total += std::abs(p.probs()[i++] - q.probs()[j++]);
    }
  }
  return std::clamp(0.5 * total, 0.0, 1.0);
}

// I(X;Y) = H(X) + H(Y) - H(X,Y) with X the rows and Y the columns.
inline Bits mutual_information(const JointDistribution& j) {
  double hxy = 0.0;
  for (double v : j.mass()) hxy += detail::neg_plog2p(v);
  const double mi = entropy(j.row_marginal()) + entropy(j.col_marginal()) - hxy;
  return std::max(mi, 0.0);
}

// H(Y | X) = H(X,Y) - H(X) with X the rows.
inline Bits conditional_entropy(const JointDistribution& j) {
  double hxy = 0.0;
  for (double v : j.mass()) hxy += detail::neg_plog2p(v);
  return std::max(hxy - entropy(j.row_marginal()), 0.0);
}

// Both sides of an inequality lhs <= rhs.
struct InequalitySides {
  double lhs;
  double rhs;
  bool holds(double tolerance = kInfoTolerance) const { return lhs <= rhs + tolerance; }
};

// mu(E) <= (KL(mu||nu) + 1) / log(1/nu(E)). Returns nullopt when nu(E) is 0
// or 1, where the right-hand side is undefined.
inline std::optional<InequalitySides> div_control_check(const FiniteDistribution& mu,
                                                        const FiniteDistribution& nu,
                                                        std::span<const Atom> event) {
  const double nu_e = nu.mass(event);
  if (nu_e <= 0.0 || nu_e >= 1.0) return std::nullopt;
  return InequalitySides{mu.mass(event), (kl(mu, nu) + 1.0) / std::log2(1.0 / nu_e)};
}

// mu(E) <= (I(X;Y) + 1) / log(1/alpha) for an event E of (row, column) cells
// whose every column fiber has row-marginal mass at most alpha. A fiber above
// alpha throws PreconditionError carrying the column index.
inline InequalitySides fiber_control_check(const JointDistribution& j,
                                           std::span<const std::pair<std::size_t, std::size_t>> event,
                                           double alpha) {
  if (!(alpha > 0.0 && alpha < 1.0)) throw PreconditionError("fiber check: alpha must lie in (0,1)");
  std::vector<std::pair<std::size_t, std::size_t>> cells(event.begin(), event.end());
  std::sort(cells.begin(), cells.end());
  cells.erase(std::unique(cells.begin(), cells.end()), cells.end());
  const auto px = j.row_marginal();
  std::vector<double> fiber(j.cols(), 0.0);
  double lhs = 0.0;
  for (auto [r, c] : cells) {
    if (r >= j.rows() || c >= j.cols()) throw PreconditionError("fiber check: cell out of range");
    fiber[c] += px.probs()[r];
    lhs += j.at(r, c);
  }
  for (std::size_t c = 0; c < j.cols(); ++c) {
    if (fiber[c] > alpha + kProbabilityTolerance) {
      throw PreconditionError("fiber check: fiber mass " + std::to_string(fiber[c]) +
                                  " exceeds alpha",
                              static_cast<std::int64_t>(c));
    }
  }
  return {lhs, (mutual_information(j) + 1.0) / std::log2(1.0 / alpha)};
}

// Sum over atoms with p(x) < q(x) of p(x) log(p(x)/q(x)); always > -1.
inline double negative_part_check(const FiniteDistribution& p, const FiniteDistribution& q) {
  double total = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    const double pv = p.probs()[i];
    const double qv = q.prob(p.atoms()[i]);
    if (pv > 0.0 && pv < qv) total += pv * std::log2(pv / qv);
  }
  return total;
}

struct ChannelBound {
  Bits mi;
  Bits lower;
};

// U uniform on the n kernels, W ~ kernels[U]. With pairwise disjoint sets and
// kernels[i](sets[i]) >= 1/2, I(U;W) >= (1/2) log(n/2) - 1.
inline ChannelBound channel_mi_lower_check(std::span<const FiniteDistribution> kernels,
                                           std::span<const std::vector<Atom>> sets) {
  const std::size_t n = kernels.size();
  if (n == 0 || sets.size() != n) {
    throw PreconditionError("channel check: need one target set per kernel");
  }
  std::vector<std::pair<Atom, std::size_t>> owner;
  for (std::size_t i = 0; i < n; ++i) {
    for (Atom a : sets[i]) owner.emplace_back(a, i);
  }
  std::sort(owner.begin(), owner.end());
  for (std::size_t i = 1; i < owner.size(); ++i) {
    if (owner[i].first == owner[i - 1].first && owner[i].second != owner[i - 1].second) {
      throw PreconditionError("channel check: target sets overlap",
                              static_cast<std::int64_t>(owner[i].second));
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (kernels[i].mass(sets[i]) < 0.5 - kProbabilityTolerance) {
      throw PreconditionError("channel check: kernel carries less than half its mass on its set",
                              static_cast<std::int64_t>(i));
    }
  }
  const auto joint = JointDistribution::from_channel(FiniteDistribution::uniform_range(n), kernels);
  return {mutual_information(joint), 0.5 * std::log2(static_cast<double>(n) / 2.0) - 1.0};
}

// Returns (I(X;Y), I(X;Z)) for Z = f(Y); f maps column index to a new label.
inline std::pair<Bits, Bits> data_processing_check(const JointDistribution& j,
                                                   std::span<const std::size_t> f) {
  if (f.size() != j.cols()) throw PreconditionError("data processing: map must cover every column");
  const std::size_t out = *std::max_element(f.begin(), f.end()) + 1;
  std::vector<double> mass(j.rows() * out, 0.0);
  for (std::size_t r = 0; r < j.rows(); ++r) {
    for (std::size_t c = 0; c < j.cols(); ++c) mass[r * out + f[c]] += j.at(r, c);
  }
  std::vector<Atom> labels(out);
  std::iota(labels.begin(), labels.end(), Atom{0});
  const JointDistribution processed(j.row_atoms(), std::move(labels), std::move(mass));
  return {mutual_information(j), mutual_information(processed)};
}

}  // namespace infolearn

#endif  // INFOLEARN_INFO_CORE_HPP_
