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

#include <gtest/gtest.h>

#include <cmath>
#include <numeric>
#include <vector>

#include "infolearn/info_core.hpp"
#include "infolearn/random.hpp"

namespace infolearn {
namespace {

constexpr int kPropertyInstances = 10'000;

// Random distribution on atoms 0..n-1; roughly a third of the instances get
// some exact zeros.
FiniteDistribution random_distribution(Rng& rng, std::size_t n, bool allow_zeros = true) {
  std::vector<double> w(n);
  const bool sparse = allow_zeros && rng.below(3) == 0;
  for (auto& v : w) {
    v = -std::log(1.0 - rng.uniform());
    if (sparse && rng.below(3) == 0) v = 0.0;
  }
  if (std::accumulate(w.begin(), w.end(), 0.0) == 0.0) w[rng.below(n)] = 1.0;
  std::vector<Atom> atoms(n);
  std::iota(atoms.begin(), atoms.end(), Atom{0});
  return FiniteDistribution::from_weights(std::move(atoms), std::move(w));
}

JointDistribution random_joint(Rng& rng, std::size_t rows, std::size_t cols) {
  const auto flat = random_distribution(rng, rows * cols);
  return {rows, cols, flat.probs()};
}

// I(X;Y) summed cell by cell as sum p(x,y) log(p(x,y) / (p(x) p(y))).
double mi_oracle(const JointDistribution& j) {
  std::vector<double> px(j.rows(), 0.0);
  std::vector<double> py(j.cols(), 0.0);
  for (std::size_t r = 0; r < j.rows(); ++r) {
    for (std::size_t c = 0; c < j.cols(); ++c) {
      px[r] += j.at(r, c);
      py[c] += j.at(r, c);
    }
  }
  double total = 0.0;
  for (std::size_t r = 0; r < j.rows(); ++r) {
    for (std::size_t c = 0; c < j.cols(); ++c) {
      const double p = j.at(r, c);
      if (p > 0.0) total += p * std::log2(p / (px[r] * py[c]));
    }
  }
  return total;
}

TEST(FiniteDistributionTest, RejectsInvalidInput) {
  EXPECT_THROW(FiniteDistribution({0, 1}, {0.5, 0.6}), PreconditionError);
  EXPECT_THROW(FiniteDistribution({0, 0}, {0.5, 0.5}), PreconditionError);
  EXPECT_THROW(FiniteDistribution({0, 1}, {1.5, -0.5}), PreconditionError);
  EXPECT_THROW(FiniteDistribution({0}, {0.5, 0.5}), PreconditionError);
  EXPECT_THROW(FiniteDistribution({}, {}), PreconditionError);
}

TEST(FiniteDistributionTest, SortsAtomsAndLooksUpMass) {
  const FiniteDistribution p({7, 2, 5}, {0.5, 0.25, 0.25});
  EXPECT_EQ(p.atoms(), (std::vector<Atom>{2, 5, 7}));
  EXPECT_DOUBLE_EQ(p.prob(7), 0.5);
  EXPECT_DOUBLE_EQ(p.prob(3), 0.0);
  const std::vector<Atom> event{2, 7, 7, 9};
  EXPECT_DOUBLE_EQ(p.mass(event), 0.75);
}

TEST(FiniteDistributionTest, SumToleranceIsTight) {
  EXPECT_NO_THROW(FiniteDistribution({0, 1}, {0.5, 0.5 + 5e-13}));
  EXPECT_THROW(FiniteDistribution({0, 1}, {0.5, 0.5 + 5e-12}), PreconditionError);
}

TEST(EntropyTest, Examples) {
  EXPECT_DOUBLE_EQ(entropy(FiniteDistribution::point_mass(3)), 0.0);
  EXPECT_DOUBLE_EQ(entropy(FiniteDistribution::uniform_range(4)), 2.0);
  EXPECT_DOUBLE_EQ(entropy(FiniteDistribution({0, 1, 2}, {0.5, 0.25, 0.25})), 1.5);
  EXPECT_DOUBLE_EQ(entropy(FiniteDistribution({0, 1, 2}, {0.5, 0.0, 0.5})), 1.0);
}

TEST(EntropyTest, BoundedByLogSupport) {
  Rng rng(101);
  for (int t = 0; t < kPropertyInstances; ++t) {
    const auto p = random_distribution(rng, 1 + rng.below(12));
    const double h = entropy(p);
    ASSERT_GE(h, 0.0);
    ASSERT_LE(h, std::log2(static_cast<double>(p.support().size())) + kInfoTolerance);
  }
}

TEST(KlTest, Examples) {
  const FiniteDistribution p({0, 1, 2}, {0.2, 0.3, 0.5});
  EXPECT_DOUBLE_EQ(kl(p, p), 0.0);
  EXPECT_EQ(kl(FiniteDistribution({0, 1}, {1.0, 0.0}), FiniteDistribution({0, 1}, {0.0, 1.0})),
            kInfiniteBits);
  // Atom missing from nu altogether.
  EXPECT_EQ(kl(FiniteDistribution::point_mass(4), FiniteDistribution::point_mass(5)), kInfiniteBits);
}

FiniteDistribution tightness_mu(std::size_t n) { return FiniteDistribution::uniform_range(2 * n); }

FiniteDistribution tightness_nu(std::size_t n) {
  const double nn = static_cast<double>(n * n);
  std::vector<double> p(2 * n);
  for (std::size_t x = 0; x < 2 * n; ++x) p[x] = x < n ? 1.0 / nn : static_cast<double>(n - 1) / nn;
  return FiniteDistribution::from_dense(std::move(p));
}

TEST(KlTest, TightnessPairMatchesTermwiseSum) {
  // Value from a term-by-term summation in double precision: 2 - log2(7)/2.
  EXPECT_NEAR(kl(tightness_mu(8), tightness_nu(8)), 0.5963225389711981, 1e-12);
}

TEST(KlTest, NonnegativeAndZeroOnlyOnEquality) {
  Rng rng(102);
  for (int t = 0; t < kPropertyInstances; ++t) {
    const std::size_t n = 1 + rng.below(10);
    const auto p = random_distribution(rng, n);
    const auto q = random_distribution(rng, n);
    const double d = kl(p, q);
    ASSERT_GE(d, 0.0);
    ASSERT_NEAR(kl(p, p), 0.0, 1e-12);
    bool equal = true;
    for (std::size_t i = 0; i < n; ++i) equal = equal && std::abs(p.probs()[i] - q.probs()[i]) <= 1e-12;
    if (!equal) {
      ASSERT_GT(d, 0.0);
    }
  }
}

TEST(MutualInformationTest, Examples) {
  const auto prod = JointDistribution::product(FiniteDistribution({0, 1}, {0.3, 0.7}),
                                               FiniteDistribution({0, 1, 2}, {0.2, 0.2, 0.6}));
  EXPECT_NEAR(mutual_information(prod), 0.0, 1e-12);
  for (std::size_t n : {2, 5, 16}) {
    std::vector<double> diag(n * n, 0.0);
    for (std::size_t i = 0; i < n; ++i) diag[i * n + i] = 1.0 / static_cast<double>(n);
    EXPECT_NEAR(mutual_information(JointDistribution(n, n, diag)), std::log2(static_cast<double>(n)), 1e-12);
  }
}

TEST(MutualInformationTest, RandomKernelMatchesCellSum) {
  Rng rng(103);
  const auto input = random_distribution(rng, 5, false);
  std::vector<FiniteDistribution> kernels;
  for (std::size_t i = 0; i < 5; ++i) kernels.push_back(random_distribution(rng, 4));
  const auto j = JointDistribution::from_channel(input, kernels);
  EXPECT_NEAR(mutual_information(j), mi_oracle(j), kInfoTolerance);
}

TEST(MutualInformationTest, EqualsKlToMarginalProduct) {
  Rng rng(104);
  for (int t = 0; t < kPropertyInstances; ++t) {
    const auto j = random_joint(rng, 1 + rng.below(6), 1 + rng.below(6));
    const double mi = mutual_information(j);
    ASSERT_GE(mi, 0.0);
    ASSERT_NEAR(mi, kl(j.flattened(), j.marginal_product()), kInfoTolerance);
    ASSERT_NEAR(mi, mi_oracle(j), kInfoTolerance);
  }
}

TEST(ConditionalEntropyTest, Examples) {
  // Column determined by the row.
  EXPECT_NEAR(conditional_entropy(JointDistribution(3, 3, {0.2, 0, 0, 0, 0, 0.5, 0, 0.3, 0})), 0.0, 1e-12);
  const FiniteDistribution cols({0, 1, 2}, {0.5, 0.25, 0.25});
  const auto prod = JointDistribution::product(FiniteDistribution({0, 1}, {0.4, 0.6}), cols);
  EXPECT_NEAR(conditional_entropy(prod), 1.5, 1e-12);
}

TEST(ConditionalEntropyTest, RandomJointMatchesRowwiseOracle) {
  Rng rng(105);
  for (int t = 0; t < 1000; ++t) {
    const auto j = random_joint(rng, 1 + rng.below(5), 1 + rng.below(5));
    // Sum over rows of p(x) H(Y | X = x).
    double oracle = 0.0;
    for (std::size_t r = 0; r < j.rows(); ++r) {
      double px = 0.0;
      for (std::size_t c = 0; c < j.cols(); ++c) px += j.at(r, c);
      for (std::size_t c = 0; c < j.cols(); ++c) {
        const double p = j.at(r, c);
        if (p > 0.0) oracle -= p * std::log2(p / px);
      }
    }
    ASSERT_NEAR(conditional_entropy(j), oracle, kInfoTolerance);
  }
}

TEST(TvDistanceTest, Examples) {
  const FiniteDistribution p({0, 1}, {0.7, 0.3});
  EXPECT_DOUBLE_EQ(tv_distance(p, p), 0.0);
  EXPECT_DOUBLE_EQ(tv_distance(FiniteDistribution::point_mass(0), FiniteDistribution::point_mass(1)), 1.0);
  EXPECT_NEAR(tv_distance(p, FiniteDistribution({0, 1}, {0.4, 0.6})), 0.3, 1e-15);
}

TEST(TvDistanceTest, Pinsker) {
  Rng rng(106);
  for (int t = 0; t < kPropertyInstances; ++t) {
    const std::size_t n = 1 + rng.below(10);
    const auto p = random_distribution(rng, n);
    const auto q = random_distribution(rng, n);
    const double tv = tv_distance(p, q);
    const double d = kl(p, q);
    ASSERT_LE(tv * tv, d * std::log(2.0) / 2.0 + 1e-12);
  }
}

TEST(DivControlTest, EqualDistributions) {
  const auto p = FiniteDistribution::uniform_range(4);
  const std::vector<Atom> event{2};
  const auto sides = div_control_check(p, p, event);
  ASSERT_TRUE(sides.has_value());
  EXPECT_DOUBLE_EQ(sides->lhs, 0.25);
  EXPECT_DOUBLE_EQ(sides->rhs, 0.5);
}

TEST(DivControlTest, TightnessFamily) {
  std::vector<Atom> event(8);
  std::iota(event.begin(), event.end(), Atom{0});
  const auto sides = div_control_check(tightness_mu(8), tightness_nu(8), event);
  ASSERT_TRUE(sides.has_value());
  EXPECT_NEAR(tightness_nu(8).mass(event), 0.125, 1e-15);
  EXPECT_NEAR(sides->lhs, 0.5, 1e-15);
  EXPECT_NEAR(sides->rhs, 0.5321075129903994, 1e-12);
  EXPECT_TRUE(sides->holds());
}

TEST(DivControlTest, DegenerateEventHasNoBound) {
  const auto p = FiniteDistribution::uniform_range(3);
  const std::vector<Atom> all{0, 1, 2};
  const std::vector<Atom> none{7};
  EXPECT_FALSE(div_control_check(p, p, all).has_value());
  EXPECT_FALSE(div_control_check(p, p, none).has_value());
}

TEST(DivControlTest, RandomTriples) {
  Rng rng(107);
  int checked = 0;
  for (int t = 0; t < kPropertyInstances; ++t) {
    const std::size_t n = 2 + rng.below(10);
    const auto mu = random_distribution(rng, n);
    const auto nu = random_distribution(rng, n);
    std::vector<Atom> event;
    for (Atom a = 0; a < n; ++a) {
      if (rng.below(2) == 0) event.push_back(a);
    }
    const auto sides = div_control_check(mu, nu, event);
    if (!sides) continue;
    ++checked;
    ASSERT_TRUE(sides->holds()) << "lhs " << sides->lhs << " rhs " << sides->rhs;
  }
  EXPECT_GT(checked, kPropertyInstances / 2);
}

TEST(FiberControlTest, IndependentJoint) {
  const auto j = JointDistribution::product(FiniteDistribution::uniform_range(4), FiniteDistribution::uniform_range(2));
  // One row per column: every fiber has mass 1/4.
  const std::vector<std::pair<std::size_t, std::size_t>> event{{0, 0}, {3, 1}};
  const auto sides = fiber_control_check(j, event, 0.25);
  EXPECT_DOUBLE_EQ(sides.lhs, 0.25);
  EXPECT_LE(sides.lhs, 0.25);
  EXPECT_TRUE(sides.holds());
}

TEST(FiberControlTest, DiagonalIsNearlyTight) {
  const std::size_t n = 16;
  std::vector<double> diag(n * n, 0.0);
  std::vector<std::pair<std::size_t, std::size_t>> event;
  for (std::size_t i = 0; i < n; ++i) {
    diag[i * n + i] = 1.0 / static_cast<double>(n);
    event.emplace_back(i, i);
  }
  const auto sides = fiber_control_check(JointDistribution(n, n, diag), event, 1.0 / static_cast<double>(n));
  EXPECT_NEAR(sides.lhs, 1.0, 1e-12);
  EXPECT_NEAR(sides.rhs, (std::log2(16.0) + 1.0) / std::log2(16.0), 1e-12);
}

TEST(FiberControlTest, HeavyFiberIsRejectedWithColumn) {
  const auto j = JointDistribution::product(FiniteDistribution::uniform_range(4), FiniteDistribution::uniform_range(3));
  const std::vector<std::pair<std::size_t, std::size_t>> event{{0, 2}, {1, 2}};
  try {
    fiber_control_check(j, event, 0.3);
    FAIL() << "expected a precondition error";
  } catch (const PreconditionError& e) {
    EXPECT_EQ(e.index(), 2);
  }
}

TEST(FiberControlTest, RandomJoints) {
  Rng rng(108);
  for (int t = 0; t < kPropertyInstances; ++t) {
    const std::size_t rows = 2 + rng.below(6);
    const std::size_t cols = 1 + rng.below(6);
    const auto j = random_joint(rng, rows, cols);
    const double alpha = 0.05 + 0.9 * rng.uniform();
    const auto px = j.row_marginal();
    // Greedily add rows to each column fiber while its mass stays <= alpha.
    std::vector<std::pair<std::size_t, std::size_t>> event;
    for (std::size_t c = 0; c < cols; ++c) {
      double mass = 0.0;
      for (std::size_t r = 0; r < rows; ++r) {
        if (rng.below(2) == 0 && mass + px.probs()[r] <= alpha) {
          mass += px.probs()[r];
          event.emplace_back(r, c);
        }
      }
    }
    const auto sides = fiber_control_check(j, event, alpha);
    ASSERT_TRUE(sides.holds()) << "lhs " << sides.lhs << " rhs " << sides.rhs;
  }
}

TEST(NegativePartTest, Examples) {
  const FiniteDistribution p({0, 1}, {0.3, 0.7});
  EXPECT_DOUBLE_EQ(negative_part_check(p, p), 0.0);
  // The only atom with p < q has p = 0 and contributes nothing.
  EXPECT_DOUBLE_EQ(negative_part_check(FiniteDistribution({0, 1}, {0.0, 1.0}), FiniteDistribution::uniform_range(2)), 0.0);
  // One atom: 0.25 log(0.25/0.75).
  EXPECT_NEAR(negative_part_check(FiniteDistribution({0, 1}, {0.25, 0.75}), FiniteDistribution({0, 1}, {0.75, 0.25})),
              0.25 * std::log2(1.0 / 3.0), 1e-15);
}

TEST(NegativePartTest, AboveMinusOne) {
  Rng rng(109);
  for (int t = 0; t < kPropertyInstances; ++t) {
    const std::size_t n = 1 + rng.below(12);
    const double v = negative_part_check(random_distribution(rng, n), random_distribution(rng, n));
    ASSERT_LE(v, 0.0);
    ASSERT_GT(v, -1.0);
  }
}

TEST(ChannelTest, PointMassesRevealTheInput) {
  for (std::size_t n : {2, 4, 9}) {
    std::vector<FiniteDistribution> kernels;
    std::vector<std::vector<Atom>> sets;
    for (std::size_t i = 0; i < n; ++i) {
      kernels.push_back(FiniteDistribution::point_mass(i));
      sets.push_back({i});
    }
    const auto b = channel_mi_lower_check(kernels, sets);
    EXPECT_NEAR(b.mi, std::log2(static_cast<double>(n)), 1e-12);
    EXPECT_GE(b.mi, b.lower);
  }
}

TEST(ChannelTest, HalfMassOnOwnSet) {
  // p_i = 1/2 on i and 1/6 on each other atom; MI from a cell-by-cell sum.
  const std::size_t n = 4;
  std::vector<FiniteDistribution> kernels;
  std::vector<std::vector<Atom>> sets;
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<double> p(n, 1.0 / 6.0);
    p[i] = 0.5;
    kernels.push_back(FiniteDistribution::from_dense(p));
    sets.push_back({i});
  }
  const auto b = channel_mi_lower_check(kernels, sets);
  EXPECT_NEAR(b.mi, 0.20751874963942205, 1e-12);
  EXPECT_DOUBLE_EQ(b.lower, -1.0 + 0.5 * std::log2(2.0));
  EXPECT_GE(b.mi, b.lower);
}

TEST(ChannelTest, TwoKernelsBoundIsMinusOne) {
  const std::vector<FiniteDistribution> kernels{FiniteDistribution::uniform_range(2),
                                                FiniteDistribution::uniform_range(2)};
  const std::vector<std::vector<Atom>> sets{{0}, {1}};
  const auto b = channel_mi_lower_check(kernels, sets);
  EXPECT_DOUBLE_EQ(b.lower, -1.0);
  EXPECT_NEAR(b.mi, 0.0, 1e-12);
}

TEST(ChannelTest, PreconditionViolationsNameTheKernel) {
  const std::vector<FiniteDistribution> kernels{FiniteDistribution::point_mass(0), FiniteDistribution::uniform_range(4)};
  const std::vector<std::vector<Atom>> thin{{0}, {1}};
  try {
    channel_mi_lower_check(kernels, thin);
    FAIL() << "expected a precondition error";
  } catch (const PreconditionError& e) {
    EXPECT_EQ(e.index(), 1);
  }
  const std::vector<std::vector<Atom>> overlapping{{0}, {0, 1}};
  EXPECT_THROW(channel_mi_lower_check(kernels, overlapping), PreconditionError);
}

TEST(ChannelTest, RandomChannelsMeetingThePrecondition) {
  Rng rng(110);
  for (int t = 0; t < kPropertyInstances; ++t) {
    const std::size_t n = 2 + rng.below(15);
    const std::size_t width = 1 + rng.below(3);  // atoms per target set
    const std::size_t atoms = n * width + rng.below(4);
    std::vector<FiniteDistribution> kernels;
    std::vector<std::vector<Atom>> sets;
    for (std::size_t i = 0; i < n; ++i) {
      std::vector<Atom> set;
      for (std::size_t w = 0; w < width; ++w) set.push_back(i * width + w);
      // Half or more on the set, the rest anywhere.
      const double inside = 0.5 + 0.5 * rng.uniform();
      std::vector<double> p(atoms, 0.0);
      const auto in = random_distribution(rng, width, false);
      const auto out = random_distribution(rng, atoms);
      for (std::size_t w = 0; w < width; ++w) p[set[w]] += inside * in.probs()[w];
      for (std::size_t a = 0; a < atoms; ++a) p[a] += (1.0 - inside) * out.probs()[a];
      std::vector<Atom> ids(atoms);
      std::iota(ids.begin(), ids.end(), Atom{0});
      kernels.push_back(FiniteDistribution::from_weights(std::move(ids), std::move(p)));
      sets.push_back(std::move(set));
    }
    const auto b = channel_mi_lower_check(kernels, sets);
    ASSERT_GE(b.mi + kInfoTolerance, b.lower);
  }
}

TEST(DataProcessingTest, Examples) {
  Rng rng(111);
  const auto j = random_joint(rng, 4, 5);
  const std::vector<std::size_t> identity{0, 1, 2, 3, 4};
  const auto [xy, same] = data_processing_check(j, identity);
  EXPECT_NEAR(xy, same, 1e-12);
  const std::vector<std::size_t> constant(5, 0);
  EXPECT_NEAR(data_processing_check(j, constant).second, 0.0, 1e-12);
}

TEST(DataProcessingTest, RandomMaps) {
  Rng rng(112);
  for (int t = 0; t < kPropertyInstances; ++t) {
    const std::size_t cols = 1 + rng.below(7);
    const auto j = random_joint(rng, 1 + rng.below(6), cols);
    std::vector<std::size_t> f(cols);
    for (auto& v : f) v = rng.below(cols);
    const auto [xy, xz] = data_processing_check(j, f);
    ASSERT_GE(xy + kInfoTolerance, xz);
  }
}

}  // namespace
}  // namespace infolearn
