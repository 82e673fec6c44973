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
#include <map>
#include <memory>
#include <numeric>
#include <vector>

#include "infolearn/learners.hpp"

namespace infolearn {
namespace {

std::shared_ptr<const ConceptClass> thresholds(std::size_t n) { return std::make_shared<const ThresholdClass>(n); }
std::shared_ptr<const ConceptClass> points(std::size_t n) { return std::make_shared<const PointClass>(n); }

// Pearson statistic of `draws` samples against the kernel.
double chi_square(const Learner& l, const Sample& s, std::size_t draws, std::uint64_t seed) {
  const auto k = l.kernel(s);
  std::map<std::size_t, double> counts;
  for (std::size_t t = 0; t < draws; ++t) counts[l.sample(s, derive_seed(seed, stream::kLearner, t))] += 1.0;
  double stat = 0.0;
  for (std::size_t i = 0; i < k.size(); ++i) {
    const double expected = k.probs()[i] * static_cast<double>(draws);
    const double observed = counts[k.atoms()[i]];
    stat += (observed - expected) * (observed - expected) / expected;
    counts.erase(k.atoms()[i]);
  }
  EXPECT_TRUE(counts.empty()) << "sampler produced an atom outside the kernel";
  return stat;
}

TEST(GenericLearnerTest, Examples) {
  const GenericLearner t4(thresholds(4));
  EXPECT_EQ(t4.kernel({{1, 0}, {3, 1}}), FiniteDistribution::uniform({1, 2}));
  const GenericLearner p5(points(5));
  EXPECT_EQ(p5.kernel({{4, 0}, {2, 1}}), FiniteDistribution::point_mass(1));
  EXPECT_EQ(p5.kernel({{3, 0}, {4, 0}}), FiniteDistribution::uniform({0, 1, 4}));
  EXPECT_THROW(p5.kernel({{2, 1}, {3, 1}}), NonRealizableError);
  EXPECT_TRUE(p5.factors_through_consistent_set());
  EXPECT_FALSE(p5.is_deterministic());
}

TEST(GenericLearnerTest, SamplerMatchesKernel) {
  const GenericLearner l(thresholds(32));
  // Consistent thresholds f_4..f_8: five atoms, four degrees of freedom.
  const double stat = chi_square(l, {{3, 0}, {8, 1}}, 100'000, 301);
  EXPECT_LT(stat, 18.47);  // 0.999 quantile of chi-square(4)
}

TEST(MinThresholdErmTest, Examples) {
  const MinThresholdErm l(8);
  EXPECT_EQ(l.kernel({{1, 0}, {5, 1}}), FiniteDistribution::point_mass(1));
  EXPECT_EQ(l.kernel({{4, 1}}), FiniteDistribution::point_mass(0));
  EXPECT_EQ(l.kernel({{2, 0}, {3, 0}, {7, 1}}), FiniteDistribution::point_mass(3));
  EXPECT_EQ(l.sample({{2, 0}, {3, 0}, {7, 1}}, 99), 3u);
  EXPECT_THROW(l.kernel({{5, 0}, {3, 1}}), NonRealizableError);
  EXPECT_THROW(l.kernel({{8, 0}}), NonRealizableError);
  EXPECT_TRUE(l.is_deterministic());
}

TEST(FarOptimalErmTest, Examples) {
  const FarOptimalErm l(6);
  const std::size_t above_one = 5;
  EXPECT_EQ(l.kernel({{1, 0}, {1, 0}}), FiniteDistribution::point_mass(above_one));
  EXPECT_EQ(l.kernel({{1, 0}, {4, 1}}), FiniteDistribution::point_mass(above_one));
  EXPECT_EQ(l.kernel({{3, 1}, {5, 1}}), FiniteDistribution::point_mass(above_one));
  // 1[x>1] is ruled out by a zero at 3; the smallest consistent point is 2.
  EXPECT_EQ(l.kernel({{3, 0}}), FiniteDistribution::point_mass(0));
  EXPECT_EQ(l.kernel({{2, 0}, {4, 1}}), FiniteDistribution::point_mass(2));
  EXPECT_THROW(l.kernel({{1, 1}}), NonRealizableError);
  EXPECT_THROW(l.kernel({{3, 1}, {3, 0}}), NonRealizableError);
}

CoverSets handmade_cover() {
  // [8] with T_1 = {1,2,3,4}, T_2 = {3,4,5,6}, T_3 = {5,6,7,8}.
  CoverSets c;
  c.n = 8;
  c.m = 2;
  c.k = 4;
  c.member = {{1, 1, 1, 1, 0, 0, 0, 0}, {0, 0, 1, 1, 1, 1, 0, 0}, {0, 0, 0, 0, 1, 1, 1, 1}};
  return c;
}

TEST(SharpnessLearnerTest, Examples) {
  const SharpnessLearner l(handmade_cover());
  EXPECT_EQ(l.hypothesis_class().size(), 4u);
  EXPECT_EQ(l.kernel({{2, 1}, {4, 1}}), FiniteDistribution::point_mass(0));
  EXPECT_EQ(l.kernel({{4, 1}, {5, 1}}), FiniteDistribution::point_mass(1));
  EXPECT_EQ(l.kernel({{8, 1}, {7, 1}}), FiniteDistribution::point_mass(2));
  EXPECT_EQ(l.kernel({{1, 1}, {8, 1}}), FiniteDistribution::point_mass(l.all_ones_index()));
  EXPECT_THROW(l.kernel({{1, 0}}), PreconditionError);
  EXPECT_DOUBLE_EQ(l.true_error_of(0), 0.5);
  EXPECT_DOUBLE_EQ(l.true_error_of(3), 0.0);
}

TEST(SharpnessLearnerTest, ZeroEmpiricalError) {
  const auto cover = build_cover(200, 3, 302, 20'000);
  const SharpnessLearner l(cover);
  const auto d = RealizableDistribution::uniform(200, Hypothesis::all_ones());
  Rng rng(303);
  for (int t = 0; t < 2000; ++t) {
    const auto s = d.draw(3, rng);
    const auto h = l.hypothesis_class().hypothesis(l.sample(s, 0));
    ASSERT_EQ(empirical_error(h, s), 0.0);
  }
}

TEST(BuildCoverTest, SetCount) {
  EXPECT_EQ(cover_set_count(100'000, 5), 25u);
  EXPECT_EQ(cover_set_count(10'000, 4), 16u);
  // Odd n: k = 2 and (5/2)^2 * 4/2 = 12.5.
  EXPECT_EQ(cover_set_count(5, 2), 12u);
}

TEST(BuildCoverTest, MeasureWithinBand) {
  for (auto [n, m] : {std::pair<std::size_t, std::size_t>{100'000, 5}, {10'000, 4}}) {
    const auto c = build_cover(n, m, 304);
    EXPECT_EQ(c.count(), cover_set_count(n, m));
    for (const auto& t : c.member) {
      EXPECT_EQ(static_cast<std::size_t>(std::accumulate(t.begin(), t.end(), 0)), n / 2);
    }
    EXPECT_GE(c.measure_estimate, 1.0 / static_cast<double>(m));
    EXPECT_LE(c.measure_estimate, 4.0 / static_cast<double>(m));
    EXPECT_EQ(c.measure_draws, 1'000'000u);
  }
}

TEST(BuildCoverTest, Deterministic) {
  const auto a = build_cover(500, 3, 305, 10'000);
  const auto b = build_cover(500, 3, 305, 10'000);
  EXPECT_EQ(a.member, b.member);
  EXPECT_EQ(a.measure_estimate, b.measure_estimate);
  EXPECT_THROW(build_cover(5, 3, 1), PreconditionError);
}

TEST(NetLearnerTest, LevelsCoverTheClass) {
  const auto cls = thresholds(64);
  Rng rng(306);
  std::vector<double> w(64);
  for (auto& v : w) v = rng.uniform();
  std::vector<Atom> xs(64);
  std::iota(xs.begin(), xs.end(), Atom{1});
  const auto marginal = FiniteDistribution::from_weights(xs, w);
  for (std::size_t m : {1, 3, 5}) {
    const NetLearner l(cls, marginal, m);
    const auto& nets = l.nets();
    ASSERT_EQ(nets.vc_dim, 1u);
    ASSERT_EQ(nets.levels.back().size(), 64u);
    for (std::size_t k = 0; k + 1 < nets.levels.size(); ++k) {
      EXPECT_DOUBLE_EQ(nets.eps[k], std::pow(1.0 / static_cast<double>(m + 1), static_cast<double>(k + 1)));
      EXPECT_LE(static_cast<double>(nets.levels[k].size()), nets.size_bound[k]);
      for (std::size_t h = 0; h < 64; ++h) {
        double best = 1.0;
        for (std::size_t f : nets.levels[k]) {
          double d = 0.0;
          for (std::size_t x = 1; x <= 64; ++x) {
            if (cls->label(h, x) != cls->label(f, x)) d += marginal.prob(x);
          }
          best = std::min(best, d);
        }
        ASSERT_LE(best, nets.eps[k] + 1e-12) << "level " << k + 1 << " misses hypothesis " << h;
      }
    }
  }
}

TEST(NetLearnerTest, StopsAtFirstLevelWhenPossible) {
  const auto cls = thresholds(16);
  const NetLearner l(cls, uniform_marginal(16), 3);
  const std::size_t f = l.nets().levels[0].front();
  const auto d = RealizableDistribution::uniform(16, cls->hypothesis(f));
  Rng rng(307);
  const auto s = d.draw(3, rng);
  EXPECT_EQ(l.stopping_level(s), 1u);
  EXPECT_EQ(l.kernel(s), FiniteDistribution::point_mass(l.nets().levels[0].front()));
}

TEST(NetLearnerTest, WitnessSampleForcesDeeperLevel) {
  const auto cls = thresholds(16);
  const auto marginal = uniform_marginal(16);
  const NetLearner l(cls, marginal, 3);
  const auto& first = l.nets().levels[0];
  // A target outside N_1 and, for each member of N_1, a point where the two
  // disagree.
  std::size_t target = 0;
  while (std::find(first.begin(), first.end(), target) != first.end()) ++target;
  Sample s;
  for (std::size_t f : first) {
    for (std::size_t x = 1; x <= 16; ++x) {
      if (cls->label(f, x) != cls->label(target, x)) {
        s.push_back({x, cls->label(target, x)});
        break;
      }
    }
  }
  ASSERT_FALSE(s.empty());
  EXPECT_GE(l.stopping_level(s), 2u);
  const auto out = l.kernel(s).atoms()[0];
  EXPECT_EQ(empirical_error(cls->hypothesis(out), s), 0.0);
}

TEST(NetLearnerTest, CubeUsesTheSizeBound) {
  const auto cls = std::make_shared<const CubeClass>(4);
  const NetLearner l(cls, uniform_marginal(4), 2);
  EXPECT_EQ(l.nets().vc_dim, 4u);
  // Disagreements are multiples of 1/4 and eps_2 = 1/9 already separates
  // everything, so the hierarchy is N_1, N_2 and the full class.
  ASSERT_EQ(l.nets().levels.size(), 3u);
  EXPECT_EQ(l.nets().levels[1].size(), 16u);
}

TEST(BoostedLearnerTest, RoundCountsAndValidationSizes) {
  EXPECT_EQ(BoostedLearner::rounds_for(0.5), 2u);
  EXPECT_EQ(BoostedLearner::rounds_for(0.25), 3u);
  EXPECT_EQ(BoostedLearner::rounds_for(0.1), 5u);
  const double proof = BoostedLearner::proof_validation_size(0.5, 1.0);
  EXPECT_NEAR(proof, 2.0 * std::log(16.0), 1e-12);
  EXPECT_NEAR(BoostedLearner::statement_validation_size(0.5, 1.0), proof / 4.0, 1e-12);
  const auto b = BoostedLearner::from_confidence(std::make_shared<const MinThresholdErm>(8), 2, 0.5, 1.0);
  EXPECT_EQ(b.rounds(), 2u);
  EXPECT_EQ(b.validation_size(), 6u);
  EXPECT_EQ(b.required_length(), 10u);
}

TEST(BoostedLearnerTest, SingleRoundEqualsBase) {
  const auto base = std::make_shared<const MinThresholdErm>(8);
  const BoostedLearner b(base, 2, 1, 2);
  const Sample s{{3, 0}, {6, 1}, {1, 0}, {8, 1}};
  EXPECT_EQ(b.kernel(s), base->kernel({{3, 0}, {6, 1}}));
  EXPECT_THROW(b.kernel({{3, 0}, {6, 1}, {1, 0}}), PreconditionError);
}

TEST(BoostedLearnerTest, PicksFewestValidationErrors) {
  const auto base = std::make_shared<const MinThresholdErm>(8);
  const BoostedLearner b(base, 1, 2, 3);
  // Round 1 sees (2,0) -> f_3; round 2 sees (5,0) -> f_6. Validation is
  // labeled by f_6, so f_3 errs on 3 and 4.
  const Sample s{{2, 0}, {5, 0}, {3, 0}, {4, 0}, {7, 1}};
  EXPECT_EQ(b.kernel(s), FiniteDistribution::point_mass(5));
  // Equal validation errors: the first round wins.
  const Sample tie{{2, 0}, {5, 0}, {1, 0}, {7, 1}, {8, 1}};
  EXPECT_EQ(b.kernel(tie), FiniteDistribution::point_mass(2));
  EXPECT_EQ(b.sample(tie, 5), 2u);
}

TEST(BoostedLearnerTest, TargetInTargetOut) {
  const auto base = std::make_shared<const GenericLearner>(points(6));
  const BoostedLearner b(base, 2, 3, 4);
  // Every subsample reveals the point 4.
  const Sample s{{4, 1}, {1, 0}, {4, 1}, {2, 0}, {4, 1}, {6, 0}, {1, 0}, {2, 0}, {3, 0}, {4, 1}};
  EXPECT_EQ(b.kernel(s), FiniteDistribution::point_mass(3));
}

TEST(BoostedLearnerTest, SelectionMatchesProductEnumeration) {
  Rng rng(308);
  for (int t = 0; t < 10'000; ++t) {
    const std::size_t k = 1 + rng.below(4);
    const std::size_t h = 1 + rng.below(5);
    std::vector<std::size_t> errors(h);
    for (auto& e : errors) e = rng.below(4);
    std::vector<FiniteDistribution> runs;
    for (std::size_t i = 0; i < k; ++i) {
      std::vector<Atom> atoms;
      std::vector<double> w;
      for (std::size_t a = 0; a < h; ++a) {
        if (rng.below(3) != 0 || (a + 1 == h && atoms.empty())) {
          atoms.push_back(a);
          w.push_back(0.1 + rng.uniform());
        }
      }
      runs.push_back(FiniteDistribution::from_weights(atoms, w));
    }
    const auto fast = BoostedLearner::select(runs, [&](std::size_t x) { return errors[x]; });
    // Oracle: every joint outcome of the k runs, argmin with the first
    // minimum winning.
    std::vector<double> oracle(h, 0.0);
    std::vector<std::size_t> pos(k, 0);
    while (true) {
      double p = 1.0;
      std::size_t best = runs[0].atoms()[pos[0]];
      for (std::size_t i = 0; i < k; ++i) {
        const std::size_t a = runs[i].atoms()[pos[i]];
        p *= runs[i].probs()[pos[i]];
        if (errors[a] < errors[best]) best = a;
      }
      oracle[best] += p;
      std::size_t i = 0;
      while (i < k && ++pos[i] == runs[i].size()) pos[i++] = 0;
      if (i == k) break;
    }
    for (std::size_t a = 0; a < h; ++a) ASSERT_NEAR(fast.prob(a), oracle[a], 1e-12);
  }
}

TEST(BoostedLearnerTest, SamplerMatchesKernel) {
  const auto base = std::make_shared<const GenericLearner>(thresholds(12));
  const BoostedLearner b(base, 1, 2, 2);
  // Round outputs are uniform on f_4..f_12 and f_1..f_10; validation (2,0),(9,1)
  // separates them by error count.
  const Sample s{{3, 0}, {10, 1}, {2, 0}, {9, 1}};
  const auto k = b.kernel(s);
  const double stat = chi_square(b, s, 100'000, 309);
  EXPECT_LT(stat, 35.0);  // comfortably above the 0.999 quantile for <= 12 atoms
  EXPECT_GE(k.size(), 2u);
}

TEST(LearnerInvariantsTest, ConsistentOnEverySample) {
  const std::size_t n = 6;
  std::vector<std::pair<std::shared_ptr<const Learner>, Hypothesis>> cases{
      {std::make_shared<const GenericLearner>(thresholds(n)), Hypothesis::threshold(3)},
      {std::make_shared<const MinThresholdErm>(n), Hypothesis::threshold(5)},
      {std::make_shared<const GenericLearner>(points(n)), Hypothesis::point(2)},
      {std::make_shared<const FarOptimalErm>(n), Hypothesis::threshold(2)},
      {std::make_shared<const NetLearner>(thresholds(n), uniform_marginal(n), 3),
       Hypothesis::threshold(4)},
  };
  for (const auto& [learner, target] : cases) {
    const auto d = RealizableDistribution::uniform(n, target);
    const auto& cls = learner->hypothesis_class();
    enumerate_samples(d, 3, kDefaultEnumerationBudget, [&](const Sample& s, double) {
      const auto k = learner->kernel(s);
      const auto cs = cls.consistent_set(s);
      for (Atom h : k.support()) {
        ASSERT_TRUE(std::binary_search(cs.begin(), cs.end(), h)) << learner->name();
      }
    });
  }
}

}  // namespace
}  // namespace infolearn
