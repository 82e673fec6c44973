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

#ifndef INFOLEARN_RANDOM_HPP_
#define INFOLEARN_RANDOM_HPP_

// Counter-based seed splitting. Every random draw in the library comes from a
// stream derived as derive_seed(root, tag, counter), so a Monte Carlo trial
// sees the same numbers no matter which worker runs it or in what order.

#include <cstdint>
#include <limits>

namespace infolearn {

constexpr std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

constexpr std::uint64_t derive_seed(std::uint64_t root, std::uint64_t tag,
                                    std::uint64_t counter) {
  return splitmix64(splitmix64(root ^ splitmix64(tag)) ^ splitmix64(counter + 0x632be59bd9b4e019ULL));
}

// Stream tags. Distinct constants keep the sample draw, the learner's coins and
// the bootstrap resampling of one experiment independent.
namespace stream {
inline constexpr std::uint64_t kSample = 0x53414d50;     // "SAMP"
inline constexpr std::uint64_t kLearner = 0x4c524e52;    // "LRNR"
inline constexpr std::uint64_t kBootstrap = 0x424f4f54;  // "BOOT"
inline constexpr std::uint64_t kCover = 0x434f5652;      // "COVR"
inline constexpr std::uint64_t kFamily = 0x46414d49;     // "FAMI"
}  // namespace stream

// SplitMix64 as a UniformRandomBitGenerator; cheap to construct per trial.
class Rng {
 public:
  using result_type = std::uint64_t;

  explicit Rng(std::uint64_t seed) : state_(seed) {}
  Rng(std::uint64_t root, std::uint64_t tag, std::uint64_t counter)
      : state_(derive_seed(root, tag, counter)) {}

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

  result_type operator()() {
    state_ += 0x9e3779b97f4a7c15ULL;
    std::uint64_t z = state_;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  // Uniform in [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>((*this)() >> 11) * 0x1.0p-53; }

  // Uniform integer in [0, n); Lemire's multiply-shift with rejection.
  std::uint64_t below(std::uint64_t n) {
    std::uint64_t x = (*this)();
    __uint128_t m = static_cast<__uint128_t>(x) * n;
    auto low = static_cast<std::uint64_t>(m);
    if (low < n) {
      const std::uint64_t threshold = (0 - n) % n;
      while (low < threshold) {
        x = (*this)();
        m = static_cast<__uint128_t>(x) * n;
        low = static_cast<std::uint64_t>(m);
      }
    }
    return static_cast<std::uint64_t>(m >> 64);
  }

 private:
  std::uint64_t state_;
};

}  // namespace infolearn

#endif  // INFOLEARN_RANDOM_HPP_
