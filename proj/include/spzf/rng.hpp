// Copyright 2026 The SPZF Authors
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

#ifndef SPZF_RNG_HPP
#define SPZF_RNG_HPP

#include <array>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <limits>

namespace spzf {

/// SplitMix64 finalizer. Used for seed expansion and stream derivation.
constexpr std::uint64_t splitmix64(std::uint64_t x) noexcept {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

/// Seed for a sub-experiment, e.g. one (n, m) cell of a sweep.
constexpr std::uint64_t derive_seed(std::uint64_t master, std::uint64_t a,
                                    std::uint64_t b = 0) noexcept {
  return splitmix64(splitmix64(splitmix64(master) ^ a) ^ (b * 0xD6E8FEB86659FD93ULL));
}

/// xoshiro256** generator with host-independent samplers.
///
/// Every sampler below is written out explicitly (no std::*_distribution) so a
/// given seed yields the same sequence with any standard library. Monte Carlo
/// trials take their own stream from `Rng::stream(master, trial, role)`, which
/// makes results independent of execution order and thread count.
class Rng {
 public:
  using result_type = std::uint64_t;

  explicit Rng(std::uint64_t seed) noexcept;

  /// Stream for (master seed, trial index, role). Distinct roles give
  /// independent streams for the same trial (e.g. channels vs. algorithm).
  static Rng stream(std::uint64_t master, std::uint64_t trial,
                    std::uint64_t role = 0) noexcept;

  static constexpr result_type min() noexcept { return 0; }
  static constexpr result_type max() noexcept {
    return std::numeric_limits<result_type>::max();
  }

  result_type operator()() noexcept;

  /// Uniform on [0, 1) with 53 random bits.
  double uniform() noexcept;

  /// Uniform on (0, 1].
  double uniform_open_low() noexcept { return 1.0 - uniform(); }

  /// Uniform integer on [0, bound). bound must be > 0.
  std::size_t below(std::size_t bound) noexcept;

  /// Uniform angle on [0, 2*pi).
  double angle() noexcept;

  /// Standard normal via Box-Muller (one value per call, no caching).
  double normal() noexcept;

  /// Circularly-symmetric complex Gaussian CN(0, variance): real and
  /// imaginary parts are independent with variance `variance / 2` each.
  std::complex<double> complex_normal(double variance) noexcept;

  /// Magnitude of a CN(0, variance) draw, i.e. a Rayleigh variate with
  /// E[r^2] = variance. Cheaper than complex_normal when phase is unused.
  double rayleigh_magnitude(double variance) noexcept;

  std::uint64_t seed() const noexcept { return seed_; }

 private:
  std::uint64_t seed_;
  std::array<std::uint64_t, 4> state_{};
};

}  // namespace spzf

#endif  // SPZF_RNG_HPP
