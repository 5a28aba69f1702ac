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

#include "spzf/rng.hpp"

#include <bit>
#include <cmath>
#include <numbers>

namespace spzf {

namespace {
__extension__ using u128 = unsigned __int128;
}  // namespace

Rng::Rng(std::uint64_t seed) noexcept : seed_(seed) {
  std::uint64_t x = seed;
  for (auto& s : state_) {
    x = splitmix64(x);
    s = x;
  }
  // xoshiro must not start from the all-zero state.
  if ((state_[0] | state_[1] | state_[2] | state_[3]) == 0) state_[0] = 1;
}

Rng Rng::stream(std::uint64_t master, std::uint64_t trial,
                std::uint64_t role) noexcept {
  std::uint64_t s = splitmix64(master);
  s = splitmix64(s ^ (trial * 0xD1B54A32D192ED03ULL));
  s = splitmix64(s ^ (role * 0xAEF17502108EF2D9ULL + 0x632BE59BD9B4E019ULL));
  return Rng(s);
}

Rng::result_type Rng::operator()() noexcept {
  const std::uint64_t result = std::rotl(state_[1] * 5, 7) * 9;
  const std::uint64_t t = state_[1] << 17;
  state_[2] ^= state_[0];
  state_[3] ^= state_[1];
  state_[1] ^= state_[2];
  state_[0] ^= state_[3];
  state_[2] ^= t;
  state_[3] = std::rotl(state_[3], 45);
  return result;
}

double Rng::uniform() noexcept {
  return static_cast<double>((*this)() >> 11) * 0x1.0p-53;
}

std::size_t Rng::below(std::size_t bound) noexcept {
  // Lemire's nearly-divisionless method.
  const auto range = static_cast<std::uint64_t>(bound);
  u128 product =
      static_cast<u128>((*this)()) * range;
  auto low = static_cast<std::uint64_t>(product);
  if (low < range) {
    const std::uint64_t threshold = (0 - range) % range;
    while (low < threshold) {
      product = static_cast<u128>((*this)()) * range;
      low = static_cast<std::uint64_t>(product);
    }
  }
  return static_cast<std::size_t>(product >> 64);
}

double Rng::angle() noexcept { return 2.0 * std::numbers::pi * uniform(); }

double Rng::normal() noexcept {
  const double radius = std::sqrt(-2.0 * std::log(uniform_open_low()));
  return radius * std::cos(angle());
}

std::complex<double> Rng::complex_normal(double variance) noexcept {
  // |h|^2 ~ Exp(variance) and arg(h) ~ U[0, 2pi) independently.
  const double radius = rayleigh_magnitude(variance);
  return std::polar(radius, angle());
}

double Rng::rayleigh_magnitude(double variance) noexcept {
  return std::sqrt(-variance * std::log(uniform_open_low()));
}

}  // namespace spzf
