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

#include "spzf/polygon.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <stdexcept>

#include "spzf/error.hpp"

namespace spzf {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Closes s0 + s1 e^{j t1} + s2 e^{j t2} = 0 with t0 = 0. Requires the
// triangle inequality on (s0, s1, s2).
std::array<double, 3> triangle_angles(const std::array<double, 3>& s) {
  std::array<double, 3> theta{0.0, std::numbers::pi, 0.0};
  const double denom = 2.0 * s[0] * s[1];
  if (denom > 0.0) {
    const double c =
        std::clamp((s[2] * s[2] - s[0] * s[0] - s[1] * s[1]) / denom, -1.0, 1.0);
    theta[1] = std::acos(c);
  }
  const Complex partial = s[0] + std::polar(s[1], theta[1]);
  theta[2] = std::abs(partial) > 0.0 ? std::arg(-partial) : 0.0;
  return theta;
}

}  // namespace

double wrap_phase(double angle) {
  double r = std::fmod(angle, kTwoPi);
  if (r < 0.0) r += kTwoPi;
  if (r >= kTwoPi) r = 0.0;
  return r;
}

double polygon_distance(std::span<const double> mags) {
  if (mags.empty()) {
    throw std::invalid_argument("polygon_distance: empty magnitude list");
  }
  // Same arithmetic as the one-pass per-set loops in partitioning, so a set
  // gets the same distance bit for bit wherever it is evaluated.
  double largest = mags.front();
  double total = 0.0;
  for (const double x : mags) {
    largest = std::max(largest, x);
    total += x;
  }
  return largest - (total - largest);
}

bool satisfies_polygon_inequality(std::span<const double> mags) {
  return polygon_distance(mags) <= 0.0;
}

ThreePartition greedy_three_partition(std::span<const double> mags) {
  if (mags.size() < 3) {
    throw std::invalid_argument("greedy_three_partition: need at least 3 magnitudes");
  }
  if (!satisfies_polygon_inequality(mags)) {
    throw InfeasibleSetError("greedy_three_partition: polygon inequality fails");
  }

  std::vector<std::size_t> order(mags.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return mags[a] > mags[b]; });

  std::array<std::vector<std::size_t>, 3> groups;
  std::array<double, 3> sums{};
  std::array<bool, 3> used{};
  for (const std::size_t i : order) {
    // Empty groups first so the three largest land in distinct groups even
    // when some magnitudes are zero.
    std::size_t target = 0;
    for (std::size_t g = 1; g < 3; ++g) {
      if (used[g] != used[target] ? !used[g] : sums[g] < sums[target]) {
        target = g;
      }
    }
    groups[target].push_back(i);
    sums[target] += mags[i];
    used[target] = true;
  }

  std::array<std::size_t, 3> rank{0, 1, 2};
  std::stable_sort(rank.begin(), rank.end(),
                   [&](std::size_t a, std::size_t b) { return sums[a] > sums[b]; });
  ThreePartition out;
  for (std::size_t g = 0; g < 3; ++g) {
    out.groups[g] = std::move(groups[rank[g]]);
    out.sums[g] = sums[rank[g]];
  }
  return out;
}

PhaseVector polygon_solver(std::span<const Complex> h) {
  if (h.size() < 2) {
    throw std::invalid_argument("polygon_solver: need at least 2 entries");
  }
  const std::vector<double> mags = magnitudes(h);
  PhaseVector phases(h.size());

  if (h.size() == 2) {
    const double scale = std::max(mags[0], mags[1]);
    if (std::abs(mags[0] - mags[1]) > kPairEqualityTolerance * scale) {
      throw InfeasibleSetError("polygon_solver: unequal pair cannot cancel");
    }
    phases[0] = wrap_phase(-std::arg(h[0]));
    phases[1] = wrap_phase(std::numbers::pi - std::arg(h[1]));
    return phases;
  }

  const ThreePartition split = greedy_three_partition(mags);
  const std::array<double, 3> theta = triangle_angles(split.sums);
  for (std::size_t g = 0; g < 3; ++g) {
    for (const std::size_t i : split.groups[g]) {
      phases[i] = wrap_phase(theta[g] - std::arg(h[i]));
    }
  }
  return phases;
}

double closure_residual(std::span<const Complex> h,
                        std::span<const double> phases) {
  if (h.size() != phases.size()) {
    throw DimensionMismatch("closure_residual: length mismatch");
  }
  Complex acc{};
  for (std::size_t i = 0; i < h.size(); ++i) acc += h[i] * std::polar(1.0, phases[i]);
  return std::abs(acc);
}

}  // namespace spzf
