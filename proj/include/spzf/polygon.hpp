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

// Single-vector phase-only zero forcing: find phases phi_i such that
// sum_i h_i exp(j phi_i) = 0. Geometrically this rotates the vectors h_i so
// they close a polygon. That is possible iff the largest magnitude is at most
// the sum of the others (the polygon inequality).

#ifndef SPZF_POLYGON_HPP
#define SPZF_POLYGON_HPP

#include <array>
#include <cstddef>
#include <span>
#include <vector>

#include "spzf/channel.hpp"

namespace spzf {

/// Phases in radians, each in [0, 2*pi).
using PhaseVector = std::vector<double>;

/// Relative tolerance used when judging whether two magnitudes are equal
/// (length-2 sets).
inline constexpr double kPairEqualityTolerance = 1e-12;

/// Closure tolerance: |sum h_i e^{j phi_i}| <= kClosureTolerance * sum |h_i|.
inline constexpr double kClosureTolerance = 1e-9;

/// max(mags) minus the sum of the remaining magnitudes. Non-positive iff the
/// polygon inequality holds. Throws std::invalid_argument on empty input.
double polygon_distance(std::span<const double> mags);

/// polygon_distance(mags) <= 0. A zero distance (flat polygon) is feasible.
bool satisfies_polygon_inequality(std::span<const double> mags);

struct ThreePartition {
  /// Element indices per group, ordered so that sums[0] >= sums[1] >= sums[2].
  std::array<std::vector<std::size_t>, 3> groups;
  std::array<double, 3> sums{};
};

/// Largest-first greedy split into three groups: each magnitude, in
/// descending order, joins the group with the smallest running sum. When the
/// polygon inequality holds, the group sums satisfy the triangle inequality.
///
/// Throws std::invalid_argument if fewer than 3 magnitudes are given and
/// InfeasibleSetError if the polygon inequality fails.
ThreePartition greedy_three_partition(std::span<const double> mags);

/// Phases that zero-force h: |sum_i h_i e^{j phi_i}| is within
/// kClosureTolerance of sum |h_i|.
///
/// Elements are grouped with greedy_three_partition, each group is aligned
/// to a common direction, and the three group sums are closed as a triangle
/// via the law of cosines. The first (largest) group points along angle 0.
/// Length-2 inputs are solved by anti-phase when the magnitudes agree to
/// kPairEqualityTolerance.
///
/// Throws std::invalid_argument if h has fewer than 2 entries and
/// InfeasibleSetError if no solution exists.
PhaseVector polygon_solver(std::span<const Complex> h);

/// |sum_i h_i e^{j phi_i}|.
double closure_residual(std::span<const Complex> h,
                        std::span<const double> phases);

/// Maps an angle into [0, 2*pi).
double wrap_phase(double angle);

}  // namespace spzf

#endif  // SPZF_POLYGON_HPP
