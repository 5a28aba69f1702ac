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

// Successive partition zero-forcing (SPZF).
//
// Stage k partitions user k's current reduced channel into sets and zero-forces
// each set with polygon_solver. It then collapses every later user's vector
// to one entry per set (the reduced channel). The last user's reduced vector
// is zero-forced as a whole. The resulting unit-modulus w is the product of
// the stage rotations, so it nulls every user at once.

#ifndef SPZF_SPZF_HPP
#define SPZF_SPZF_HPP

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "spzf/channel.hpp"
#include "spzf/partition.hpp"
#include "spzf/polygon.hpp"

namespace spzf {

/// Reduced channel y, one entry per partition set.
using ReducedChannel = std::vector<Complex>;

enum class Outcome {
  kSuccess,
  kE1Failure,  // a partition set of some stage violates the polygon inequality
  kE2Failure,  // the final reduced vector violates the polygon inequality
};

std::string_view to_string(Outcome outcome);

struct OutageReport {
  Outcome outcome = Outcome::kSuccess;
  /// 1-based stage that failed (1 for E1 with K = 2, K for E2).
  std::optional<std::size_t> failing_stage;
  /// 0-based set within the failing stage, for E1 failures.
  std::optional<std::size_t> failing_set;
};

struct SpzfSolution {
  std::vector<Complex> w;                  // |w_i| = 1
  std::vector<PhaseVector> stage_phases;   // one per stage, last is the final solve
  std::vector<Partition> stage_partitions; // last is the trivial one-set partition
  std::vector<double> residuals;           // relative, one per user
};

struct SpzfResult {
  OutageReport report;
  std::optional<SpzfSolution> solution;

  bool ok() const { return report.outcome == Outcome::kSuccess; }
};

/// y_l = sum_{i in set l} h2_i exp(j phi1_i).
/// Throws DimensionMismatch if the lengths do not agree.
ReducedChannel reduced_channel(std::span<const Complex> h2, const Partition& part,
                               std::span<const double> phases1);

/// Phases zero-forcing every set of h under `part`. Sets with distance <= 0
/// are solved independently. Throws InfeasibleSetError otherwise.
PhaseVector solve_partition_sets(std::span<const Complex> h, const Partition& part);

/// w_i = exp(j * sum over stages of the phase of i's nested group).
/// stage_partitions[k] maps stage-k elements to stage-(k+1) groups and
/// stage_phases[k] has one phase per stage-k element.
/// Throws DimensionMismatch if the chain does not line up.
std::vector<Complex> compose_beamformer(std::span<const Partition> stage_partitions,
                                        std::span<const PhaseVector> stage_phases);

/// Relative residuals |h_k^T w| / sum_i |h_ki| per user (0 for an all-zero h_k).
std::vector<double> verify_zero_forcing(std::span<const Complex> w,
                                        std::span<const ChannelVector> channels);

/// Two-user SPZF with a given partition of h1. Outage is classified by the
/// sign of the polygon distance, not by solver behaviour.
SpzfResult spzf_two_user(std::span<const Complex> h1, std::span<const Complex> h2,
                         const Partition& part);

/// Picks the partition for stage k from user k's current reduced vector.
/// Arguments: stage index (0-based), reduced vector, requested set count.
using StagePartitioner =
    std::function<Partition(std::size_t, std::span<const Complex>, std::size_t)>;

/// General-K SPZF. set_counts holds m_2..m_K. With m_1 = N the chain must
/// satisfy 3 <= m_{k+1} <= m_k / 3 and N >= 3^K. Throws std::invalid_argument
/// otherwise.
SpzfResult spzf_general(std::span<const ChannelVector> channels,
                        std::span<const std::size_t> set_counts,
                        const StagePartitioner& partitioner);

/// General-K SPZF with explicit partitions, one per non-final stage.
SpzfResult spzf_general(std::span<const ChannelVector> channels,
                        std::span<const Partition> stage_partitions);

/// General-K SPZF that partitions each stage with `algo`.
SpzfResult spzf_general(std::span<const ChannelVector> channels,
                        std::span<const std::size_t> set_counts,
                        PartitionAlgorithm algo, Rng& rng);

/// Valid m for K = 2: 3 <= m <= floor(n / 3). Empty when n < 9.
std::vector<std::size_t> feasible_m_range(std::size_t n);

/// All chains (m_1 = n, m_2, ..., m_k) with 3 <= m_{j+1} <= m_j / 3.
std::vector<std::vector<std::size_t>> feasible_m_chains(std::size_t n, std::size_t k);

/// Throws std::invalid_argument unless (n, set_counts) satisfy the chain rule.
void validate_m_chain(std::size_t n, std::span<const std::size_t> set_counts);

}  // namespace spzf

#endif  // SPZF_SPZF_HPP
