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

#include "spzf/spzf.hpp"

#include <cmath>
#include <stdexcept>

#include "spzf/error.hpp"

namespace spzf {

std::string_view to_string(Outcome outcome) {
  switch (outcome) {
    case Outcome::kSuccess: return "success";
    case Outcome::kE1Failure: return "e1-failure";
    case Outcome::kE2Failure: return "e2-failure";
  }
  return "unknown";
}

ReducedChannel reduced_channel(std::span<const Complex> h2, const Partition& part,
                               std::span<const double> phases1) {
  if (h2.size() != part.size() || phases1.size() != part.size()) {
    throw DimensionMismatch("reduced_channel: h2, partition and phases differ in length");
  }
  ReducedChannel y(part.set_count());
  for (std::size_t i = 0; i < h2.size(); ++i) {
    y[part.label(i)] += h2[i] * std::polar(1.0, phases1[i]);
  }
  return y;
}

PhaseVector solve_partition_sets(std::span<const Complex> h, const Partition& part) {
  if (h.size() != part.size()) {
    throw DimensionMismatch("solve_partition_sets: partition does not cover h");
  }
  PhaseVector phases(h.size(), 0.0);
  for (const auto& members : part.sets()) {
    if (members.size() == 1) {
      // A singleton closes only if it is exactly zero.
      if (h[members[0]] != Complex{}) {
        throw InfeasibleSetError("solve_partition_sets: non-zero singleton set");
      }
      continue;
    }
    std::vector<Complex> subset;
    subset.reserve(members.size());
    for (const std::size_t i : members) subset.push_back(h[i]);
    const PhaseVector local = polygon_solver(subset);
    for (std::size_t k = 0; k < members.size(); ++k) phases[members[k]] = local[k];
  }
  return phases;
}

std::vector<Complex> compose_beamformer(std::span<const Partition> stage_partitions,
                                        std::span<const PhaseVector> stage_phases) {
  if (stage_partitions.empty() || stage_partitions.size() != stage_phases.size()) {
    throw DimensionMismatch("compose_beamformer: need one phase vector per stage");
  }
  for (std::size_t k = 0; k < stage_partitions.size(); ++k) {
    if (stage_phases[k].size() != stage_partitions[k].size()) {
      throw DimensionMismatch("compose_beamformer: phase length differs from stage size");
    }
    if (k + 1 < stage_partitions.size() &&
        stage_partitions[k + 1].size() != stage_partitions[k].set_count()) {
      throw DimensionMismatch("compose_beamformer: stage set count does not match next stage");
    }
  }

  const std::size_t n = stage_partitions.front().size();
  std::vector<Complex> w(n);
  for (std::size_t i = 0; i < n; ++i) {
    double total = 0.0;
    std::size_t group = i;
    for (std::size_t k = 0; k < stage_partitions.size(); ++k) {
      total += stage_phases[k][group];
      group = stage_partitions[k].label(group);
    }
    w[i] = std::polar(1.0, total);
  }
  return w;
}

std::vector<double> verify_zero_forcing(std::span<const Complex> w,
                                        std::span<const ChannelVector> channels) {
  std::vector<double> residuals;
  residuals.reserve(channels.size());
  for (const auto& h : channels) {
    if (h.size() != w.size()) {
      throw DimensionMismatch("verify_zero_forcing: channel and beamformer lengths differ");
    }
    Complex inner{};
    double scale = 0.0;
    for (std::size_t i = 0; i < h.size(); ++i) {
      inner += h[i] * w[i];
      scale += std::abs(h[i]);
    }
    residuals.push_back(scale > 0.0 ? std::abs(inner) / scale : 0.0);
  }
  return residuals;
}

namespace {

using NextPartition = std::function<Partition(std::size_t, std::span<const Complex>)>;

SpzfResult successive_zero_forcing(std::span<const ChannelVector> channels,
                                   const NextPartition& next_partition) {
  if (channels.empty()) throw std::invalid_argument("spzf: need at least one channel");
  const std::size_t n = channels.front().size();
  for (const auto& h : channels) {
    if (h.size() != n) throw DimensionMismatch("spzf: channels differ in length");
  }

  const std::size_t users = channels.size();
  std::vector<ChannelVector> current(channels.begin(), channels.end());
  SpzfSolution solution;
  SpzfResult result;

  for (std::size_t k = 0; k + 1 < users; ++k) {
    Partition part = next_partition(k, current[k]);
    if (part.size() != current[k].size()) {
      throw DimensionMismatch("spzf: stage partition does not cover the reduced channel");
    }
    const std::vector<double> mags = magnitudes(current[k]);
    for (std::size_t l = 0; l < part.set_count(); ++l) {
      if (set_distance(mags, part, l) > 0.0) {
        result.report = {Outcome::kE1Failure, k + 1, l};
        return result;
      }
    }
    PhaseVector phases = solve_partition_sets(current[k], part);
    for (std::size_t j = k + 1; j < users; ++j) {
      current[j] = reduced_channel(current[j], part, phases);
    }
    solution.stage_partitions.push_back(std::move(part));
    solution.stage_phases.push_back(std::move(phases));
  }

  const ChannelVector& last = current.back();
  const std::vector<double> last_mags = magnitudes(last);
  if (polygon_distance(last_mags) > 0.0) {
    result.report = {Outcome::kE2Failure, users, std::nullopt};
    return result;
  }
  const Partition final_stage = Partition::trivial(last.size());
  solution.stage_phases.push_back(solve_partition_sets(last, final_stage));
  solution.stage_partitions.push_back(final_stage);

  solution.w = compose_beamformer(solution.stage_partitions, solution.stage_phases);
  solution.residuals = verify_zero_forcing(solution.w, channels);
  result.report = {Outcome::kSuccess, std::nullopt, std::nullopt};
  result.solution = std::move(solution);
  return result;
}

}  // namespace

SpzfResult spzf_two_user(std::span<const Complex> h1, std::span<const Complex> h2,
                         const Partition& part) {
  if (h1.size() != h2.size()) throw DimensionMismatch("spzf_two_user: h1 and h2 differ in length");
  if (part.size() != h1.size()) throw DimensionMismatch("spzf_two_user: partition does not cover h1");
  const std::vector<ChannelVector> channels{ChannelVector(h1.begin(), h1.end()),
                                            ChannelVector(h2.begin(), h2.end())};
  return successive_zero_forcing(
      channels, [&](std::size_t, std::span<const Complex>) { return part; });
}

void validate_m_chain(std::size_t n, std::span<const std::size_t> set_counts) {
  std::size_t min_n = 1;
  for (std::size_t k = 0; k <= set_counts.size(); ++k) min_n *= 3;
  if (n < min_n) {
    throw std::invalid_argument("spzf_general: need N >= 3^K antennas");
  }
  std::size_t previous = n;
  for (const std::size_t m : set_counts) {
    if (m < 3 || 3 * m > previous) {
      throw std::invalid_argument("spzf_general: set counts must satisfy 3 <= m_{k+1} <= m_k / 3");
    }
    previous = m;
  }
}

SpzfResult spzf_general(std::span<const ChannelVector> channels,
                        std::span<const std::size_t> set_counts,
                        const StagePartitioner& partitioner) {
  if (channels.size() != set_counts.size() + 1) {
    throw std::invalid_argument("spzf_general: need K - 1 set counts for K channels");
  }
  validate_m_chain(channels.front().size(), set_counts);
  return successive_zero_forcing(
      channels, [&](std::size_t k, std::span<const Complex> reduced) {
        Partition part = partitioner(k, reduced, set_counts[k]);
        if (part.set_count() != set_counts[k]) {
          throw DimensionMismatch("spzf_general: partitioner returned the wrong set count");
        }
        return part;
      });
}

SpzfResult spzf_general(std::span<const ChannelVector> channels,
                        std::span<const Partition> stage_partitions) {
  std::vector<std::size_t> counts;
  for (const auto& p : stage_partitions) counts.push_back(p.set_count());
  return spzf_general(channels, counts,
                      [&](std::size_t k, std::span<const Complex>, std::size_t) {
                        return stage_partitions[k];
                      });
}

SpzfResult spzf_general(std::span<const ChannelVector> channels,
                        std::span<const std::size_t> set_counts,
                        PartitionAlgorithm algo, Rng& rng) {
  return spzf_general(channels, set_counts,
                      [&](std::size_t, std::span<const Complex> reduced, std::size_t m) {
                        const auto mags = magnitudes(reduced);
                        return run_partition(algo, mags, m, rng);
                      });
}

std::vector<std::size_t> feasible_m_range(std::size_t n) {
  std::vector<std::size_t> out;
  for (std::size_t m = 3; 3 * m <= n; ++m) out.push_back(m);
  return out;
}

namespace {

void extend_chains(std::vector<std::size_t>& chain, std::size_t remaining,
                   std::vector<std::vector<std::size_t>>& out) {
  if (remaining == 0) {
    out.push_back(chain);
    return;
  }
  for (std::size_t m = 3; 3 * m <= chain.back(); ++m) {
    chain.push_back(m);
    extend_chains(chain, remaining - 1, out);
    chain.pop_back();
  }
}

}  // namespace

std::vector<std::vector<std::size_t>> feasible_m_chains(std::size_t n, std::size_t k) {
  std::vector<std::vector<std::size_t>> out;
  if (k == 0 || n < 3) return out;
  std::vector<std::size_t> chain{n};
  extend_chains(chain, k - 1, out);
  return out;
}

}  // namespace spzf
