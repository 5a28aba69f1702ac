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

// Iterative repair of failing partition sets.
//
// An epoch visits every set with positive polygon distance d, easiest
// (smallest d) first. For each one it scans donor elements h_i outside the
// set with |h_i| above a threshold, smallest donor first. It keeps (in a
// "pocket") the donor whose source set ends up with the lowest distance.
// The move is applied only if that distance is below d. Every accepted move
// leaves both touched sets below d, so the pseudo-loss never increases.

#include <algorithm>
#include <limits>
#include <numeric>
#include <optional>
#include <stdexcept>

#include "spzf/error.hpp"
#include "spzf/partition.hpp"

namespace spzf {

namespace {

constexpr std::size_t kNone = std::numeric_limits<std::size_t>::max();

class RepairState {
 public:
  RepairState(std::span<const double> mags, const Partition& start)
      : mags_(mags), labels_(start.labels().begin(), start.labels().end()),
        sets_(start.sets()) {}

  std::size_t set_count() const { return sets_.size(); }
  std::size_t label(std::size_t i) const { return labels_[i]; }
  std::size_t set_size(std::size_t l) const { return sets_[l].size(); }

  // Distance of set l with `skip` removed and `extra` added.
  double distance(std::size_t l, std::size_t skip = kNone,
                  std::size_t extra = kNone) const {
    double largest = 0.0;
    double total = 0.0;
    std::size_t count = 0;
    for (const std::size_t i : sets_[l]) {
      if (i == skip) continue;
      largest = std::max(largest, mags_[i]);
      total += mags_[i];
      ++count;
    }
    if (extra != kNone) {
      largest = std::max(largest, mags_[extra]);
      total += mags_[extra];
      ++count;
    }
    if (count == 0) return std::numeric_limits<double>::infinity();
    return largest - (total - largest);
  }

  double pseudo_loss() const {
    double worst = -std::numeric_limits<double>::infinity();
    for (std::size_t l = 0; l < sets_.size(); ++l) worst = std::max(worst, distance(l));
    return worst;
  }

  // Smallest-magnitude member of set l (lowest index on ties).
  std::size_t smallest_member(std::size_t l) const {
    std::size_t best = kNone;
    for (const std::size_t i : sets_[l]) {
      if (best == kNone || mags_[i] < mags_[best]) best = i;
    }
    return best;
  }

  void move(std::size_t i, std::size_t to) {
    auto& from = sets_[labels_[i]];
    from.erase(std::find(from.begin(), from.end(), i));
    auto& dest = sets_[to];
    dest.insert(std::lower_bound(dest.begin(), dest.end(), i), i);
    labels_[i] = to;
  }

  Partition partition() const { return Partition(labels_, sets_.size()); }

 private:
  std::span<const double> mags_;
  std::vector<std::size_t> labels_;
  std::vector<std::vector<std::size_t>> sets_;
};

// One pass over the failing sets. Returns true if any move was applied.
bool run_epoch(RepairState& state, std::span<const double> mags,
               std::span<const std::size_t> ascending, bool fixed_cardinality) {
  std::vector<std::pair<double, std::size_t>> failing;
  for (std::size_t l = 0; l < state.set_count(); ++l) {
    const double d = state.distance(l);
    if (d > 0.0) failing.emplace_back(d, l);
  }
  std::sort(failing.begin(), failing.end());

  bool moved = false;
  for (const auto& entry : failing) {
    const std::size_t target = entry.second;
    // Earlier moves in this epoch may already have changed the set.
    const double d = state.distance(target);
    if (!(d > 0.0)) continue;

    const std::size_t outgoing = fixed_cardinality ? state.smallest_member(target) : kNone;
    const double threshold = fixed_cardinality ? d + mags[outgoing] : d;

    double pocket_d = d;
    std::size_t pocket_i = kNone;
    auto first = std::upper_bound(
        ascending.begin(), ascending.end(), threshold,
        [&](double value, std::size_t i) { return value < mags[i]; });
    for (auto it = first; it != ascending.end(); ++it) {
      const std::size_t i = *it;
      const std::size_t source = state.label(i);
      if (source == target) continue;
      if (!fixed_cardinality && state.set_size(source) < 2) continue;

      const double receiver_after = state.distance(target, outgoing, i);
      if (!(receiver_after < d)) continue;
      const double source_after = state.distance(source, i, outgoing);
      if (source_after < pocket_d) {
        pocket_d = source_after;
        pocket_i = i;
        if (pocket_d < 0.0) break;
      }
    }

    if (pocket_i != kNone) {
      const std::size_t source = state.label(pocket_i);
      state.move(pocket_i, target);
      if (fixed_cardinality) state.move(outgoing, source);
      moved = true;
    }
  }
  return moved;
}

IterResult run_repair(std::span<const double> mags, Partition start,
                      const IterConfig& cfg, bool fixed_cardinality) {
  if (cfg.max_epochs < 1) throw std::invalid_argument("IterConfig: max_epochs must be >= 1");
  if (start.size() != mags.size()) {
    throw DimensionMismatch("iterative partition: start does not cover the channel");
  }

  std::vector<std::size_t> ascending(mags.size());
  std::iota(ascending.begin(), ascending.end(), std::size_t{0});
  std::stable_sort(ascending.begin(), ascending.end(),
                   [&](std::size_t a, std::size_t b) { return mags[a] < mags[b]; });

  RepairState state(mags, start);
  IterResult result;
  result.trace.push_back(state.pseudo_loss());
  while (result.trace.back() > 0.0 && result.epochs < cfg.max_epochs) {
    const bool moved = run_epoch(state, mags, ascending, fixed_cardinality);
    ++result.epochs;
    result.trace.push_back(state.pseudo_loss());
    if (!moved) break;
  }
  result.partition = state.partition();
  return result;
}

}  // namespace

IterResult iterative_partition_from(std::span<const double> mags, Partition start,
                                    const IterConfig& cfg) {
  return run_repair(mags, std::move(start), cfg, false);
}

IterResult iterative_partition(std::span<const double> mags, std::size_t m,
                               const IterConfig& cfg, Rng& rng) {
  Partition start = random_partition(mags.size(), m, rng, Cardinality::kBalanced);
  return run_repair(mags, std::move(start), cfg, false);
}

IterResult iterative_partition_fc_from(std::span<const double> mags,
                                       Partition start, const IterConfig& cfg) {
  return run_repair(mags, std::move(start), cfg, true);
}

IterResult iterative_partition_fc(std::span<const double> mags, std::size_t m,
                                  const IterConfig& cfg, Rng& rng) {
  if (m == 0 || mags.size() % m != 0) {
    throw std::invalid_argument("iterative_partition_fc: m must divide n");
  }
  Partition start = random_partition(mags.size(), m, rng, Cardinality::kFixed);
  return run_repair(mags, std::move(start), cfg, true);
}

}  // namespace spzf
