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

#include "spzf/partition.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <string>

#include "spzf/error.hpp"
#include "spzf/polygon.hpp"

namespace spzf {

Partition::Partition(std::vector<std::size_t> labels, std::size_t set_count)
    : labels_(std::move(labels)), set_count_(set_count) {
  if (set_count_ == 0) throw std::invalid_argument("Partition: set count must be >= 1");
  std::vector<bool> used(set_count_, false);
  for (const std::size_t l : labels_) {
    if (l >= set_count_) throw std::invalid_argument("Partition: label out of range");
    used[l] = true;
  }
  if (std::find(used.begin(), used.end(), false) != used.end()) {
    throw std::invalid_argument("Partition: every set must be non-empty");
  }
}

Partition Partition::trivial(std::size_t n) {
  return Partition(std::vector<std::size_t>(n, 0), 1);
}

Partition Partition::identity(std::size_t n) {
  std::vector<std::size_t> labels(n);
  std::iota(labels.begin(), labels.end(), std::size_t{0});
  return Partition(std::move(labels), n);
}

std::vector<std::size_t> Partition::members(std::size_t l) const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < labels_.size(); ++i) {
    if (labels_[i] == l) out.push_back(i);
  }
  return out;
}

std::vector<std::vector<std::size_t>> Partition::sets() const {
  std::vector<std::vector<std::size_t>> out(set_count_);
  for (std::size_t i = 0; i < labels_.size(); ++i) out[labels_[i]].push_back(i);
  return out;
}

std::vector<std::size_t> Partition::set_sizes() const {
  std::vector<std::size_t> sizes(set_count_, 0);
  for (const std::size_t l : labels_) ++sizes[l];
  return sizes;
}

bool Partition::is_fixed_cardinality() const {
  if (set_count_ == 0 || labels_.size() % set_count_ != 0) return false;
  const std::size_t k = labels_.size() / set_count_;
  const auto sizes = set_sizes();
  return std::all_of(sizes.begin(), sizes.end(),
                     [k](std::size_t s) { return s == k; });
}

PartitionMatrix partition_matrix(const Partition& part) {
  PartitionMatrix b(part.set_count(), part.size());
  for (std::size_t i = 0; i < part.size(); ++i) b(part.label(i), i) = 1;
  return b;
}

namespace {

void check_sizes(std::span<const double> mags, const Partition& part) {
  if (mags.size() != part.size()) {
    throw DimensionMismatch("partition does not cover the channel");
  }
}

}  // namespace

double set_distance(std::span<const double> mags, const Partition& part,
                    std::size_t l) {
  check_sizes(mags, part);
  if (l >= part.set_count()) throw std::invalid_argument("set_distance: set index out of range");
  std::vector<double> subset;
  for (std::size_t i = 0; i < mags.size(); ++i) {
    if (part.label(i) == l) subset.push_back(mags[i]);
  }
  if (subset.empty()) throw std::invalid_argument("set_distance: empty set");
  return polygon_distance(subset);
}

double set_distance(std::span<const Complex> h, const Partition& part,
                    std::size_t l) {
  const auto mags = magnitudes(h);
  return set_distance(mags, part, l);
}

double pseudo_loss(std::span<const double> mags, const Partition& part) {
  check_sizes(mags, part);
  // One pass: per-set max and sum, distance = max - (sum - max).
  const std::size_t m = part.set_count();
  std::vector<double> largest(m, -1.0);
  std::vector<double> total(m, 0.0);
  for (std::size_t i = 0; i < mags.size(); ++i) {
    const std::size_t l = part.label(i);
    largest[l] = std::max(largest[l], mags[i]);
    total[l] += mags[i];
  }
  double worst = -std::numeric_limits<double>::infinity();
  for (std::size_t l = 0; l < m; ++l) {
    worst = std::max(worst, largest[l] - (total[l] - largest[l]));
  }
  return worst;
}

double pseudo_loss(std::span<const Complex> h, const Partition& part) {
  const auto mags = magnitudes(h);
  return pseudo_loss(mags, part);
}

int loss(std::span<const double> mags, const Partition& part) {
  return heaviside(pseudo_loss(mags, part));
}

int loss(std::span<const Complex> h, const Partition& part) {
  return heaviside(pseudo_loss(h, part));
}

Partition random_partition(std::size_t n, std::size_t m, Rng& rng,
                           Cardinality mode) {
  if (m == 0) throw std::invalid_argument("random_partition: m must be >= 1");
  if (m > n) throw std::invalid_argument("random_partition: m exceeds n");
  if (mode == Cardinality::kFixed && n % m != 0) {
    throw std::invalid_argument("random_partition: fixed cardinality needs m | n");
  }

  std::vector<std::size_t> labels(n);
  if (mode == Cardinality::kMultinomial) {
    std::vector<std::size_t> sizes(m, 0);
    for (auto& l : labels) {
      l = rng.below(m);
      ++sizes[l];
    }
    for (std::size_t l = 0; l < m; ++l) {
      if (sizes[l] != 0) continue;
      std::size_t i = rng.below(n);
      while (sizes[labels[i]] < 2) i = rng.below(n);
      --sizes[labels[i]];
      labels[i] = l;
      ++sizes[l];
    }
    return Partition(std::move(labels), m);
  }

  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), std::size_t{0});
  for (std::size_t i = n; i > 1; --i) {
    std::swap(perm[i - 1], perm[rng.below(i)]);
  }
  const std::size_t base = n / m;
  const std::size_t extra = n % m;
  std::size_t pos = 0;
  for (std::size_t l = 0; l < m; ++l) {
    const std::size_t block = base + (l < extra ? 1 : 0);
    for (std::size_t k = 0; k < block; ++k) labels[perm[pos++]] = l;
  }
  return Partition(std::move(labels), m);
}

std::string_view to_string(PartitionAlgorithm algo) {
  switch (algo) {
    case PartitionAlgorithm::kRandom: return "random";
    case PartitionAlgorithm::kRandomFc: return "random-fc";
    case PartitionAlgorithm::kRandomMultinomial: return "random-multinomial";
    case PartitionAlgorithm::kIterative: return "iterative";
    case PartitionAlgorithm::kIterativeFc: return "iterative-fc";
    case PartitionAlgorithm::kGenetic: return "genetic";
  }
  return "unknown";
}

PartitionAlgorithm parse_partition_algorithm(std::string_view text) {
  for (const auto algo : all_partition_algorithms()) {
    if (to_string(algo) == text) return algo;
  }
  throw std::invalid_argument("unknown partition algorithm: " + std::string(text));
}

std::vector<PartitionAlgorithm> all_partition_algorithms() {
  return {PartitionAlgorithm::kRandom,       PartitionAlgorithm::kRandomFc,
          PartitionAlgorithm::kRandomMultinomial, PartitionAlgorithm::kIterative,
          PartitionAlgorithm::kIterativeFc,  PartitionAlgorithm::kGenetic};
}

bool requires_divisible(PartitionAlgorithm algo) {
  return algo == PartitionAlgorithm::kRandomFc ||
         algo == PartitionAlgorithm::kIterativeFc;
}

bool supports(PartitionAlgorithm algo, std::size_t n, std::size_t m) {
  if (m == 0 || m > n) return false;
  return !requires_divisible(algo) || n % m == 0;
}

Partition run_partition(PartitionAlgorithm algo, std::span<const double> mags,
                        std::size_t m, Rng& rng) {
  const std::size_t n = mags.size();
  switch (algo) {
    case PartitionAlgorithm::kRandom:
      return random_partition(n, m, rng, Cardinality::kBalanced);
    case PartitionAlgorithm::kRandomFc:
      return random_partition(n, m, rng, Cardinality::kFixed);
    case PartitionAlgorithm::kRandomMultinomial:
      return random_partition(n, m, rng, Cardinality::kMultinomial);
    case PartitionAlgorithm::kIterative:
      return iterative_partition(mags, m, IterConfig{}, rng).partition;
    case PartitionAlgorithm::kIterativeFc:
      return iterative_partition_fc(mags, m, IterConfig{}, rng).partition;
    case PartitionAlgorithm::kGenetic:
      return genetic_partition(mags, m, GaConfig::for_size(n), rng).partition;
  }
  throw std::invalid_argument("run_partition: unknown algorithm");
}

}  // namespace spzf
