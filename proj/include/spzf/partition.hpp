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

// Channel partitioning. A partition assigns each of N channel elements to
// one of m disjoint sets. The optimizers here minimize the pseudo-loss,
// the largest per-set polygon distance. A set with positive distance cannot
// be zero-forced on its own.

#ifndef SPZF_PARTITION_HPP
#define SPZF_PARTITION_HPP

#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include "spzf/channel.hpp"
#include "spzf/rng.hpp"

namespace spzf {

/// Assignment of N elements to m sets. Labels are 0-based internally and
/// printed 1-based. Every set is non-empty.
class Partition {
 public:
  Partition() = default;

  /// Validates labels (all < set_count, every set used).
  /// Throws std::invalid_argument otherwise.
  Partition(std::vector<std::size_t> labels, std::size_t set_count);

  /// Every element in set 0 (the all-ones row B_K of the final stage).
  static Partition trivial(std::size_t n);

  /// Element i in set i.
  static Partition identity(std::size_t n);

  std::size_t size() const { return labels_.size(); }
  std::size_t set_count() const { return set_count_; }
  std::size_t label(std::size_t i) const { return labels_[i]; }
  std::span<const std::size_t> labels() const { return labels_; }

  /// Element indices of set l in ascending order.
  std::vector<std::size_t> members(std::size_t l) const;
  std::vector<std::vector<std::size_t>> sets() const;
  std::vector<std::size_t> set_sizes() const;

  /// True if every set has exactly size() / set_count() elements.
  bool is_fixed_cardinality() const;

  friend bool operator==(const Partition&, const Partition&) = default;

 private:
  std::vector<std::size_t> labels_;
  std::size_t set_count_ = 0;
};

/// m x N binary membership matrix, b(l, i) = 1 iff element i is in set l.
class PartitionMatrix {
 public:
  PartitionMatrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), data_(rows * cols, 0) {}

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  std::uint8_t operator()(std::size_t l, std::size_t i) const {
    return data_[l * cols_ + i];
  }
  std::uint8_t& operator()(std::size_t l, std::size_t i) {
    return data_[l * cols_ + i];
  }

 private:
  std::size_t rows_;
  std::size_t cols_;
  std::vector<std::uint8_t> data_;
};

PartitionMatrix partition_matrix(const Partition& part);

// --- objectives -------------------------------------------------------------

/// Polygon distance of set l. Throws std::invalid_argument for l out of range.
double set_distance(std::span<const double> mags, const Partition& part,
                    std::size_t l);
double set_distance(std::span<const Complex> h, const Partition& part,
                    std::size_t l);

/// max over sets of set_distance.
double pseudo_loss(std::span<const double> mags, const Partition& part);
double pseudo_loss(std::span<const Complex> h, const Partition& part);

/// Heaviside image of the pseudo-loss: 1 iff pseudo_loss > 0.
int loss(std::span<const double> mags, const Partition& part);
int loss(std::span<const Complex> h, const Partition& part);

/// H(x) = 1[x > 0].
constexpr int heaviside(double x) { return x > 0.0 ? 1 : 0; }

// --- random partition -------------------------------------------------------

enum class Cardinality {
  /// Each element independently uniform over the m sets. Sets left empty are
  /// refilled by moving a random element out of a set with >= 2 elements.
  kMultinomial,
  /// Random permutation cut into blocks of floor(N/m) or ceil(N/m). Equals
  /// kFixed whenever m divides N.
  kBalanced,
  /// Random permutation cut into m blocks of exactly N/m. Requires m | N.
  kFixed,
};

/// Throws std::invalid_argument when m == 0, m > n, or kFixed with m not
/// dividing n.
Partition random_partition(std::size_t n, std::size_t m, Rng& rng,
                           Cardinality mode = Cardinality::kBalanced);

// --- iterative partition ----------------------------------------------------

struct IterConfig {
  int max_epochs = 50;
};

struct IterResult {
  Partition partition;
  /// Pseudo-loss before the first epoch and after each epoch.
  std::vector<double> trace;
  int epochs = 0;
};

/// Local search that repairs failing sets by moving one donor element into
/// them. Starts from random_partition(n, m, rng) (balanced).
IterResult iterative_partition(std::span<const double> mags, std::size_t m,
                               const IterConfig& cfg, Rng& rng);

/// Same search from an explicit starting partition.
IterResult iterative_partition_from(std::span<const double> mags,
                                    Partition start, const IterConfig& cfg);

/// Fixed-cardinality variant: every move swaps the donor with the smallest
/// element of the failing set, so set sizes never change. Starts from
/// random_partition(n, m, rng, Cardinality::kFixed); requires m | n.
IterResult iterative_partition_fc(std::span<const double> mags, std::size_t m,
                                  const IterConfig& cfg, Rng& rng);

IterResult iterative_partition_fc_from(std::span<const double> mags,
                                       Partition start, const IterConfig& cfg);

// --- genetic algorithm ------------------------------------------------------

struct GaConfig {
  std::size_t population = 0;      // 0 means 10 * N
  std::size_t elites = 25;
  double crossover_rate = 0.85;
  double mutation_rate = 0.10;     // per gene
  int max_generations = 200;
  int stall_generations = 30;

  /// Defaults for an N-element problem: population 10N and elites capped
  /// below the population.
  static GaConfig for_size(std::size_t n);
};

struct GaResult {
  Partition partition;
  /// Best pseudo-loss in the population at each generation (generation 0 is
  /// the random initial population).
  std::vector<double> best_trace;
  int generations = 0;
};

/// Genetic search over chromosomes x in {0..m-1}^N. It uses binary
/// tournament selection, single-point crossover, per-gene mutation to a
/// different label, and elitism. Searches all partitions, so the result need
/// not be fixed-cardinality.
GaResult genetic_partition(std::span<const double> mags, std::size_t m,
                           const GaConfig& cfg, Rng& rng);

// --- algorithm selection ----------------------------------------------------

enum class PartitionAlgorithm {
  kRandom,             // balanced random
  kRandomFc,           // strict fixed-cardinality random
  kRandomMultinomial,  // independent uniform labels
  kIterative,
  kIterativeFc,
  kGenetic,
};

std::string_view to_string(PartitionAlgorithm algo);
PartitionAlgorithm parse_partition_algorithm(std::string_view text);
std::vector<PartitionAlgorithm> all_partition_algorithms();

/// True if the algorithm requires m | n.
bool requires_divisible(PartitionAlgorithm algo);

/// True if the algorithm is usable for (n, m).
bool supports(PartitionAlgorithm algo, std::size_t n, std::size_t m);

/// Runs `algo` with default configs and returns the partition.
Partition run_partition(PartitionAlgorithm algo, std::span<const double> mags,
                        std::size_t m, Rng& rng);

}  // namespace spzf

#endif  // SPZF_PARTITION_HPP
