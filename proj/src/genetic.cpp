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

#include <algorithm>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "spzf/partition.hpp"

namespace spzf {

namespace {

using Chromosome = std::vector<std::size_t>;

constexpr double kInf = std::numeric_limits<double>::infinity();

// Pseudo-loss of a raw label vector; +inf if any set is empty.
double fitness(std::span<const double> mags, const Chromosome& x, std::size_t m,
               std::vector<double>& largest, std::vector<double>& total,
               std::vector<std::size_t>& count) {
  std::fill(largest.begin(), largest.end(), 0.0);
  std::fill(total.begin(), total.end(), 0.0);
  std::fill(count.begin(), count.end(), 0);
  for (std::size_t i = 0; i < x.size(); ++i) {
    largest[x[i]] = std::max(largest[x[i]], mags[i]);
    total[x[i]] += mags[i];
    ++count[x[i]];
  }
  double worst = -kInf;
  for (std::size_t l = 0; l < m; ++l) {
    if (count[l] == 0) return kInf;
    worst = std::max(worst, largest[l] - (total[l] - largest[l]));
  }
  return worst;
}

// Moves the smallest element of the largest set into each empty set.
void fill_empty_sets(std::span<const double> mags, Chromosome& x, std::size_t m) {
  for (std::size_t l = 0; l < m; ++l) {
    std::vector<std::size_t> sizes(m, 0);
    for (const std::size_t label : x) ++sizes[label];
    if (sizes[l] != 0) continue;
    const auto donor_set = static_cast<std::size_t>(
        std::max_element(sizes.begin(), sizes.end()) - sizes.begin());
    std::size_t pick = x.size();
    for (std::size_t i = 0; i < x.size(); ++i) {
      if (x[i] == donor_set && (pick == x.size() || mags[i] < mags[pick])) pick = i;
    }
    x[pick] = l;
  }
}

}  // namespace

GaConfig GaConfig::for_size(std::size_t n) {
  GaConfig cfg;
  cfg.population = 10 * n;
  cfg.elites = std::min<std::size_t>(25, cfg.population > 0 ? cfg.population - 1 : 0);
  return cfg;
}

GaResult genetic_partition(std::span<const double> mags, std::size_t m,
                           const GaConfig& config, Rng& rng) {
  const std::size_t n = mags.size();
  if (m == 0 || m > n) throw std::invalid_argument("genetic_partition: need 1 <= m <= n");
  GaConfig cfg = config;
  if (cfg.population == 0) cfg.population = 10 * n;
  if (cfg.population < 2 || cfg.elites >= cfg.population) {
    throw std::invalid_argument("genetic_partition: need 2 <= population and elites < population");
  }
  if (cfg.crossover_rate < 0.0 || cfg.crossover_rate > 1.0 ||
      cfg.mutation_rate < 0.0 || cfg.mutation_rate > 1.0) {
    throw std::invalid_argument("genetic_partition: rates must lie in [0, 1]");
  }
  if (cfg.max_generations < 0 || cfg.stall_generations < 1) {
    throw std::invalid_argument("genetic_partition: bad generation limits");
  }

  std::vector<double> largest(m), total(m);
  std::vector<std::size_t> count(m);
  auto evaluate = [&](const Chromosome& x) {
    return fitness(mags, x, m, largest, total, count);
  };

  std::vector<Chromosome> population(cfg.population, Chromosome(n));
  for (auto& x : population) {
    for (auto& gene : x) gene = rng.below(m);
  }
  std::vector<double> scores(cfg.population);
  std::vector<std::size_t> rank(cfg.population);

  auto score_and_rank = [&] {
    for (std::size_t p = 0; p < population.size(); ++p) scores[p] = evaluate(population[p]);
    std::iota(rank.begin(), rank.end(), std::size_t{0});
    std::stable_sort(rank.begin(), rank.end(),
                     [&](std::size_t a, std::size_t b) { return scores[a] < scores[b]; });
  };
  auto tournament = [&]() -> const Chromosome& {
    const std::size_t a = rng.below(population.size());
    const std::size_t b = rng.below(population.size());
    if (scores[b] < scores[a] || (scores[b] == scores[a] && b < a)) return population[b];
    return population[a];
  };
  auto mutate = [&](Chromosome& x) {
    if (m < 2) return;
    for (auto& gene : x) {
      if (rng.uniform() < cfg.mutation_rate) {
        // Uniform over the other m - 1 labels.
        const std::size_t shift = 1 + rng.below(m - 1);
        gene = (gene + shift) % m;
      }
    }
  };

  GaResult result;
  score_and_rank();
  result.best_trace.push_back(scores[rank[0]]);
  int stall = 0;

  while (result.best_trace.back() > 0.0 && result.generations < cfg.max_generations &&
         stall < cfg.stall_generations) {
    std::vector<Chromosome> next;
    next.reserve(cfg.population);
    for (std::size_t e = 0; e < cfg.elites; ++e) next.push_back(population[rank[e]]);

    while (next.size() < cfg.population) {
      Chromosome first = tournament();
      Chromosome second = tournament();
      if (n >= 2 && rng.uniform() < cfg.crossover_rate) {
        const std::size_t cut = 1 + rng.below(n - 1);  // o1 = p1[0:cut] + p2[cut:]
        for (std::size_t i = cut; i < n; ++i) std::swap(first[i], second[i]);
      }
      mutate(first);
      mutate(second);
      next.push_back(std::move(first));
      if (next.size() < cfg.population) next.push_back(std::move(second));
    }

    population = std::move(next);
    score_and_rank();
    ++result.generations;
    const double best = scores[rank[0]];
    stall = best < result.best_trace.back() ? 0 : stall + 1;
    result.best_trace.push_back(best);
  }

  Chromosome best = population[rank[0]];
  if (scores[rank[0]] == kInf) fill_empty_sets(mags, best, m);
  result.partition = Partition(std::move(best), m);
  return result;
}

}  // namespace spzf
