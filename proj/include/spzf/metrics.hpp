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

// Monte Carlo estimators for SPZF outage and secrecy rate.
//
// Every estimator takes a master seed. Trial t draws its channels from
// Rng::stream(seed, t, kChannelRole) and runs the partition algorithm on
// Rng::stream(seed, t, kAlgorithmRole). Two estimators called with the same
// seed therefore see the same channels trial by trial (paired trials).

#ifndef SPZF_METRICS_HPP
#define SPZF_METRICS_HPP

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "spzf/channel.hpp"
#include "spzf/executor.hpp"
#include "spzf/partition.hpp"
#include "spzf/spzf.hpp"

namespace spzf {

inline constexpr std::uint64_t kChannelRole = 0;
inline constexpr std::uint64_t kAlgorithmRole = 1;

struct OutageEstimate {
  double probability = 0.0;
  std::size_t count = 0;
  std::size_t trials = 0;
  double std_error = 0.0;  // sqrt(p (1 - p) / trials)

  /// NaN probability and std_error when trials == 0.
  static OutageEstimate from_counts(std::size_t count, std::size_t trials);
};

/// m exp(-pi m^2 / 16).
double fray_approx(std::size_t m);

/// Fraction of length-m CN(0, sigma2) draws that fail the polygon inequality.
OutageEstimate fray_empirical(std::size_t m, double sigma2, std::size_t trials,
                              std::uint64_t seed, Executor& exec = serial_executor());

// --- two-user outage --------------------------------------------------------

struct TwoUserTrial {
  Outcome outcome = Outcome::kSuccess;
  double max_residual = 0.0;  // over both users, 0 unless outcome is success
};

/// One paired trial: draw h1, h2, partition h1 with `algo`, run SPZF.
TwoUserTrial two_user_trial(std::size_t n, std::size_t m, PartitionAlgorithm algo,
                            const ChannelModelConfig& model, std::uint64_t seed,
                            std::uint64_t trial);

struct TwoUserOutage {
  OutageEstimate outage;          // Pr[outage] = Pr(e1 or e2)
  OutageEstimate e1;              // Pr(e1)
  OutageEstimate e2_given_not_e1; // Pr(e2 | not e1), over trials without e1
  double max_residual = 0.0;      // worst relative residual over successes
};

/// Throws std::invalid_argument unless 1 <= m <= n and `algo` supports (n, m).
TwoUserOutage estimate_outage_two_user(std::size_t n, std::size_t m,
                                       PartitionAlgorithm algo,
                                       const ChannelModelConfig& model,
                                       std::size_t trials, std::uint64_t seed,
                                       Executor& exec = serial_executor());

/// 1 - (1 - fray(n / m))^m (1 - fray(m)). Throws std::invalid_argument if m
/// does not divide n.
double random_partition_outage_closed_form(std::size_t n, std::size_t m,
                                           const std::function<double(std::size_t)>& fray);

struct MSearchResult {
  std::size_t m_star = 0;
  OutageEstimate min_outage;
  std::vector<std::size_t> m_values;      // candidates that were evaluated
  std::vector<TwoUserOutage> per_m;       // aligned with m_values
};

/// Evaluates Pr[outage] for m in [3, floor(n / 3)] (skipping m the algorithm
/// cannot handle) and returns the smallest, lowest m on ties. Each m uses
/// derive_seed(seed, n, m). Throws std::invalid_argument if nothing is
/// evaluated (for example n < 9).
MSearchResult optimal_m_search(std::size_t n, PartitionAlgorithm algo,
                               const ChannelModelConfig& model, std::size_t trials,
                               std::uint64_t seed, Executor& exec = serial_executor());

// --- secrecy rate -----------------------------------------------------------

enum class OutagePolicy {
  kNoArtificialNoise,   // transmit without AN (w = 0)
  kZeroRate,            // the trial contributes rate 0
  kResamplePartition,   // rerun the algorithm, then fall back to no AN
};

enum class LogBase { kBits, kNats };

struct SecrecyConfig {
  double snr_db = 30.0;     // P in dB, unit noise variance
  std::size_t n = 20;
  std::size_t n_e = 5;
  std::size_t noise_chains = 1;  // M, only 1 is supported
  OutagePolicy policy = OutagePolicy::kNoArtificialNoise;
  int max_resamples = 10;
  bool clamp_at_zero = true;
  LogBase log_base = LogBase::kBits;

  /// Throws std::invalid_argument when a field is out of range.
  void validate() const;
  double power() const;
};

struct RateSample {
  double legit_term = 0.0;
  double eve_term = 0.0;
  double rate = 0.0;  // legit_term - eve_term
};

/// v_i = exp(-j arg h_i), so h^T v = sum |h_i|.
std::vector<Complex> message_beamformer(std::span<const Complex> h);

/// Rate terms for one realization with v~ = sqrt(P / 2N) v and
/// w~ = sqrt(P / 2N) w. An empty w means no artificial noise.
/// Throws DimensionMismatch on inconsistent sizes.
RateSample secrecy_rate_sample(std::span<const Complex> h, const EveChannelMatrix& g,
                               std::span<const Complex> v, std::span<const Complex> w,
                               double p_total, LogBase base = LogBase::kBits);

struct SecrecyTrial {
  double rate_user1 = 0.0;  // v matched to h1, rate against h1
  double rate_user2 = 0.0;  // v matched to h2, rate against h2
  double rate_min = 0.0;
  bool outage = false;      // SPZF outage on the final attempt
};

/// One paired trial at a fixed m: draws h1, h2 then G on the channel stream.
SecrecyTrial secrecy_rate_trial(const SecrecyConfig& cfg, std::size_t m,
                                PartitionAlgorithm algo, const ChannelModelConfig& model,
                                std::uint64_t seed, std::uint64_t trial);

struct RateEstimate {
  double mean = 0.0;
  double std_error = 0.0;
  std::size_t trials = 0;
};

struct SecrecyEstimate {
  std::size_t m = 0;
  RateEstimate user1;
  RateEstimate user2;
  RateEstimate min_rate;
  OutageEstimate outage;
};

/// Averages secrecy_rate_trial over `trials` trials at the given m. With
/// m == 0 the m* of optimal_m_search(cfg.n, algo, model, trials, seed) is used.
SecrecyEstimate estimate_secrecy_rate(const SecrecyConfig& cfg, std::size_t m,
                                      PartitionAlgorithm algo,
                                      const ChannelModelConfig& model, std::size_t trials,
                                      std::uint64_t seed, Executor& exec = serial_executor());

}  // namespace spzf

#endif  // SPZF_METRICS_HPP
