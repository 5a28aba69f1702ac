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

#include "spzf/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "spzf/error.hpp"

namespace spzf {

OutageEstimate OutageEstimate::from_counts(std::size_t count, std::size_t trials) {
  OutageEstimate e;
  e.count = count;
  e.trials = trials;
  if (trials == 0) {
    e.probability = std::numeric_limits<double>::quiet_NaN();
    e.std_error = std::numeric_limits<double>::quiet_NaN();
    return e;
  }
  const double p = static_cast<double>(count) / static_cast<double>(trials);
  e.probability = p;
  e.std_error = std::sqrt(p * (1.0 - p) / static_cast<double>(trials));
  return e;
}

double fray_approx(std::size_t m) {
  const double x = static_cast<double>(m);
  return x * std::exp(-std::numbers::pi * x * x / 16.0);
}

OutageEstimate fray_empirical(std::size_t m, double sigma2, std::size_t trials,
                              std::uint64_t seed, Executor& exec) {
  if (m == 0) throw std::invalid_argument("fray_empirical: m must be >= 1");
  if (!(sigma2 > 0.0)) throw std::invalid_argument("fray_empirical: sigma2 must be > 0");
  const std::size_t failures = run_trial_blocks<std::size_t>(
      trials, exec,
      [&](std::size_t first, std::size_t last, std::size_t& count) {
        for (std::size_t t = first; t < last; ++t) {
          Rng rng = Rng::stream(seed, t, kChannelRole);
          double largest = 0.0;
          double total = 0.0;
          for (std::size_t i = 0; i < m; ++i) {
            const double r = rng.rayleigh_magnitude(sigma2);
            largest = std::max(largest, r);
            total += r;
          }
          if (largest - (total - largest) > 0.0) ++count;
        }
      },
      [](std::size_t& total, std::size_t block) { total += block; });
  return OutageEstimate::from_counts(failures, trials);
}

// --- two-user outage --------------------------------------------------------

TwoUserTrial two_user_trial(std::size_t n, std::size_t m, PartitionAlgorithm algo,
                            const ChannelModelConfig& model, std::uint64_t seed,
                            std::uint64_t trial) {
  Rng channel_rng = Rng::stream(seed, trial, kChannelRole);
  const ChannelVector h1 = sample_channel(n, model, channel_rng);
  const ChannelVector h2 = sample_channel(n, model, channel_rng);
  Rng algo_rng = Rng::stream(seed, trial, kAlgorithmRole);
  const std::vector<double> mags = magnitudes(h1);
  const Partition part = run_partition(algo, mags, m, algo_rng);
  const SpzfResult result = spzf_two_user(h1, h2, part);

  TwoUserTrial out;
  out.outcome = result.report.outcome;
  if (result.ok()) {
    const auto& residuals = result.solution->residuals;
    out.max_residual = *std::max_element(residuals.begin(), residuals.end());
  }
  return out;
}

namespace {

struct OutageCounts {
  std::size_t e1 = 0;
  std::size_t e2 = 0;
  double max_residual = 0.0;
};

}  // namespace

TwoUserOutage estimate_outage_two_user(std::size_t n, std::size_t m,
                                       PartitionAlgorithm algo,
                                       const ChannelModelConfig& model,
                                       std::size_t trials, std::uint64_t seed,
                                       Executor& exec) {
  if (m == 0 || m > n) throw std::invalid_argument("estimate_outage_two_user: need 1 <= m <= n");
  if (!supports(algo, n, m)) {
    throw std::invalid_argument("estimate_outage_two_user: algorithm needs m to divide n");
  }
  model.validate();

  const OutageCounts counts = run_trial_blocks<OutageCounts>(
      trials, exec,
      [&](std::size_t first, std::size_t last, OutageCounts& acc) {
        for (std::size_t t = first; t < last; ++t) {
          const TwoUserTrial r = two_user_trial(n, m, algo, model, seed, t);
          if (r.outcome == Outcome::kE1Failure) ++acc.e1;
          if (r.outcome == Outcome::kE2Failure) ++acc.e2;
          acc.max_residual = std::max(acc.max_residual, r.max_residual);
        }
      },
      [](OutageCounts& total, const OutageCounts& block) {
        total.e1 += block.e1;
        total.e2 += block.e2;
        total.max_residual = std::max(total.max_residual, block.max_residual);
      });

  TwoUserOutage out;
  out.outage = OutageEstimate::from_counts(counts.e1 + counts.e2, trials);
  out.e1 = OutageEstimate::from_counts(counts.e1, trials);
  out.e2_given_not_e1 = OutageEstimate::from_counts(counts.e2, trials - counts.e1);
  out.max_residual = counts.max_residual;
  return out;
}

double random_partition_outage_closed_form(std::size_t n, std::size_t m,
                                           const std::function<double(std::size_t)>& fray) {
  if (m == 0 || n % m != 0) {
    throw std::invalid_argument("random_partition_outage_closed_form: m must divide n");
  }
  const double per_set = 1.0 - fray(n / m);
  return 1.0 - std::pow(per_set, static_cast<double>(m)) * (1.0 - fray(m));
}

MSearchResult optimal_m_search(std::size_t n, PartitionAlgorithm algo,
                               const ChannelModelConfig& model, std::size_t trials,
                               std::uint64_t seed, Executor& exec) {
  MSearchResult result;
  for (const std::size_t m : feasible_m_range(n)) {
    if (!supports(algo, n, m)) continue;
    TwoUserOutage est =
        estimate_outage_two_user(n, m, algo, model, trials, derive_seed(seed, n, m), exec);
    if (result.m_values.empty() || est.outage.probability < result.min_outage.probability) {
      result.m_star = m;
      result.min_outage = est.outage;
    }
    result.m_values.push_back(m);
    result.per_m.push_back(std::move(est));
  }
  if (result.m_values.empty()) {
    throw std::invalid_argument("optimal_m_search: no feasible m for this n and algorithm");
  }
  return result;
}

// --- secrecy rate -----------------------------------------------------------

void SecrecyConfig::validate() const {
  if (n < 1) throw std::invalid_argument("SecrecyConfig: n must be >= 1");
  if (n_e < 1) throw std::invalid_argument("SecrecyConfig: n_e must be >= 1");
  if (noise_chains != 1) throw std::invalid_argument("SecrecyConfig: only M = 1 is supported");
  if (!std::isfinite(snr_db)) throw std::invalid_argument("SecrecyConfig: snr_db must be finite");
  if (max_resamples < 0) throw std::invalid_argument("SecrecyConfig: max_resamples must be >= 0");
}

double SecrecyConfig::power() const { return std::pow(10.0, snr_db / 10.0); }

std::vector<Complex> message_beamformer(std::span<const Complex> h) {
  if (h.empty()) throw std::invalid_argument("message_beamformer: empty channel");
  std::vector<Complex> v(h.size());
  for (std::size_t i = 0; i < h.size(); ++i) v[i] = std::polar(1.0, -std::arg(h[i]));
  return v;
}

namespace {

double log_of(double x_minus_one, LogBase base) {
  const double nats = std::log1p(x_minus_one);
  return base == LogBase::kBits ? nats / std::numbers::ln2 : nats;
}

Complex dot(std::span<const Complex> a, std::span<const Complex> b) {
  Complex s{};
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

double squared_norm(std::span<const Complex> x) {
  double s = 0.0;
  for (const Complex& z : x) s += std::norm(z);
  return s;
}

}  // namespace

RateSample secrecy_rate_sample(std::span<const Complex> h, const EveChannelMatrix& g,
                               std::span<const Complex> v, std::span<const Complex> w,
                               double p_total, LogBase base) {
  const std::size_t n = h.size();
  if (n == 0 || v.size() != n || g.cols() != n || (!w.empty() && w.size() != n)) {
    throw DimensionMismatch("secrecy_rate_sample: h, G, v and w sizes disagree");
  }
  if (!(p_total >= 0.0)) throw std::invalid_argument("secrecy_rate_sample: power must be >= 0");
  const double scale2 = p_total / (2.0 * static_cast<double>(n));

  const double signal = scale2 * std::norm(dot(h, v));
  const double leak = w.empty() ? 0.0 : scale2 * std::norm(dot(h, w));

  // Eve sees a = G v~ and b = G w~. With only two rank-one terms,
  // det(I + aa' + bb') / det(I + bb') = 1 + |a|^2 - |a'b|^2 / (1 + |b|^2).
  const std::vector<Complex> a = g.apply(v);
  double eve_gain = scale2 * squared_norm(a);
  if (!w.empty()) {
    const std::vector<Complex> b = g.apply(w);
    const double bb = scale2 * squared_norm(b);
    Complex ab{};
    for (std::size_t e = 0; e < a.size(); ++e) ab += std::conj(a[e]) * b[e];
    const double cross = scale2 * scale2 * std::norm(ab);
    // |a|^2 |b|^2 - |a'b|^2 >= 0; rounding can push it slightly below.
    const double gram = std::max(0.0, eve_gain * bb - cross);
    eve_gain = (eve_gain + gram) / (1.0 + bb);
  }

  RateSample s;
  s.legit_term = log_of(signal / (1.0 + leak), base);
  s.eve_term = log_of(eve_gain, base);
  s.rate = s.legit_term - s.eve_term;
  return s;
}

SecrecyTrial secrecy_rate_trial(const SecrecyConfig& cfg, std::size_t m,
                                PartitionAlgorithm algo, const ChannelModelConfig& model,
                                std::uint64_t seed, std::uint64_t trial) {
  Rng channel_rng = Rng::stream(seed, trial, kChannelRole);
  const ChannelVector h1 = sample_channel(cfg.n, model, channel_rng);
  const ChannelVector h2 = sample_channel(cfg.n, model, channel_rng);
  const EveChannelMatrix g = sample_eve_matrix(cfg.n_e, cfg.n, model, channel_rng);

  Rng algo_rng = Rng::stream(seed, trial, kAlgorithmRole);
  const std::vector<double> mags = magnitudes(h1);
  const int attempts = cfg.policy == OutagePolicy::kResamplePartition ? 1 + cfg.max_resamples : 1;
  SpzfResult spzf;
  for (int a = 0; a < attempts; ++a) {
    spzf = spzf_two_user(h1, h2, run_partition(algo, mags, m, algo_rng));
    if (spzf.ok()) break;
  }

  SecrecyTrial out;
  out.outage = !spzf.ok();
  if (out.outage && cfg.policy == OutagePolicy::kZeroRate) return out;

  const std::span<const Complex> w =
      spzf.ok() ? std::span<const Complex>(spzf.solution->w) : std::span<const Complex>();
  const double p = cfg.power();
  out.rate_user1 = secrecy_rate_sample(h1, g, message_beamformer(h1), w, p, cfg.log_base).rate;
  out.rate_user2 = secrecy_rate_sample(h2, g, message_beamformer(h2), w, p, cfg.log_base).rate;
  if (cfg.clamp_at_zero) {
    out.rate_user1 = std::max(out.rate_user1, 0.0);
    out.rate_user2 = std::max(out.rate_user2, 0.0);
  }
  out.rate_min = std::min(out.rate_user1, out.rate_user2);
  return out;
}

namespace {

struct Moments {
  double sum = 0.0;
  double sum_sq = 0.0;

  void add(double x) {
    sum += x;
    sum_sq += x * x;
  }
  void merge(const Moments& o) {
    sum += o.sum;
    sum_sq += o.sum_sq;
  }
  RateEstimate estimate(std::size_t trials) const {
    RateEstimate r;
    r.trials = trials;
    if (trials == 0) return r;
    const double t = static_cast<double>(trials);
    r.mean = sum / t;
    if (trials > 1) {
      const double var = std::max(0.0, (sum_sq - t * r.mean * r.mean) / (t - 1.0));
      r.std_error = std::sqrt(var / t);
    }
    return r;
  }
};

struct RateAccumulator {
  Moments user1, user2, min_rate;
  std::size_t outages = 0;
};

}  // namespace

SecrecyEstimate estimate_secrecy_rate(const SecrecyConfig& cfg, std::size_t m,
                                      PartitionAlgorithm algo,
                                      const ChannelModelConfig& model, std::size_t trials,
                                      std::uint64_t seed, Executor& exec) {
  cfg.validate();
  model.validate();
  if (m == 0) m = optimal_m_search(cfg.n, algo, model, trials, seed, exec).m_star;
  if (m > cfg.n || !supports(algo, cfg.n, m)) {
    throw std::invalid_argument("estimate_secrecy_rate: algorithm cannot handle this m");
  }

  const RateAccumulator acc = run_trial_blocks<RateAccumulator>(
      trials, exec,
      [&](std::size_t first, std::size_t last, RateAccumulator& block) {
        for (std::size_t t = first; t < last; ++t) {
          const SecrecyTrial r = secrecy_rate_trial(cfg, m, algo, model, seed, t);
          block.user1.add(r.rate_user1);
          block.user2.add(r.rate_user2);
          block.min_rate.add(r.rate_min);
          if (r.outage) ++block.outages;
        }
      },
      [](RateAccumulator& total, const RateAccumulator& block) {
        total.user1.merge(block.user1);
        total.user2.merge(block.user2);
        total.min_rate.merge(block.min_rate);
        total.outages += block.outages;
      });

  SecrecyEstimate out;
  out.m = m;
  out.user1 = acc.user1.estimate(trials);
  out.user2 = acc.user2.estimate(trials);
  out.min_rate = acc.min_rate.estimate(trials);
  out.outage = OutageEstimate::from_counts(acc.outages, trials);
  return out;
}

}  // namespace spzf
