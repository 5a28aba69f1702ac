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

#include "spzf/channel.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace spzf {

std::string_view to_string(ChannelModel model) {
  return model == ChannelModel::kRayleigh ? "rayleigh" : "geometric";
}

ChannelModel parse_channel_model(std::string_view text) {
  if (text == "rayleigh") return ChannelModel::kRayleigh;
  if (text == "geometric") return ChannelModel::kGeometric;
  throw std::invalid_argument("unknown channel model: " + std::string(text));
}

void ChannelModelConfig::validate() const {
  if (!(sigma2 > 0.0) || !std::isfinite(sigma2)) {
    throw std::invalid_argument("channel model: sigma2 must be > 0");
  }
  if (paths < 1) throw std::invalid_argument("channel model: paths must be >= 1");
  if (!(spacing_ratio > 0.0) || !std::isfinite(spacing_ratio)) {
    throw std::invalid_argument("channel model: spacing_ratio must be > 0");
  }
}

EveChannelMatrix::EveChannelMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows * cols) {}

std::span<Complex> EveChannelMatrix::row(std::size_t e) {
  return {data_.data() + e * cols_, cols_};
}

std::span<const Complex> EveChannelMatrix::row(std::size_t e) const {
  return {data_.data() + e * cols_, cols_};
}

std::vector<Complex> EveChannelMatrix::apply(std::span<const Complex> x) const {
  if (x.size() != cols_) {
    throw std::invalid_argument("EveChannelMatrix::apply: dimension mismatch");
  }
  std::vector<Complex> out(rows_);
  for (std::size_t e = 0; e < rows_; ++e) {
    Complex acc{};
    for (std::size_t i = 0; i < cols_; ++i) acc += (*this)(e, i) * x[i];
    out[e] = acc;
  }
  return out;
}

ChannelVector sample_rayleigh(std::size_t n, double sigma2, Rng& rng) {
  if (n == 0) throw std::invalid_argument("sample_rayleigh: n must be >= 1");
  if (!(sigma2 > 0.0)) {
    throw std::invalid_argument("sample_rayleigh: sigma2 must be > 0");
  }
  ChannelVector h(n);
  for (auto& entry : h) entry = rng.complex_normal(sigma2);
  return h;
}

ChannelVector array_response(std::size_t n, double phi, double spacing_ratio) {
  if (n == 0) throw std::invalid_argument("array_response: n must be >= 1");
  const double scale = 1.0 / std::sqrt(static_cast<double>(n));
  const double step = 2.0 * std::numbers::pi * spacing_ratio * std::sin(phi);
  ChannelVector a(n);
  for (std::size_t i = 0; i < n; ++i) {
    a[i] = std::polar(scale, step * static_cast<double>(i));
  }
  return a;
}

ChannelVector sample_geometric(std::size_t n, const ChannelModelConfig& cfg,
                               Rng& rng) {
  if (cfg.model != ChannelModel::kGeometric) {
    throw std::invalid_argument("sample_geometric: config is not geometric");
  }
  cfg.validate();
  if (n == 0) throw std::invalid_argument("sample_geometric: n must be >= 1");

  ChannelVector h(n);
  const double path_scale = std::sqrt(1.0 / static_cast<double>(cfg.paths));
  for (int l = 0; l < cfg.paths; ++l) {
    const Complex alpha = rng.complex_normal(1.0);
    const double phi = rng.angle();
    const ChannelVector a = array_response(n, phi, cfg.spacing_ratio);
    for (std::size_t i = 0; i < n; ++i) h[i] += path_scale * alpha * a[i];
  }
  return h;
}

ChannelVector sample_channel(std::size_t n, const ChannelModelConfig& cfg,
                             Rng& rng) {
  switch (cfg.model) {
    case ChannelModel::kRayleigh:
      return sample_rayleigh(n, cfg.sigma2, rng);
    case ChannelModel::kGeometric:
      return sample_geometric(n, cfg, rng);
  }
  throw std::invalid_argument("sample_channel: unknown model");
}

EveChannelMatrix sample_eve_matrix(std::size_t n_e, std::size_t n,
                                   const ChannelModelConfig& cfg, Rng& rng) {
  if (n_e == 0) throw std::invalid_argument("sample_eve_matrix: n_e must be >= 1");
  EveChannelMatrix g(n_e, n);
  for (std::size_t e = 0; e < n_e; ++e) {
    const ChannelVector row = sample_channel(n, cfg, rng);
    std::copy(row.begin(), row.end(), g.row(e).begin());
  }
  return g;
}

std::vector<double> magnitudes(std::span<const Complex> h) {
  std::vector<double> mags(h.size());
  for (std::size_t i = 0; i < h.size(); ++i) mags[i] = std::abs(h[i]);
  return mags;
}

}  // namespace spzf
