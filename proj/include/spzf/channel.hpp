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

#ifndef SPZF_CHANNEL_HPP
#define SPZF_CHANNEL_HPP

#include <complex>
#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

#include "spzf/rng.hpp"

namespace spzf {

using Complex = std::complex<double>;

/// One user's channel realization, h_k in C^N.
using ChannelVector = std::vector<Complex>;

enum class ChannelModel { kRayleigh, kGeometric };

std::string_view to_string(ChannelModel model);
/// Parses "rayleigh" or "geometric"; throws std::invalid_argument otherwise.
ChannelModel parse_channel_model(std::string_view text);

struct ChannelModelConfig {
  ChannelModel model = ChannelModel::kRayleigh;
  double sigma2 = 1.0;          // per-entry variance (Rayleigh)
  int paths = 10;               // L (geometric)
  double spacing_ratio = 0.5;   // d / lambda (geometric)

  /// Throws std::invalid_argument when a field is out of range.
  void validate() const;
};

/// Eavesdropper channel G, N_e rows of length N, row-major.
class EveChannelMatrix {
 public:
  EveChannelMatrix() = default;
  EveChannelMatrix(std::size_t rows, std::size_t cols);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  std::span<Complex> row(std::size_t e);
  std::span<const Complex> row(std::size_t e) const;

  Complex& operator()(std::size_t e, std::size_t i) {
    return data_[e * cols_ + i];
  }
  const Complex& operator()(std::size_t e, std::size_t i) const {
    return data_[e * cols_ + i];
  }

  /// G x, where (G x)_e = g_e^T x (no conjugation).
  std::vector<Complex> apply(std::span<const Complex> x) const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Complex> data_;
};

/// i.i.d. CN(0, sigma2) entries.
ChannelVector sample_rayleigh(std::size_t n, double sigma2, Rng& rng);

/// Uniform linear array response: entry i is
/// exp(j 2 pi (d/lambda) i sin(phi)) / sqrt(n).
ChannelVector array_response(std::size_t n, double phi, double spacing_ratio);

/// sqrt(1/L) * sum_l alpha_l a(phi_l), alpha_l ~ CN(0, 1), phi_l ~ U[0, 2pi].
ChannelVector sample_geometric(std::size_t n, const ChannelModelConfig& cfg,
                               Rng& rng);

/// Dispatches on cfg.model.
ChannelVector sample_channel(std::size_t n, const ChannelModelConfig& cfg,
                             Rng& rng);

/// n_e independent rows, each drawn per cfg.
EveChannelMatrix sample_eve_matrix(std::size_t n_e, std::size_t n,
                                   const ChannelModelConfig& cfg, Rng& rng);

/// Element-wise |h_i|.
std::vector<double> magnitudes(std::span<const Complex> h);

}  // namespace spzf

#endif  // SPZF_CHANNEL_HPP
