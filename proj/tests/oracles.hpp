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

// Slow, obviously-correct reference computations for the tests. Nothing here
// calls into the library except for plain data types.

#ifndef SPZF_TESTS_ORACLES_HPP
#define SPZF_TESTS_ORACLES_HPP

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <limits>
#include <vector>

namespace oracle {

using Complex = std::complex<double>;

// max - sum(others), straight from the definition.
inline double distance(const std::vector<double>& mags) {
  double largest = mags[0];
  double total = 0.0;
  for (double x : mags) {
    largest = std::max(largest, x);
    total += x;
  }
  return largest - (total - largest);
}

// Determinant of a dense square matrix by Gaussian elimination with
// partial pivoting.
inline Complex determinant(std::vector<std::vector<Complex>> a) {
  const std::size_t n = a.size();
  Complex det = 1.0;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t pivot = c;
    for (std::size_t r = c + 1; r < n; ++r) {
      if (std::abs(a[r][c]) > std::abs(a[pivot][c])) pivot = r;
    }
    if (a[pivot][c] == Complex{}) return 0.0;
    if (pivot != c) {
      std::swap(a[pivot], a[c]);
      det = -det;
    }
    det *= a[c][c];
    for (std::size_t r = c + 1; r < n; ++r) {
      const Complex f = a[r][c] / a[c][c];
      for (std::size_t k = c; k < n; ++k) a[r][k] -= f * a[c][k];
    }
  }
  return det;
}

// I + sum_k x_k x_k^H for the given vectors.
inline std::vector<std::vector<Complex>> identity_plus_outer(
    const std::vector<std::vector<Complex>>& xs, std::size_t n) {
  std::vector<std::vector<Complex>> m(n, std::vector<Complex>(n));
  for (std::size_t i = 0; i < n; ++i) m[i][i] = 1.0;
  for (const auto& x : xs) {
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) m[i][j] += x[i] * std::conj(x[j]);
    }
  }
  return m;
}

// True if some assignment of mags to 3 groups has sums obeying the triangle
// inequality. 3^n enumeration.
inline bool some_three_split_closes(const std::vector<double>& mags) {
  const std::size_t n = mags.size();
  std::size_t total = 1;
  for (std::size_t i = 0; i < n; ++i) total *= 3;
  for (std::size_t code = 0; code < total; ++code) {
    double s[3] = {0, 0, 0};
    std::size_t c = code;
    for (std::size_t i = 0; i < n; ++i, c /= 3) s[c % 3] += mags[i];
    const double big = std::max({s[0], s[1], s[2]});
    if (big <= s[0] + s[1] + s[2] - big) return true;
  }
  return false;
}

// Exhaustive search over every labelling of n elements into m non-empty sets.
// Returns the smallest achievable pseudo-loss.
inline double best_pseudo_loss(const std::vector<double>& mags, std::size_t m,
                               bool fixed_cardinality = false) {
  const std::size_t n = mags.size();
  std::size_t total = 1;
  for (std::size_t i = 0; i < n; ++i) total *= m;
  double best = std::numeric_limits<double>::infinity();
  std::vector<std::vector<double>> sets(m);
  for (std::size_t code = 0; code < total; ++code) {
    for (auto& s : sets) s.clear();
    std::size_t c = code;
    for (std::size_t i = 0; i < n; ++i, c /= m) sets[c % m].push_back(mags[i]);
    bool ok = true;
    for (const auto& s : sets) {
      if (s.empty() || (fixed_cardinality && s.size() * m != n)) ok = false;
    }
    if (!ok) continue;
    double worst = -std::numeric_limits<double>::infinity();
    for (const auto& s : sets) worst = std::max(worst, distance(s));
    best = std::min(best, worst);
  }
  return best;
}

struct MeanStd {
  double mean = 0.0;
  double std_error = 0.0;
};

inline MeanStd mean_and_stderr(const std::vector<double>& x) {
  MeanStd r;
  const double n = static_cast<double>(x.size());
  for (double v : x) r.mean += v;
  r.mean /= n;
  double ss = 0.0;
  for (double v : x) ss += (v - r.mean) * (v - r.mean);
  r.std_error = std::sqrt(ss / (n - 1.0) / n);
  return r;
}

}  // namespace oracle

#endif  // SPZF_TESTS_ORACLES_HPP
