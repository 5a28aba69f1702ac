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

// Experiment driver behind the `spzf` command line tool: sweeps, CSV output,
// a thread pool, and the single-instance solver.

#ifndef SPZF_HARNESS_HPP
#define SPZF_HARNESS_HPP

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "spzf/channel.hpp"
#include "spzf/executor.hpp"
#include "spzf/metrics.hpp"
#include "spzf/partition.hpp"
#include "spzf/spzf.hpp"

namespace spzf::harness {

inline constexpr int kSchemaVersion = 1;

/// CSV header, without the trailing newline.
std::string_view csv_header();

struct ResultRow {
  std::string experiment;
  std::string algo;                   // empty for algorithm-free rows
  std::string model;
  std::optional<std::size_t> n;
  std::optional<std::size_t> m;
  std::optional<std::size_t> n_e;
  std::optional<double> snr_db;
  std::string metric;
  double value = 0.0;
  std::optional<double> std_error;
  std::size_t trials = 0;
  std::uint64_t seed = 0;
  std::optional<double> wall_time_ms;
};

/// Header plus one line per row. Reals use 12 significant digits, lines end
/// with LF, and unset optionals are empty fields.
void write_csv(std::ostream& out, const std::vector<ResultRow>& rows);

enum class Experiment { kFray, kOutageVsM, kMinOutageVsN, kSecrecyVsSnr, kRuntime };

std::string_view to_string(Experiment e);
/// Accepts the CLI names (fray, outage, min-outage, secrecy, runtime) and
/// the long names (outage-vs-m, min-outage-vs-n, secrecy-vs-snr).
Experiment parse_experiment(std::string_view text);

struct ExperimentConfig {
  Experiment experiment = Experiment::kOutageVsM;
  ChannelModelConfig model;
  std::vector<std::size_t> n{20};
  std::vector<std::size_t> m;          // empty: the feasible range per n
  std::vector<PartitionAlgorithm> algos{PartitionAlgorithm::kRandom};
  std::size_t trials = 10000;
  std::uint64_t seed = 1;
  std::vector<double> snr_db{30.0};
  std::size_t n_e = 5;
  OutagePolicy policy = OutagePolicy::kNoArtificialNoise;
  bool clamp_rates = true;
  LogBase log_base = LogBase::kBits;
  bool timing = false;                 // fill wall_time_ms

  /// Throws std::invalid_argument on empty grids or trials == 0.
  void validate() const;
};

/// Runs the sweep. Rows are ordered by grid position, never by completion.
/// `progress`, if given, gets one summary line per cell.
std::vector<ResultRow> run_experiment(const ExperimentConfig& cfg, Executor& exec,
                                      std::ostream* progress = nullptr);

/// Executor backed by `threads` worker threads, started per run() call.
class ThreadPoolExecutor final : public Executor {
 public:
  explicit ThreadPoolExecutor(std::size_t threads);
  std::size_t threads() const { return threads_; }
  void run(std::size_t count, const std::function<void(std::size_t)>& task) override;

 private:
  std::size_t threads_;
};

/// Parses one "re im" pair per line. Blank lines and text after '#' are
/// ignored. Throws std::runtime_error naming the line on malformed input.
ChannelVector parse_complex_vector(std::istream& in);
ChannelVector read_complex_vector(const std::string& path);

struct SolveReport {
  Partition partition;
  SpzfResult result;
};

/// Partitions h1 with `algo` (seeded), runs two-user SPZF.
/// Throws DimensionMismatch if the lengths differ.
SolveReport solve_once(const ChannelVector& h1, const ChannelVector& h2,
                       PartitionAlgorithm algo, std::size_t m, std::uint64_t seed);

/// Human-readable dump: outcome, partition (1-based), phases, w, residuals.
void print_solve_report(std::ostream& out, const SolveReport& report);

}  // namespace spzf::harness

#endif  // SPZF_HARNESS_HPP
