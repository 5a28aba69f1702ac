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

// spzf: experiment driver. One subcommand per experiment plus `solve`.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "spzf/error.hpp"
#include "spzf/harness.hpp"

namespace {

using spzf::harness::Experiment;
using spzf::harness::ExperimentConfig;

struct Options {
  std::vector<std::size_t> n{20};
  std::vector<std::size_t> m;
  std::string m_range;
  std::vector<std::string> algos{"random"};
  std::string model = "rayleigh";
  int paths = 10;
  double spacing = 0.5;
  std::size_t ne = 5;
  std::vector<double> snr_db{30.0};
  std::size_t trials = 10000;
  std::uint64_t seed = 1;
  std::string out;
  std::size_t threads = 0;
  bool timing = false;
  std::string policy = "no-an";
  bool nats = false;
  bool no_clamp = false;
  bool quiet = false;
};

std::vector<std::size_t> parse_range(const std::string& text) {
  const auto colon = text.find(':');
  if (colon == std::string::npos) throw std::invalid_argument("--m-range must look like a:b");
  const std::size_t lo = std::stoul(text.substr(0, colon));
  const std::size_t hi = std::stoul(text.substr(colon + 1));
  if (lo > hi) throw std::invalid_argument("--m-range: empty range " + text);
  std::vector<std::size_t> out;
  for (std::size_t m = lo; m <= hi; ++m) out.push_back(m);
  return out;
}

spzf::OutagePolicy parse_policy(const std::string& text) {
  if (text == "no-an") return spzf::OutagePolicy::kNoArtificialNoise;
  if (text == "zero-rate") return spzf::OutagePolicy::kZeroRate;
  if (text == "resample") return spzf::OutagePolicy::kResamplePartition;
  throw std::invalid_argument("unknown outage policy: " + text);
}

ExperimentConfig to_config(Experiment experiment, const Options& o) {
  ExperimentConfig cfg;
  cfg.experiment = experiment;
  cfg.model.model = spzf::parse_channel_model(o.model);
  cfg.model.paths = o.paths;
  cfg.model.spacing_ratio = o.spacing;
  cfg.n = o.n;
  cfg.m = o.m_range.empty() ? o.m : parse_range(o.m_range);
  if (experiment == Experiment::kFray && cfg.m.empty()) cfg.m = parse_range("1:8");
  cfg.algos.clear();
  for (const auto& a : o.algos) cfg.algos.push_back(spzf::parse_partition_algorithm(a));
  cfg.trials = o.trials;
  cfg.seed = o.seed;
  cfg.snr_db = o.snr_db;
  cfg.n_e = o.ne;
  cfg.policy = parse_policy(o.policy);
  cfg.clamp_rates = !o.no_clamp;
  cfg.log_base = o.nats ? spzf::LogBase::kNats : spzf::LogBase::kBits;
  cfg.timing = o.timing;
  return cfg;
}

void add_sweep_options(CLI::App* sub, Options& o) {
  sub->add_option("--n", o.n, "Antenna counts")->delimiter(',');
  sub->add_option("--m", o.m, "Set counts (default: 3..floor(n/3))")->delimiter(',');
  sub->add_option("--m-range", o.m_range, "Set count range a:b, inclusive");
  sub->add_option("--algo", o.algos,
                  "random, random-fc, random-multinomial, iterative, iterative-fc, genetic")
      ->delimiter(',');
  sub->add_option("--model", o.model, "rayleigh or geometric");
  sub->add_option("--paths", o.paths, "Geometric paths L");
  sub->add_option("--spacing", o.spacing, "Geometric antenna spacing d/lambda");
  sub->add_option("--ne", o.ne, "Eavesdropper antennas");
  sub->add_option("--snr-db", o.snr_db, "SNR grid in dB")->delimiter(',');
  sub->add_option("--policy", o.policy, "Secrecy outage policy: no-an, zero-rate, resample");
  sub->add_flag("--nats", o.nats, "Rates in nats instead of bits");
  sub->add_flag("--no-clamp", o.no_clamp, "Keep negative per-trial rates");
  sub->add_option("--trials", o.trials, "Monte Carlo trials per cell");
  sub->add_option("--seed", o.seed, "Master seed");
  sub->add_option("--out", o.out, "CSV output path (default: stdout)");
  sub->add_option("--threads", o.threads, "Worker threads")->envname("SPZF_THREADS");
  sub->add_flag("--timing", o.timing, "Fill the wall_time_ms column");
  sub->add_flag("--quiet", o.quiet, "No per-cell summary");
}

int run_sweep(Experiment experiment, const Options& o) {
  const ExperimentConfig cfg = to_config(experiment, o);
  std::size_t threads = o.threads;
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  spzf::harness::ThreadPoolExecutor pool(threads);

  std::ostream* progress = o.quiet ? nullptr : (o.out.empty() ? &std::cerr : &std::cout);
  const auto rows = spzf::harness::run_experiment(cfg, pool, progress);
  if (o.out.empty()) {
    spzf::harness::write_csv(std::cout, rows);
    return 0;
  }
  std::ofstream file(o.out, std::ios::binary);
  if (!file) throw std::runtime_error("cannot write " + o.out);
  spzf::harness::write_csv(file, rows);
  file.close();
  if (!file) throw std::runtime_error("error writing " + o.out);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Successive partition zero-forcing experiments"};
  app.set_config("--config", "", "Read options from a key = value file");
  app.require_subcommand(1);

  Options opts;
  struct Sub {
    const char* name;
    const char* help;
    Experiment experiment;
  };
  const Sub subs[] = {
      {"fray", "Empirical and approximate f_Ray(m)", Experiment::kFray},
      {"outage", "Two-user outage versus m", Experiment::kOutageVsM},
      {"min-outage", "Minimum outage over m versus n", Experiment::kMinOutageVsN},
      {"secrecy", "Secrecy rate versus SNR", Experiment::kSecrecyVsSnr},
      {"runtime", "Partition runtime per realization", Experiment::kRuntime},
  };
  std::vector<std::pair<CLI::App*, Experiment>> sweeps;
  for (const Sub& s : subs) {
    CLI::App* sub = app.add_subcommand(s.name, s.help);
    add_sweep_options(sub, opts);
    sweeps.emplace_back(sub, s.experiment);
  }

  std::string h1_path;
  std::string h2_path;
  std::string solve_algo = "iterative";
  std::size_t solve_m = 3;
  std::uint64_t solve_seed = 1;
  CLI::App* solve = app.add_subcommand("solve", "Run two-user SPZF on one instance");
  solve->add_option("--h1", h1_path, "File with h1, one 're im' pair per line")->required();
  solve->add_option("--h2", h2_path, "File with h2")->required();
  solve->add_option("--algo", solve_algo, "Partition algorithm");
  solve->add_option("--m", solve_m, "Set count");
  solve->add_option("--seed", solve_seed, "Seed for the partition algorithm");

  CLI11_PARSE(app, argc, argv);

  try {
    for (const auto& [sub, experiment] : sweeps) {
      if (sub->parsed()) return run_sweep(experiment, opts);
    }
    if (solve->parsed()) {
      const auto h1 = spzf::harness::read_complex_vector(h1_path);
      const auto h2 = spzf::harness::read_complex_vector(h2_path);
      const auto report = spzf::harness::solve_once(
          h1, h2, spzf::parse_partition_algorithm(solve_algo), solve_m, solve_seed);
      spzf::harness::print_solve_report(std::cout, report);
      return 0;
    }
  } catch (const spzf::DimensionMismatch& e) {
    std::cerr << "spzf: dimension mismatch: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "spzf: " << e.what() << '\n';
    return 1;
  }
  return 1;
}
