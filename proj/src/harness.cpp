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

#include "spzf/harness.hpp"

#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <exception>
#include <fstream>
#include <istream>
#include <mutex>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "spzf/error.hpp"

namespace spzf::harness {

namespace {

std::string format_real(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

template <class T>
std::string optional_field(const std::optional<T>& x) {
  if (!x) return {};
  if constexpr (std::is_floating_point_v<T>) {
    return format_real(*x);
  } else {
    return std::to_string(*x);
  }
}

using Clock = std::chrono::steady_clock;

double elapsed_ms(Clock::time_point start) {
  return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

}  // namespace

std::string_view csv_header() {
  return "schema_version,experiment,algo,model,n,m,ne,snr_db,metric,value,stderr,trials,"
         "seed,wall_time_ms";
}

void write_csv(std::ostream& out, const std::vector<ResultRow>& rows) {
  out << csv_header() << '\n';
  for (const ResultRow& r : rows) {
    out << kSchemaVersion << ',' << r.experiment << ',' << r.algo << ',' << r.model << ','
        << optional_field(r.n) << ',' << optional_field(r.m) << ',' << optional_field(r.n_e)
        << ',' << optional_field(r.snr_db) << ',' << r.metric << ',' << format_real(r.value)
        << ',' << optional_field(r.std_error) << ',' << r.trials << ',' << r.seed << ','
        << optional_field(r.wall_time_ms) << '\n';
  }
}

std::string_view to_string(Experiment e) {
  switch (e) {
    case Experiment::kFray: return "fray";
    case Experiment::kOutageVsM: return "outage-vs-m";
    case Experiment::kMinOutageVsN: return "min-outage-vs-n";
    case Experiment::kSecrecyVsSnr: return "secrecy-vs-snr";
    case Experiment::kRuntime: return "runtime";
  }
  return "unknown";
}

Experiment parse_experiment(std::string_view text) {
  if (text == "fray") return Experiment::kFray;
  if (text == "outage" || text == "outage-vs-m") return Experiment::kOutageVsM;
  if (text == "min-outage" || text == "min-outage-vs-n") return Experiment::kMinOutageVsN;
  if (text == "secrecy" || text == "secrecy-vs-snr") return Experiment::kSecrecyVsSnr;
  if (text == "runtime") return Experiment::kRuntime;
  throw std::invalid_argument("unknown experiment: " + std::string(text));
}

void ExperimentConfig::validate() const {
  model.validate();
  if (trials == 0) throw std::invalid_argument("trials must be >= 1");
  if (experiment == Experiment::kFray) {
    if (m.empty()) throw std::invalid_argument("fray needs at least one m");
    return;
  }
  if (n.empty()) throw std::invalid_argument("need at least one n");
  if (algos.empty()) throw std::invalid_argument("need at least one algorithm");
  if (experiment == Experiment::kSecrecyVsSnr) {
    if (snr_db.empty()) throw std::invalid_argument("need at least one SNR value");
    if (n_e == 0) throw std::invalid_argument("ne must be >= 1");
    if (m.size() > 1) throw std::invalid_argument("secrecy takes at most one fixed m");
  }
}

namespace {

class Sweep {
 public:
  Sweep(const ExperimentConfig& cfg, Executor& exec, std::ostream* progress)
      : cfg_(cfg), exec_(exec), progress_(progress) {}

  std::vector<ResultRow> run() {
    switch (cfg_.experiment) {
      case Experiment::kFray: fray(); break;
      case Experiment::kOutageVsM: outage_vs_m(); break;
      case Experiment::kMinOutageVsN: min_outage_vs_n(); break;
      case Experiment::kSecrecyVsSnr: secrecy_vs_snr(); break;
      case Experiment::kRuntime: runtime(); break;
    }
    return std::move(rows_);
  }

 private:
  ResultRow base(std::string_view algo) const {
    ResultRow r;
    r.experiment = std::string(to_string(cfg_.experiment));
    r.algo = std::string(algo);
    r.model = std::string(to_string(cfg_.model.model));
    r.seed = cfg_.seed;
    return r;
  }

  void add(ResultRow row, std::string metric, double value, std::optional<double> std_error,
           std::size_t trials, std::optional<double> wall_ms) {
    row.metric = std::move(metric);
    row.value = value;
    row.std_error = std_error;
    row.trials = trials;
    if (cfg_.timing) row.wall_time_ms = wall_ms;
    rows_.push_back(std::move(row));
  }

  void add(const ResultRow& row, std::string metric, const OutageEstimate& e,
           std::optional<double> wall_ms) {
    add(row, std::move(metric), e.probability, e.std_error, e.trials, wall_ms);
  }

  void say(const std::string& line) {
    if (progress_) *progress_ << line << '\n';
  }

  std::vector<std::size_t> m_values(std::size_t n) const {
    return cfg_.m.empty() ? feasible_m_range(n) : cfg_.m;
  }

  void fray() {
    for (const std::size_t m : cfg_.m) {
      const auto start = Clock::now();
      const OutageEstimate e =
          fray_empirical(m, cfg_.model.sigma2, cfg_.trials, derive_seed(cfg_.seed, 0, m), exec_);
      const double ms = elapsed_ms(start);
      ResultRow row = base("");
      row.model = "rayleigh";
      row.m = m;
      add(row, "fray_empirical", e, ms);
      add(row, "fray_approx", fray_approx(m), std::nullopt, 0, std::nullopt);
      say("fray m=" + std::to_string(m) + " empirical=" + format_real(e.probability) +
          " approx=" + format_real(fray_approx(m)));
    }
  }

  void outage_vs_m() {
    for (const std::size_t n : cfg_.n) {
      for (const auto algo : cfg_.algos) {
        for (const std::size_t m : m_values(n)) {
          if (m == 0 || m > n || !supports(algo, n, m)) continue;
          const auto start = Clock::now();
          const TwoUserOutage est = estimate_outage_two_user(
              n, m, algo, cfg_.model, cfg_.trials, derive_seed(cfg_.seed, n, m), exec_);
          const double ms = elapsed_ms(start);
          ResultRow row = base(to_string(algo));
          row.n = n;
          row.m = m;
          add(row, "outage", est.outage, ms);
          add(row, "e1", est.e1, ms);
          add(row, "e2_given_not_e1", est.e2_given_not_e1, ms);
          say("outage n=" + std::to_string(n) + " m=" + std::to_string(m) + " algo=" +
              std::string(to_string(algo)) + " p=" + format_real(est.outage.probability));
        }
      }
    }
  }

  void min_outage_vs_n() {
    for (const std::size_t n : cfg_.n) {
      for (const auto algo : cfg_.algos) {
        const auto start = Clock::now();
        const MSearchResult best =
            optimal_m_search(n, algo, cfg_.model, cfg_.trials, cfg_.seed, exec_);
        const double ms = elapsed_ms(start);
        ResultRow row = base(to_string(algo));
        row.n = n;
        row.m = best.m_star;
        add(row, "min_outage", best.min_outage, ms);
        say("min-outage n=" + std::to_string(n) + " algo=" + std::string(to_string(algo)) +
            " m*=" + std::to_string(best.m_star) +
            " p=" + format_real(best.min_outage.probability));
      }
    }
  }

  void secrecy_vs_snr() {
    SecrecyConfig sc;
    sc.n_e = cfg_.n_e;
    sc.policy = cfg_.policy;
    sc.clamp_at_zero = cfg_.clamp_rates;
    sc.log_base = cfg_.log_base;
    for (const std::size_t n : cfg_.n) {
      sc.n = n;
      for (const auto algo : cfg_.algos) {
        // One m per (n, algo), shared by every SNR point.
        std::size_t m = cfg_.m.empty() ? 0 : cfg_.m.front();
        if (m == 0) m = optimal_m_search(n, algo, cfg_.model, cfg_.trials, cfg_.seed, exec_).m_star;
        if (m > n || !supports(algo, n, m)) continue;
        for (const double snr : cfg_.snr_db) {
          sc.snr_db = snr;
          const auto start = Clock::now();
          const SecrecyEstimate est = estimate_secrecy_rate(
              sc, m, algo, cfg_.model, cfg_.trials, derive_seed(cfg_.seed, n), exec_);
          const double ms = elapsed_ms(start);
          ResultRow row = base(to_string(algo));
          row.n = n;
          row.m = m;
          row.n_e = cfg_.n_e;
          row.snr_db = snr;
          add(row, "rate_user1", est.user1.mean, est.user1.std_error, est.user1.trials, ms);
          add(row, "rate_user2", est.user2.mean, est.user2.std_error, est.user2.trials, ms);
          add(row, "rate_min", est.min_rate.mean, est.min_rate.std_error, est.min_rate.trials, ms);
          add(row, "outage", est.outage, ms);
          say("secrecy n=" + std::to_string(n) + " algo=" + std::string(to_string(algo)) +
              " m=" + std::to_string(m) + " snr=" + format_real(snr) +
              " rate=" + format_real(est.user1.mean));
        }
      }
    }
  }

  // Partition wall time only, serial so workers do not contend.
  void runtime() {
    for (const std::size_t n : cfg_.n) {
      for (const auto algo : cfg_.algos) {
        const std::vector<std::size_t> ms_list = cfg_.m.empty() ? std::vector<std::size_t>{5}
                                                                : cfg_.m;
        for (const std::size_t m : ms_list) {
          if (m == 0 || m > n || !supports(algo, n, m)) continue;
          const std::uint64_t seed = derive_seed(cfg_.seed, n, m);
          double sum = 0.0;
          double sum_sq = 0.0;
          for (std::size_t t = 0; t < cfg_.trials; ++t) {
            Rng channel_rng = Rng::stream(seed, t, kChannelRole);
            const auto mags = magnitudes(sample_channel(n, cfg_.model, channel_rng));
            Rng algo_rng = Rng::stream(seed, t, kAlgorithmRole);
            const auto start = Clock::now();
            const Partition part = run_partition(algo, mags, m, algo_rng);
            const double ms = elapsed_ms(start);
            if (part.size() != n) throw std::logic_error("runtime: partition size mismatch");
            sum += ms;
            sum_sq += ms * ms;
          }
          const double t = static_cast<double>(cfg_.trials);
          const double mean = sum / t;
          const double var = cfg_.trials > 1 ? std::max(0.0, (sum_sq - t * mean * mean) / (t - 1.0))
                                             : 0.0;
          ResultRow row = base(to_string(algo));
          row.n = n;
          row.m = m;
          add(row, "runtime_ms", mean, std::sqrt(var / t), cfg_.trials, sum);
          say("runtime n=" + std::to_string(n) + " m=" + std::to_string(m) + " algo=" +
              std::string(to_string(algo)) + " mean_ms=" + format_real(mean));
        }
      }
    }
  }

  const ExperimentConfig& cfg_;
  Executor& exec_;
  std::ostream* progress_;
  std::vector<ResultRow> rows_;
};

}  // namespace

std::vector<ResultRow> run_experiment(const ExperimentConfig& cfg, Executor& exec,
                                      std::ostream* progress) {
  cfg.validate();
  return Sweep(cfg, exec, progress).run();
}

ThreadPoolExecutor::ThreadPoolExecutor(std::size_t threads) : threads_(threads) {
  if (threads_ == 0) throw std::invalid_argument("ThreadPoolExecutor: need at least one thread");
}

void ThreadPoolExecutor::run(std::size_t count,
                             const std::function<void(std::size_t)>& task) {
  const std::size_t workers = std::min(threads_, count);
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) task(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  auto work = [&] {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= count) return;
      try {
        task(i);
      } catch (...) {
        std::lock_guard lock(error_mutex);
        if (!error) error = std::current_exception();
        next.store(count);
        return;
      }
    }
  };
  {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(work);
  }
  if (error) std::rethrow_exception(error);
}

ChannelVector parse_complex_vector(std::istream& in) {
  ChannelVector h;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream fields(line);
    double re = 0.0;
    double im = 0.0;
    if (!(fields >> re)) {
      fields.clear();
      std::string rest;
      if (fields >> rest) {
        throw std::runtime_error("line " + std::to_string(line_no) + ": expected 're im'");
      }
      continue;  // blank or comment-only
    }
    std::string extra;
    if (!(fields >> im) || (fields >> extra)) {
      throw std::runtime_error("line " + std::to_string(line_no) + ": expected 're im'");
    }
    if (!std::isfinite(re) || !std::isfinite(im)) {
      throw std::runtime_error("line " + std::to_string(line_no) + ": non-finite value");
    }
    h.emplace_back(re, im);
  }
  return h;
}

ChannelVector read_complex_vector(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  try {
    return parse_complex_vector(in);
  } catch (const std::runtime_error& e) {
    throw std::runtime_error(path + ": " + e.what());
  }
}

SolveReport solve_once(const ChannelVector& h1, const ChannelVector& h2,
                       PartitionAlgorithm algo, std::size_t m, std::uint64_t seed) {
  if (h1.size() != h2.size()) {
    throw DimensionMismatch("h1 has " + std::to_string(h1.size()) + " entries, h2 has " +
                            std::to_string(h2.size()));
  }
  if (h1.empty()) throw std::invalid_argument("empty channel vectors");
  if (m == 0 || m > h1.size() || !supports(algo, h1.size(), m)) {
    throw std::invalid_argument("m = " + std::to_string(m) + " is not usable with " +
                                std::string(to_string(algo)) + " at N = " +
                                std::to_string(h1.size()));
  }
  Rng rng(seed);
  SolveReport report;
  report.partition = run_partition(algo, magnitudes(h1), m, rng);
  report.result = spzf_two_user(h1, h2, report.partition);
  return report;
}

void print_solve_report(std::ostream& out, const SolveReport& report) {
  const OutageReport& r = report.result.report;
  out << "outcome: " << to_string(r.outcome) << '\n';
  if (r.failing_stage) out << "failing_stage: " << *r.failing_stage << '\n';
  if (r.failing_set) out << "failing_set: " << *r.failing_set + 1 << '\n';
  out << "partition:";
  for (const std::size_t l : report.partition.labels()) out << ' ' << l + 1;
  out << '\n';
  if (!report.result.solution) return;
  const SpzfSolution& s = *report.result.solution;
  for (std::size_t k = 0; k < s.stage_phases.size(); ++k) {
    out << "phases_stage" << k + 1 << ':';
    for (const double p : s.stage_phases[k]) out << ' ' << format_real(p);
    out << '\n';
  }
  out << "w:\n";
  for (const Complex& z : s.w) out << format_real(z.real()) << ' ' << format_real(z.imag()) << '\n';
  out << "residuals:";
  for (const double x : s.residuals) out << ' ' << format_real(x);
  out << '\n';
}

}  // namespace spzf::harness
