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

// Task execution for Monte Carlo loops. The library never creates threads.
// Callers that want parallelism pass an Executor (the CLI owns a pool).
// Trials are cut into fixed-size blocks and block results are merged in
// block order, so the outcome does not depend on the worker count.

#ifndef SPZF_EXECUTOR_HPP
#define SPZF_EXECUTOR_HPP

#include <algorithm>
#include <cstddef>
#include <functional>
#include <vector>

namespace spzf {

class Executor {
 public:
  virtual ~Executor() = default;

  /// Calls task(i) for every i in [0, count) and returns when all are done.
  /// Tasks may run concurrently. The first exception thrown is rethrown.
  virtual void run(std::size_t count, const std::function<void(std::size_t)>& task) = 0;
};

class SerialExecutor final : public Executor {
 public:
  void run(std::size_t count, const std::function<void(std::size_t)>& task) override {
    for (std::size_t i = 0; i < count; ++i) task(i);
  }
};

/// Process-wide serial executor, the default everywhere.
inline Executor& serial_executor() {
  static SerialExecutor instance;
  return instance;
}

inline constexpr std::size_t kTrialBlock = 256;

/// Runs body(first, last, acc) over [0, trials) in blocks of kTrialBlock and
/// folds the per-block accumulators left to right with merge(total, block).
template <class Acc, class Body, class Merge>
Acc run_trial_blocks(std::size_t trials, Executor& exec, Body body, Merge merge) {
  const std::size_t blocks = (trials + kTrialBlock - 1) / kTrialBlock;
  std::vector<Acc> partial(blocks);
  exec.run(blocks, [&](std::size_t b) {
    const std::size_t first = b * kTrialBlock;
    const std::size_t last = std::min(trials, first + kTrialBlock);
    body(first, last, partial[b]);
  });
  Acc total{};
  for (const Acc& acc : partial) merge(total, acc);
  return total;
}

}  // namespace spzf

#endif  // SPZF_EXECUTOR_HPP
