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

#ifndef SPZF_ERROR_HPP
#define SPZF_ERROR_HPP

#include <stdexcept>

namespace spzf {

// Bad arguments are reported with std::invalid_argument. The two types below
// let callers tell the remaining failure modes apart.

/// The magnitudes violate the polygon inequality, so no phase-only
/// zero-forcing solution exists.
class InfeasibleSetError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Vector or matrix shapes do not chain.
class DimensionMismatch : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

}  // namespace spzf

#endif  // SPZF_ERROR_HPP
