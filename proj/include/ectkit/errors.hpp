// Copyright 2026 The ectkit Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <stdexcept>
#include <string>

namespace ect {

// Malformed input files (OFF, ECTP, CSV). CLI exit code 3.
struct ParseError : std::runtime_error {
  explicit ParseError(const std::string& msg) : std::runtime_error(msg) {}
};

// Numerical degeneracy (coincident vertices, zero-scale mesh, ...). Exit code 4.
struct DegeneracyError : std::runtime_error {
  explicit DegeneracyError(const std::string& msg) : std::runtime_error(msg) {}
};

// Invalid argument to an operation (bad rotation matrix, k = 0, ...). Exit code 2.
struct ArgError : std::invalid_argument {
  explicit ArgError(const std::string& msg) : std::invalid_argument(msg) {}
};

}  // namespace ect
