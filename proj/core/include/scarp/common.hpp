// Copyright 2026 The SCARP Authors.
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

#ifndef SCARP_COMMON_HPP_
#define SCARP_COMMON_HPP_

#include <stdexcept>
#include <string>

namespace scarp {

// Absolute tolerance for comparing costs and demands.
inline constexpr double kEps = 1e-9;

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Raised when an instance or a document violates its structural invariants.
class ValidationError : public Error {
 public:
  using Error::Error;
};

// Raised by text parsers; carries the 1-based line number when known.
class ParseError : public Error {
 public:
  ParseError(int line, const std::string& reason)
      : Error(line > 0 ? "line " + std::to_string(line) + ": " + reason : reason),
        line_(line) {}
  int line() const { return line_; }

 private:
  int line_;
};

}  // namespace scarp

#endif  // SCARP_COMMON_HPP_
