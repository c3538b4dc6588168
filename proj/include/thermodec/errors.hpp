// Copyright 2026 The thermodec Authors.
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

#pragma once

#include <stdexcept>
#include <string>

namespace thermodec {

// Input lies outside the mathematical domain of an operation
// (nonpositive probability, empty partition, mismatched supports).
class DomainError : public std::domain_error {
 public:
  explicit DomainError(const std::string& what) : std::domain_error(what) {}
};

// A scalar parameter is invalid (zero inverse temperature, nonpositive cost).
class ParameterError : public std::invalid_argument {
 public:
  explicit ParameterError(const std::string& what)
      : std::invalid_argument(what) {}
};

// The inputs were valid but the computation could not certify its result
// (no interior optimum inside the search range, inconsistent reward provenance).
class DiagnosticError : public std::runtime_error {
 public:
  explicit DiagnosticError(const std::string& what)
      : std::runtime_error(what) {}
};

}  // namespace thermodec
