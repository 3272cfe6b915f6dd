// Copyright 2026 The qmetro Authors.
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

namespace qmetro {

/// Wrong register size, sample count, or mismatched dimensions.
class SizeError : public std::length_error {
 public:
  using std::length_error::length_error;
};

/// Qubit index outside the register.
class IndexError : public std::out_of_range {
 public:
  using std::out_of_range::out_of_range;
};

/// Malformed specification: gate arguments, parameter shapes, Pauli strings.
class SpecError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Argument outside the mathematical domain of an operation.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Base for CSV ingestion failures.
class LoadError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class FileNotFoundError : public LoadError {
 public:
  using LoadError::LoadError;
};

class ColumnNotFoundError : public LoadError {
 public:
  using LoadError::LoadError;
};

class MalformedValueError : public LoadError {
 public:
  MalformedValueError(const std::string& what, std::size_t row)
      : LoadError(what), row_(row) {}
  /// 1-based line number in the file (header is line 1).
  std::size_t row() const noexcept { return row_; }

 private:
  std::size_t row_;
};

/// Training hit a non-finite loss or gradient.
class TrainingError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace qmetro
