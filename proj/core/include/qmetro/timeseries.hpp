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

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace qmetro {

inline constexpr const char* kDefaultSeriesColumn = "H2OC (mmol/mol)";

/// Splits one CSV record. Fields may be double-quoted; "" inside quotes is a
/// literal quote. Embedded newlines are not supported.
std::vector<std::string> split_csv_line(std::string_view line);

/// Values of `column` in file order. Throws FileNotFoundError,
/// ColumnNotFoundError (message lists the available headers) or
/// MalformedValueError (carries the 1-based line number).
std::vector<double> load_series(const std::filesystem::path& path,
                                const std::string& column = kDefaultSeriesColumn);

struct SeriesStats {
  double mean = 0.0;
  double variance = 0.0;  ///< population variance (divisor N)
  std::size_t count = 0;
};

/// Throws SizeError for fewer than two values.
SeriesStats stats(const std::vector<double>& values);

double normal_pdf(double x, double mean, double variance);

/// Phase grid phi_x = mean - 1 + (2x + 1) / P with normal-prior weights
/// normalized to sum to one.
struct PhiGrid {
  int partitions = 0;
  double mean = 0.0;
  double variance = 0.0;
  std::vector<double> phis;
  std::vector<double> weights;
};

/// Throws DomainError for partitions < 2 or variance <= 0.
PhiGrid build_grid(double mean, double variance, int partitions);

}  // namespace qmetro
