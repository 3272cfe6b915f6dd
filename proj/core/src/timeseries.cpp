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

#include "qmetro/timeseries.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <numbers>

#include "qmetro/errors.hpp"

namespace qmetro {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) {
    s.remove_suffix(1);
  }
  return s;
}

bool parse_double(std::string_view text, double& out) {
  text = trim(text);
  if (text.empty()) return false;
  if (text.front() == '+') text.remove_prefix(1);
  const auto* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, out);
  return ec == std::errc() && ptr == end && std::isfinite(out);
}

}  // namespace

std::vector<std::string> split_csv_line(std::string_view line) {
  if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
  std::vector<std::string> fields;
  std::string field;
  bool in_quotes = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (in_quotes) {
      if (c == '"') {
        if (i + 1 < line.size() && line[i + 1] == '"') {
          field.push_back('"');
          ++i;
        } else {
          in_quotes = false;
        }
      } else {
        field.push_back(c);
      }
    } else if (c == '"') {
      in_quotes = true;
    } else if (c == ',') {
      fields.push_back(std::move(field));
      field.clear();
    } else {
      field.push_back(c);
    }
  }
  fields.push_back(std::move(field));
  return fields;
}

std::vector<double> load_series(const std::filesystem::path& path,
                                const std::string& column) {
  std::ifstream in(path);
  if (!in) throw FileNotFoundError("cannot open '" + path.string() + "'");

  std::string line;
  if (!std::getline(in, line)) throw ColumnNotFoundError("'" + path.string() + "' is empty");
  // Strip a UTF-8 byte-order mark.
  if (line.rfind("\xEF\xBB\xBF", 0) == 0) line.erase(0, 3);
  const auto headers = split_csv_line(line);

  std::size_t col = headers.size();
  for (std::size_t i = 0; i < headers.size(); ++i) {
    if (trim(headers[i]) == column) {
      col = i;
      break;
    }
  }
  if (col == headers.size()) {
    std::string available;
    for (const auto& h : headers) {
      if (!available.empty()) available += ", ";
      available += "\"" + h + "\"";
    }
    throw ColumnNotFoundError("column \"" + column + "\" not found; available: " + available);
  }

  std::vector<double> values;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    const auto fields = split_csv_line(line);
    double v = 0.0;
    if (col >= fields.size() || !parse_double(fields[col], v)) {
      const std::string raw = col < fields.size() ? fields[col] : std::string("<missing>");
      throw MalformedValueError("line " + std::to_string(line_no) + ": cannot parse \"" + raw +
                                    "\" in column \"" + column + "\"",
                                line_no);
    }
    values.push_back(v);
  }
  return values;
}

SeriesStats stats(const std::vector<double>& values) {
  if (values.size() < 2) throw SizeError("stats needs at least two values");
  const auto n = static_cast<double>(values.size());
  double mean = 0.0;
  for (double v : values) mean += v;
  mean /= n;
  double ss = 0.0;
  for (double v : values) ss += (v - mean) * (v - mean);
  return {mean, ss / n, values.size()};
}

double normal_pdf(double x, double mean, double variance) {
  const double d = x - mean;
  return std::exp(-d * d / (2.0 * variance)) / std::sqrt(2.0 * std::numbers::pi * variance);
}

PhiGrid build_grid(double mean, double variance, int partitions) {
  if (partitions < 2) throw DomainError("partitions must be >= 2");
  if (!(variance > 0.0) || !std::isfinite(variance)) throw DomainError("variance must be positive");
  if (!std::isfinite(mean)) throw DomainError("mean must be finite");
  PhiGrid g;
  g.partitions = partitions;
  g.mean = mean;
  g.variance = variance;
  g.phis.reserve(static_cast<std::size_t>(partitions));
  g.weights.reserve(static_cast<std::size_t>(partitions));
  double total = 0.0;
  for (int x = 0; x < partitions; ++x) {
    const double phi = mean - 1.0 + (2.0 * x + 1.0) / partitions;
    const double w = normal_pdf(phi, mean, variance);
    g.phis.push_back(phi);
    g.weights.push_back(w);
    total += w;
  }
  for (auto& w : g.weights) w /= total;
  return g;
}

}  // namespace qmetro
