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

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace qmetro {

/// Single-layer LSTM followed by a dense layer to one output. Gate blocks in
/// W, U and b are ordered (input, forget, candidate, output).
struct LstmModel {
  int input_dim = 1;
  int hidden = 32;
  std::vector<double> w;        ///< 4*hidden x input_dim, row-major
  std::vector<double> u;        ///< 4*hidden x hidden, row-major
  std::vector<double> b;        ///< 4*hidden
  std::vector<double> dense_w;  ///< hidden
  double dense_b = 0.0;

  /// All weights zero. Throws SpecError for hidden or input_dim < 1.
  static LstmModel zeros(int hidden, int input_dim = 1);
  /// Weights uniform in [-1/sqrt(hidden), 1/sqrt(hidden)].
  static LstmModel random(int hidden, std::uint64_t seed, int input_dim = 1);

  /// Parameters in the order w, u, b, dense_w, dense_b.
  std::vector<double> flatten() const;
  void unflatten(std::span<const double> params);
};

/// 4 h (input + h + 1) + (h + 1). Throws SpecError for hidden or input < 1.
std::size_t lstm_param_count(int hidden, int input_dim = 1);
std::size_t param_count(const LstmModel& model);

/// Prediction for one window of steps * input_dim values; state starts at 0.
double forward(const LstmModel& model, std::span<const double> window);

struct Normalization {
  double mean = 0.0;
  double std = 1.0;
  double normalize(double x) const { return (x - mean) / std; }
  double denormalize(double z) const { return z * std + mean; }
};

/// Mean and population standard deviation; std falls back to 1 for a
/// constant series. Throws SizeError for an empty series.
Normalization fit_normalization(std::span<const double> series);

/// Sliding next-step windows over the z-scored series.
struct WindowedDataset {
  int window = 120;
  std::vector<double> inputs;   ///< count() * window, row-major
  std::vector<double> targets;  ///< one per window
  Normalization normalization;

  std::size_t count() const noexcept { return targets.size(); }
  std::span<const double> input(std::size_t i) const {
    return {inputs.data() + i * static_cast<std::size_t>(window),
            static_cast<std::size_t>(window)};
  }
};

/// Window i covers z[i .. i+window) and targets z[i+window]. Throws SizeError
/// unless series.size() > window.
WindowedDataset make_windows(std::span<const double> series, int window,
                             const Normalization& norm);
/// Normalizes with statistics of `series` itself.
WindowedDataset make_windows(std::span<const double> series, int window = 120);

/// Chronological split: first floor(fraction * n) values, then the rest.
std::pair<std::vector<double>, std::vector<double>> split_series(
    std::span<const double> series, double train_fraction = 0.9);

struct LstmGradient {
  double loss = 0.0;              ///< mean squared error over the batch
  std::vector<double> gradient;   ///< flatten() order
};

/// Loss and BPTT gradient over the listed dataset rows.
LstmGradient lstm_gradient(const LstmModel& model, const WindowedDataset& data,
                           std::span<const std::size_t> rows);

/// Mean squared error over the whole dataset.
double lstm_loss(const LstmModel& model, const WindowedDataset& data);

struct LstmTrainConfig {
  int epochs = 10;
  int batch = 256;
  double learning_rate = 0.01;
  std::uint64_t seed = 0;
  int hidden = 32;
};

struct EpochLoss {
  int epoch = 0;
  double loss = 0.0;  ///< sample-weighted mean of batch losses during the epoch
};

/// Mini-batch SGD over shuffled windows. Throws TrainingError on a
/// non-finite loss, SizeError on an empty dataset.
std::vector<EpochLoss> train_lstm(LstmModel& model, const WindowedDataset& data,
                                  const LstmTrainConfig& config);

struct LstmTrainResult {
  LstmModel model;
  std::vector<EpochLoss> losses;
};

/// Builds LstmModel::random(config.hidden, config.seed) and trains it.
LstmTrainResult train_lstm(const WindowedDataset& data, const LstmTrainConfig& config);

}  // namespace qmetro
