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

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qmetro/metrology.hpp"
#include "qmetro/timeseries.hpp"

namespace qmetro {

struct TrainConfig {
  double learning_rate = 0.01;
  int iterations = 150;
  int log_every = 10;
  std::uint64_t seed = 0;
  /// Standard deviation of the normal angle initialization.
  double init_scale = 0.1;
  /// Initial estimator scale; grid mean / n_qubits when unset.
  std::optional<double> a_init;

  /// Throws SpecError unless iterations >= 1, log_every >= 1, lr >= 0.
  void validate() const;
};

struct LossEntry {
  int iter = 0;
  double loss = 0.0;
};

struct ProfilePoint {
  double phi = 0.0;
  double mse = 0.0;
};

struct TrainingLog {
  double initial_loss = 0.0;
  std::vector<LossEntry> entries;  ///< every log_every iterations and the last
  RamseyModel final_model;
  std::vector<ProfilePoint> mse_profile;

  /// Loss of final_model (the last entry).
  double final_loss() const { return entries.back().loss; }
};

struct LossGradient {
  std::vector<double> angles;  ///< encoder angles then decoder angles
  double a = 0.0;
};

/// sum_x w_x MSE(phi_x).
double loss(const RamseyModel& model, const PhiGrid& grid);

/// Parameter-shift partials for every angle and the analytic partial in a.
LossGradient gradient(const RamseyModel& model, const PhiGrid& grid);

/// MSE(phi_x) for every grid point in grid order.
std::vector<ProfilePoint> mse_profile(const RamseyModel& model, const PhiGrid& grid);

/// Copy of `shape` with seeded normal angles and the configured a.
RamseyModel initialize_model(const RamseyModel& shape, const PhiGrid& grid,
                             const TrainConfig& config);

/// Plain gradient descent from `model`. Throws TrainingError on a
/// non-finite loss or gradient, naming the iteration and parameters.
TrainingLog train(RamseyModel model, const PhiGrid& grid, const TrainConfig& config);

struct SweepOutcome {
  TrainConfig config;
  std::optional<TrainingLog> log;
  std::string error;  ///< set when log is empty
};

/// One initialize+train run per config, results in config order. A failing
/// run is reported in its outcome and does not stop the others. Throws
/// SizeError for an empty config list.
std::vector<SweepOutcome> sweep(const RamseyModel& shape, const PhiGrid& grid,
                                const std::vector<TrainConfig>& configs);

}  // namespace qmetro
