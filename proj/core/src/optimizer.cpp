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

#include "qmetro/optimizer.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "qmetro/errors.hpp"
#include "rng.hpp"

namespace qmetro {

namespace {

// Encoder output is phi-independent, so it is prepared once per parameter set.
StateVector encode(const RamseyModel& model) {
  return apply_variational_block(StateVector::zero(model.n_qubits), model.theta_ec,
                                 model.ec_depth);
}

double loss_impl(const RamseyModel& model, const PhiGrid& grid) {
  const StateVector encoded = encode(model);
  const auto decoder = variational_block_gates(model.n_qubits, model.theta_dc, model.dc_depth);
  double total = 0.0;
  for (std::size_t x = 0; x < grid.phis.size(); ++x) {
    const auto dist = outcome_distribution_from(encoded, decoder, grid.phis[x]);
    total += grid.weights[x] * mse_from_distribution(dist, model.a, grid.phis[x]);
  }
  return total;
}

std::string snapshot(const RamseyModel& model) {
  std::ostringstream os;
  os.precision(17);
  os << "a=" << model.a << " angles=[";
  const auto angles = model.angles();
  for (std::size_t i = 0; i < angles.size(); ++i) os << (i ? ", " : "") << angles[i];
  os << "]";
  return os.str();
}

}  // namespace

void TrainConfig::validate() const {
  if (iterations < 1) throw SpecError("iterations must be >= 1");
  if (log_every < 1) throw SpecError("log_every must be >= 1");
  if (!(learning_rate >= 0.0) || !std::isfinite(learning_rate)) {
    throw SpecError("learning rate must be finite and non-negative");
  }
  if (!(init_scale >= 0.0)) throw SpecError("init_scale must be non-negative");
}

double loss(const RamseyModel& model, const PhiGrid& grid) {
  model.validate();
  return loss_impl(model, grid);
}

LossGradient gradient(const RamseyModel& model, const PhiGrid& grid) {
  model.validate();
  LossGradient g;
  const double shift = std::numbers::pi / 2;
  std::vector<double> angles = model.angles();
  g.angles.resize(angles.size());
  RamseyModel shifted = model;
  for (std::size_t j = 0; j < angles.size(); ++j) {
    const double saved = angles[j];
    angles[j] = saved + shift;
    shifted.set_angles(angles);
    const double plus = loss_impl(shifted, grid);
    angles[j] = saved - shift;
    shifted.set_angles(angles);
    const double minus = loss_impl(shifted, grid);
    angles[j] = saved;
    g.angles[j] = 0.5 * (plus - minus);
  }

  const StateVector encoded = encode(model);
  const auto decoder = variational_block_gates(model.n_qubits, model.theta_dc, model.dc_depth);
  for (std::size_t x = 0; x < grid.phis.size(); ++x) {
    const double phi = grid.phis[x];
    const auto dist = outcome_distribution_from(encoded, decoder, phi);
    double d = 0.0;
    for (std::size_t i = 0; i < dist.m_values.size(); ++i) {
      const double m = dist.m_values[i];
      d += 2.0 * (model.a * m - phi) * m * dist.probs[i];
    }
    g.a += grid.weights[x] * d;
  }
  return g;
}

std::vector<ProfilePoint> mse_profile(const RamseyModel& model, const PhiGrid& grid) {
  model.validate();
  const StateVector encoded = encode(model);
  const auto decoder = variational_block_gates(model.n_qubits, model.theta_dc, model.dc_depth);
  std::vector<ProfilePoint> out;
  out.reserve(grid.phis.size());
  for (double phi : grid.phis) {
    const auto dist = outcome_distribution_from(encoded, decoder, phi);
    out.push_back({phi, mse_from_distribution(dist, model.a, phi)});
  }
  return out;
}

RamseyModel initialize_model(const RamseyModel& shape, const PhiGrid& grid,
                             const TrainConfig& config) {
  config.validate();
  RamseyModel m = RamseyModel::zeros(shape.n_qubits, shape.ec_depth, shape.dc_depth, 0.0);
  detail::Rng rng(config.seed);
  for (auto& t : m.theta_ec) t = config.init_scale * rng.normal();
  for (auto& t : m.theta_dc) t = config.init_scale * rng.normal();
  m.a = config.a_init.value_or(grid.mean / shape.n_qubits);
  return m;
}

TrainingLog train(RamseyModel model, const PhiGrid& grid, const TrainConfig& config) {
  config.validate();
  model.validate();
  TrainingLog log;
  log.initial_loss = loss_impl(model, grid);
  if (!std::isfinite(log.initial_loss)) {
    throw TrainingError("non-finite loss at iteration 0: " + snapshot(model));
  }

  std::vector<double> angles = model.angles();
  for (int it = 1; it <= config.iterations; ++it) {
    const LossGradient g = gradient(model, grid);
    for (std::size_t j = 0; j < angles.size(); ++j) {
      angles[j] -= config.learning_rate * g.angles[j];
    }
    model.set_angles(angles);
    model.a -= config.learning_rate * g.a;

    bool finite = std::isfinite(model.a);
    for (double t : angles) finite = finite && std::isfinite(t);
    if (!finite) {
      throw TrainingError("non-finite parameters at iteration " + std::to_string(it) + ": " +
                          snapshot(model));
    }
    if (it % config.log_every == 0 || it == config.iterations) {
      const double l = loss_impl(model, grid);
      if (!std::isfinite(l)) {
        throw TrainingError("non-finite loss at iteration " + std::to_string(it) + ": " +
                            snapshot(model));
      }
      log.entries.push_back({it, l});
    }
  }
  log.mse_profile = mse_profile(model, grid);
  log.final_model = std::move(model);
  return log;
}

std::vector<SweepOutcome> sweep(const RamseyModel& shape, const PhiGrid& grid,
                                const std::vector<TrainConfig>& configs) {
  if (configs.empty()) throw SizeError("sweep needs at least one config");
  std::vector<SweepOutcome> out;
  out.reserve(configs.size());
  for (const auto& cfg : configs) {
    SweepOutcome o{cfg, std::nullopt, {}};
    try {
      o.log = train(initialize_model(shape, grid, cfg), grid, cfg);
    } catch (const std::exception& e) {
      o.error = e.what();
    }
    out.push_back(std::move(o));
  }
  return out;
}

}  // namespace qmetro
