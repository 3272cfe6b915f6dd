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

#include "qmetro/metrology.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numbers>
#include <string>

#include "qmetro/errors.hpp"

namespace qmetro {

int layer_width(int n_qubits) {
  if (n_qubits < 1) throw SizeError("layer_width needs n_qubits >= 1");
  return 2 * n_qubits;
}

RamseyModel RamseyModel::zeros(int n_qubits, int ec_depth, int dc_depth, double a) {
  RamseyModel m;
  m.n_qubits = n_qubits;
  m.ec_depth = ec_depth;
  m.dc_depth = dc_depth;
  m.theta_ec.assign(static_cast<std::size_t>(ec_depth * layer_width(n_qubits)), 0.0);
  m.theta_dc.assign(static_cast<std::size_t>(dc_depth * layer_width(n_qubits)), 0.0);
  m.a = a;
  return m;
}

void RamseyModel::validate() const {
  if (n_qubits < 1 || n_qubits > kMaxQubits) throw SpecError("n_qubits out of range");
  if (ec_depth < 0 || dc_depth < 0) throw SpecError("depths must be non-negative");
  const auto width = static_cast<std::size_t>(layer_width(n_qubits));
  if (theta_ec.size() != static_cast<std::size_t>(ec_depth) * width) {
    throw SpecError("theta_ec has " + std::to_string(theta_ec.size()) +
                    " angles, expected " +
                    std::to_string(static_cast<std::size_t>(ec_depth) * width));
  }
  if (theta_dc.size() != static_cast<std::size_t>(dc_depth) * width) {
    throw SpecError("theta_dc has " + std::to_string(theta_dc.size()) +
                    " angles, expected " +
                    std::to_string(static_cast<std::size_t>(dc_depth) * width));
  }
  for (double t : theta_ec) {
    if (!std::isfinite(t)) throw SpecError("non-finite encoder angle");
  }
  for (double t : theta_dc) {
    if (!std::isfinite(t)) throw SpecError("non-finite decoder angle");
  }
  if (!std::isfinite(a)) throw SpecError("non-finite estimator scale");
}

std::vector<double> RamseyModel::angles() const {
  std::vector<double> out(theta_ec);
  out.insert(out.end(), theta_dc.begin(), theta_dc.end());
  return out;
}

void RamseyModel::set_angles(std::span<const double> values) {
  if (values.size() != angle_count()) throw SizeError("angle vector size mismatch");
  std::copy_n(values.begin(), theta_ec.size(), theta_ec.begin());
  std::copy(values.begin() + static_cast<std::ptrdiff_t>(theta_ec.size()),
            values.end(), theta_dc.begin());
}

std::vector<GateSpec> variational_block_gates(int n_qubits,
                                              std::span<const double> angles,
                                              int depth) {
  const auto width = static_cast<std::size_t>(layer_width(n_qubits));
  if (depth < 0 || angles.size() != static_cast<std::size_t>(depth) * width) {
    throw SpecError("variational block expects depth * layer_width angles");
  }
  std::vector<GateSpec> gates;
  gates.reserve(static_cast<std::size_t>(depth) * (width + static_cast<std::size_t>(n_qubits)));
  for (int layer = 0; layer < depth; ++layer) {
    const std::size_t off = static_cast<std::size_t>(layer) * width;
    for (int q = 0; q < n_qubits; ++q) {
      gates.push_back(GateSpec::ry(q, angles[off + 2 * static_cast<std::size_t>(q)]));
      gates.push_back(GateSpec::rz(q, angles[off + 2 * static_cast<std::size_t>(q) + 1]));
    }
    for (int q = 0; q + 1 < n_qubits; ++q) gates.push_back(GateSpec::cnot(q, q + 1));
  }
  return gates;
}

ProbeCircuit to_probe(const RamseyModel& model) {
  model.validate();
  return ProbeCircuit{
      model.n_qubits,
      variational_block_gates(model.n_qubits, model.theta_ec, model.ec_depth),
      variational_block_gates(model.n_qubits, model.theta_dc, model.dc_depth)};
}

ProbeCircuit ramsey_fringe_probe() {
  const double half_pi = std::numbers::pi / 2;
  return ProbeCircuit{1, {GateSpec::ry(0, half_pi)}, {GateSpec::ry(0, half_pi)}};
}

ProbeCircuit ghz_probe(int n_qubits) {
  if (n_qubits < 1 || n_qubits > kMaxQubits) throw SizeError("GHZ probe size out of range");
  ProbeCircuit p{n_qubits, {}, {}};
  p.encoder.push_back(GateSpec::h(0));
  for (int q = 0; q + 1 < n_qubits; ++q) p.encoder.push_back(GateSpec::cnot(q, q + 1));
  for (int q = n_qubits - 2; q >= 0; --q) p.decoder.push_back(GateSpec::cnot(q, q + 1));
  p.decoder.push_back(GateSpec::h(0));
  return p;
}

StateVector apply_variational_block(StateVector state,
                                    std::span<const double> angles, int depth) {
  for (const auto& g : variational_block_gates(state.n_qubits(), angles, depth)) {
    state.apply(g);
  }
  return state;
}

StateVector apply_phase_imprint(StateVector state, double phi) {
  state.apply_collective_rz(phi);
  return state;
}

OutcomeDistribution outcome_distribution_from(const StateVector& encoded,
                                              std::span<const GateSpec> decoder,
                                              double phi) {
  StateVector s = encoded;
  s.apply_collective_rz(phi);
  for (const auto& g : decoder) s.apply(g);

  const int n = s.n_qubits();
  OutcomeDistribution out;
  out.m_values.reserve(static_cast<std::size_t>(n) + 1);
  for (int w = 0; w <= n; ++w) out.m_values.push_back(2 * w - n);
  out.probs.assign(static_cast<std::size_t>(n) + 1, 0.0);
  const auto amps = s.amplitudes();
  for (std::size_t k = 0; k < amps.size(); ++k) {
    out.probs[static_cast<std::size_t>(std::popcount(k))] += std::norm(amps[k]);
  }
  return out;
}

OutcomeDistribution outcome_distribution(const ProbeCircuit& probe, double phi) {
  StateVector s = StateVector::zero(probe.n_qubits);
  for (const auto& g : probe.encoder) s.apply(g);
  return outcome_distribution_from(s, probe.decoder, phi);
}

OutcomeDistribution outcome_distribution(const RamseyModel& model, double phi) {
  return outcome_distribution(to_probe(model), phi);
}

double estimate(const RamseyModel& model, int m) {
  const int n = model.n_qubits;
  if (m < -n || m > n || ((m + n) % 2) != 0) {
    throw DomainError("m=" + std::to_string(m) + " is not an outcome for " +
                      std::to_string(n) + " qubits");
  }
  return model.a * m;
}

double mse_from_distribution(const OutcomeDistribution& dist, double a, double phi) {
  double mse = 0.0;
  for (std::size_t i = 0; i < dist.m_values.size(); ++i) {
    const double err = a * dist.m_values[i] - phi;
    mse += err * err * dist.probs[i];
  }
  return mse;
}

double mse_at_phi(const RamseyModel& model, double phi) {
  return mse_from_distribution(outcome_distribution(model, phi), model.a, phi);
}

}  // namespace qmetro
