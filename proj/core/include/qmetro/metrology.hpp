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

#include <span>
#include <vector>

#include "qmetro/statevector.hpp"

namespace qmetro {

/// Angles per variational layer: one RotY and one RotZ per qubit.
int layer_width(int n_qubits);

/// Variational Ramsey interferometer. The encoder and decoder are stacks of
/// layers (RotY, RotZ on every qubit, then a CNOT chain i -> i+1); the phase
/// enters as RotZ(phi) on every qubit between them. Estimates are a * m
/// where m = (#1s - #0s) of the measured bitstring.
struct RamseyModel {
  int n_qubits = 2;
  int ec_depth = 3;
  int dc_depth = 3;
  std::vector<double> theta_ec;
  std::vector<double> theta_dc;
  double a = 0.0;

  /// Model with every angle zero.
  static RamseyModel zeros(int n_qubits, int ec_depth, int dc_depth, double a);

  /// Throws SpecError on shape mismatch or non-finite parameters.
  void validate() const;

  std::size_t angle_count() const noexcept {
    return theta_ec.size() + theta_dc.size();
  }
  /// Encoder angles followed by decoder angles.
  std::vector<double> angles() const;
  void set_angles(std::span<const double> values);
};

/// A phase probe in general form: encoder gates, collective RotZ(phi),
/// decoder gates, then a computational-basis measurement.
struct ProbeCircuit {
  int n_qubits = 1;
  std::vector<GateSpec> encoder;
  std::vector<GateSpec> decoder;
};

/// Gate list of `depth` variational layers.
std::vector<GateSpec> variational_block_gates(int n_qubits,
                                              std::span<const double> angles,
                                              int depth);
ProbeCircuit to_probe(const RamseyModel& model);

/// Textbook single-qubit Ramsey sequence: RotY(pi/2), phase, RotY(pi/2).
ProbeCircuit ramsey_fringe_probe();
/// GHZ probe: H on qubit 0 and a CNOT chain, phase, then the reverse.
ProbeCircuit ghz_probe(int n_qubits);

struct OutcomeDistribution {
  std::vector<int> m_values;  ///< -n, -n+2, ..., n
  std::vector<double> probs;  ///< parallel to m_values
};

StateVector apply_variational_block(StateVector state,
                                    std::span<const double> angles, int depth);
StateVector apply_phase_imprint(StateVector state, double phi);

/// Outcome distribution from a prepared pre-phase state and decoder.
OutcomeDistribution outcome_distribution_from(const StateVector& encoded,
                                              std::span<const GateSpec> decoder,
                                              double phi);
OutcomeDistribution outcome_distribution(const ProbeCircuit& probe, double phi);
OutcomeDistribution outcome_distribution(const RamseyModel& model, double phi);

/// a * m; throws DomainError if m is not a reachable outcome.
double estimate(const RamseyModel& model, int m);

/// Expected squared error of the estimator at phi under the exact
/// outcome distribution.
double mse_at_phi(const RamseyModel& model, double phi);
double mse_from_distribution(const OutcomeDistribution& dist, double a, double phi);

}  // namespace qmetro
