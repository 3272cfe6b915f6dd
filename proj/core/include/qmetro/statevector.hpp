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

#include <array>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace qmetro {

using Complex = std::complex<double>;

inline constexpr int kMaxQubits = 10;

enum class GateKind { Hadamard, PauliX, RotX, RotY, RotZ, CNOT };

/// A gate application. Rotations carry an angle; CNOT targets are
/// (control, target). Rotation convention is R_P(theta) = exp(-i theta P / 2).
struct GateSpec {
  GateKind kind;
  std::optional<double> angle;
  std::vector<int> targets;

  static GateSpec h(int q) { return {GateKind::Hadamard, std::nullopt, {q}}; }
  static GateSpec x(int q) { return {GateKind::PauliX, std::nullopt, {q}}; }
  static GateSpec rx(int q, double theta) { return {GateKind::RotX, theta, {q}}; }
  static GateSpec ry(int q, double theta) { return {GateKind::RotY, theta, {q}}; }
  static GateSpec rz(int q, double theta) { return {GateKind::RotZ, theta, {q}}; }
  static GateSpec cnot(int control, int target) {
    return {GateKind::CNOT, std::nullopt, {control, target}};
  }

  bool is_rotation() const noexcept {
    return kind == GateKind::RotX || kind == GateKind::RotY ||
           kind == GateKind::RotZ;
  }
};

/// The 2x2 unitary of a single-qubit gate, row-major.
std::array<Complex, 4> single_qubit_matrix(const GateSpec& gate);

/// Exact outcome probabilities indexed by basis state. Qubit 0 is the
/// least-significant bit of the index and the rightmost character of the
/// bitstring.
struct BitstringDistribution {
  int n_qubits = 0;
  std::vector<double> probabilities;

  double probability(const std::string& bits) const;
  /// Entries with non-zero probability keyed by bitstring.
  std::map<std::string, double> nonzero() const;
};

std::string to_bitstring(std::uint64_t index, int n_qubits);

/// Dense statevector of n <= 10 qubits. Amplitude k belongs to the basis
/// state whose bit i is the value of qubit i.
class StateVector {
 public:
  /// |0...0> on n qubits.
  static StateVector zero(int n_qubits);
  /// Takes ownership of amplitudes; length must be a power of two and the
  /// vector must be normalized within 1e-10.
  static StateVector from_amplitudes(std::vector<Complex> amplitudes);

  int n_qubits() const noexcept { return n_qubits_; }
  std::size_t dim() const noexcept { return amps_.size(); }
  std::span<const Complex> amplitudes() const noexcept { return amps_; }
  const Complex& operator[](std::size_t k) const { return amps_[k]; }

  double norm_squared() const noexcept;

  /// In-place variant of apply_gate.
  void apply(const GateSpec& gate);
  /// Multiplies amplitude k by exp(-i (phi/2) (n - 2 popcount(k))).
  void apply_collective_rz(double phi);

 private:
  StateVector(int n, std::vector<Complex> amps)
      : n_qubits_(n), amps_(std::move(amps)) {}

  void apply_single(int q, const std::array<Complex, 4>& u);
  void apply_cnot(int control, int target);

  int n_qubits_;
  std::vector<Complex> amps_;
};

StateVector new_zero_state(int n_qubits);
StateVector apply_gate(StateVector state, const GateSpec& gate);
BitstringDistribution measurement_distribution(const StateVector& state);

/// Basis-state indices drawn i.i.d. from the exact distribution.
std::vector<std::uint64_t> sample_indices(const StateVector& state,
                                          std::size_t shots,
                                          std::uint64_t seed);
std::vector<std::string> sample_bitstrings(const StateVector& state,
                                           std::size_t shots,
                                           std::uint64_t seed);

/// <a|b>, conjugating a.
Complex inner_product(const StateVector& a, const StateVector& b);

}  // namespace qmetro
