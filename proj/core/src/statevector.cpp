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

#include "qmetro/statevector.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numbers>
#include <string>

#include "qmetro/errors.hpp"
#include "rng.hpp"

namespace qmetro {

namespace {

void check_qubit(int q, int n) {
  if (q < 0 || q >= n) {
    throw IndexError("qubit index " + std::to_string(q) +
                     " out of range for " + std::to_string(n) + " qubits");
  }
}

void check_register_size(int n) {
  if (n < 1 || n > kMaxQubits) {
    throw SizeError("register size must be in [1, " +
                    std::to_string(kMaxQubits) + "], got " +
                    std::to_string(n));
  }
}

}  // namespace

std::array<Complex, 4> single_qubit_matrix(const GateSpec& gate) {
  using namespace std::complex_literals;
  if (gate.is_rotation() && !gate.angle) {
    throw SpecError("rotation gate requires an angle");
  }
  if (!gate.is_rotation() && gate.angle) {
    throw SpecError("angle given for a non-rotation gate");
  }
  const double s2 = 1.0 / std::numbers::sqrt2;
  switch (gate.kind) {
    case GateKind::Hadamard:
      return {s2, s2, s2, -s2};
    case GateKind::PauliX:
      return {0.0, 1.0, 1.0, 0.0};
    case GateKind::RotX: {
      const double c = std::cos(*gate.angle / 2), s = std::sin(*gate.angle / 2);
      return {c, -1i * s, -1i * s, c};
    }
    case GateKind::RotY: {
      const double c = std::cos(*gate.angle / 2), s = std::sin(*gate.angle / 2);
      return {c, -s, s, c};
    }
    case GateKind::RotZ: {
      const double h = *gate.angle / 2;
      return {std::polar(1.0, -h), 0.0, 0.0, std::polar(1.0, h)};
    }
    case GateKind::CNOT:
      break;
  }
  throw SpecError("CNOT is not a single-qubit gate");
}

std::string to_bitstring(std::uint64_t index, int n_qubits) {
  std::string bits(static_cast<std::size_t>(n_qubits), '0');
  for (int i = 0; i < n_qubits; ++i) {
    if ((index >> i) & 1U) bits[static_cast<std::size_t>(n_qubits - 1 - i)] = '1';
  }
  return bits;
}

double BitstringDistribution::probability(const std::string& bits) const {
  if (bits.size() != static_cast<std::size_t>(n_qubits)) {
    throw SizeError("bitstring length does not match register size");
  }
  std::uint64_t index = 0;
  for (char c : bits) {
    if (c != '0' && c != '1') throw SpecError("bitstring must contain only 0/1");
    index = (index << 1) | static_cast<std::uint64_t>(c == '1');
  }
  return probabilities[index];
}

std::map<std::string, double> BitstringDistribution::nonzero() const {
  std::map<std::string, double> out;
  for (std::size_t k = 0; k < probabilities.size(); ++k) {
    if (probabilities[k] > 0.0) out.emplace(to_bitstring(k, n_qubits), probabilities[k]);
  }
  return out;
}

StateVector StateVector::zero(int n_qubits) {
  check_register_size(n_qubits);
  std::vector<Complex> amps(std::size_t{1} << n_qubits);
  amps[0] = 1.0;
  return StateVector(n_qubits, std::move(amps));
}

StateVector StateVector::from_amplitudes(std::vector<Complex> amplitudes) {
  const std::size_t dim = amplitudes.size();
  if (dim < 2 || !std::has_single_bit(dim)) {
    throw SizeError("amplitude count must be a power of two >= 2");
  }
  const int n = std::countr_zero(dim);
  check_register_size(n);
  double norm = 0.0;
  for (const auto& a : amplitudes) norm += std::norm(a);
  if (std::abs(norm - 1.0) > 1e-10) {
    throw DomainError("amplitudes are not normalized");
  }
  return StateVector(n, std::move(amplitudes));
}

double StateVector::norm_squared() const noexcept {
  double s = 0.0;
  for (const auto& a : amps_) s += std::norm(a);
  return s;
}

void StateVector::apply(const GateSpec& gate) {
  if (gate.kind == GateKind::CNOT) {
    if (gate.angle) throw SpecError("angle given for a non-rotation gate");
    if (gate.targets.size() != 2) throw SpecError("CNOT takes (control, target)");
    check_qubit(gate.targets[0], n_qubits_);
    check_qubit(gate.targets[1], n_qubits_);
    if (gate.targets[0] == gate.targets[1]) {
      throw SpecError("CNOT control and target must differ");
    }
    apply_cnot(gate.targets[0], gate.targets[1]);
    return;
  }
  if (gate.targets.size() != 1) throw SpecError("single-qubit gate takes one target");
  check_qubit(gate.targets[0], n_qubits_);
  apply_single(gate.targets[0], single_qubit_matrix(gate));
}

void StateVector::apply_single(int q, const std::array<Complex, 4>& u) {
  const std::size_t stride = std::size_t{1} << q;
  for (std::size_t base = 0; base < amps_.size(); base += 2 * stride) {
    for (std::size_t k = base; k < base + stride; ++k) {
      const Complex a0 = amps_[k];
      const Complex a1 = amps_[k + stride];
      amps_[k] = u[0] * a0 + u[1] * a1;
      amps_[k + stride] = u[2] * a0 + u[3] * a1;
    }
  }
}

void StateVector::apply_cnot(int control, int target) {
  const std::size_t cmask = std::size_t{1} << control;
  const std::size_t tmask = std::size_t{1} << target;
  for (std::size_t k = 0; k < amps_.size(); ++k) {
    if ((k & cmask) && !(k & tmask)) std::swap(amps_[k], amps_[k | tmask]);
  }
}

void StateVector::apply_collective_rz(double phi) {
  const int n = n_qubits_;
  // Phases depend only on Hamming weight.
  std::vector<Complex> phase(static_cast<std::size_t>(n) + 1);
  for (int w = 0; w <= n; ++w) {
    phase[static_cast<std::size_t>(w)] = std::polar(1.0, -0.5 * phi * (n - 2 * w));
  }
  for (std::size_t k = 0; k < amps_.size(); ++k) {
    amps_[k] *= phase[static_cast<std::size_t>(std::popcount(k))];
  }
}

StateVector new_zero_state(int n_qubits) { return StateVector::zero(n_qubits); }

StateVector apply_gate(StateVector state, const GateSpec& gate) {
  state.apply(gate);
  return state;
}

BitstringDistribution measurement_distribution(const StateVector& state) {
  BitstringDistribution dist;
  dist.n_qubits = state.n_qubits();
  dist.probabilities.reserve(state.dim());
  for (const auto& a : state.amplitudes()) dist.probabilities.push_back(std::norm(a));
  return dist;
}

std::vector<std::uint64_t> sample_indices(const StateVector& state,
                                          std::size_t shots,
                                          std::uint64_t seed) {
  if (shots == 0) throw SizeError("shots must be >= 1");
  std::vector<double> cdf;
  cdf.reserve(state.dim());
  double acc = 0.0;
  for (const auto& a : state.amplitudes()) {
    acc += std::norm(a);
    cdf.push_back(acc);
  }
  detail::Rng rng(seed);
  std::vector<std::uint64_t> out;
  out.reserve(shots);
  const auto last = cdf.size() - 1;
  for (std::size_t s = 0; s < shots; ++s) {
    const double u = rng.uniform() * acc;
    auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
    auto idx = static_cast<std::size_t>(it - cdf.begin());
    // Skip trailing zero-probability states that rounding could land on.
    idx = std::min(idx, last);
    while (idx > 0 && std::norm(state[idx]) == 0.0) --idx;
    out.push_back(idx);
  }
  return out;
}

std::vector<std::string> sample_bitstrings(const StateVector& state,
                                           std::size_t shots,
                                           std::uint64_t seed) {
  const auto idx = sample_indices(state, shots, seed);
  std::vector<std::string> out;
  out.reserve(idx.size());
  for (auto k : idx) out.push_back(to_bitstring(k, state.n_qubits()));
  return out;
}

Complex inner_product(const StateVector& a, const StateVector& b) {
  if (a.n_qubits() != b.n_qubits()) {
    throw SizeError("inner product of states with different qubit counts");
  }
  Complex s = 0.0;
  for (std::size_t k = 0; k < a.dim(); ++k) s += std::conj(a[k]) * b[k];
  return s;
}

}  // namespace qmetro
