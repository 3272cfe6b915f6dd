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

#include <string>
#include <vector>

#include "qmetro/linalg.hpp"

namespace qmetro {

inline constexpr std::size_t kMaxOperatorDim = 64;

/// Dense Hermitian operator (hbar = 1).
class HermitianOperator {
 public:
  /// Throws SpecError unless the matrix is Hermitian within 1e-12 and its
  /// dimension is a power of two no larger than 64.
  explicit HermitianOperator(CMatrix m);
  const CMatrix& matrix() const noexcept { return m_; }
  std::size_t dim() const noexcept { return m_.dim(); }

 private:
  CMatrix m_;
};

/// Square matrix that is unitary within 1e-9.
using UnitaryMatrix = CMatrix;

struct PauliTerm {
  double coefficient = 1.0;
  std::string paulis;  ///< over {I, X, Y, Z}; leftmost character acts on the highest qubit
};

/// Parses "X+Z", "0.5*XX - 1.2*ZI", "-ZZ" into terms. Throws SpecError.
std::vector<PauliTerm> parse_pauli_sum(const std::string& text);

/// Matrix of a single Pauli string.
CMatrix pauli_string_matrix(const std::string& paulis);

HermitianOperator pauli_sum(const std::vector<PauliTerm>& terms);

/// Plan for splitting total_time into n_blocks equal steps.
struct TimeBlockPlan {
  double total_time = 1.0;
  int n_blocks = 1;
  int order = 1;
  double dt() const { return total_time / n_blocks; }
};

/// e^{-iHt} via Hermitian eigendecomposition.
UnitaryMatrix exact_evolution(const HermitianOperator& h, double t);

/// (prod_j e^{-i H_j t/steps})^steps, terms applied in list order.
UnitaryMatrix trotter_first_order(const std::vector<PauliTerm>& terms, double t,
                                  int steps);
UnitaryMatrix trotter_first_order(const std::vector<HermitianOperator>& terms,
                                  double t, int steps);

/// Largest singular value.
double schatten_inf_norm(const CMatrix& m);

/// ||exact - approx||_inf.
double simulation_error(const UnitaryMatrix& exact, const UnitaryMatrix& approx);

/// ||H||^2 T^3 / 3 * (T / n_blocks)^(2k - 1), evaluated as written (hbar = 1).
double time_block_error_bound(double h_norm, double total_time, int n_blocks, int k);

}  // namespace qmetro
