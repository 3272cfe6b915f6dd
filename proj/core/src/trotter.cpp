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

#include "qmetro/trotter.hpp"

#include <algorithm>
#include <bit>
#include <cctype>
#include <cmath>

#include "qmetro/errors.hpp"

namespace qmetro {

namespace {

Complex evolution_phase(double lambda, double t) { return std::polar(1.0, -lambda * t); }

CMatrix pauli_single(char p) {
  using namespace std::complex_literals;
  switch (p) {
    case 'I': return CMatrix(2, {1.0, 0.0, 0.0, 1.0});
    case 'X': return CMatrix(2, {0.0, 1.0, 1.0, 0.0});
    case 'Y': return CMatrix(2, {0.0, -1i, 1i, 0.0});
    case 'Z': return CMatrix(2, {1.0, 0.0, 0.0, -1.0});
    default: break;
  }
  throw SpecError(std::string("invalid Pauli character '") + p + "'");
}

CMatrix kron(const CMatrix& a, const CMatrix& b) {
  const std::size_t na = a.dim(), nb = b.dim();
  CMatrix out(na * nb);
  for (std::size_t i = 0; i < na; ++i)
    for (std::size_t j = 0; j < na; ++j)
      for (std::size_t k = 0; k < nb; ++k)
        for (std::size_t l = 0; l < nb; ++l) out(i * nb + k, j * nb + l) = a(i, j) * b(k, l);
  return out;
}

CMatrix matrix_power(CMatrix base, int exp) {
  CMatrix result = CMatrix::identity(base.dim());
  while (exp > 0) {
    if (exp & 1) result = result * base;
    exp >>= 1;
    if (exp > 0) base = base * base;
  }
  return result;
}

}  // namespace

HermitianOperator::HermitianOperator(CMatrix m) : m_(std::move(m)) {
  if (m_.dim() < 1 || m_.dim() > kMaxOperatorDim || !std::has_single_bit(m_.dim())) {
    throw SpecError("operator dimension must be a power of two <= 64");
  }
  if (m_.hermiticity_defect() > 1e-12) throw SpecError("operator is not Hermitian");
}

std::vector<PauliTerm> parse_pauli_sum(const std::string& text) {
  std::vector<PauliTerm> terms;
  std::size_t i = 0;
  auto skip_ws = [&] {
    while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
  };
  skip_ws();
  if (i == text.size()) throw SpecError("empty Hamiltonian");
  bool first = true;
  while (i < text.size()) {
    double sign = 1.0;
    skip_ws();
    if (i < text.size() && (text[i] == '+' || text[i] == '-')) {
      sign = text[i] == '-' ? -1.0 : 1.0;
      ++i;
      skip_ws();
    } else if (!first) {
      throw SpecError("expected '+' or '-' between terms in '" + text + "'");
    }
    first = false;

    double coeff = 1.0;
    const std::size_t start = i;
    while (i < text.size() &&
           (std::isdigit(static_cast<unsigned char>(text[i])) || text[i] == '.' ||
            text[i] == 'e' ||
            ((text[i] == '+' || text[i] == '-') && i > start && text[i - 1] == 'e'))) {
      ++i;
    }
    if (i > start) {
      try {
        std::size_t used = 0;
        coeff = std::stod(text.substr(start, i - start), &used);
        if (used != i - start) throw SpecError("bad coefficient");
      } catch (const std::logic_error&) {
        throw SpecError("bad coefficient in '" + text + "'");
      }
      skip_ws();
      if (i < text.size() && text[i] == '*') ++i;
      skip_ws();
    }
    std::string paulis;
    while (i < text.size() && std::isalpha(static_cast<unsigned char>(text[i]))) {
      const char c = static_cast<char>(std::toupper(static_cast<unsigned char>(text[i])));
      if (c != 'I' && c != 'X' && c != 'Y' && c != 'Z') {
        throw SpecError(std::string("invalid Pauli character '") + text[i] + "'");
      }
      paulis.push_back(c);
      ++i;
    }
    if (paulis.empty()) throw SpecError("missing Pauli string in '" + text + "'");
    terms.push_back({sign * coeff, paulis});
    skip_ws();
  }
  const auto len = terms.front().paulis.size();
  for (const auto& t : terms) {
    if (t.paulis.size() != len) throw SpecError("Pauli strings have inconsistent lengths");
  }
  return terms;
}

CMatrix pauli_string_matrix(const std::string& paulis) {
  if (paulis.empty()) throw SpecError("empty Pauli string");
  CMatrix m = pauli_single(paulis[0]);
  for (std::size_t k = 1; k < paulis.size(); ++k) m = kron(m, pauli_single(paulis[k]));
  return m;
}

HermitianOperator pauli_sum(const std::vector<PauliTerm>& terms) {
  if (terms.empty()) throw SpecError("empty Pauli sum");
  const std::size_t n = terms.front().paulis.size();
  if (n == 0 || (std::size_t{1} << n) > kMaxOperatorDim) {
    throw SpecError("Pauli strings must cover 1..6 qubits");
  }
  CMatrix sum(std::size_t{1} << n);
  for (const auto& t : terms) {
    if (t.paulis.size() != n) throw SpecError("Pauli strings have inconsistent lengths");
    sum += Complex(t.coefficient) * pauli_string_matrix(t.paulis);
  }
  return HermitianOperator(std::move(sum));
}

UnitaryMatrix exact_evolution(const HermitianOperator& h, double t) {
  return hermitian_function(hermitian_eigen(h.matrix()), evolution_phase, t);
}

UnitaryMatrix trotter_first_order(const std::vector<HermitianOperator>& terms,
                                  double t, int steps) {
  if (steps < 1) throw DomainError("Trotter steps must be >= 1");
  if (terms.empty()) throw SpecError("no Hamiltonian terms");
  const double dt = t / steps;
  CMatrix step = CMatrix::identity(terms.front().dim());
  // Product written left to right in list order.
  for (const auto& term : terms) step = step * exact_evolution(term, dt);
  return matrix_power(std::move(step), steps);
}

UnitaryMatrix trotter_first_order(const std::vector<PauliTerm>& terms, double t,
                                  int steps) {
  std::vector<HermitianOperator> ops;
  ops.reserve(terms.size());
  for (const auto& term : terms) ops.push_back(pauli_sum({term}));
  return trotter_first_order(ops, t, steps);
}

double schatten_inf_norm(const CMatrix& m) {
  const auto eig = hermitian_eigen(m.adjoint() * m);
  if (eig.values.empty()) return 0.0;
  return std::sqrt(std::max(0.0, eig.values.back()));
}

double simulation_error(const UnitaryMatrix& exact, const UnitaryMatrix& approx) {
  if (exact.dim() != approx.dim()) throw SizeError("unitary dimension mismatch");
  return schatten_inf_norm(exact - approx);
}

double time_block_error_bound(double h_norm, double total_time, int n_blocks, int k) {
  if (n_blocks < 1 || k < 1) throw DomainError("n_blocks and k must be >= 1");
  return h_norm * h_norm * std::pow(total_time, 3) / 3.0 *
         std::pow(total_time / n_blocks, 2 * k - 1);
}

}  // namespace qmetro
