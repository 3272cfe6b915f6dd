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

#include <gtest/gtest.h>

#include <Eigen/Dense>
#include <cmath>
#include <numbers>
#include <random>
#include <unsupported/Eigen/MatrixFunctions>

#include "qmetro/errors.hpp"

namespace qmetro {
namespace {

using namespace std::complex_literals;

// Independent reference: Eigen's Pade expm and JacobiSVD.
Eigen::MatrixXcd ToEigen(const CMatrix& m) {
  Eigen::MatrixXcd e(m.dim(), m.dim());
  for (std::size_t r = 0; r < m.dim(); ++r)
    for (std::size_t c = 0; c < m.dim(); ++c) e(r, c) = m(r, c);
  return e;
}

CMatrix RandomHermitian(std::size_t dim, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  CMatrix m(dim);
  for (std::size_t r = 0; r < dim; ++r) {
    m(r, r) = g(rng);
    for (std::size_t c = r + 1; c < dim; ++c) {
      m(r, c) = Complex(g(rng), g(rng));
      m(c, r) = std::conj(m(r, c));
    }
  }
  return m;
}

CMatrix RandomMatrix(std::size_t dim, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  CMatrix m(dim);
  for (std::size_t r = 0; r < dim; ++r)
    for (std::size_t c = 0; c < dim; ++c) m(r, c) = Complex(g(rng), g(rng));
  return m;
}

TEST(PauliSum, Constructs) {
  const auto x = pauli_sum({{1.0, "X"}});
  EXPECT_EQ(max_abs_diff(x.matrix(), CMatrix(2, {0.0, 1.0, 1.0, 0.0})), 0.0);
  const auto xz = pauli_sum({{1.0, "Z"}, {1.0, "X"}});
  EXPECT_EQ(max_abs_diff(xz.matrix(), CMatrix(2, {1.0, 1.0, 1.0, -1.0})), 0.0);
  const auto zero = pauli_sum({{0.0, "ZZ"}});
  EXPECT_EQ(max_abs_diff(zero.matrix(), CMatrix(4)), 0.0);
  EXPECT_THROW(pauli_sum({{1.0, "X"}, {1.0, "ZZ"}}), SpecError);
}

TEST(PauliSum, LeftmostCharacterIsHighestQubit) {
  // Z on qubit 0 only: diag(1, -1, 1, -1) in LSB-first indexing.
  const auto m = pauli_string_matrix("IZ");
  EXPECT_EQ(m(1, 1), Complex(-1.0));
  EXPECT_EQ(m(2, 2), Complex(1.0));
}

TEST(ParsePauliSum, Grammar) {
  const auto t = parse_pauli_sum("0.5*XX - 1.25 ZI + IY");
  ASSERT_EQ(t.size(), 3u);
  EXPECT_DOUBLE_EQ(t[0].coefficient, 0.5);
  EXPECT_EQ(t[0].paulis, "XX");
  EXPECT_DOUBLE_EQ(t[1].coefficient, -1.25);
  EXPECT_EQ(t[2].paulis, "IY");
  EXPECT_EQ(parse_pauli_sum("X+Z").size(), 2u);
  EXPECT_DOUBLE_EQ(parse_pauli_sum("-2e-1*Z")[0].coefficient, -0.2);
  EXPECT_THROW(parse_pauli_sum("X+Q"), SpecError);
  EXPECT_THROW(parse_pauli_sum("X+ZZ"), SpecError);
  EXPECT_THROW(parse_pauli_sum(""), SpecError);
  EXPECT_THROW(parse_pauli_sum("X Z"), SpecError);
}

TEST(HermitianOperator, RejectsNonHermitian) {
  EXPECT_THROW(HermitianOperator(CMatrix(2, {0.0, 1.0, 2.0, 0.0})), SpecError);
  EXPECT_THROW(HermitianOperator(CMatrix(3)), SpecError);
}

TEST(HermitianEigen, MatchesEigenSolver) {
  std::mt19937_64 rng(1);
  for (std::size_t dim : {2u, 4u, 8u, 16u, 64u}) {
    const auto h = RandomHermitian(dim, rng);
    const auto ours = hermitian_eigen(h);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> ref(ToEigen(h));
    for (std::size_t j = 0; j < dim; ++j) {
      EXPECT_NEAR(ours.values[j], ref.eigenvalues()(static_cast<Eigen::Index>(j)), 1e-10);
    }
    EXPECT_LT(ours.vectors.unitarity_defect(), 1e-12);
  }
}

TEST(ExactEvolution, Basics) {
  const auto x = pauli_sum({{1.0, "X"}});
  EXPECT_LT(max_abs_diff(exact_evolution(x, 0.0), CMatrix::identity(2)), 1e-15);
  // e^{-iXt} = cos t I - i sin t X; at pi/2 this is -iX.
  const auto u = exact_evolution(x, std::numbers::pi / 2);
  EXPECT_LT(max_abs_diff(u, CMatrix(2, {0.0, -1i, -1i, 0.0})), 1e-10);
  const auto h = pauli_sum(parse_pauli_sum("0.3*XY + 1.1*ZZ - 0.7*IX"));
  EXPECT_LT(max_abs_diff(exact_evolution(h, 0.8) * exact_evolution(h, -0.8), CMatrix::identity(4)),
            1e-10);
}

TEST(ExactEvolutionProperty, UnitaryGroupAndMatchesPade) {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> ts(-2, 2);
  for (int trial = 0; trial < 30; ++trial) {
    const std::size_t dim = std::size_t{2} << (trial % 4);
    const HermitianOperator h(RandomHermitian(dim, rng));
    const double t1 = ts(rng), t2 = ts(rng);
    const auto u1 = exact_evolution(h, t1);
    EXPECT_LT(u1.unitarity_defect(), 1e-9);
    EXPECT_LT(max_abs_diff(u1 * exact_evolution(h, t2), exact_evolution(h, t1 + t2)), 1e-9);
    const Eigen::MatrixXcd ref = (Complex(0, -t1) * ToEigen(h.matrix())).exp();
    EXPECT_LT((ToEigen(u1) - ref).cwiseAbs().maxCoeff(), 1e-9);
  }
}

TEST(TrotterFirstOrder, SingleTermIsExact) {
  const auto terms = parse_pauli_sum("0.9*XY");
  const auto exact = exact_evolution(pauli_sum(terms), 1.3);
  for (int steps : {1, 3, 10}) {
    EXPECT_LT(max_abs_diff(trotter_first_order(terms, 1.3, steps), exact), 1e-10);
  }
}

TEST(TrotterFirstOrder, CommutingTermsAreExact) {
  const auto terms = parse_pauli_sum("ZI + IZ");
  const auto exact = exact_evolution(pauli_sum(terms), 1.0);
  EXPECT_LT(simulation_error(exact, trotter_first_order(terms, 1.0, 1)), 1e-10);
}

TEST(TrotterFirstOrder, ErrorShrinksWithSteps) {
  const auto terms = parse_pauli_sum("X+Z");
  const auto exact = exact_evolution(pauli_sum(terms), 1.0);
  const double e1 = simulation_error(exact, trotter_first_order(terms, 1.0, 1));
  const double e2 = simulation_error(exact, trotter_first_order(terms, 1.0, 2));
  const double e4 = simulation_error(exact, trotter_first_order(terms, 1.0, 4));
  EXPECT_LT(e4, e2);
  EXPECT_LT(e2, e1);
  EXPECT_THROW(trotter_first_order(terms, 1.0, 0), DomainError);
}

TEST(TrotterFirstOrder, RegressionAgainstScipyReference) {
  // ||expm(-i(X+Z)) - (expm(-iX/s) expm(-iZ/s))^s||_2 from scipy.linalg.
  const std::pair<int, double> frozen[] = {
      {1, 0.7992141739660588},   {2, 0.3624099238836896},   {4, 0.1762609676177643},
      {8, 0.08751272753596256},  {16, 0.04367921053190226}, {32, 0.021829963610802194}};
  const auto terms = parse_pauli_sum("X+Z");
  const auto exact = exact_evolution(pauli_sum(terms), 1.0);
  for (auto [steps, expected] : frozen) {
    EXPECT_NEAR(simulation_error(exact, trotter_first_order(terms, 1.0, steps)), expected, 1e-10)
        << steps;
  }
}

TEST(SchattenNorm, Basics) {
  EXPECT_NEAR(schatten_inf_norm(pauli_string_matrix("X")), 1.0, 1e-15);
  EXPECT_EQ(schatten_inf_norm(CMatrix(4)), 0.0);
  EXPECT_NEAR(schatten_inf_norm(CMatrix::diagonal({3.0, -1.0})), 3.0, 1e-15);
}

TEST(SchattenNormProperty, MatchesSvdAndSubadditive) {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 40; ++trial) {
    const std::size_t dim = std::size_t{2} << (trial % 4);
    const auto a = RandomMatrix(dim, rng);
    const auto b = RandomMatrix(dim, rng);
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(ToEigen(a));
    EXPECT_NEAR(schatten_inf_norm(a), svd.singularValues()(0), 1e-9);
    EXPECT_LE(schatten_inf_norm(a + b), schatten_inf_norm(a) + schatten_inf_norm(b) + 1e-9);
    const HermitianOperator h(RandomHermitian(dim, rng));
    EXPECT_NEAR(schatten_inf_norm(exact_evolution(h, 0.9)), 1.0, 1e-9);
  }
}

TEST(SimulationError, Properties) {
  const auto u = exact_evolution(pauli_sum(parse_pauli_sum("X+Z")), 2.0);
  EXPECT_LT(simulation_error(u, u), 1e-15);
  EXPECT_LE(simulation_error(u, CMatrix::identity(2)), 2.0);
  EXPECT_THROW(simulation_error(u, CMatrix::identity(4)), SizeError);
}

TEST(TimeBlockErrorBound, EvaluatesFormula) {
  EXPECT_DOUBLE_EQ(time_block_error_bound(1.0, 1.0, 1, 1), 1.0 / 3.0);
  EXPECT_DOUBLE_EQ(time_block_error_bound(2.0, 1.5, 8, 1) / time_block_error_bound(2.0, 1.5, 16, 1), 2.0);
  EXPECT_NEAR(time_block_error_bound(1.0, 1.0, 10, 2), 1e-3 / 3.0, 1e-18);
}

TEST(TimeBlockPlan, StepTimesBlocksIsTotal) {
  const TimeBlockPlan plan{2.5, 7, 1};
  EXPECT_NEAR(plan.dt() * plan.n_blocks, plan.total_time, 1e-12);
}

}  // namespace
}  // namespace qmetro
