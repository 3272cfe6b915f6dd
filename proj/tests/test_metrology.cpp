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

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "qmetro/errors.hpp"
#include "test_support.hpp"

namespace qmetro {
namespace {

// Brute-force MSE: enumerate every bitstring of the final state, count 1s
// character by character, and sum (a m - phi)^2 |amp|^2.
double BruteForceMse(const RamseyModel& model, double phi) {
  StateVector s = StateVector::zero(model.n_qubits);
  for (const auto& g : variational_block_gates(model.n_qubits, model.theta_ec, model.ec_depth)) s.apply(g);
  for (int q = 0; q < model.n_qubits; ++q) s.apply(GateSpec::rz(q, phi));
  for (const auto& g : variational_block_gates(model.n_qubits, model.theta_dc, model.dc_depth)) s.apply(g);
  double mse = 0.0;
  for (std::size_t k = 0; k < s.dim(); ++k) {
    const auto bits = to_bitstring(k, model.n_qubits);
    int ones = 0, zeros = 0;
    for (char c : bits) (c == '1' ? ones : zeros)++;
    const double err = model.a * (ones - zeros) - phi;
    mse += err * err * std::norm(s[k]);
  }
  return mse;
}

TEST(LayerWidth, TwoAnglesPerQubit) {
  EXPECT_EQ(layer_width(1), 2);
  EXPECT_EQ(layer_width(2), 4);
  EXPECT_EQ(layer_width(3), 6);
}

TEST(VariationalBlock, ZeroAnglesReduceToCnotChain) {
  const std::vector<double> zeros(4, 0.0);
  std::mt19937_64 rng(1);
  const auto in = testing::random_state(2, rng);
  const auto out = apply_variational_block(in, zeros, 1);
  const auto expected = apply_gate(in, GateSpec::cnot(0, 1));
  for (std::size_t k = 0; k < 4; ++k) EXPECT_NEAR(std::abs(out[k] - expected[k]), 0.0, 1e-15);
}

TEST(VariationalBlock, ZeroStateFixedAtAnyDepth) {
  for (int depth : {1, 2, 5}) {
    const std::vector<double> zeros(static_cast<std::size_t>(depth * 4), 0.0);
    const auto out = apply_variational_block(new_zero_state(2), zeros, depth);
    EXPECT_NEAR(std::abs(out[0]), 1.0, 1e-15);
  }
}

TEST(VariationalBlock, RandomAnglesPreserveNorm) {
  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> ang(-4, 4);
  std::vector<double> angles(3 * 6);
  for (auto& a : angles) a = ang(rng);
  const auto out = apply_variational_block(new_zero_state(3), angles, 3);
  EXPECT_NEAR(out.norm_squared(), 1.0, 1e-12);
}

TEST(VariationalBlock, LengthMismatchIsSpecError) {
  const std::vector<double> angles(5, 0.0);
  EXPECT_THROW(apply_variational_block(new_zero_state(2), angles, 1), SpecError);
}

TEST(PhaseImprint, IdentityAtZero) {
  std::mt19937_64 rng(2);
  const auto s = testing::random_state(3, rng);
  const auto t = apply_phase_imprint(s, 0.0);
  for (std::size_t k = 0; k < s.dim(); ++k) EXPECT_EQ(s[k], t[k]);
}

TEST(PhaseImprint, SingleQubitFringe) {
  for (double phi : {0.1, 0.9, 2.0, 9.64}) {
    auto plus = apply_gate(new_zero_state(1), GateSpec::h(0));
    auto imprinted = apply_phase_imprint(plus, phi);
    EXPECT_NEAR(std::abs(imprinted[0] - std::polar(1.0, -phi / 2) / std::sqrt(2.0)), 0.0, 1e-15);
    EXPECT_NEAR(std::abs(imprinted[1] - std::polar(1.0, phi / 2) / std::sqrt(2.0)), 0.0, 1e-15);
    const auto out = apply_gate(imprinted, GateSpec::h(0));
    EXPECT_NEAR(measurement_distribution(out).probabilities[0],
                std::pow(std::cos(phi / 2), 2), 1e-14);
  }
}

TEST(PhaseImprint, MeasurementUnchanged) {
  std::mt19937_64 rng(6);
  const auto s = testing::random_state(3, rng);
  const auto a = measurement_distribution(s);
  const auto b = measurement_distribution(apply_phase_imprint(s, 1.234));
  for (std::size_t k = 0; k < s.dim(); ++k) EXPECT_NEAR(a.probabilities[k], b.probabilities[k], 1e-15);
}

TEST(OutcomeDistribution, MValueGrid) {
  EXPECT_EQ(outcome_distribution(RamseyModel::zeros(2, 1, 1, 1.0), 0.3).m_values,
            (std::vector<int>{-2, 0, 2}));
  EXPECT_EQ(outcome_distribution(RamseyModel::zeros(3, 1, 1, 1.0), 0.3).m_values,
            (std::vector<int>{-3, -1, 1, 3}));
}

TEST(OutcomeDistribution, ZeroAnglesPinAllZeros) {
  for (int n : {1, 2, 3}) {
    const auto model = RamseyModel::zeros(n, 3, 3, 1.0);
    for (double phi : {0.0, 1.0, 9.64}) {
      const auto d = outcome_distribution(model, phi);
      EXPECT_NEAR(d.probs.front(), 1.0, 1e-15);
    }
  }
}

TEST(OutcomeDistributionProperty, NormalizedAndPeriodic) {
  std::mt19937_64 rng(77);
  std::uniform_real_distribution<double> phis(-10, 10);
  for (int trial = 0; trial < 10; ++trial) {
    const auto model = testing::random_model(2 + trial % 2, 3, 3, rng);
    for (int k = 0; k < 10; ++k) {
      const double phi = phis(rng);
      const auto d = outcome_distribution(model, phi);
      EXPECT_EQ(d.m_values.size(), static_cast<std::size_t>(model.n_qubits + 1));
      double s = 0.0;
      for (double p : d.probs) s += p;
      EXPECT_NEAR(s, 1.0, 1e-10);
      const auto shifted = outcome_distribution(model, phi + 2 * std::numbers::pi);
      for (std::size_t i = 0; i < d.probs.size(); ++i) {
        EXPECT_NEAR(d.probs[i], shifted.probs[i], 1e-10);
      }
    }
  }
}

TEST(Estimate, LinearInM) {
  auto model = RamseyModel::zeros(2, 1, 1, 1.0);
  EXPECT_DOUBLE_EQ(estimate(model, 2), 2.0);
  model.a = 0.0;
  EXPECT_DOUBLE_EQ(estimate(model, -2), 0.0);
  model.a = 4.82;
  EXPECT_NEAR(estimate(model, 2), 9.64, 1e-12);
  EXPECT_DOUBLE_EQ(estimate(model, -2), -estimate(model, 2));
  EXPECT_THROW(estimate(model, 1), DomainError);
  EXPECT_THROW(estimate(model, 4), DomainError);
}

TEST(MseAtPhi, DegenerateModel) {
  const auto model = RamseyModel::zeros(2, 3, 3, 1.0);
  EXPECT_DOUBLE_EQ(mse_at_phi(model, 0.0), 4.0);
}

TEST(MseAtPhi, PerfectEstimator) {
  // Zero angles put all mass on m = -2; a = -phi/2 estimates phi exactly.
  const double phi = 9.64;
  const auto model = RamseyModel::zeros(2, 3, 3, -phi / 2);
  EXPECT_NEAR(mse_at_phi(model, phi), 0.0, 1e-24);
}

TEST(MseAtPhiProperty, MatchesBitstringEnumeration) {
  std::mt19937_64 rng(31);
  std::uniform_real_distribution<double> phis(8.0, 11.0);
  for (int trial = 0; trial < 40; ++trial) {
    const auto model = testing::random_model(1 + trial % 3, 1 + trial % 3, 2, rng);
    const double phi = phis(rng);
    const double mse = mse_at_phi(model, phi);
    EXPECT_GE(mse, 0.0);
    EXPECT_NEAR(mse, BruteForceMse(model, phi), 1e-12 * std::max(1.0, mse));
  }
}

TEST(RamseyModel, ValidateRejectsBadShapes) {
  auto model = RamseyModel::zeros(2, 3, 3, 1.0);
  EXPECT_NO_THROW(model.validate());
  model.theta_ec.pop_back();
  EXPECT_THROW(model.validate(), SpecError);
  model = RamseyModel::zeros(2, 3, 3, 1.0);
  model.theta_dc[0] = std::nan("");
  EXPECT_THROW(model.validate(), SpecError);
}

TEST(Probes, GhzPreparesCatState) {
  StateVector s = StateVector::zero(3);
  for (const auto& g : ghz_probe(3).encoder) s.apply(g);
  EXPECT_NEAR(std::abs(s[0]), 1 / std::sqrt(2.0), 1e-15);
  EXPECT_NEAR(std::abs(s[7]), 1 / std::sqrt(2.0), 1e-15);
}

}  // namespace
}  // namespace qmetro
