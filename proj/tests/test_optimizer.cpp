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

#include <gtest/gtest.h>

#include <bit>
#include <cmath>
#include <random>

#include "qmetro/errors.hpp"
#include "test_support.hpp"

namespace qmetro {
namespace {

constexpr double kMean = 9.640437;
constexpr double kVariance = 17.934056159;

const PhiGrid& HumidityGrid() {
  static const PhiGrid g = build_grid(kMean, kVariance, 100);
  return g;
}

// Central differences of the loss in every parameter, straight from loss().
LossGradient FiniteDifferenceGradient(const RamseyModel& model, const PhiGrid& grid, double h) {
  LossGradient g;
  auto angles = model.angles();
  RamseyModel probe = model;
  for (std::size_t j = 0; j < angles.size(); ++j) {
    const double saved = angles[j];
    angles[j] = saved + h;
    probe.set_angles(angles);
    const double plus = loss(probe, grid);
    angles[j] = saved - h;
    probe.set_angles(angles);
    const double minus = loss(probe, grid);
    angles[j] = saved;
    g.angles.push_back((plus - minus) / (2 * h));
  }
  probe.set_angles(angles);
  probe.a = model.a + h;
  const double plus = loss(probe, grid);
  probe.a = model.a - h;
  g.a = (plus - loss(probe, grid)) / (2 * h);
  return g;
}

TEST(Loss, DegenerateClosedForm) {
  const auto& grid = HumidityGrid();
  for (double a : {-4.8, 0.0, 1.0, 4.82}) {
    const auto model = RamseyModel::zeros(2, 3, 3, a);
    double expected = 0.0;
    for (std::size_t x = 0; x < grid.phis.size(); ++x) {
      expected += grid.weights[x] * std::pow(-2 * a - grid.phis[x], 2);
    }
    EXPECT_NEAR(loss(model, grid), expected, 1e-10);
  }
}

TEST(Loss, UntrainedZeroScale) {
  // sum_x w_x phi_x^2 on the reported grid, computed with numpy.
  EXPECT_NEAR(loss(RamseyModel::zeros(2, 3, 3, 0.0), HumidityGrid()), 93.26885516584012, 1e-9);
}

TEST(LossProperty, NonNegativeAndConsistentWithMse) {
  std::mt19937_64 rng(5);
  const auto& grid = HumidityGrid();
  for (int t = 0; t < 20; ++t) {
    const auto model = testing::random_model(2 + t % 2, 3, 3, rng);
    const double l = loss(model, grid);
    EXPECT_GE(l, 0.0);
    double direct = 0.0;
    for (std::size_t x = 0; x < grid.phis.size(); ++x) {
      direct += grid.weights[x] * mse_at_phi(model, grid.phis[x]);
    }
    EXPECT_NEAR(l, direct, 1e-12 * std::max(1.0, l));
  }
}

TEST(Gradient, DegenerateScalePartial) {
  const auto& grid = HumidityGrid();
  const auto model = RamseyModel::zeros(2, 3, 3, 1.7);
  double expected = 0.0;
  for (std::size_t x = 0; x < grid.phis.size(); ++x) {
    expected += grid.weights[x] * 2 * (-2 * model.a - grid.phis[x]) * (-2);
  }
  EXPECT_NEAR(gradient(model, grid).a, expected, 1e-10);
}

TEST(GradientProperty, MatchesFiniteDifferences) {
  std::mt19937_64 rng(99);
  const auto& grid = HumidityGrid();
  for (int t = 0; t < 20; ++t) {
    const auto model = testing::random_model(2, 3, 3, rng);
    const auto g = gradient(model, grid);
    const auto fd = FiniteDifferenceGradient(model, grid, 1e-6);
    ASSERT_EQ(g.angles.size(), fd.angles.size());
    for (std::size_t j = 0; j < g.angles.size(); ++j) {
      EXPECT_NEAR(g.angles[j], fd.angles[j], 1e-6 * std::max(1.0, std::abs(fd.angles[j])));
    }
    EXPECT_NEAR(g.a, fd.a, 1e-6 * std::max(1.0, std::abs(fd.a)));
  }
}

TEST(Gradient, VanishesAtConstructedMinimum) {
  // One qubit, zero angles: only m = -1 occurs, so a = -E_w[phi] is optimal.
  const auto& grid = HumidityGrid();
  double mean = 0.0;
  for (std::size_t x = 0; x < grid.phis.size(); ++x) mean += grid.weights[x] * grid.phis[x];
  const auto model = RamseyModel::zeros(1, 2, 2, -mean);
  const auto g = gradient(model, grid);
  double norm2 = g.a * g.a;
  for (double d : g.angles) norm2 += d * d;
  EXPECT_LT(std::sqrt(norm2), 1e-8);
}

TEST(Train, ZeroLearningRateKeepsLoss) {
  TrainConfig cfg;
  cfg.learning_rate = 0.0;
  cfg.iterations = 30;
  cfg.seed = 4;
  const auto model = initialize_model(RamseyModel::zeros(2, 3, 3, 0), HumidityGrid(), cfg);
  const auto log = train(model, HumidityGrid(), cfg);
  ASSERT_EQ(log.entries.size(), 3u);
  for (const auto& e : log.entries) EXPECT_EQ(e.loss, log.initial_loss);
}

TEST(Train, LogsEveryTenAndFinal) {
  TrainConfig cfg;
  cfg.iterations = 25;
  cfg.learning_rate = 0.01;
  const auto log = train(initialize_model(RamseyModel::zeros(2, 1, 1, 0), HumidityGrid(), cfg),
                         HumidityGrid(), cfg);
  ASSERT_EQ(log.entries.size(), 3u);
  EXPECT_EQ(log.entries[0].iter, 10);
  EXPECT_EQ(log.entries[1].iter, 20);
  EXPECT_EQ(log.entries[2].iter, 25);
  EXPECT_EQ(log.mse_profile.size(), 100u);
}

TEST(Train, InitializationDefaults) {
  TrainConfig cfg;
  cfg.seed = 12;
  const auto m = initialize_model(RamseyModel::zeros(3, 3, 3, 0), HumidityGrid(), cfg);
  EXPECT_DOUBLE_EQ(m.a, kMean / 3);
  EXPECT_EQ(m.theta_ec.size(), 18u);
  double ss = 0.0;
  for (double t : m.angles()) ss += t * t;
  EXPECT_LT(std::sqrt(ss / 36), 0.2);  // init_scale 0.1
  cfg.a_init = 2.5;
  EXPECT_DOUBLE_EQ(initialize_model(m, HumidityGrid(), cfg).a, 2.5);
}

TEST(Train, IterTenLossInOneToFourBand) {
  TrainConfig cfg;
  cfg.learning_rate = 0.03;
  cfg.iterations = 10;
  for (std::uint64_t seed : {1, 2, 3}) {
    cfg.seed = seed;
    const auto log = train(initialize_model(RamseyModel::zeros(2, 3, 3, 0), HumidityGrid(), cfg),
                           HumidityGrid(), cfg);
    EXPECT_GE(log.entries[0].loss, 1.0);
    EXPECT_LE(log.entries[0].loss, 4.0);
  }
}

TEST(TrainProperty, DescentForSmallSteps) {
  std::mt19937_64 rng(8);
  TrainConfig cfg;
  cfg.learning_rate = 1e-4;
  cfg.iterations = 50;
  cfg.log_every = 1;
  for (int t = 0; t < 5; ++t) {
    const auto model = testing::random_model(2, 3, 3, rng);
    const auto log = train(model, HumidityGrid(), cfg);
    double prev = log.initial_loss;
    for (const auto& e : log.entries) {
      EXPECT_LE(e.loss, prev + 1e-12) << "iter " << e.iter;
      prev = e.loss;
    }
  }
}

TEST(TrainProperty, BitwiseDeterministic) {
  TrainConfig cfg;
  cfg.learning_rate = 0.03;
  cfg.iterations = 40;
  cfg.seed = 77;
  const auto shape = RamseyModel::zeros(2, 3, 3, 0);
  const auto a = train(initialize_model(shape, HumidityGrid(), cfg), HumidityGrid(), cfg);
  const auto b = train(initialize_model(shape, HumidityGrid(), cfg), HumidityGrid(), cfg);
  ASSERT_EQ(a.entries.size(), b.entries.size());
  for (std::size_t i = 0; i < a.entries.size(); ++i) {
    EXPECT_EQ(std::bit_cast<std::uint64_t>(a.entries[i].loss),
              std::bit_cast<std::uint64_t>(b.entries[i].loss));
  }
}

TEST(Train, NonFiniteAborts) {
  TrainConfig cfg;
  cfg.learning_rate = 1e308;
  cfg.iterations = 5;
  try {
    train(RamseyModel::zeros(2, 1, 1, 1.0), HumidityGrid(), cfg);
    FAIL() << "expected TrainingError";
  } catch (const TrainingError& e) {
    EXPECT_NE(std::string(e.what()).find("iteration"), std::string::npos);
  }
}

TEST(Sweep, ShapeOrderAndErrors) {
  std::vector<TrainConfig> configs;
  for (double lr : {0.01, 0.02, 0.03, 0.04}) {
    TrainConfig c;
    c.learning_rate = lr;
    c.iterations = 20;
    c.seed = 3;
    configs.push_back(c);
  }
  TrainConfig bad;
  bad.iterations = 0;
  configs.push_back(bad);
  const auto shape = RamseyModel::zeros(2, 3, 3, 0);
  const auto out = sweep(shape, HumidityGrid(), configs);
  ASSERT_EQ(out.size(), 5u);
  for (int i = 0; i < 4; ++i) {
    ASSERT_TRUE(out[i].log.has_value());
    EXPECT_EQ(out[i].config.learning_rate, configs[i].learning_rate);
  }
  EXPECT_FALSE(out[4].log.has_value());
  EXPECT_FALSE(out[4].error.empty());

  const auto again = sweep(shape, HumidityGrid(), {configs[1], configs[1]});
  EXPECT_EQ(again[0].log->final_loss(), again[1].log->final_loss());
  EXPECT_EQ(again[0].log->final_loss(), out[1].log->final_loss());
  EXPECT_THROW(sweep(shape, HumidityGrid(), {}), SizeError);
}

TEST(MseProfile, Shape) {
  const auto& grid = HumidityGrid();
  const auto profile = mse_profile(RamseyModel::zeros(2, 3, 3, 0.0), grid);
  ASSERT_EQ(profile.size(), 100u);
  for (std::size_t x = 0; x < profile.size(); ++x) {
    EXPECT_EQ(profile[x].phi, grid.phis[x]);
    EXPECT_NEAR(profile[x].mse, grid.phis[x] * grid.phis[x], 1e-12);
  }
}

TEST(MseProfile, WeightedMeanIsFinalLoss) {
  TrainConfig cfg;
  cfg.learning_rate = 0.03;
  cfg.iterations = 30;
  const auto& grid = HumidityGrid();
  const auto log = train(initialize_model(RamseyModel::zeros(2, 3, 3, 0), grid, cfg), grid, cfg);
  double mean = 0.0;
  for (std::size_t x = 0; x < grid.phis.size(); ++x) {
    EXPECT_GE(log.mse_profile[x].mse, 0.0);
    mean += grid.weights[x] * log.mse_profile[x].mse;
  }
  EXPECT_NEAR(mean, log.final_loss(), 1e-10);
}

}  // namespace
}  // namespace qmetro
