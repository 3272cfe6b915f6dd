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

#include <cstdint>
#include <vector>

#include "qmetro/metrology.hpp"

namespace qmetro {

/// Outcomes with probability below this floor are left out of 1/p terms.
inline constexpr double kProbabilityFloor = 1e-12;
inline constexpr double kDefaultFiniteDifferenceStep = 1e-5;

struct FisherResult {
  double phi = 0.0;
  double fisher = 0.0;
  double derivative_step = kDefaultFiniteDifferenceStep;
};

struct ScoreSample {
  int m = 0;
  double probability = 0.0;
  double score = 0.0;  ///< d/dphi log p(m|phi)
};

/// Central differences dp(m|phi)/dphi, one entry per m value.
std::vector<double> prob_derivatives(const ProbeCircuit& probe, double phi,
                                     double h = kDefaultFiniteDifferenceStep);
std::vector<double> prob_derivatives(const RamseyModel& model, double phi,
                                     double h = kDefaultFiniteDifferenceStep);

/// Classical Fisher information sum_m (dp_m)^2 / p_m of the m statistic.
FisherResult fisher_information(const ProbeCircuit& probe, double phi,
                                double h = kDefaultFiniteDifferenceStep);
FisherResult fisher_information(const RamseyModel& model, double phi,
                                double h = kDefaultFiniteDifferenceStep);

std::vector<ScoreSample> score(const ProbeCircuit& probe, double phi,
                               double h = kDefaultFiniteDifferenceStep);
std::vector<ScoreSample> score(const RamseyModel& model, double phi,
                               double h = kDefaultFiniteDifferenceStep);

/// Sum p * score and sum p * score^2 - mean^2 over the given samples.
double score_mean(const std::vector<ScoreSample>& samples);
double score_variance(const std::vector<ScoreSample>& samples);

/// 1 / (N F). Throws DomainError when F <= 0 (phi not locally identifiable).
double cramer_rao_bound(double fisher, long long n_measurements);

/// Sample variance of the fringe-inversion estimator
/// phi_hat = arccos(1 - 2 k/N) for the single-qubit Ramsey fringe, where k
/// counts m = -1 outcomes, over `repetitions` experiments of N shots each.
double fringe_estimator_variance(double phi, std::size_t shots,
                                 std::size_t repetitions, std::uint64_t seed);

/// Sample variance of the locally unbiased moment estimator
/// phi_hat = phi + (mean_m - E[m](phi)) / (dE[m]/dphi) for a general probe.
/// Returns NaN when dE[m]/dphi vanishes.
double moment_estimator_variance(const ProbeCircuit& probe, double phi,
                                 std::size_t shots, std::size_t repetitions,
                                 std::uint64_t seed,
                                 double h = kDefaultFiniteDifferenceStep);

}  // namespace qmetro
