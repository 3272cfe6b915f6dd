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

#include "qmetro/fisher.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "qmetro/errors.hpp"
#include "rng.hpp"

namespace qmetro {

namespace {

void check_step(double h) {
  if (!(h > 0.0)) throw DomainError("finite-difference step must be positive");
}

// Draws `shots` outcome bins from probs and returns the mean bin value.
double sample_mean(const std::vector<double>& probs, const std::vector<int>& values,
                   std::size_t shots, detail::Rng& rng) {
  std::vector<double> cdf(probs.size());
  double acc = 0.0;
  for (std::size_t i = 0; i < probs.size(); ++i) cdf[i] = (acc += probs[i]);
  double sum = 0.0;
  for (std::size_t s = 0; s < shots; ++s) {
    const double u = rng.uniform() * acc;
    auto idx = static_cast<std::size_t>(std::upper_bound(cdf.begin(), cdf.end(), u) - cdf.begin());
    idx = std::min(idx, cdf.size() - 1);
    sum += values[idx];
  }
  return sum / static_cast<double>(shots);
}

double sample_variance(const std::vector<double>& xs) {
  double mean = 0.0;
  for (double x : xs) mean += x;
  mean /= static_cast<double>(xs.size());
  double ss = 0.0;
  for (double x : xs) ss += (x - mean) * (x - mean);
  return ss / static_cast<double>(xs.size() - 1);
}

}  // namespace

std::vector<double> prob_derivatives(const ProbeCircuit& probe, double phi, double h) {
  check_step(h);
  const auto plus = outcome_distribution(probe, phi + h);
  const auto minus = outcome_distribution(probe, phi - h);
  std::vector<double> d(plus.probs.size());
  for (std::size_t i = 0; i < d.size(); ++i) {
    d[i] = (plus.probs[i] - minus.probs[i]) / (2.0 * h);
  }
  return d;
}

std::vector<double> prob_derivatives(const RamseyModel& model, double phi, double h) {
  return prob_derivatives(to_probe(model), phi, h);
}

std::vector<ScoreSample> score(const ProbeCircuit& probe, double phi, double h) {
  const auto dist = outcome_distribution(probe, phi);
  const auto dp = prob_derivatives(probe, phi, h);
  std::vector<ScoreSample> out;
  for (std::size_t i = 0; i < dist.probs.size(); ++i) {
    const double p = dist.probs[i];
    if (p < kProbabilityFloor) continue;
    out.push_back({dist.m_values[i], p, dp[i] / p});
  }
  return out;
}

std::vector<ScoreSample> score(const RamseyModel& model, double phi, double h) {
  return score(to_probe(model), phi, h);
}

double score_mean(const std::vector<ScoreSample>& samples) {
  double s = 0.0;
  for (const auto& x : samples) s += x.probability * x.score;
  return s;
}

double score_variance(const std::vector<ScoreSample>& samples) {
  double second = 0.0;
  for (const auto& x : samples) second += x.probability * x.score * x.score;
  const double mean = score_mean(samples);
  return second - mean * mean;
}

FisherResult fisher_information(const ProbeCircuit& probe, double phi, double h) {
  const auto dist = outcome_distribution(probe, phi);
  const auto dp = prob_derivatives(probe, phi, h);
  double f = 0.0;
  for (std::size_t i = 0; i < dp.size(); ++i) {
    if (dist.probs[i] < kProbabilityFloor) continue;
    f += dp[i] * dp[i] / dist.probs[i];
  }
  return {phi, f, h};
}

FisherResult fisher_information(const RamseyModel& model, double phi, double h) {
  return fisher_information(to_probe(model), phi, h);
}

double cramer_rao_bound(double fisher, long long n_measurements) {
  if (n_measurements < 1) throw DomainError("number of measurements must be >= 1");
  if (!(fisher > 0.0)) {
    throw DomainError("Fisher information is zero: parameter is not locally identifiable");
  }
  return 1.0 / (static_cast<double>(n_measurements) * fisher);
}

double fringe_estimator_variance(double phi, std::size_t shots,
                                 std::size_t repetitions, std::uint64_t seed) {
  if (shots == 0 || repetitions < 2) throw SizeError("need shots >= 1 and repetitions >= 2");
  const auto dist = outcome_distribution(ramsey_fringe_probe(), phi);
  detail::Rng rng(seed);
  std::vector<double> estimates;
  estimates.reserve(repetitions);
  for (std::size_t r = 0; r < repetitions; ++r) {
    // mean m = -1 * p0 + 1 * (1 - p0), so p0_hat = (1 - mean) / 2.
    const double mean_m = sample_mean(dist.probs, dist.m_values, shots, rng);
    const double p0 = (1.0 - mean_m) / 2.0;
    estimates.push_back(std::acos(std::clamp(1.0 - 2.0 * p0, -1.0, 1.0)));
  }
  return sample_variance(estimates);
}

double moment_estimator_variance(const ProbeCircuit& probe, double phi,
                                 std::size_t shots, std::size_t repetitions,
                                 std::uint64_t seed, double h) {
  if (shots == 0 || repetitions < 2) throw SizeError("need shots >= 1 and repetitions >= 2");
  const auto dist = outcome_distribution(probe, phi);
  const auto dp = prob_derivatives(probe, phi, h);
  double expected = 0.0, slope = 0.0;
  for (std::size_t i = 0; i < dp.size(); ++i) {
    expected += dist.m_values[i] * dist.probs[i];
    slope += dist.m_values[i] * dp[i];
  }
  if (std::abs(slope) < 1e-9) return std::numeric_limits<double>::quiet_NaN();
  detail::Rng rng(seed);
  std::vector<double> estimates;
  estimates.reserve(repetitions);
  for (std::size_t r = 0; r < repetitions; ++r) {
    const double mean_m = sample_mean(dist.probs, dist.m_values, shots, rng);
    estimates.push_back(phi + (mean_m - expected) / slope);
  }
  return sample_variance(estimates);
}

}  // namespace qmetro
