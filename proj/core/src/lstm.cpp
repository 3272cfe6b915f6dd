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

#include "qmetro/lstm.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "qmetro/errors.hpp"
#include "rng.hpp"

namespace qmetro {

namespace {

double sigmoid(double x) { return 1.0 / (1.0 + std::exp(-x)); }

// Activations of one unrolled step; gates are post-nonlinearity.
struct StepCache {
  std::vector<double> gates;  // 4h: i, f, g, o
  std::vector<double> c;      // h
  std::vector<double> tanh_c; // h
  std::vector<double> h;      // h
};

class Unroller {
 public:
  explicit Unroller(const LstmModel& m)
      : m_(m), nh_(static_cast<std::size_t>(m.hidden)),
        ni_(static_cast<std::size_t>(m.input_dim)) {}

  // Runs the cell over `window` and returns the prediction. When `cache` is
  // non-null every step is recorded for backprop.
  double run(std::span<const double> window, std::vector<StepCache>* cache) {
    const std::size_t steps = window.size() / ni_;
    std::vector<double> h(nh_, 0.0), c(nh_, 0.0), z(4 * nh_);
    if (cache) cache->resize(steps);
    for (std::size_t t = 0; t < steps; ++t) {
      const double* x = window.data() + t * ni_;
      for (std::size_t r = 0; r < 4 * nh_; ++r) {
        double acc = m_.b[r];
        const double* wr = m_.w.data() + r * ni_;
        for (std::size_t k = 0; k < ni_; ++k) acc += wr[k] * x[k];
        const double* ur = m_.u.data() + r * nh_;
        for (std::size_t k = 0; k < nh_; ++k) acc += ur[k] * h[k];
        z[r] = acc;
      }
      for (std::size_t j = 0; j < nh_; ++j) {
        z[j] = sigmoid(z[j]);
        z[nh_ + j] = sigmoid(z[nh_ + j]);
        z[2 * nh_ + j] = std::tanh(z[2 * nh_ + j]);
        z[3 * nh_ + j] = sigmoid(z[3 * nh_ + j]);
        c[j] = z[nh_ + j] * c[j] + z[j] * z[2 * nh_ + j];
      }
      if (cache) {
        auto& s = (*cache)[t];
        s.gates = z;
        s.c = c;
        s.tanh_c.resize(nh_);
        s.h.resize(nh_);
      }
      for (std::size_t j = 0; j < nh_; ++j) {
        const double tc = std::tanh(c[j]);
        h[j] = z[3 * nh_ + j] * tc;
        if (cache) {
          (*cache)[t].tanh_c[j] = tc;
          (*cache)[t].h[j] = h[j];
        }
      }
    }
    double y = m_.dense_b;
    for (std::size_t j = 0; j < nh_; ++j) y += m_.dense_w[j] * h[j];
    return y;
  }

  // Accumulates d(loss)/d(params) given d(loss)/d(prediction) = dy.
  void backward(std::span<const double> window, const std::vector<StepCache>& cache,
                double dy, std::vector<double>& grad) {
    const std::size_t steps = cache.size();
    const std::size_t nw = 4 * nh_ * ni_, nu = 4 * nh_ * nh_, nb = 4 * nh_;
    double* gw = grad.data();
    double* gu = gw + nw;
    double* gb = gu + nu;
    double* gdw = gb + nb;
    double* gdb = gdw + nh_;

    std::vector<double> dh(nh_), dc(nh_, 0.0), dpre(4 * nh_), dh_prev(nh_);
    const auto& last = cache.back().h;
    for (std::size_t j = 0; j < nh_; ++j) {
      gdw[j] += dy * last[j];
      dh[j] = dy * m_.dense_w[j];
    }
    *gdb += dy;

    for (std::size_t t = steps; t-- > 0;) {
      const auto& s = cache[t];
      const double* x = window.data() + t * ni_;
      for (std::size_t j = 0; j < nh_; ++j) {
        const double i = s.gates[j], f = s.gates[nh_ + j];
        const double g = s.gates[2 * nh_ + j], o = s.gates[3 * nh_ + j];
        const double tc = s.tanh_c[j];
        const double c_prev = t > 0 ? cache[t - 1].c[j] : 0.0;
        const double dcj = dc[j] + dh[j] * o * (1.0 - tc * tc);
        dpre[j] = dcj * g * i * (1.0 - i);
        dpre[nh_ + j] = dcj * c_prev * f * (1.0 - f);
        dpre[2 * nh_ + j] = dcj * i * (1.0 - g * g);
        dpre[3 * nh_ + j] = dh[j] * tc * o * (1.0 - o);
        dc[j] = dcj * f;
      }
      std::fill(dh_prev.begin(), dh_prev.end(), 0.0);
      const double* h_prev = t > 0 ? cache[t - 1].h.data() : nullptr;
      for (std::size_t r = 0; r < 4 * nh_; ++r) {
        const double d = dpre[r];
        gb[r] += d;
        double* gwr = gw + r * ni_;
        for (std::size_t k = 0; k < ni_; ++k) gwr[k] += d * x[k];
        const double* ur = m_.u.data() + r * nh_;
        double* gur = gu + r * nh_;
        if (h_prev) {
          for (std::size_t k = 0; k < nh_; ++k) gur[k] += d * h_prev[k];
        }
        for (std::size_t k = 0; k < nh_; ++k) dh_prev[k] += ur[k] * d;
      }
      std::swap(dh, dh_prev);
    }
  }

 private:
  const LstmModel& m_;
  std::size_t nh_;
  std::size_t ni_;
};

void check_dims(int hidden, int input_dim) {
  if (hidden < 1) throw SpecError("LSTM hidden size must be >= 1");
  if (input_dim < 1) throw SpecError("LSTM input size must be >= 1");
}

}  // namespace

std::size_t lstm_param_count(int hidden, int input_dim) {
  check_dims(hidden, input_dim);
  const auto h = static_cast<std::size_t>(hidden);
  const auto in = static_cast<std::size_t>(input_dim);
  return 4 * h * (in + h + 1) + (h + 1);
}

std::size_t param_count(const LstmModel& model) {
  return lstm_param_count(model.hidden, model.input_dim);
}

LstmModel LstmModel::zeros(int hidden, int input_dim) {
  check_dims(hidden, input_dim);
  const auto h = static_cast<std::size_t>(hidden);
  const auto in = static_cast<std::size_t>(input_dim);
  LstmModel m;
  m.hidden = hidden;
  m.input_dim = input_dim;
  m.w.assign(4 * h * in, 0.0);
  m.u.assign(4 * h * h, 0.0);
  m.b.assign(4 * h, 0.0);
  m.dense_w.assign(h, 0.0);
  return m;
}

LstmModel LstmModel::random(int hidden, std::uint64_t seed, int input_dim) {
  LstmModel m = zeros(hidden, input_dim);
  const double k = 1.0 / std::sqrt(static_cast<double>(hidden));
  detail::Rng rng(seed);
  auto fill = [&](std::vector<double>& v) {
    for (auto& x : v) x = rng.uniform(-k, k);
  };
  fill(m.w);
  fill(m.u);
  fill(m.b);
  fill(m.dense_w);
  m.dense_b = rng.uniform(-k, k);
  return m;
}

std::vector<double> LstmModel::flatten() const {
  std::vector<double> p;
  p.reserve(lstm_param_count(hidden, input_dim));
  p.insert(p.end(), w.begin(), w.end());
  p.insert(p.end(), u.begin(), u.end());
  p.insert(p.end(), b.begin(), b.end());
  p.insert(p.end(), dense_w.begin(), dense_w.end());
  p.push_back(dense_b);
  return p;
}

void LstmModel::unflatten(std::span<const double> params) {
  if (params.size() != lstm_param_count(hidden, input_dim)) {
    throw SizeError("parameter vector size mismatch");
  }
  auto it = params.begin();
  for (auto* v : {&w, &u, &b, &dense_w}) {
    std::copy_n(it, v->size(), v->begin());
    it += static_cast<std::ptrdiff_t>(v->size());
  }
  dense_b = *it;
}

double forward(const LstmModel& model, std::span<const double> window) {
  if (window.size() % static_cast<std::size_t>(model.input_dim) != 0 || window.empty()) {
    throw SizeError("window length must be a positive multiple of input_dim");
  }
  return Unroller(model).run(window, nullptr);
}

Normalization fit_normalization(std::span<const double> series) {
  if (series.empty()) throw SizeError("cannot normalize an empty series");
  const auto n = static_cast<double>(series.size());
  double mean = 0.0;
  for (double v : series) mean += v;
  mean /= n;
  double ss = 0.0;
  for (double v : series) ss += (v - mean) * (v - mean);
  const double sd = std::sqrt(ss / n);
  return {mean, sd > 0.0 ? sd : 1.0};
}

WindowedDataset make_windows(std::span<const double> series, int window,
                             const Normalization& norm) {
  if (window < 1) throw SizeError("window must be >= 1");
  const auto w = static_cast<std::size_t>(window);
  if (series.size() <= w) {
    throw SizeError("series of length " + std::to_string(series.size()) +
                    " is too short for window " + std::to_string(window));
  }
  std::vector<double> z(series.size());
  std::transform(series.begin(), series.end(), z.begin(),
                 [&](double v) { return norm.normalize(v); });
  WindowedDataset d;
  d.window = window;
  d.normalization = norm;
  const std::size_t count = series.size() - w;
  d.inputs.reserve(count * w);
  d.targets.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    d.inputs.insert(d.inputs.end(), z.begin() + static_cast<std::ptrdiff_t>(i),
                    z.begin() + static_cast<std::ptrdiff_t>(i + w));
    d.targets.push_back(z[i + w]);
  }
  return d;
}

WindowedDataset make_windows(std::span<const double> series, int window) {
  return make_windows(series, window, fit_normalization(series));
}

std::pair<std::vector<double>, std::vector<double>> split_series(
    std::span<const double> series, double train_fraction) {
  if (!(train_fraction > 0.0 && train_fraction <= 1.0)) {
    throw DomainError("train fraction must be in (0, 1]");
  }
  const auto cut = static_cast<std::size_t>(std::floor(train_fraction * static_cast<double>(series.size())));
  return {std::vector<double>(series.begin(), series.begin() + static_cast<std::ptrdiff_t>(cut)),
          std::vector<double>(series.begin() + static_cast<std::ptrdiff_t>(cut), series.end())};
}

LstmGradient lstm_gradient(const LstmModel& model, const WindowedDataset& data,
                           std::span<const std::size_t> rows) {
  if (rows.empty()) throw SizeError("empty batch");
  LstmGradient out;
  out.gradient.assign(param_count(model), 0.0);
  Unroller net(model);
  std::vector<StepCache> cache;
  const double inv = 1.0 / static_cast<double>(rows.size());
  for (std::size_t r : rows) {
    const auto x = data.input(r);
    const double err = net.run(x, &cache) - data.targets[r];
    out.loss += err * err * inv;
    net.backward(x, cache, 2.0 * err * inv, out.gradient);
  }
  return out;
}

double lstm_loss(const LstmModel& model, const WindowedDataset& data) {
  if (data.count() == 0) throw SizeError("empty dataset");
  Unroller net(model);
  double total = 0.0;
  for (std::size_t i = 0; i < data.count(); ++i) {
    const double err = net.run(data.input(i), nullptr) - data.targets[i];
    total += err * err;
  }
  return total / static_cast<double>(data.count());
}

std::vector<EpochLoss> train_lstm(LstmModel& model, const WindowedDataset& data,
                                  const LstmTrainConfig& config) {
  if (data.count() == 0) throw SizeError("empty dataset");
  if (config.epochs < 1 || config.batch < 1) throw SpecError("epochs and batch must be >= 1");
  if (!(config.learning_rate >= 0.0)) throw SpecError("learning rate must be non-negative");

  std::vector<std::size_t> order(data.count());
  std::iota(order.begin(), order.end(), 0);
  detail::Rng rng(config.seed ^ 0x9E3779B97F4A7C15ULL);
  std::vector<double> params = model.flatten();
  std::vector<EpochLoss> history;

  for (int epoch = 1; epoch <= config.epochs; ++epoch) {
    for (std::size_t i = order.size(); i > 1; --i) {
      std::swap(order[i - 1], order[rng.below(i)]);
    }
    double weighted = 0.0;
    for (std::size_t start = 0; start < order.size();
         start += static_cast<std::size_t>(config.batch)) {
      const std::size_t end = std::min(order.size(), start + static_cast<std::size_t>(config.batch));
      const std::span<const std::size_t> rows(order.data() + start, end - start);
      const auto g = lstm_gradient(model, data, rows);
      if (!std::isfinite(g.loss)) {
        throw TrainingError("non-finite LSTM loss in epoch " + std::to_string(epoch) +
                            " at batch starting " + std::to_string(start));
      }
      weighted += g.loss * static_cast<double>(rows.size());
      for (std::size_t k = 0; k < params.size(); ++k) {
        params[k] -= config.learning_rate * g.gradient[k];
      }
      model.unflatten(params);
    }
    history.push_back({epoch, weighted / static_cast<double>(order.size())});
  }
  return history;
}

LstmTrainResult train_lstm(const WindowedDataset& data, const LstmTrainConfig& config) {
  LstmTrainResult r{LstmModel::random(config.hidden, config.seed), {}};
  r.losses = train_lstm(r.model, data, config);
  return r;
}

}  // namespace qmetro
