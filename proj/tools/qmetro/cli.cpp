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

#include "cli.hpp"

#include <fmt/format.h>

#include <CLI11.hpp>
#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <map>
#include <memory>
#include <numbers>
#include <optional>
#include <ostream>
#include <random>
#include <sstream>
#include <stdexcept>
#include <type_traits>

#include "qmetro/errors.hpp"
#include "qmetro/fisher.hpp"
#include "qmetro/lstm.hpp"
#include "qmetro/metrology.hpp"
#include "qmetro/optimizer.hpp"
#include "qmetro/timeseries.hpp"
#include "qmetro/trotter.hpp"

namespace qmetro::cli {

namespace {

namespace fs = std::filesystem;
using nlohmann::json;

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Shortest representation that round-trips; CSV outputs rely on it for
// bitwise reproducibility.
std::string num(double v) {
  if (std::isnan(v)) return "nan";
  return fmt::format("{}", v);
}

class CsvWriter {
 public:
  CsvWriter(const fs::path& path, const std::vector<std::string>& header) : out_(path) {
    if (!out_) throw std::runtime_error("cannot write '" + path.string() + "'");
    row(header);
  }
  void row(const std::vector<std::string>& fields) {
    for (std::size_t i = 0; i < fields.size(); ++i) out_ << (i ? "," : "") << fields[i];
    out_ << '\n';
  }

 private:
  std::ofstream out_;
};

void ensure_dir(const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw std::runtime_error("cannot create '" + dir.string() + "': " + ec.message());
}

// ---------------------------------------------------------------------------
// Flat key=value config files and run manifests.

std::map<std::string, std::string> read_flat_config(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open config file '" + path.string() + "'");
  std::map<std::string, std::string> kv;
  std::string line;
  int line_no = 0;
  auto trim = [](std::string s) {
    const auto b = s.find_first_not_of(" \t\r");
    const auto e = s.find_last_not_of(" \t\r");
    return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
  };
  while (std::getline(in, line)) {
    ++line_no;
    line = trim(line);
    if (line.empty() || line[0] == '#') continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw UsageError(fmt::format("{}:{}: expected key=value", path.string(), line_no));
    }
    kv[trim(line.substr(0, eq))] = trim(line.substr(eq + 1));
  }
  return kv;
}

bool has_flag(const std::vector<std::string>& args, const std::string& flag) {
  for (const auto& a : args) {
    if (a == flag || a.rfind(flag + "=", 0) == 0) return true;
  }
  return false;
}

// Appends config-file entries for flags not given explicitly.
std::vector<std::string> merge_config(std::vector<std::string> args) {
  std::optional<std::string> config;
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (args[i] == "--config" && i + 1 < args.size()) config = args[i + 1];
    if (args[i].rfind("--config=", 0) == 0) config = args[i].substr(9);
  }
  if (!config) return args;
  for (const auto& [key, value] : read_flat_config(*config)) {
    std::string flag = "--" + key;
    std::replace(flag.begin(), flag.end(), '_', '-');
    if (!has_flag(args, flag)) {
      args.push_back(flag);
      args.push_back(value);
    }
  }
  return args;
}

json resolved_options(const CLI::App& sub) {
  json cfg = json::object();
  for (const CLI::Option* opt : sub.get_options()) {
    if (opt->get_lnames().empty()) continue;
    const std::string name = opt->get_lnames().front();
    if (name == "help" || name == "out" || name == "config") continue;
    if (opt->get_expected_min() == 0) {
      cfg[name] = opt->count() > 0;
      continue;
    }
    std::string value;
    if (opt->count() > 0) {
      for (const auto& r : opt->results()) value += (value.empty() ? "" : ",") + r;
    } else {
      value = opt->get_default_str();
    }
    if (!value.empty()) cfg[name] = value;
  }
  return cfg;
}

void write_manifest(const CLI::App& sub, const fs::path& out_dir) {
  json m;
  m["command"] = sub.get_name();
  m["config"] = resolved_options(sub);
  m["seed"] = m["config"].contains("seed") ? m["config"]["seed"] : json(nullptr);
  m["output_dir"] = out_dir.string();
  m["tool_version"] = kToolVersion;
  std::ofstream(out_dir / "manifest.json") << m.dump(2) << '\n';
}

std::vector<std::string> manifest_to_args(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open manifest '" + path.string() + "'");
  json m;
  try {
    in >> m;
  } catch (const json::exception& e) {
    throw UsageError("malformed manifest: " + std::string(e.what()));
  }
  if (!m.contains("command") || !m.contains("config")) {
    throw UsageError("manifest lacks command/config");
  }
  std::vector<std::string> args{m["command"].get<std::string>()};
  for (const auto& [key, value] : m["config"].items()) {
    if (value.is_boolean()) {
      if (value.get<bool>()) args.push_back("--" + key);
    } else {
      args.push_back("--" + key);
      args.push_back(value.get<std::string>());
    }
  }
  return args;
}

// ---------------------------------------------------------------------------
// Commands.

struct IngestOptions {
  std::string csv;
  std::string column = kDefaultSeriesColumn;
  bool json_out = false;
  std::string out;
};

void cmd_ingest(const IngestOptions& o, const CLI::App& sub, std::ostream& out) {
  const auto values = load_series(o.csv, o.column);
  const auto s = stats(values);
  if (o.json_out) {
    json j{{"path", o.csv}, {"column", o.column}, {"count", s.count},
           {"mean", s.mean}, {"variance", s.variance}};
    out << j.dump() << '\n';
  } else {
    out << fmt::format("count: {}\nmean: {:.6f}\nvariance: {:.9f}\n", s.count, s.mean, s.variance);
  }
  if (!o.out.empty()) {
    ensure_dir(o.out);
    CsvWriter w(fs::path(o.out) / "stats.csv", {"count", "mean", "variance"});
    w.row({std::to_string(s.count), num(s.mean), num(s.variance)});
    write_manifest(sub, o.out);
  }
}

struct QnnOptions {
  int qubits = 2;
  int ec_depth = 3;
  int dc_depth = 3;
  int partitions = 100;
  double lr = 0.01;
  int iters = 150;
  int log_every = 10;
  std::uint64_t seed = 0;
  double init_scale = 0.1;
  std::optional<double> a_init;
  std::string csv;
  std::string column = kDefaultSeriesColumn;
  std::optional<double> mean;
  std::optional<double> variance;
  std::string out = "qmetro_out";
};

PhiGrid resolve_grid(const QnnOptions& o, std::ostream& err) {
  double mean = 0.0, variance = 0.0;
  if (!o.csv.empty()) {
    const auto s = stats(load_series(o.csv, o.column));
    mean = o.mean.value_or(s.mean);
    variance = o.variance.value_or(s.variance);
    err << fmt::format("series: count {} mean {:.6f} variance {:.9f}\n", s.count, s.mean,
                       s.variance);
  } else if (o.mean && o.variance) {
    mean = *o.mean;
    variance = *o.variance;
  } else {
    throw UsageError("give either --csv or both --mean and --variance");
  }
  if (!(variance > 0.0)) throw UsageError("variance must be positive");
  if (o.partitions < 2) throw UsageError("--partitions must be >= 2");
  return build_grid(mean, variance, o.partitions);
}

void validate_qnn(const QnnOptions& o) {
  if (o.qubits < 1 || o.qubits > 6) throw UsageError("--qubits must be in 1..6");
  if (o.ec_depth < 0 || o.dc_depth < 0) throw UsageError("depths must be >= 0");
  if (o.iters < 1) throw UsageError("--iters must be >= 1");
  if (o.log_every < 1) throw UsageError("--log-every must be >= 1");
  if (!(o.lr >= 0.0)) throw UsageError("--lr must be >= 0");
}

TrainConfig to_train_config(const QnnOptions& o) {
  TrainConfig c;
  c.learning_rate = o.lr;
  c.iterations = o.iters;
  c.log_every = o.log_every;
  c.seed = o.seed;
  c.init_scale = o.init_scale;
  c.a_init = o.a_init;
  return c;
}

void write_training_outputs(const TrainingLog& log, const fs::path& dir) {
  ensure_dir(dir);
  {
    CsvWriter w(dir / "loss_curve.csv", {"iter", "loss"});
    for (const auto& e : log.entries) w.row({std::to_string(e.iter), num(e.loss)});
  }
  {
    CsvWriter w(dir / "mse_profile.csv", {"phi", "mse"});
    for (const auto& p : log.mse_profile) w.row({num(p.phi), num(p.mse)});
  }
  const auto& m = log.final_model;
  json model{{"n_qubits", m.n_qubits}, {"ec_depth", m.ec_depth}, {"dc_depth", m.dc_depth},
             {"theta_ec", m.theta_ec}, {"theta_dc", m.theta_dc}, {"a", m.a}};
  std::ofstream(dir / "model.json") << model.dump(2) << '\n';
}

void cmd_train_qnn(const QnnOptions& o, const CLI::App& sub, std::ostream& out,
                   std::ostream& err) {
  validate_qnn(o);
  const auto grid = resolve_grid(o, err);
  const auto cfg = to_train_config(o);
  const auto shape = RamseyModel::zeros(o.qubits, o.ec_depth, o.dc_depth, 0.0);
  const auto log = train(initialize_model(shape, grid, cfg), grid, cfg);
  for (const auto& e : log.entries) out << format_iter_line(e.iter, e.loss) << '\n';
  write_training_outputs(log, o.out);
  write_manifest(sub, o.out);
  err << fmt::format("final loss {:.6f}; wrote {}\n", log.final_loss(), o.out);
}

struct SweepOptions {
  QnnOptions base;
  std::vector<double> lrs{0.01, 0.02, 0.03, 0.04};
  std::vector<int> qubit_counts{2};
  int repeats = 1;
};

void cmd_sweep_lr(const SweepOptions& o, const CLI::App& sub, std::ostream& out,
                  std::ostream& err) {
  if (o.lrs.empty()) throw UsageError("--lrs needs at least one value");
  if (o.repeats < 1) throw UsageError("--repeats must be >= 1");
  validate_qnn(o.base);
  for (int q : o.qubit_counts) {
    if (q < 1 || q > 6) throw UsageError("--qubits values must be in 1..6");
  }
  const auto grid = resolve_grid(o.base, err);
  ensure_dir(o.base.out);
  CsvWriter summary(fs::path(o.base.out) / "summary.csv",
                    {"run", "qubits", "lr", "seed", "initial_loss", "final_loss", "status"});
  int run = 0;
  for (int q : o.qubit_counts) {
    const auto shape = RamseyModel::zeros(q, o.base.ec_depth, o.base.dc_depth, 0.0);
    std::vector<TrainConfig> configs;
    for (double lr : o.lrs) {
      for (int r = 0; r < o.repeats; ++r) {
        QnnOptions opt = o.base;
        opt.lr = lr;
        opt.seed = o.base.seed + static_cast<std::uint64_t>(run + static_cast<int>(configs.size()));
        configs.push_back(to_train_config(opt));
      }
    }
    for (const auto& res : sweep(shape, grid, configs)) {
      const std::string name = fmt::format("run_{:03}_q{}_lr{}_s{}", run, q,
                                           num(res.config.learning_rate), res.config.seed);
      if (res.log) {
        write_training_outputs(*res.log, fs::path(o.base.out) / name);
        summary.row({name, std::to_string(q), num(res.config.learning_rate),
                     std::to_string(res.config.seed), num(res.log->initial_loss),
                     num(res.log->final_loss()), "ok"});
        out << fmt::format("{} final loss: {:.4f}\n", name, res.log->final_loss());
      } else {
        summary.row({name, std::to_string(q), num(res.config.learning_rate),
                     std::to_string(res.config.seed), "", "", "error"});
        err << name << ": " << res.error << '\n';
      }
      ++run;
    }
  }
  write_manifest(sub, o.base.out);
}

struct FisherOptions {
  std::string preset = "ramsey";
  int qubits = 2;
  int ec_depth = 3;
  int dc_depth = 3;
  std::uint64_t seed = 0;
  std::string model;
  double phi_min = 0.0;
  double phi_max = std::numbers::pi;
  int points = 50;
  long long n_measurements = 1000;
  std::size_t shots = 0;
  std::size_t reps = 200;
  double step = kDefaultFiniteDifferenceStep;
  std::string out = "qmetro_out";
};

RamseyModel load_model(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw LoadError("cannot open model '" + path.string() + "'");
  json j;
  in >> j;
  RamseyModel m;
  m.n_qubits = j.at("n_qubits").get<int>();
  m.ec_depth = j.at("ec_depth").get<int>();
  m.dc_depth = j.at("dc_depth").get<int>();
  m.theta_ec = j.at("theta_ec").get<std::vector<double>>();
  m.theta_dc = j.at("theta_dc").get<std::vector<double>>();
  m.a = j.at("a").get<double>();
  m.validate();
  return m;
}

ProbeCircuit resolve_probe(const FisherOptions& o) {
  if (o.preset == "ramsey") return ramsey_fringe_probe();
  if (o.qubits < 1 || o.qubits > 10) throw UsageError("--qubits must be in 1..10");
  if (o.preset == "ghz") return ghz_probe(o.qubits);
  if (o.preset == "zero") return to_probe(RamseyModel::zeros(o.qubits, o.ec_depth, o.dc_depth, 1.0));
  if (o.preset == "random") {
    std::mt19937_64 rng(o.seed);
    std::uniform_real_distribution<double> u(-std::numbers::pi, std::numbers::pi);
    auto m = RamseyModel::zeros(o.qubits, o.ec_depth, o.dc_depth, 1.0);
    for (auto& t : m.theta_ec) t = u(rng);
    for (auto& t : m.theta_dc) t = u(rng);
    return to_probe(m);
  }
  if (o.preset == "model") {
    if (o.model.empty()) throw UsageError("--preset model needs --model PATH");
    return to_probe(load_model(o.model));
  }
  throw UsageError("unknown preset '" + o.preset + "'");
}

void cmd_fisher(const FisherOptions& o, const CLI::App& sub, std::ostream& out) {
  if (o.points < 1) throw UsageError("--points must be >= 1");
  if (!(o.phi_max > o.phi_min)) throw UsageError("--phi-max must exceed --phi-min");
  if (o.n_measurements < 1) throw UsageError("--n-measurements must be >= 1");
  if (!(o.step > 0.0)) throw UsageError("--step must be positive");
  if (o.shots > 0 && o.reps < 2) throw UsageError("--reps must be >= 2");
  const auto probe = resolve_probe(o);
  ensure_dir(o.out);
  std::vector<std::string> header{"phi", "fisher", "crb"};
  if (o.shots > 0) header.push_back("mc_variance");
  CsvWriter w(fs::path(o.out) / "fisher.csv", header);
  int undefined = 0;
  for (int x = 0; x < o.points; ++x) {
    // Cell midpoints keep the open interval's endpoints out.
    const double phi = o.phi_min + (x + 0.5) * (o.phi_max - o.phi_min) / o.points;
    const auto f = fisher_information(probe, phi, o.step);
    std::vector<std::string> row{num(phi), num(f.fisher)};
    if (f.fisher > 1e-12) {
      row.push_back(num(cramer_rao_bound(f.fisher, o.n_measurements)));
    } else {
      row.push_back("undefined");
      ++undefined;
    }
    if (o.shots > 0) {
      const double v = moment_estimator_variance(probe, phi, o.shots, o.reps,
                                                 o.seed + static_cast<std::uint64_t>(x), o.step);
      row.push_back(std::isnan(v) ? "undefined" : num(v));
    }
    w.row(row);
  }
  write_manifest(sub, o.out);
  out << fmt::format("wrote {} rows to {}", o.points, (fs::path(o.out) / "fisher.csv").string());
  if (undefined > 0) out << fmt::format(" ({} with undefined CRB: F = 0)", undefined);
  out << '\n';
}

struct TrotterOptions {
  std::string hamiltonian = "X+Z";
  double time = 1.0;
  std::vector<int> steps{1, 2, 4, 8, 16, 32};
  int order = 1;
  std::string out = "qmetro_out";
};

void cmd_trotter(const TrotterOptions& o, const CLI::App& sub, std::ostream& out) {
  if (o.steps.empty()) throw UsageError("--steps needs at least one value");
  for (int s : o.steps) {
    if (s < 1) throw UsageError("--steps values must be >= 1");
  }
  if (o.order < 1) throw UsageError("--order must be >= 1");
  std::vector<PauliTerm> terms;
  try {
    terms = parse_pauli_sum(o.hamiltonian);
    if ((std::size_t{1} << terms.front().paulis.size()) > kMaxOperatorDim) {
      throw SpecError("Hamiltonian acts on more than 6 qubits");
    }
  } catch (const SpecError& e) {
    throw UsageError(std::string("--hamiltonian: ") + e.what());
  }
  const auto h = pauli_sum(terms);
  const auto exact = exact_evolution(h, o.time);
  const double h_norm = schatten_inf_norm(h.matrix());
  ensure_dir(o.out);
  CsvWriter w(fs::path(o.out) / "trotter.csv", {"steps", "error", "block_bound"});
  for (int s : o.steps) {
    const double e = simulation_error(exact, trotter_first_order(terms, o.time, s));
    const double bound = time_block_error_bound(h_norm, o.time, s, o.order);
    w.row({std::to_string(s), num(e), num(bound)});
    out << fmt::format("steps {:>4}  error {:.6e}  bound {:.6e}\n", s, e, bound);
  }
  write_manifest(sub, o.out);
}

struct LstmOptions {
  std::string csv;
  std::string column = kDefaultSeriesColumn;
  int epochs = 10;
  int batch = 256;
  double lr = 0.01;
  std::uint64_t seed = 0;
  int window = 120;
  int hidden = 32;
  double train_fraction = 0.9;
  std::string out = "qmetro_out";
};

void cmd_train_lstm(const LstmOptions& o, const CLI::App& sub, std::ostream& out,
                    std::ostream& err) {
  if (o.epochs < 1 || o.batch < 1 || o.window < 1 || o.hidden < 1) {
    throw UsageError("--epochs, --batch, --window and --hidden must be >= 1");
  }
  if (!(o.lr >= 0.0)) throw UsageError("--lr must be >= 0");
  if (!(o.train_fraction > 0.0 && o.train_fraction <= 1.0)) {
    throw UsageError("--train-fraction must be in (0, 1]");
  }
  const auto series = load_series(o.csv, o.column);
  const auto [train_part, val_part] = split_series(series, o.train_fraction);
  const auto data = make_windows(train_part, o.window, fit_normalization(train_part));
  err << fmt::format("{} training windows, parameters {}\n", data.count(),
                     lstm_param_count(o.hidden));
  LstmTrainConfig cfg;
  cfg.epochs = o.epochs;
  cfg.batch = o.batch;
  cfg.learning_rate = o.lr;
  cfg.seed = o.seed;
  cfg.hidden = o.hidden;
  const auto result = train_lstm(data, cfg);
  ensure_dir(o.out);
  CsvWriter w(fs::path(o.out) / "lstm_loss.csv", {"epoch", "loss"});
  for (const auto& e : result.losses) {
    w.row({std::to_string(e.epoch), num(e.loss)});
    out << fmt::format("Epoch {}/{} - loss: {:.4f}\n", e.epoch, o.epochs, e.loss);
  }
  write_manifest(sub, o.out);
}

template <class T>
CLI::Option* add(CLI::App* app, const std::string& name, T& var, const std::string& desc) {
  auto* opt = app->add_option(name, var, desc);
  if constexpr (std::is_floating_point_v<T>) {
    opt->default_str(num(var));
  } else if constexpr (std::is_same_v<T, std::vector<double>> ||
                       std::is_same_v<T, std::vector<int>>) {
    std::string joined;
    for (const auto& v : var) joined += (joined.empty() ? "" : ",") + num(v);
    opt->default_str(joined);
  }
  return opt;
}

void add_qnn_options(CLI::App* sub, QnnOptions& o) {
  add(sub, "--ec-depth", o.ec_depth, "Encoder layers");
  add(sub, "--dc-depth", o.dc_depth, "Decoder layers");
  add(sub, "--partitions", o.partitions, "Phase grid size P");
  add(sub, "--iters", o.iters, "Gradient-descent iterations");
  add(sub, "--log-every", o.log_every, "Logging interval");
  add(sub, "--seed", o.seed, "Initialization seed");
  add(sub, "--init-scale", o.init_scale, "Std-dev of initial angles");
  add(sub, "--a-init", o.a_init, "Initial estimator scale (default mean/qubits)");
  add(sub, "--csv", o.csv, "Series CSV for the prior mean/variance");
  add(sub, "--column", o.column, "Series column");
  add(sub, "--mean", o.mean, "Prior mean (overrides --csv)");
  add(sub, "--variance", o.variance, "Prior variance (overrides --csv)");
  add(sub, "--out", o.out, "Output directory");
  sub->add_option("--config", "Flat key=value config file; explicit flags win");
}

}  // namespace

std::string format_iter_line(int iter, double loss) {
  return fmt::format("iter: {} loss: {:.4f}", iter, loss);
}

int run(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Variational Ramsey metrology toolkit", "qmetro"};
  app.option_defaults()->always_capture_default();
  app.require_subcommand(1);
  app.set_version_flag("--version", kToolVersion);

  IngestOptions ingest;
  auto* ingest_cmd = app.add_subcommand("ingest", "Series statistics of a CSV column");
  add(ingest_cmd, "--csv", ingest.csv, "Input CSV")->required();
  add(ingest_cmd, "--column", ingest.column, "Column header");
  ingest_cmd->add_flag("--json", ingest.json_out, "Print a JSON record");
  add(ingest_cmd, "--out", ingest.out, "Optional output directory");
  ingest_cmd->add_option("--config", "Flat key=value config file");

  QnnOptions qnn;
  auto* qnn_cmd = app.add_subcommand("train-qnn", "Train the variational Ramsey estimator");
  add(qnn_cmd, "--qubits", qnn.qubits, "Qubit count (1..6)");
  add(qnn_cmd, "--lr", qnn.lr, "Learning rate");
  add_qnn_options(qnn_cmd, qnn);

  SweepOptions sw;
  auto* sweep_cmd = app.add_subcommand("sweep-lr", "Learning-rate sweep with a summary table");
  add(sweep_cmd, "--lrs", sw.lrs, "Learning rates")->delimiter(',');
  add(sweep_cmd, "--qubits", sw.qubit_counts, "Qubit counts")->delimiter(',');
  add(sweep_cmd, "--repeats", sw.repeats, "Runs per learning rate (distinct seeds)");
  add_qnn_options(sweep_cmd, sw.base);

  FisherOptions fo;
  auto* fisher_cmd = app.add_subcommand("fisher", "Fisher information and Cramer-Rao bound over phi");
  add(fisher_cmd, "--preset", fo.preset, "ramsey | ghz | zero | random | model");
  add(fisher_cmd, "--qubits", fo.qubits, "Qubits for ghz/zero/random");
  add(fisher_cmd, "--ec-depth", fo.ec_depth, "Encoder layers for zero/random");
  add(fisher_cmd, "--dc-depth", fo.dc_depth, "Decoder layers for zero/random");
  add(fisher_cmd, "--seed", fo.seed, "Seed for random preset and sampling");
  add(fisher_cmd, "--model", fo.model, "model.json written by train-qnn");
  add(fisher_cmd, "--phi-min", fo.phi_min, "Lower end of the phi interval");
  add(fisher_cmd, "--phi-max", fo.phi_max, "Upper end of the phi interval");
  add(fisher_cmd, "--points", fo.points, "Number of phi cells");
  add(fisher_cmd, "--n-measurements", fo.n_measurements, "N in the bound 1/(N F)");
  add(fisher_cmd, "--shots", fo.shots, "Shots per experiment for the Monte-Carlo column");
  add(fisher_cmd, "--reps", fo.reps, "Monte-Carlo repetitions");
  add(fisher_cmd, "--step", fo.step, "Finite-difference half-step");
  add(fisher_cmd, "--out", fo.out, "Output directory");
  fisher_cmd->add_option("--config", "Flat key=value config file");

  TrotterOptions to;
  auto* trotter_cmd = app.add_subcommand("trotter", "First-order product-formula error study");
  add(trotter_cmd, "--hamiltonian", to.hamiltonian, "Pauli sum, e.g. \"X+Z\" or \"0.5*XX-ZI\"");
  add(trotter_cmd, "--time", to.time, "Total evolution time");
  add(trotter_cmd, "--steps", to.steps, "Step counts")->delimiter(',');
  add(trotter_cmd, "--order", to.order, "k in the reported time-block bound");
  add(trotter_cmd, "--out", to.out, "Output directory");
  trotter_cmd->add_option("--config", "Flat key=value config file");

  LstmOptions lo;
  auto* lstm_cmd = app.add_subcommand("train-lstm", "Train the LSTM baseline");
  add(lstm_cmd, "--csv", lo.csv, "Input CSV")->required();
  add(lstm_cmd, "--column", lo.column, "Series column");
  add(lstm_cmd, "--epochs", lo.epochs, "Epochs");
  add(lstm_cmd, "--batch", lo.batch, "Batch size");
  add(lstm_cmd, "--lr", lo.lr, "Learning rate");
  add(lstm_cmd, "--seed", lo.seed, "Seed");
  add(lstm_cmd, "--window", lo.window, "Input window length");
  add(lstm_cmd, "--hidden", lo.hidden, "Hidden units");
  add(lstm_cmd, "--train-fraction", lo.train_fraction, "Chronological training split");
  add(lstm_cmd, "--out", lo.out, "Output directory");
  lstm_cmd->add_option("--config", "Flat key=value config file");

  std::string manifest_path, replay_out;
  auto* replay_cmd = app.add_subcommand("replay", "Re-run the command recorded in a manifest");
  replay_cmd->add_option("manifest", manifest_path, "manifest.json")->required();
  add(replay_cmd, "--out", replay_out, "Output directory")->required();

  try {
    args = merge_config(std::move(args));
    std::reverse(args.begin(), args.end());
    app.parse(args);
  } catch (const CLI::Success& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kUsageError;
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kUsageError;
  }

  try {
    if (*ingest_cmd) cmd_ingest(ingest, *ingest_cmd, out);
    else if (*qnn_cmd) cmd_train_qnn(qnn, *qnn_cmd, out, err);
    else if (*sweep_cmd) cmd_sweep_lr(sw, *sweep_cmd, out, err);
    else if (*fisher_cmd) cmd_fisher(fo, *fisher_cmd, out);
    else if (*trotter_cmd) cmd_trotter(to, *trotter_cmd, out);
    else if (*lstm_cmd) cmd_train_lstm(lo, *lstm_cmd, out, err);
    else if (*replay_cmd) {
      auto replay_args = manifest_to_args(manifest_path);
      if (replay_args.front() == "replay") throw UsageError("cannot replay a replay");
      replay_args.push_back("--out");
      replay_args.push_back(replay_out);
      return run(std::move(replay_args), out, err);
    }
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kUsageError;
  } catch (const SpecError& e) {
    err << "error: " << e.what() << '\n';
    return kUsageError;
  } catch (const DomainError& e) {
    err << "error: " << e.what() << '\n';
    return kUsageError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kRuntimeError;
  }
  return kOk;
}

}  // namespace qmetro::cli
